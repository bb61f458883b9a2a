#pragma once
/// Deterministic text I/O helpers shared by the CLI and its tests: inclusive
/// min:max:count grids, complex literals of the form a+bi, and %.17g number
/// formatting (17 significant digits round-trips doubles exactly, so repeated
/// runs are byte-identical).

#include <cctype>
#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptscatter {

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  int count = 0;

  /// Inclusive linear grid; count >= 2 yields both endpoints.
  std::vector<double> values() const {
    std::vector<double> v;
    v.reserve(count);
    if (count == 1) {
      v.push_back(min);
      return v;
    }
    for (int i = 0; i < count; ++i)
      v.push_back(min + (max - min) * static_cast<double>(i) / (count - 1));
    return v;
  }
};

/// Parse "min:max:count".  Throws std::invalid_argument on malformed input,
/// count < 1, or max < min.
inline GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  const auto c1 = text.find(':');
  const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw std::invalid_argument("grid must be min:max:count, got '" + text + "'");
  try {
    size_t used = 0;
    const std::string s_min = text.substr(0, c1);
    const std::string s_max = text.substr(c1 + 1, c2 - c1 - 1);
    const std::string s_cnt = text.substr(c2 + 1);
    g.min = std::stod(s_min, &used);
    if (used != s_min.size()) throw std::invalid_argument("junk in min");
    g.max = std::stod(s_max, &used);
    if (used != s_max.size()) throw std::invalid_argument("junk in max");
    const long cnt = std::stol(s_cnt, &used);
    if (used != s_cnt.size()) throw std::invalid_argument("junk in count");
    g.count = static_cast<int>(cnt);
  } catch (const std::exception&) {
    throw std::invalid_argument("grid must be min:max:count, got '" + text + "'");
  }
  if (g.count < 1) throw std::invalid_argument("grid count must be >= 1");
  if (g.max < g.min) throw std::invalid_argument("grid max must be >= min");
  return g;
}

/// Parse a complex literal: "1.5", "2i", "-3.2i", "1+2i", "1-2i", "i", "-i".
inline std::complex<double> parse_complex(const std::string& text) {
  const auto fail = [&]() -> std::complex<double> {
    throw std::invalid_argument("complex literal must look like a, bi or a+bi, got '" + text + "'");
  };
  std::string s;
  for (const char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) return fail();

  // Split at the last +/- that is not a leading sign and not part of an exponent.
  size_t split = std::string::npos;
  for (size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const auto parse_part = [&](std::string part, bool* imag) -> double {
    *imag = false;
    if (!part.empty() && (part.back() == 'i' || part.back() == 'I')) {
      *imag = true;
      part.pop_back();
      if (part.empty() || part == "+") part = "1";
      else if (part == "-") part = "-1";
    }
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      fail();
    }
    if (used != part.size()) fail();
    return v;
  };

  bool im1 = false, im2 = false;
  if (split == std::string::npos) {
    const double v = parse_part(s, &im1);
    return im1 ? std::complex<double>(0.0, v) : std::complex<double>(v, 0.0);
  }
  const double a = parse_part(s.substr(0, split), &im1);
  const double b = parse_part(s.substr(split), &im2);
  if (im1 == im2) fail();  // need one real and one imaginary part
  return im1 ? std::complex<double>(b, a) : std::complex<double>(a, b);
}

/// 17-significant-digit formatting (%.17g): value-deterministic and lossless.
inline std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace ptscatter
