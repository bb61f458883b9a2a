#pragma once
/// Umbrella header: scattering, poles and exceptional points of a PT-symmetric
/// pair of imaginary on-site potentials in a 1D tight-binding chain, plus the
/// delta-potential continuum limit.

#include "ptscatter/core.hpp"
#include "ptscatter/single_site.hpp"
#include "ptscatter/fabry_perot.hpp"
#include "ptscatter/matrix_solver.hpp"
#include "ptscatter/siegert.hpp"
#include "ptscatter/trajectory.hpp"
#include "ptscatter/continuum.hpp"
#include "ptscatter/io.hpp"
