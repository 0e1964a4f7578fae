#pragma once

#include "floq/lattice.hpp"
#include "floq/single_particle.hpp"

namespace floq {

// Chern number of the quasienergy window (eps_lo, eps_hi] from the lattice
// field strength on an n x n grid over the magnetic zone of a two-by-two
// torus supercell (plaquette link determinants, gauge independent).  The
// count of window states must not change across the grid, and the result is
// checked against a grid refinement n -> 2n; a window edge inside a band
// raises std::runtime_error.
int chern_number(const HoppingSchedule& cell, double theta, double eps_lo, double eps_hi,
                 int grid = 32);

}  // namespace floq
