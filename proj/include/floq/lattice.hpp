#pragma once

#include <string>
#include <vector>

namespace floq {

enum class Boundary { open, cylinder_y, torus };

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& s);

// Rectangular lattice, site index = x + lx*y, origin at the bottom-left corner.
struct LatticeSpec {
    int lx = 2;
    int ly = 2;
    Boundary boundary = Boundary::open;

    int n_sites() const { return lx * ly; }
    int site(int x, int y) const { return x + lx * y; }
    int site_x(int i) const { return i % lx; }
    int site_y(int i) const { return i / lx; }
};

// Throws std::invalid_argument naming the offending field.  Wrapped directions
// need an even extent so that the bipartite step pattern closes on the seam.
void validate_lattice_spec(const LatticeSpec& spec);

// Directed bond i -> j with hopping matrix element H(i,j) = -J e^{i phase},
// J = 1 throughout.  For +x bonds i is the left site, for +y bonds the lower
// one.  wrap_x / wrap_y mark bonds crossing a periodic seam; Bloch reduction
// attaches the quasimomentum factor there.
struct Link {
    int i = 0;
    int j = 0;
    double phase = 0.0;
    bool wrap_x = false;
    bool wrap_y = false;
};

// One segment of the drive: a partial matching of the lattice (no site is
// touched by two links), switched on for a time tau = theta / J.
struct HoppingStep {
    std::vector<Link> links;
};

struct HoppingSchedule {
    LatticeSpec spec;
    std::vector<HoppingStep> steps;
};

// Duration of one step and of the full period for a given coupling angle.
inline double step_duration(double theta) { return theta; }
inline double period(const HoppingSchedule& s, double theta) {
    return static_cast<double>(s.steps.size()) * theta;
}

// Four-step drive with all hopping phases zero: 1) vertical bonds on the even
// sublattice of (x+y), 2) horizontal even, 3) vertical odd, 4) horizontal odd.
// This ordering makes a boundary packet circulate clockwise (at theta = pi/2
// the bulk orbits close and U(T) = +1).  Out-of-lattice bonds are dropped on
// open edges.
HoppingSchedule build_afi_schedule(const LatticeSpec& spec);

// Same step partition and order, but every +y bond starting at column x
// carries the hopping phase 2*pi*alpha*x for the hop from the lower site to
// the upper one, i.e. a uniform flux 2*pi*alpha per plaquette.  alpha = 0
// reproduces the plain schedule.
HoppingSchedule build_hhf_schedule(const LatticeSpec& spec, double alpha);

// Report-only diagnostics: overlapping sites within a step, indices outside
// the lattice, links between non-neighbours.  Empty result = clean.
std::vector<std::string> validate_schedule(const HoppingSchedule& schedule);

}  // namespace floq
