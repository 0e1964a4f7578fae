#include "floq/lattice.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace floq {

std::string to_string(Boundary b) {
    switch (b) {
        case Boundary::open: return "open";
        case Boundary::cylinder_y: return "cylinder_y";
        case Boundary::torus: return "torus";
    }
    return "?";
}

Boundary boundary_from_string(const std::string& s) {
    if (s == "open") return Boundary::open;
    if (s == "cylinder_y") return Boundary::cylinder_y;
    if (s == "torus") return Boundary::torus;
    throw std::invalid_argument("boundary: unknown value '" + s + "'");
}

void validate_lattice_spec(const LatticeSpec& spec) {
    if (spec.lx < 2) throw std::invalid_argument("lx: must be >= 2");
    if (spec.ly < 2) throw std::invalid_argument("ly: must be >= 2");
    if (spec.boundary != Boundary::open && spec.ly % 2 != 0)
        throw std::invalid_argument("ly: must be even when the y direction is wrapped");
    if (spec.boundary == Boundary::torus && spec.lx % 2 != 0)
        throw std::invalid_argument("lx: must be even on the torus");
}

namespace {

HoppingSchedule build_schedule(const LatticeSpec& spec, double alpha) {
    validate_lattice_spec(spec);
    HoppingSchedule sched;
    sched.spec = spec;
    const int lx = spec.lx, ly = spec.ly;
    // step order fixed for clockwise boundary circulation: V-even, H-even,
    // V-odd, H-odd (parity of x+y)
    constexpr struct { bool vertical; int parity; } plan[4] = {
        {true, 0}, {false, 0}, {true, 1}, {false, 1}};
    for (const auto& [vertical, parity] : plan) {
        HoppingStep step;
        for (int y = 0; y < ly; ++y) {
            for (int x = 0; x < lx; ++x) {
                if ((x + y) % 2 != parity) continue;
                if (vertical) {
                    int yn = y + 1;
                    bool wrap = false;
                    if (yn >= ly) {
                        if (spec.boundary == Boundary::open) continue;
                        yn -= ly;
                        wrap = true;
                    }
                    // stored phase is -2*pi*alpha*x so that the hop from the
                    // lower site to the upper one picks up e^{+i 2 pi alpha x}
                    double ph = -2.0 * std::numbers::pi * alpha * x;
                    step.links.push_back({spec.site(x, y), spec.site(x, yn), ph, false, wrap});
                } else {
                    int xn = x + 1;
                    bool wrap = false;
                    if (xn >= lx) {
                        if (spec.boundary != Boundary::torus) continue;
                        xn -= lx;
                        wrap = true;
                    }
                    step.links.push_back({spec.site(x, y), spec.site(xn, y), 0.0, wrap, false});
                }
            }
        }
        sched.steps.push_back(std::move(step));
    }
    return sched;
}

}  // namespace

HoppingSchedule build_afi_schedule(const LatticeSpec& spec) { return build_schedule(spec, 0.0); }

HoppingSchedule build_hhf_schedule(const LatticeSpec& spec, double alpha) {
    return build_schedule(spec, alpha);
}

std::vector<std::string> validate_schedule(const HoppingSchedule& schedule) {
    std::vector<std::string> issues;
    const auto& spec = schedule.spec;
    const int n = spec.n_sites();
    for (size_t si = 0; si < schedule.steps.size(); ++si) {
        std::set<int> used;
        for (const Link& l : schedule.steps[si].links) {
            std::string where = "step " + std::to_string(si) + " link (" +
                                std::to_string(l.i) + "," + std::to_string(l.j) + ")";
            if (l.i < 0 || l.i >= n || l.j < 0 || l.j >= n) {
                issues.push_back(where + ": site index outside lattice");
                continue;
            }
            if (l.i == l.j) {
                issues.push_back(where + ": self-link");
                continue;
            }
            for (int s : {l.i, l.j})
                if (!used.insert(s).second)
                    issues.push_back(where + ": site " + std::to_string(s) +
                                     " already coupled in this step");
            // neighbour test, honouring the declared wrapping
            int dx = spec.site_x(l.j) - spec.site_x(l.i);
            int dy = spec.site_y(l.j) - spec.site_y(l.i);
            if (l.wrap_x) dx = (dx + spec.lx) % spec.lx == 1 ? 1 : dx + spec.lx;
            if (l.wrap_y) dy = (dy + spec.ly) % spec.ly == 1 ? 1 : dy + spec.ly;
            bool nn = (std::abs(dx) + std::abs(dy)) == 1;
            if (l.wrap_x && spec.boundary != Boundary::torus)
                issues.push_back(where + ": x-wrapping link on a non-torus lattice");
            if (l.wrap_y && spec.boundary == Boundary::open)
                issues.push_back(where + ": y-wrapping link on an open lattice");
            if (!nn) issues.push_back(where + ": not a nearest-neighbour bond");
        }
    }
    return issues;
}

}  // namespace floq
