#pragma once

#include <string>
#include <vector>

namespace nle {

// Warped-bulk geometry parameters. Entropy equals area (4 G_N = 1);
// everything here is double precision, all quantities are O(a0 * y_inf).
struct HoloGeometry {
    int d = 2;               // boundary spacetime dimension
    double omega = 1.0;      // nonlocality exponent
    double a_cutoff = 1.0;   // lattice/UV cutoff
    double a0 = 1.0;         // nonlocality scale A0 = a^omega * A
    double area_unit = 1.0;  // overall prefactor R^{d-2} a^{d-2}

    double y_inf() const;  // UV cutoff of the radial coordinate, a_cutoff^{-omega}
    void validate() const;
};

// Boundary strip [left, right], lattice units.
struct Interval {
    double left = 0.0;
    double right = 0.0;

    double width() const { return right - left; }
};

// A candidate extremal-surface configuration for a union of intervals:
// non-crossing arcs between endpoints of opposite orientation, plus vertical
// lines for the endpoints left unpaired. Endpoint indices refer to the sorted
// endpoint list of the query.
struct SurfaceConfig {
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> singletons;
    double total_area = 0.0;

    // Canonical text form, also the deterministic tie-break order.
    std::string encode() const;
};

enum class StripPhase { connected, disconnected };

const char* to_string(StripPhase phase);

// Deepest bulk reach of the connected strip surface, d=2, omega=1:
// y* = y_inf cos(l / (2 a0)). Throws NoConnectedSurfaceError at l >= pi a0.
double turning_point(const HoloGeometry& geom, double l);

// Connected strip area, d=2, omega=1: 2 a0 y_inf sin(l / (2 a0)).
double strip_area_connected(const HoloGeometry& geom, double l);

// Two vertical lines at the strip boundaries, each of bulk length a0 y_inf;
// independent of l.
double strip_area_disconnected(const HoloGeometry& geom);

struct StripEntropy {
    double area = 0.0;
    StripPhase phase = StripPhase::connected;
};

// Minimal-area choice between the connected and disconnected candidates.
StripEntropy strip_entropy(const HoloGeometry& geom, double l);

// Strip width subtended by a connected surface with turning point y_star,
// general (d, omega):
//   l = 2 A0 * integral_{y*}^{y_inf} dy / (y^{1/omega} sqrt((y/y*)^{2(d-1)/omega} - 1)).
// The integrable inverse-square-root singularity at y = y* is removed by the
// substitution u^2 = y - y*.
double width_integral_general(const HoloGeometry& geom, double y_star, double rel_tol = 1e-12);

// Connected-surface area for general (d, omega):
//   Area = 2 R^{d-2} a^{d-2} A0 * integral_{y*}^{y_inf} dy
//          y^{(2d-3)/omega} y*^{-(d-1)/omega} / sqrt((y/y*)^{2(d-1)/omega} - 1).
double area_integral_general(const HoloGeometry& geom, double y_star, double rel_tol = 1e-12);

struct UnionEntropy {
    double area = 0.0;
    SurfaceConfig config;
};

// All valid surface configurations for the sorted endpoints of the intervals:
// arcs join one entering and one exiting endpoint, arcs never cross, vertical
// lines never sit underneath an arc, and arcs require separation < pi a0.
std::vector<SurfaceConfig> enumerate_surface_configs(const HoloGeometry& geom,
                                                     const std::vector<Interval>& intervals);

// Minimal-area configuration over the enumeration (ties broken by the
// lexicographic encoding). Interval count is capped at 6.
UnionEntropy union_entropy(const HoloGeometry& geom, const std::vector<Interval>& intervals);

// Whether any arc of the configuration joins endpoints of two different
// intervals (endpoint 2i/2i+1 belongs to sorted interval i). A non-bridging
// configuration decomposes into the per-interval minima, which makes the
// mutual information identically zero.
bool config_bridges(const SurfaceConfig& config);

// S(i1) + S(i2) - S(i1 u i2), floored at zero; zero exactly when the union's
// minimal configuration is the product of the single-interval minima.
double holo_mutual_information(const HoloGeometry& geom, const Interval& i1, const Interval& i2);

// Seven-entropy combination over union_entropy values.
double holo_tripartite_information(const HoloGeometry& geom, const Interval& i1,
                                   const Interval& i2, const Interval& i3);

}  // namespace nle
