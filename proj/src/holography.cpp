#include "nle/holography.hpp"

#include "nle/errors.hpp"
#include "nle/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace nle {

double HoloGeometry::y_inf() const {
    return std::pow(a_cutoff, -omega);
}

void HoloGeometry::validate() const {
    if (d < 2)
        throw InvalidSpecError("geometry: boundary dimension d must be at least 2");
    if (omega <= 0)
        throw InvalidSpecError("geometry: omega must be positive");
    if (a_cutoff <= 0)
        throw InvalidSpecError("geometry: a_cutoff must be positive");
    if (a0 <= 0)
        throw InvalidSpecError("geometry: a0 must be positive");
    if (area_unit <= 0)
        throw InvalidSpecError("geometry: area_unit must be positive");
}

std::string SurfaceConfig::encode() const {
    std::ostringstream os;
    os << "pairs:";
    for (const auto& [a, b] : pairs) os << "(" << a << "-" << b << ")";
    os << ";lines:";
    for (size_t i = 0; i < singletons.size(); ++i) {
        if (i)
            os << ",";
        os << singletons[i];
    }
    return os.str();
}

const char* to_string(StripPhase phase) {
    return phase == StripPhase::connected ? "connected" : "disconnected";
}

namespace {

void require_d2_omega1(const HoloGeometry& geom, const char* what) {
    if (geom.d != 2 || geom.omega != 1.0)
        throw InvalidSpecError(std::string(what) + ": closed forms require d = 2, omega = 1");
}

}  // namespace

double turning_point(const HoloGeometry& geom, double l) {
    geom.validate();
    require_d2_omega1(geom, "turning_point");
    if (!(l > 0))
        throw InvalidSpecError("turning_point: strip width must be positive");
    if (l >= std::numbers::pi * geom.a0)
        throw NoConnectedSurfaceError("no connected surface: strip width reaches pi * a0");
    return geom.y_inf() * std::cos(l / (2.0 * geom.a0));
}

double strip_area_connected(const HoloGeometry& geom, double l) {
    geom.validate();
    require_d2_omega1(geom, "strip_area_connected");
    if (!(l > 0))
        throw InvalidSpecError("strip_area_connected: strip width must be positive");
    if (l >= std::numbers::pi * geom.a0)
        throw NoConnectedSurfaceError("no connected surface: strip width reaches pi * a0");
    return geom.area_unit * 2.0 * geom.a0 * geom.y_inf() * std::sin(l / (2.0 * geom.a0));
}

double strip_area_disconnected(const HoloGeometry& geom) {
    geom.validate();
    require_d2_omega1(geom, "strip_area_disconnected");
    return geom.area_unit * 2.0 * geom.a0 * geom.y_inf();
}

StripEntropy strip_entropy(const HoloGeometry& geom, double l) {
    const double dis = strip_area_disconnected(geom);
    if (l >= std::numbers::pi * geom.a0)
        return {dis, StripPhase::disconnected};
    const double con = strip_area_connected(geom, l);
    if (con <= dis)
        return {con, StripPhase::connected};
    return {dis, StripPhase::disconnected};
}

namespace {

// Stable (expm1/log1p) evaluation of ((y/y*)^e - 1) / (u^2/y*) at
// y = y* + u^2, smooth through u = 0 where it tends to e.
double singular_ratio(double t, double e) {
    if (t == 0.0)
        return e;
    return std::expm1(e * std::log1p(t)) / t;
}

}  // namespace

double width_integral_general(const HoloGeometry& geom, double y_star, double rel_tol) {
    geom.validate();
    const double y_inf = geom.y_inf();
    if (!(y_star > 0) || !(y_star < y_inf))
        throw InvalidSpecError("width integral: turning point must lie in (0, y_inf)");
    const double e = 2.0 * (geom.d - 1) / geom.omega;
    const double inv_omega = 1.0 / geom.omega;
    auto f = [&](double u) {
        const double t = u * u / y_star;
        const double y = y_star + u * u;
        return 2.0 / (std::pow(y, inv_omega) * std::sqrt(singular_ratio(t, e) / y_star));
    };
    const double span = std::sqrt(y_inf - y_star);
    return 2.0 * geom.a0 * integrate_adaptive(f, 0.0, span, rel_tol);
}

double area_integral_general(const HoloGeometry& geom, double y_star, double rel_tol) {
    geom.validate();
    const double y_inf = geom.y_inf();
    if (!(y_star > 0) || !(y_star < y_inf))
        throw InvalidSpecError("area integral: turning point must lie in (0, y_inf)");
    const double e = 2.0 * (geom.d - 1) / geom.omega;
    const double p = (2.0 * geom.d - 3.0) / geom.omega;
    const double q = (geom.d - 1.0) / geom.omega;
    auto f = [&](double u) {
        const double t = u * u / y_star;
        const double y = y_star + u * u;
        return 2.0 * std::pow(y, p) * std::pow(y_star, -q) /
               std::sqrt(singular_ratio(t, e) / y_star);
    };
    const double span = std::sqrt(y_inf - y_star);
    return 2.0 * geom.area_unit * geom.a0 * integrate_adaptive(f, 0.0, span, rel_tol);
}

namespace {

struct EndpointList {
    std::vector<double> positions;  // sorted
    // true: region-entering (left end), false: region-exiting (right end)
    std::vector<bool> entering;
};

EndpointList sorted_endpoints(const std::vector<Interval>& intervals) {
    std::vector<Interval> sorted = intervals;
    std::sort(sorted.begin(), sorted.end(),
              [](const Interval& a, const Interval& b) { return a.left < b.left; });
    EndpointList out;
    double prev_right = 0.0;
    for (size_t i = 0; i < sorted.size(); ++i) {
        if (!(sorted[i].width() > 0))
            throw RegionError("holography: interval width must be positive");
        if (i > 0 && !(sorted[i].left > prev_right))
            throw RegionError("holography: intervals overlap or touch");
        prev_right = sorted[i].right;
        out.positions.push_back(sorted[i].left);
        out.entering.push_back(true);
        out.positions.push_back(sorted[i].right);
        out.entering.push_back(false);
    }
    return out;
}

// Recursive generator over endpoint window [i, j]: the first endpoint either
// takes a vertical line (only when not nested under an arc) or pairs with a
// later endpoint of opposite orientation within reach of a connected surface.
void cover_range(const HoloGeometry& geom, const EndpointList& eps, int i, int j,
                 bool verticals_allowed, SurfaceConfig& partial,
                 std::vector<SurfaceConfig>& out) {
    if (i > j) {
        out.push_back(partial);
        return;
    }
    const double line_area = geom.area_unit * geom.a0 * geom.y_inf();
    if (verticals_allowed) {
        partial.singletons.push_back(i);
        partial.total_area += line_area;
        cover_range(geom, eps, i + 1, j, true, partial, out);
        partial.singletons.pop_back();
        partial.total_area -= line_area;
    }
    for (int m = i + 1; m <= j; m += 2) {  // opposite orientation = odd offset
        if (eps.entering[static_cast<size_t>(m)] == eps.entering[static_cast<size_t>(i)])
            continue;
        const double sep = eps.positions[static_cast<size_t>(m)] -
                           eps.positions[static_cast<size_t>(i)];
        if (sep >= std::numbers::pi * geom.a0)
            continue;  // no connected saddle at this separation
        const double arc_area = strip_area_connected(geom, sep);
        partial.pairs.emplace_back(i, m);
        partial.total_area += arc_area;
        std::vector<SurfaceConfig> inner;
        SurfaceConfig snapshot = partial;
        cover_range(geom, eps, i + 1, m - 1, false, snapshot, inner);
        for (auto& cfg : inner) cover_range(geom, eps, m + 1, j, verticals_allowed, cfg, out);
        partial.pairs.pop_back();
        partial.total_area -= arc_area;
    }
}

}  // namespace

std::vector<SurfaceConfig> enumerate_surface_configs(const HoloGeometry& geom,
                                                     const std::vector<Interval>& intervals) {
    geom.validate();
    require_d2_omega1(geom, "enumerate_surface_configs");
    if (intervals.empty())
        throw RegionError("holography: at least one interval required");
    if (intervals.size() > 6)
        throw RegionError("holography: more than 6 intervals exceeds the enumeration bound");
    const EndpointList eps = sorted_endpoints(intervals);
    std::vector<SurfaceConfig> out;
    SurfaceConfig partial;
    cover_range(geom, eps, 0, static_cast<int>(eps.positions.size()) - 1, true, partial, out);
    return out;
}

UnionEntropy union_entropy(const HoloGeometry& geom, const std::vector<Interval>& intervals) {
    std::vector<SurfaceConfig> configs = enumerate_surface_configs(geom, intervals);
    const SurfaceConfig* best = nullptr;
    for (const SurfaceConfig& cfg : configs) {
        if (!best || cfg.total_area < best->total_area ||
            (cfg.total_area == best->total_area && cfg.encode() < best->encode()))
            best = &cfg;
    }
    return {best->total_area, *best};
}

bool config_bridges(const SurfaceConfig& config) {
    for (const auto& [a, b] : config.pairs)
        if (a / 2 != b / 2)
            return true;
    return false;
}

double holo_mutual_information(const HoloGeometry& geom, const Interval& i1, const Interval& i2) {
    const UnionEntropy ue = union_entropy(geom, {i1, i2});
    // Disconnected phase: the union decomposes per interval, so the
    // difference is zero by construction, not by floating cancellation.
    if (!config_bridges(ue.config))
        return 0.0;
    const double s1 = strip_entropy(geom, i1.width()).area;
    const double s2 = strip_entropy(geom, i2.width()).area;
    return std::max(0.0, s1 + s2 - ue.area);
}

double holo_tripartite_information(const HoloGeometry& geom, const Interval& i1,
                                   const Interval& i2, const Interval& i3) {
    const UnionEntropy u12 = union_entropy(geom, {i1, i2});
    const UnionEntropy u13 = union_entropy(geom, {i1, i3});
    const UnionEntropy u23 = union_entropy(geom, {i2, i3});
    const UnionEntropy u123 = union_entropy(geom, {i1, i2, i3});
    if (!config_bridges(u12.config) && !config_bridges(u13.config) &&
        !config_bridges(u23.config) && !config_bridges(u123.config))
        return 0.0;  // every union decomposes; the combination telescopes away
    const double s1 = strip_entropy(geom, i1.width()).area;
    const double s2 = strip_entropy(geom, i2.width()).area;
    const double s3 = strip_entropy(geom, i3.width()).area;
    return s1 + s2 + s3 - u12.area - u13.area - u23.area + u123.area;
}

}  // namespace nle
