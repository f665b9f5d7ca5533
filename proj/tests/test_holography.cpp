#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nle/errors.hpp"
#include "nle/holography.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace nle;
using std::numbers::pi;

namespace {

HoloGeometry geom_with(double a0, double a_cutoff = 1.0, int d = 2, double omega = 1.0) {
    HoloGeometry g;
    g.d = d;
    g.omega = omega;
    g.a_cutoff = a_cutoff;
    g.a0 = a0;
    return g;
}

// Brute-force minimal area over every endpoint assignment, written without
// the library's recursive generator: enumerate all partial pairings plus
// vertical lines, then filter by the geometric rules.
struct BruteConfig {
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> singles;
    double area = 0.0;
};

void brute_assign(const HoloGeometry& geom, const std::vector<double>& pos, int idx,
                  std::vector<int>& partner, std::vector<BruteConfig>& out) {
    const int n = static_cast<int>(pos.size());
    if (idx == n) {
        // validity: arcs join opposite parity, never cross, no vertical
        // strictly inside an arc, arcs shorter than pi*a0
        BruteConfig cfg;
        for (int i = 0; i < n; ++i) {
            if (partner[i] == -1)
                cfg.singles.push_back(i);
            else if (partner[i] > i)
                cfg.pairs.emplace_back(i, partner[i]);
        }
        for (const auto& [a, b] : cfg.pairs) {
            if ((b - a) % 2 == 0)
                return;  // same orientation
            if (pos[b] - pos[a] >= pi * geom.a0)
                return;
            for (const auto& [c, d] : cfg.pairs) {
                if (a == c)
                    continue;
                if (a < c && c < b && b < d)
                    return;  // crossing
            }
            for (int s : cfg.singles)
                if (a < s && s < b)
                    return;  // vertical under an arc
        }
        cfg.area = 0.0;
        for (const auto& [a, b] : cfg.pairs)
            cfg.area += strip_area_connected(geom, pos[b] - pos[a]);
        cfg.area += geom.area_unit * geom.a0 * geom.y_inf() *
                    static_cast<double>(cfg.singles.size());
        out.push_back(std::move(cfg));
        return;
    }
    if (partner[idx] != -2) {
        brute_assign(geom, pos, idx + 1, partner, out);
        return;
    }
    partner[idx] = -1;  // vertical line
    brute_assign(geom, pos, idx + 1, partner, out);
    partner[idx] = -2;
    for (int j = idx + 1; j < n; ++j) {
        if (partner[j] != -2)
            continue;
        partner[idx] = j;
        partner[j] = idx;
        brute_assign(geom, pos, idx + 1, partner, out);
        partner[idx] = -2;
        partner[j] = -2;
    }
}

double brute_minimal_area(const HoloGeometry& geom, const std::vector<Interval>& intervals) {
    std::vector<Interval> sorted = intervals;
    std::sort(sorted.begin(), sorted.end(),
              [](const Interval& a, const Interval& b) { return a.left < b.left; });
    std::vector<double> pos;
    for (const Interval& iv : sorted) {
        pos.push_back(iv.left);
        pos.push_back(iv.right);
    }
    std::vector<int> partner(pos.size(), -2);
    std::vector<BruteConfig> all;
    brute_assign(geom, pos, 0, partner, all);
    REQUIRE(!all.empty());
    double best = all.front().area;
    for (const BruteConfig& c : all) best = std::min(best, c.area);
    return best;
}

}  // namespace

TEST_CASE("turning point closed form") {
    HoloGeometry g = geom_with(40.0);
    CHECK(turning_point(g, 1e-9) == doctest::Approx(g.y_inf()).epsilon(1e-12));
    CHECK(turning_point(g, pi * 40.0 / 2) ==
          doctest::Approx(g.y_inf() / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(turning_point(g, pi * 40.0 * (1 - 1e-12)) < 1e-9);
    CHECK_THROWS_AS(turning_point(g, pi * 40.0), NoConnectedSurfaceError);
    CHECK_THROWS_AS(turning_point(g, 200.0), NoConnectedSurfaceError);
}

TEST_CASE("connected strip area closed form") {
    HoloGeometry g = geom_with(40.0);
    // sin(pi/6) = 1/2
    CHECK(strip_area_connected(g, pi * 40.0 / 3) ==
          doctest::Approx(40.0 * g.y_inf()).epsilon(1e-14));
    // linear regime at small widths, slope y_inf
    const double l = 1e-4 * 40.0;
    CHECK(strip_area_connected(g, l) / l == doctest::Approx(g.y_inf()).epsilon(1e-6));
}

TEST_CASE("disconnected strip area") {
    HoloGeometry g = geom_with(40.0);
    CHECK(strip_area_disconnected(g) == doctest::Approx(80.0).epsilon(1e-15));
    // saturation value does not depend on the strip width
    HoloGeometry g1 = geom_with(1.0);
    CHECK(strip_entropy(g1, 10.0).area == strip_entropy(g1, 1e4).area);
    // connected never exceeds disconnected where it exists
    for (double frac : {0.05, 0.3, 0.6, 0.95})
        CHECK(strip_area_connected(g, frac * pi * 40.0) <= strip_area_disconnected(g));
}

TEST_CASE("strip entropy phase selection") {
    HoloGeometry g = geom_with(40.0);
    CHECK(strip_entropy(g, 1.0).phase == StripPhase::connected);
    CHECK(strip_entropy(g, 2 * pi * 40.0).phase == StripPhase::disconnected);
    CHECK(strip_entropy(g, 2 * pi * 40.0).area == doctest::Approx(80.0));
    // flip within relative 1e-6 of l = pi a0
    CHECK(strip_entropy(g, pi * 40.0 * (1 - 1e-6)).phase == StripPhase::connected);
    CHECK(strip_entropy(g, pi * 40.0 * (1 + 1e-6)).phase == StripPhase::disconnected);
}

TEST_CASE("width integral inverts the turning point") {
    for (double a0 : {20.0, 40.0, 400.0}) {
        HoloGeometry g = geom_with(a0);
        for (double theta : {0.3, 0.7, 1.2}) {
            const double y_star = g.y_inf() * std::cos(theta);
            const double width = width_integral_general(g, y_star);
            CHECK(width == doctest::Approx(2 * a0 * theta).epsilon(1e-10));
        }
        for (double frac : {0.1, 0.5, 0.9}) {
            const double l = frac * pi * a0;
            CHECK(width_integral_general(g, turning_point(g, l)) ==
                  doctest::Approx(l).epsilon(1e-8));
        }
    }
}

TEST_CASE("width integral degenerates as the turning point reaches the cutoff") {
    HoloGeometry g = geom_with(40.0);
    CHECK(width_integral_general(g, g.y_inf() * (1 - 1e-12)) < 1e-4 * g.a0);
}

TEST_CASE("width integral is monotone in the turning point at d=3") {
    HoloGeometry g = geom_with(40.0, 1.0, 3);
    double prev = 0.0;
    for (double f : {0.8, 0.5, 0.3, 0.1}) {
        const double w = width_integral_general(g, f * g.y_inf());
        CHECK(w > prev);
        prev = w;
    }
}

TEST_CASE("area integral agrees with the d=2 closed form") {
    SUBCASE("unit cutoff") {
        HoloGeometry g = geom_with(40.0);
        for (double frac : {0.1, 0.5, 0.9}) {
            const double l = frac * pi * 40.0;
            const double y_star = turning_point(g, l);
            CHECK(area_integral_general(g, y_star) ==
                  doctest::Approx(strip_area_connected(g, l)).epsilon(1e-8));
        }
    }
    SUBCASE("stretched cutoff, y* = 1, y_inf = 2") {
        HoloGeometry g = geom_with(5.0, 0.5);
        REQUIRE(g.y_inf() == doctest::Approx(2.0));
        // 2 A0 integral of y/sqrt(y^2-1) over [1,2] = 2 A0 sqrt(3)
        CHECK(area_integral_general(g, 1.0) ==
              doctest::Approx(2.0 * 5.0 * std::sqrt(3.0)).epsilon(1e-8));
    }
    SUBCASE("degenerate surface has vanishing area") {
        HoloGeometry g = geom_with(40.0);
        // closed form: 2 a0 sqrt(y_inf^2 - y*^2) ~ 1.1e-4 here
        CHECK(area_integral_general(g, g.y_inf() * (1 - 1e-12)) < 2e-4);
    }
}

TEST_CASE("union of one interval reduces to the strip result") {
    HoloGeometry g = geom_with(40.0);
    for (double l : {1.0, 60.0, 200.0}) {
        const UnionEntropy ue = union_entropy(g, {Interval{3.0, 3.0 + l}});
        CHECK(ue.area == strip_entropy(g, l).area);
    }
}

TEST_CASE("two-interval competition matches the closed-form comparison") {
    SUBCASE("widths far below the nonlocality scale: product wins") {
        HoloGeometry g = geom_with(1000.0);
        const Interval i1{0, 10}, i2{15, 25};
        const UnionEntropy ue = union_entropy(g, {i1, i2});
        const double product = 2 * strip_area_connected(g, 10.0);
        CHECK(ue.area == doctest::Approx(product).epsilon(1e-12));
        CHECK(holo_mutual_information(g, i1, i2) == 0.0);
    }
    SUBCASE("wide strips at small gap: bridged configuration wins") {
        HoloGeometry g = geom_with(40.0);
        const Interval i1{0, 50}, i2{50.01, 100.01};
        const UnionEntropy ue = union_entropy(g, {i1, i2});
        const double bridged = strip_area_connected(g, 100.01) + strip_area_connected(g, 0.01);
        CHECK(ue.area == doctest::Approx(bridged).epsilon(1e-12));
        CHECK(holo_mutual_information(g, i1, i2) > 0.0);
        bool has_outer = false;
        for (const auto& [a, b] : ue.config.pairs) has_outer |= (a == 0 && b == 3);
        CHECK(has_outer);
    }
}

TEST_CASE("holographic mutual information scan at l=50") {
    SUBCASE("a0=400 suppresses it at every separation") {
        HoloGeometry g = geom_with(400.0);
        for (double x : {1.0, 2.0, 5.0, 10.0, 30.0, 60.0, 100.0})
            CHECK(holo_mutual_information(g, Interval{0, 50}, Interval{50 + x, 100 + x}) == 0.0);
    }
    SUBCASE("a0=40 keeps it positive at small separations, then it dies") {
        HoloGeometry g = geom_with(40.0);
        CHECK(holo_mutual_information(g, Interval{0, 50}, Interval{51, 101}) > 0.0);
        double prev = 1e300;
        for (double x : {1.0, 4.0, 8.0, 12.0, 16.0, 24.0, 40.0}) {
            const double mi =
                holo_mutual_information(g, Interval{0, 50}, Interval{50 + x, 100 + x});
            CHECK(mi >= 0.0);
            CHECK(mi <= prev + 1e-12);
            prev = mi;
        }
        CHECK(prev == 0.0);  // disconnected by the end of the grid
    }
}

TEST_CASE("holographic tripartite information") {
    SUBCASE("strong nonlocality: exactly zero") {
        HoloGeometry g = geom_with(400.0);
        for (double x : {1.0, 10.0, 50.0}) {
            const Interval i1{0, 50}, i2{50 + x, 100 + x}, i3{100 + 2 * x, 150 + 2 * x};
            CHECK(holo_tripartite_information(g, i1, i2, i3) == 0.0);
        }
    }
    SUBCASE("moderate nonlocality at small gaps: strictly negative") {
        HoloGeometry g = geom_with(40.0);
        const Interval i1{0, 50}, i2{51, 101}, i3{102, 152};
        CHECK(holo_tripartite_information(g, i1, i2, i3) < 0.0);
    }
    SUBCASE("monogamy across random triples") {
        std::mt19937_64 rng(2025);
        std::uniform_real_distribution<double> len(1.0, 80.0), gap(0.5, 50.0);
        for (double a0 : {20.0, 40.0, 400.0}) {
            HoloGeometry g = geom_with(a0);
            for (int t = 0; t < 40; ++t) {
                double x = 0;
                Interval iv[3];
                for (auto& v : iv) {
                    x += gap(rng);
                    v = {x, x + len(rng)};
                    x = v.right;
                }
                CHECK(holo_tripartite_information(g, iv[0], iv[1], iv[2]) <= 1e-8);
            }
        }
    }
}

TEST_CASE("union entropy is minimal over the exhaustive enumeration") {
    std::mt19937_64 rng(909);
    std::uniform_real_distribution<double> len(0.5, 120.0), gap(0.1, 60.0);
    for (double a0 : {10.0, 40.0, 400.0}) {
        HoloGeometry g = geom_with(a0);
        for (int k = 1; k <= 3; ++k) {
            for (int t = 0; t < 8; ++t) {
                double x = 0;
                std::vector<Interval> ivs;
                for (int i = 0; i < k; ++i) {
                    x += gap(rng);
                    ivs.push_back({x, x + len(rng)});
                    x = ivs.back().right;
                }
                const UnionEntropy ue = union_entropy(g, ivs);
                CHECK(ue.area == doctest::Approx(brute_minimal_area(g, ivs)).epsilon(1e-12));
                // every enumerated configuration is at least as large
                for (const SurfaceConfig& cfg : enumerate_surface_configs(g, ivs))
                    CHECK(ue.area <= cfg.total_area + 1e-12);
            }
        }
    }
}

TEST_CASE("surface configurations cover each endpoint exactly once") {
    HoloGeometry g = geom_with(40.0);
    const std::vector<Interval> ivs = {{0, 10}, {15, 40}, {44, 50}};
    for (const SurfaceConfig& cfg : enumerate_surface_configs(g, ivs)) {
        std::vector<int> seen(6, 0);
        for (const auto& [a, b] : cfg.pairs) {
            ++seen[a];
            ++seen[b];
        }
        for (int s : cfg.singletons) ++seen[s];
        for (int c : seen) CHECK(c == 1);
        // declared area equals the sum of its parts
        double total = 0;
        std::vector<double> pos = {0, 10, 15, 40, 44, 50};
        for (const auto& [a, b] : cfg.pairs) total += strip_area_connected(g, pos[b] - pos[a]);
        total += g.a0 * g.y_inf() * static_cast<double>(cfg.singletons.size());
        CHECK(cfg.total_area == doctest::Approx(total).epsilon(1e-12));
    }
}

TEST_CASE("holography input validation") {
    HoloGeometry g = geom_with(40.0);
    CHECK_THROWS_AS(union_entropy(g, {Interval{0, 5}, Interval{4, 9}}), RegionError);
    CHECK_THROWS_AS(union_entropy(g, {Interval{0, 5}, Interval{5, 9}}), RegionError);
    CHECK_THROWS_AS(union_entropy(g, {Interval{3, 3}}), RegionError);
    std::vector<Interval> seven;
    for (int i = 0; i < 7; ++i) seven.push_back({i * 10.0, i * 10.0 + 5.0});
    CHECK_THROWS_AS(union_entropy(g, seven), RegionError);
    HoloGeometry bad = geom_with(-1.0);
    CHECK_THROWS_AS(strip_area_disconnected(bad), InvalidSpecError);
    HoloGeometry d3 = geom_with(40.0, 1.0, 3);
    CHECK_THROWS_AS(turning_point(d3, 1.0), InvalidSpecError);
}

TEST_CASE("fixed-window slopes of the area grow with the nonlocality scale") {
    double prev = 0.0;
    for (double a0 : {25.0, 30.0, 35.0}) {
        HoloGeometry g = geom_with(a0);
        // least-squares slope of area(l) through l in [1, 20]
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (int l = 1; l <= 20; ++l) {
            const double y = strip_entropy(g, l).area;
            sx += l;
            sy += y;
            sxx += static_cast<double>(l) * l;
            sxy += l * y;
            ++n;
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        CHECK(slope > prev);
        prev = slope;
    }
}
