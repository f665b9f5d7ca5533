#include "nle/experiments.hpp"

#include "nle/errors.hpp"
#include "nle/sha1.hpp"
#include "nle/svg.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

namespace nle {

namespace fs = std::filesystem;

ExperimentKind kind_from_string(const std::string& name) {
    if (name == "ee-profile")
        return ExperimentKind::ee_profile;
    if (name == "mi-scan")
        return ExperimentKind::mi_scan;
    if (name == "i3-scan")
        return ExperimentKind::i3_scan;
    if (name == "holo-ee")
        return ExperimentKind::holo_ee;
    if (name == "holo-mi")
        return ExperimentKind::holo_mi;
    if (name == "holo-i3")
        return ExperimentKind::holo_i3;
    throw ConfigError("unknown experiment kind: " + name);
}

const char* to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::ee_profile: return "ee-profile";
        case ExperimentKind::mi_scan: return "mi-scan";
        case ExperimentKind::i3_scan: return "i3-scan";
        case ExperimentKind::holo_ee: return "holo-ee";
        case ExperimentKind::holo_mi: return "holo-mi";
        case ExperimentKind::holo_i3: return "holo-i3";
    }
    return "?";
}

bool OutputOptions::has(const std::string& fmt) const {
    for (const auto& f : formats)
        if (f == fmt)
            return true;
    return false;
}

namespace {

bool is_lattice_kind(ExperimentKind kind) {
    return kind == ExperimentKind::ee_profile || kind == ExperimentKind::mi_scan ||
           kind == ExperimentKind::i3_scan;
}

std::string fmt_double(double v, int digits = 17) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits > 0 ? digits : 17, v);
    return buf;
}

std::string fmt_real(const Real& v, int digits) {
    return to_decimal_string(v, digits);
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

json geometry_to_json(const HoloGeometry& g) {
    return json{{"d", g.d},
                {"omega", g.omega},
                {"a_cutoff", g.a_cutoff},
                {"a0", g.a0},
                {"area_unit", g.area_unit}};
}

HoloGeometry geometry_from_json(const json& j) {
    HoloGeometry g;
    g.d = j.value("d", 2);
    g.omega = j.value("omega", 1.0);
    g.a_cutoff = j.value("a_cutoff", 1.0);
    g.a0 = j.at("a0").get<double>();
    g.area_unit = j.value("area_unit", 1.0);
    return g;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    ExperimentConfig cfg;
    try {
        cfg.kind = kind_from_string(j.at("kind").get<std::string>());
        if (j.contains("lattice"))
            cfg.lattice = spec_from_json(j.at("lattice"));
        if (j.contains("geometry"))
            cfg.geometry = geometry_from_json(j.at("geometry"));
        if (j.contains("regions")) {
            const json& r = j.at("regions");
            cfg.regions.anchor = r.value("anchor", 0);
            cfg.regions.lengths = r.value("lengths", std::vector<int>{});
            cfg.regions.length = r.value("length", 0);
            cfg.regions.length2 = r.value("length2", 0);
            cfg.regions.separations = r.value("separations", std::vector<int>{});
        }
        if (j.contains("intervals")) {
            const json& r = j.at("intervals");
            cfg.intervals.length = r.value("length", 0.0);
            cfg.intervals.lengths = r.value("lengths", std::vector<double>{});
            cfg.intervals.separations = r.value("separations", std::vector<double>{});
        }
        if (j.contains("output")) {
            const json& o = j.at("output");
            cfg.output.dir = fs::path(o.value("dir", std::string("out")));
            cfg.output.formats = o.value("formats", std::vector<std::string>{"csv", "json"});
            cfg.output.digits = o.value("digits", 17);
        }
        cfg.seed = j.value("seed", static_cast<std::uint64_t>(12345));
        cfg.jobs = j.value("jobs", 0);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("config: cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config: invalid JSON in " + path.string() + ": " + e.what());
    }
    return from_json(j);
}

json ExperimentConfig::to_json() const {
    json j;
    j["kind"] = to_string(kind);
    if (lattice)
        j["lattice"] = spec_to_json(*lattice);
    if (geometry)
        j["geometry"] = geometry_to_json(*geometry);
    if (is_lattice_kind(kind)) {
        json r;
        r["anchor"] = regions.anchor;
        if (!regions.lengths.empty())
            r["lengths"] = regions.lengths;
        if (regions.length > 0)
            r["length"] = regions.length;
        if (regions.length2 > 0)
            r["length2"] = regions.length2;
        if (!regions.separations.empty())
            r["separations"] = regions.separations;
        j["regions"] = r;
    } else {
        json r;
        if (intervals.length > 0)
            r["length"] = intervals.length;
        if (!intervals.lengths.empty())
            r["lengths"] = intervals.lengths;
        if (!intervals.separations.empty())
            r["separations"] = intervals.separations;
        j["intervals"] = r;
    }
    j["output"] = json{{"dir", output.dir.string()},
                       {"formats", output.formats},
                       {"digits", output.digits}};
    j["seed"] = seed;
    j["jobs"] = jobs;
    return j;
}

json ExperimentConfig::canonical_json() const {
    json j = to_json();
    j.erase("output");
    j.erase("jobs");
    j["digits"] = output.digits;
    return j;
}

void ExperimentConfig::validate() const {
    if (is_lattice_kind(kind)) {
        if (!lattice)
            throw ConfigError("config: lattice section required for field-theory kinds");
        lattice->validate();
        const int n = lattice->n_sites;
        if (regions.anchor < 0)
            throw ConfigError("config: anchor must be non-negative");
        switch (kind) {
            case ExperimentKind::ee_profile: {
                if (regions.lengths.empty())
                    throw ConfigError("config: ee-profile needs a non-empty lengths grid");
                for (int l : regions.lengths) {
                    if (l <= 0)
                        throw ConfigError("config: interval lengths must be positive");
                    if (regions.anchor + l > n)
                        throw ConfigError("config: interval leaves the lattice");
                }
                break;
            }
            case ExperimentKind::mi_scan: {
                const int l1 = regions.length;
                const int l2 = regions.length2 > 0 ? regions.length2 : regions.length;
                if (l1 <= 0 || l2 <= 0)
                    throw ConfigError("config: mi-scan needs positive interval lengths");
                if (regions.separations.empty())
                    throw ConfigError("config: mi-scan needs a separation grid");
                for (int x : regions.separations) {
                    if (x < 1)
                        throw ConfigError("config: separations must be at least 1");
                    if (regions.anchor + l1 + x + l2 > n)
                        throw ConfigError("config: mi-scan regions leave the lattice");
                }
                break;
            }
            case ExperimentKind::i3_scan: {
                const int l = regions.length;
                if (l <= 0)
                    throw ConfigError("config: i3-scan needs a positive interval length");
                if (regions.separations.empty())
                    throw ConfigError("config: i3-scan needs a separation grid");
                for (int x : regions.separations) {
                    if (x < 1)
                        throw ConfigError("config: separations must be at least 1");
                    if (regions.anchor + 3 * l + 2 * x > n)
                        throw ConfigError("config: i3-scan regions leave the lattice");
                }
                break;
            }
            default: break;
        }
    } else {
        if (!geometry)
            throw ConfigError("config: geometry section required for holographic kinds");
        geometry->validate();
        switch (kind) {
            case ExperimentKind::holo_ee:
                if (intervals.lengths.empty())
                    throw ConfigError("config: holo-ee needs a non-empty lengths grid");
                for (double l : intervals.lengths)
                    if (!(l > 0))
                        throw ConfigError("config: strip widths must be positive");
                break;
            case ExperimentKind::holo_mi:
            case ExperimentKind::holo_i3:
                if (!(intervals.length > 0))
                    throw ConfigError("config: holographic scans need a positive length");
                if (intervals.separations.empty())
                    throw ConfigError("config: holographic scans need a separation grid");
                for (double x : intervals.separations)
                    if (!(x > 0))
                        throw ConfigError("config: separations must be positive");
                break;
            default: break;
        }
    }
    if (output.digits < 0)
        throw ConfigError("config: output digits must be non-negative");
}

void parallel_for(int count, int jobs, const std::function<void(int)>& body) {
    if (count <= 0)
        return;
    if (jobs <= 0)
        jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1)
        jobs = 1;
    jobs = std::min(jobs, count);
    if (jobs == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<size_t>(count));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(jobs));
    for (int t = 0; t < jobs; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count)
                    return;
                try {
                    body(i);
                } catch (...) {
                    errors[static_cast<size_t>(i)] = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

namespace {

// Deduplicated entropy evaluations for one kernel. Regions are normalized by
// translation (circulant blocks depend only on site differences, so shifted
// patterns give bitwise-identical entropies); unique patterns are computed in
// parallel, results are read back by id.
class EntropySweep {
  public:
    explicit EntropySweep(const KernelPair& kernel) : kernel_(kernel) {}

    int request(const Region& region) {
        std::vector<int> pattern = region.sites();
        const int base = pattern.empty() ? 0 : pattern.front();
        for (int& s : pattern) s -= base;
        auto [it, inserted] = ids_.emplace(std::move(pattern), static_cast<int>(patterns_.size()));
        if (inserted)
            patterns_.push_back(it->first);
        return it->second;
    }

    void compute_all(int jobs) {
        values_.resize(patterns_.size());
        times_.assign(patterns_.size(), 0.0);
        parallel_for(static_cast<int>(patterns_.size()), jobs, [&](int i) {
            const auto t0 = std::chrono::steady_clock::now();
            values_[static_cast<size_t>(i)] =
                entanglement_entropy(kernel_, Region(patterns_[static_cast<size_t>(i)]));
            times_[static_cast<size_t>(i)] = elapsed_ms(t0);
        });
    }

    const Real& value(int id) const { return values_[static_cast<size_t>(id)]; }
    double wall_ms(int id) const { return times_[static_cast<size_t>(id)]; }

  private:
    const KernelPair& kernel_;
    std::map<std::vector<int>, int> ids_;
    std::vector<std::vector<int>> patterns_;
    std::vector<Real> values_;
    std::vector<double> times_;
};

std::vector<std::pair<std::string, std::string>> lattice_params(const LatticeSpec& spec) {
    return {{"n_sites", std::to_string(spec.n_sites)},
            {"omega", fmt_double(spec.omega)},
            {"a_param", fmt_double(spec.a_param)},
            {"precision_digits", std::to_string(spec.effective_digits())}};
}

std::vector<std::pair<std::string, std::string>> geometry_params(const HoloGeometry& g) {
    return {{"d", std::to_string(g.d)},
            {"omega", fmt_double(g.omega)},
            {"a0", fmt_double(g.a0)},
            {"a_cutoff", fmt_double(g.a_cutoff)}};
}

json run_spec_echo(const ExperimentConfig& cfg) {
    json j;
    j["kind"] = to_string(cfg.kind);
    if (cfg.lattice)
        j["lattice"] = spec_to_json(*cfg.lattice);
    if (cfg.geometry)
        j["geometry"] = geometry_to_json(*cfg.geometry);
    return j;
}

RunResult evaluate_ee_profile(const ExperimentConfig& cfg, KernelCache& cache) {
    const LatticeSpec& spec = *cfg.lattice;
    KernelPair kernel = cache.get_or_build(spec);
    EntropySweep sweep(kernel);

    std::vector<int> ids;
    for (int l : cfg.regions.lengths)
        ids.push_back(sweep.request(Region::interval(cfg.regions.anchor, l)));
    sweep.compute_all(cfg.jobs);

    RunResult rr;
    rr.config = cfg;
    for (size_t i = 0; i < cfg.regions.lengths.size(); ++i) {
        const int l = cfg.regions.lengths[i];
        ResultRow row;
        row.params = lattice_params(spec);
        row.params.emplace_back("anchor", std::to_string(cfg.regions.anchor));
        row.params.emplace_back("l", std::to_string(l));
        row.values.emplace_back("entropy_nats", fmt_real(sweep.value(ids[i]), cfg.output.digits));
        row.wall_ms = sweep.wall_ms(ids[i]);
        rr.rows.push_back(std::move(row));

        CorrelationReport rep;
        rep.spec = run_spec_echo(cfg);
        const std::string label = "interval[" + std::to_string(cfg.regions.anchor) + "," +
                                  std::to_string(cfg.regions.anchor + l) + ")";
        rep.regions = {label};
        rep.entropies[label] = fmt_real(sweep.value(ids[i]), 0);
        rep.wall_time_ms = sweep.wall_ms(ids[i]);
        rr.reports.push_back(std::move(rep));
    }
    return rr;
}

RunResult evaluate_mi_scan(const ExperimentConfig& cfg, KernelCache& cache) {
    const LatticeSpec& spec = *cfg.lattice;
    const int anchor = cfg.regions.anchor;
    const int l1 = cfg.regions.length;
    const int l2 = cfg.regions.length2 > 0 ? cfg.regions.length2 : cfg.regions.length;
    KernelPair kernel = cache.get_or_build(spec);
    EntropySweep sweep(kernel);

    const Region r1 = Region::interval(anchor, l1);
    const int id1 = sweep.request(r1);
    const int id2 = sweep.request(Region::interval(anchor, l2));
    std::vector<int> union_ids;
    for (int x : cfg.regions.separations) {
        const Region r2 = Region::interval(anchor + l1 + x, l2);
        union_ids.push_back(sweep.request(region_union(r1, r2)));
    }
    sweep.compute_all(cfg.jobs);

    RunResult rr;
    rr.config = cfg;
    for (size_t i = 0; i < cfg.regions.separations.size(); ++i) {
        const int x = cfg.regions.separations[i];
        const Real mi = sweep.value(id1) + sweep.value(id2) - sweep.value(union_ids[i]);
        const double wall =
            sweep.wall_ms(id1) + sweep.wall_ms(id2) + sweep.wall_ms(union_ids[i]);

        ResultRow row;
        row.params = lattice_params(spec);
        row.params.emplace_back("anchor", std::to_string(anchor));
        row.params.emplace_back("l1", std::to_string(l1));
        row.params.emplace_back("l2", std::to_string(l2));
        row.params.emplace_back("x", std::to_string(x));
        row.params.emplace_back("x_over_L", fmt_double(static_cast<double>(x) / (l1 + l2)));
        row.values.emplace_back("mutual_information_nats", fmt_real(mi, cfg.output.digits));
        row.wall_ms = wall;
        rr.rows.push_back(std::move(row));

        CorrelationReport rep;
        rep.spec = run_spec_echo(cfg);
        rep.regions = {"r1", "r2", "r1+r2"};
        rep.entropies["r1"] = fmt_real(sweep.value(id1), 0);
        rep.entropies["r2"] = fmt_real(sweep.value(id2), 0);
        rep.entropies["r1+r2"] = fmt_real(sweep.value(union_ids[i]), 0);
        rep.mutual = fmt_real(mi, 0);
        rep.wall_time_ms = wall;
        rr.reports.push_back(std::move(rep));
    }
    return rr;
}

RunResult evaluate_i3_scan(const ExperimentConfig& cfg, KernelCache& cache) {
    const LatticeSpec& spec = *cfg.lattice;
    const int anchor = cfg.regions.anchor;
    const int l = cfg.regions.length;
    KernelPair kernel = cache.get_or_build(spec);
    EntropySweep sweep(kernel);

    struct PointIds {
        int s1, s12, s13, s23, s123;
    };
    const int id_single = sweep.request(Region::interval(anchor, l));
    std::vector<PointIds> ids;
    for (int x : cfg.regions.separations) {
        const Region r1 = Region::interval(anchor, l);
        const Region r2 = Region::interval(anchor + l + x, l);
        const Region r3 = Region::interval(anchor + 2 * (l + x), l);
        PointIds p;
        p.s1 = id_single;
        p.s12 = sweep.request(region_union(r1, r2));
        p.s13 = sweep.request(region_union(r1, r3));
        p.s23 = sweep.request(region_union(r2, r3));
        p.s123 = sweep.request(region_union(r1, r2, r3));
        ids.push_back(p);
    }
    sweep.compute_all(cfg.jobs);

    RunResult rr;
    rr.config = cfg;
    for (size_t i = 0; i < cfg.regions.separations.size(); ++i) {
        const int x = cfg.regions.separations[i];
        const PointIds& p = ids[i];
        const Real s1 = sweep.value(p.s1);
        const Real s12 = sweep.value(p.s12);
        const Real s13 = sweep.value(p.s13);
        const Real s23 = sweep.value(p.s23);
        const Real s123 = sweep.value(p.s123);
        const Real i3 = 3 * s1 - s12 - s13 - s23 + s123;
        const Real gap = s12 + s13 - s123 - s1;
        const double wall = sweep.wall_ms(p.s1) + sweep.wall_ms(p.s12) + sweep.wall_ms(p.s13) +
                            sweep.wall_ms(p.s23) + sweep.wall_ms(p.s123);

        ResultRow row;
        row.params = lattice_params(spec);
        row.params.emplace_back("anchor", std::to_string(anchor));
        row.params.emplace_back("l", std::to_string(l));
        row.params.emplace_back("x", std::to_string(x));
        row.values.emplace_back("tripartite_information_nats", fmt_real(i3, cfg.output.digits));
        row.values.emplace_back("ssa_gap_nats", fmt_real(gap, cfg.output.digits));
        row.wall_ms = wall;
        rr.rows.push_back(std::move(row));

        CorrelationReport rep;
        rep.spec = run_spec_echo(cfg);
        rep.regions = {"r1", "r2", "r3"};
        rep.entropies["r1"] = fmt_real(s1, 0);
        rep.entropies["r2"] = fmt_real(s1, 0);
        rep.entropies["r3"] = fmt_real(s1, 0);
        rep.entropies["r1+r2"] = fmt_real(s12, 0);
        rep.entropies["r1+r3"] = fmt_real(s13, 0);
        rep.entropies["r2+r3"] = fmt_real(s23, 0);
        rep.entropies["r1+r2+r3"] = fmt_real(s123, 0);
        rep.tripartite = fmt_real(i3, 0);
        rep.ssa_gap = fmt_real(gap, 0);
        rep.wall_time_ms = wall;
        rr.reports.push_back(std::move(rep));
    }
    return rr;
}

json config_to_json(const SurfaceConfig& cfg) {
    json pairs = json::array();
    for (const auto& [a, b] : cfg.pairs) pairs.push_back(json::array({a, b}));
    return json{{"pairs", pairs},
                {"vertical_lines", cfg.singletons},
                {"total_area", cfg.total_area}};
}

RunResult evaluate_holo_ee(const ExperimentConfig& cfg, KernelCache&) {
    const HoloGeometry& geom = *cfg.geometry;
    RunResult rr;
    rr.config = cfg;
    for (double l : cfg.intervals.lengths) {
        const auto t0 = std::chrono::steady_clock::now();
        const StripEntropy se = strip_entropy(geom, l);
        const double wall = elapsed_ms(t0);

        ResultRow row;
        row.params = geometry_params(geom);
        row.params.emplace_back("l", fmt_double(l));
        row.values.emplace_back("area", fmt_double(se.area, cfg.output.digits));
        row.annotation = to_string(se.phase);
        row.wall_ms = wall;
        rr.rows.push_back(std::move(row));

        CorrelationReport rep;
        rep.spec = run_spec_echo(cfg);
        rep.regions = {"strip"};
        rep.entropies["strip"] = fmt_double(se.area);
        rep.phase = to_string(se.phase);
        rep.wall_time_ms = wall;
        rr.reports.push_back(std::move(rep));
    }
    return rr;
}

RunResult evaluate_holo_mi(const ExperimentConfig& cfg, KernelCache&) {
    const HoloGeometry& geom = *cfg.geometry;
    const double l = cfg.intervals.length;
    RunResult rr;
    rr.config = cfg;
    for (double x : cfg.intervals.separations) {
        const auto t0 = std::chrono::steady_clock::now();
        const Interval i1{0.0, l};
        const Interval i2{l + x, 2 * l + x};
        const double s1 = strip_entropy(geom, l).area;
        const UnionEntropy ue = union_entropy(geom, {i1, i2});
        const double mi = std::max(0.0, 2 * s1 - ue.area);
        const double wall = elapsed_ms(t0);
        const char* phase = config_bridges(ue.config) ? "connected" : "disconnected";

        ResultRow row;
        row.params = geometry_params(geom);
        row.params.emplace_back("l", fmt_double(l));
        row.params.emplace_back("x", fmt_double(x));
        row.params.emplace_back("x_over_L", fmt_double(x / (2 * l)));
        row.values.emplace_back("mutual_information", fmt_double(mi, cfg.output.digits));
        row.annotation = phase;
        row.wall_ms = wall;
        rr.rows.push_back(std::move(row));

        CorrelationReport rep;
        rep.spec = run_spec_echo(cfg);
        rep.regions = {"i1", "i2", "i1+i2"};
        rep.entropies["i1"] = fmt_double(s1);
        rep.entropies["i2"] = fmt_double(s1);
        rep.entropies["i1+i2"] = fmt_double(ue.area);
        rep.mutual = fmt_double(mi);
        rep.phase = phase;
        rep.config = config_to_json(ue.config);
        rep.wall_time_ms = wall;
        rr.reports.push_back(std::move(rep));
    }
    return rr;
}

RunResult evaluate_holo_i3(const ExperimentConfig& cfg, KernelCache&) {
    const HoloGeometry& geom = *cfg.geometry;
    const double l = cfg.intervals.length;
    RunResult rr;
    rr.config = cfg;
    for (double x : cfg.intervals.separations) {
        const auto t0 = std::chrono::steady_clock::now();
        const Interval i1{0.0, l};
        const Interval i2{l + x, 2 * l + x};
        const Interval i3{2 * (l + x), 3 * l + 2 * x};
        const double value = holo_tripartite_information(geom, i1, i2, i3);
        const UnionEntropy ue = union_entropy(geom, {i1, i2, i3});
        const double wall = elapsed_ms(t0);

        ResultRow row;
        row.params = geometry_params(geom);
        row.params.emplace_back("l", fmt_double(l));
        row.params.emplace_back("x", fmt_double(x));
        row.params.emplace_back("x_over_L", fmt_double(x / (3 * l)));
        row.values.emplace_back("tripartite_information", fmt_double(value, cfg.output.digits));
        row.annotation = ue.config.encode();
        row.wall_ms = wall;
        rr.rows.push_back(std::move(row));

        CorrelationReport rep;
        rep.spec = run_spec_echo(cfg);
        rep.regions = {"i1", "i2", "i3"};
        rep.entropies["i1+i2+i3"] = fmt_double(ue.area);
        rep.tripartite = fmt_double(value);
        rep.config = config_to_json(ue.config);
        rep.wall_time_ms = wall;
        rr.reports.push_back(std::move(rep));
    }
    return rr;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += "\"\"";
        else
            out.push_back(c);
    }
    out += "\"";
    return out;
}

const char* annotation_column(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::holo_ee:
        case ExperimentKind::holo_mi: return "phase";
        case ExperimentKind::holo_i3: return "config";
        default: return nullptr;
    }
}

std::string render_csv(const ExperimentConfig& cfg, const std::vector<ResultRow>& rows,
                       const std::string& recipe_hash) {
    std::ostringstream os;
    os << "# nle " << to_string(cfg.kind) << "\n";
    os << "# config: " << run_spec_echo(cfg).dump() << "\n";
    os << "# recipe-sha1: " << recipe_hash << "\n";
    if (rows.empty())
        return os.str();
    const char* ann = annotation_column(cfg.kind);
    bool first = true;
    for (const auto& [k, _] : rows.front().params) {
        os << (first ? "" : ",") << k;
        first = false;
    }
    for (const auto& [k, _] : rows.front().values) os << "," << k;
    if (ann)
        os << "," << ann;
    os << ",wall_ms\n";
    for (const ResultRow& row : rows) {
        first = true;
        for (const auto& [_, v] : row.params) {
            os << (first ? "" : ",") << v;
            first = false;
        }
        for (const auto& [_, v] : row.values) os << "," << v;
        if (ann)
            os << "," << csv_quote(row.annotation);
        os << "," << fmt_double(row.wall_ms, 6) << "\n";
    }
    return os.str();
}

json rows_to_json(const std::vector<ResultRow>& rows) {
    json out = json::array();
    for (const ResultRow& row : rows) {
        json r;
        json params = json::object();
        for (const auto& [k, v] : row.params) params[k] = v;
        json values = json::object();
        for (const auto& [k, v] : row.values) values[k] = v;
        r["params"] = params;
        r["values"] = values;
        if (!row.annotation.empty())
            r["annotation"] = row.annotation;
        r["wall_ms"] = row.wall_ms;
        out.push_back(std::move(r));
    }
    return out;
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out << content;
    if (!out)
        throw IoError("write failed for " + path.string());
}

const char* x_axis_param(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::ee_profile: return "l";
        case ExperimentKind::holo_ee: return "l";
        default: return "x";
    }
}

double row_param(const ResultRow& row, const std::string& name) {
    for (const auto& [k, v] : row.params)
        if (k == name)
            return std::stod(v);
    throw Error("row has no parameter named " + name);
}

double row_value(const ResultRow& row, size_t idx = 0) {
    return std::stod(row.values.at(idx).second);
}

}  // namespace

RunResult evaluate(const ExperimentConfig& cfg, KernelCache& cache) {
    cfg.validate();
    switch (cfg.kind) {
        case ExperimentKind::ee_profile: return evaluate_ee_profile(cfg, cache);
        case ExperimentKind::mi_scan: return evaluate_mi_scan(cfg, cache);
        case ExperimentKind::i3_scan: return evaluate_i3_scan(cfg, cache);
        case ExperimentKind::holo_ee: return evaluate_holo_ee(cfg, cache);
        case ExperimentKind::holo_mi: return evaluate_holo_mi(cfg, cache);
        case ExperimentKind::holo_i3: return evaluate_holo_i3(cfg, cache);
    }
    throw ConfigError("unhandled experiment kind");
}

RunResult run(const ExperimentConfig& cfg, KernelCache& cache) {
    RunResult rr = evaluate(cfg, cache);
    std::error_code ec;
    fs::create_directories(cfg.output.dir, ec);
    if (ec)
        throw IoError("cannot create output directory " + cfg.output.dir.string() + ": " +
                      ec.message());

    const std::string stem = to_string(cfg.kind);
    const std::string recipe_hash = git_blob_sha1(cfg.canonical_json().dump());

    if (cfg.output.has("csv")) {
        const fs::path p = cfg.output.dir / (stem + ".csv");
        write_text(p, render_csv(cfg, rr.rows, recipe_hash));
        rr.files.push_back(p);
    }
    if (cfg.output.has("json")) {
        json j;
        j["config"] = cfg.to_json();
        j["recipe_sha1"] = recipe_hash;
        j["rows"] = rows_to_json(rr.rows);
        json reports = json::array();
        for (const CorrelationReport& rep : rr.reports) reports.push_back(rep.to_json());
        j["reports"] = reports;
        const fs::path p = cfg.output.dir / (stem + ".json");
        write_text(p, j.dump(2) + "\n");
        rr.files.push_back(p);
    }
    if (cfg.output.has("svg") && !rr.rows.empty()) {
        const std::string xp = x_axis_param(cfg.kind);
        SvgPlot plot(stem, xp, rr.rows.front().values.front().first);
        std::vector<double> xs, ys;
        for (const ResultRow& row : rr.rows) {
            xs.push_back(row_param(row, xp));
            ys.push_back(row_value(row));
        }
        plot.add_series(stem, xs, ys);
        const fs::path p = cfg.output.dir / (stem + ".svg");
        plot.write(p.string());
        rr.files.push_back(p);
    }
    if (cfg.output.has("dat") && !rr.rows.empty()) {
        const std::string xp = x_axis_param(cfg.kind);
        std::ostringstream os;
        os << "# " << xp;
        for (const auto& [k, _] : rr.rows.front().values) os << " " << k;
        os << "\n";
        for (const ResultRow& row : rr.rows) {
            os << fmt_double(row_param(row, xp));
            for (const auto& [_, v] : row.values) os << " " << v;
            os << "\n";
        }
        const fs::path p = cfg.output.dir / (stem + ".dat");
        write_text(p, os.str());
        rr.files.push_back(p);
    }
    return rr;
}

}  // namespace nle
