#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nle/cache.hpp"
#include "nle/errors.hpp"
#include "nle/experiments.hpp"
#include "nle/report.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <unistd.h>

using namespace nle;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
    static int counter = 0;
    const fs::path p = fs::temp_directory_path() /
                       ("nle-test-" + tag + "-" + std::to_string(::getpid()) + "-" +
                        std::to_string(counter++));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

json small_ee_config(const fs::path& out, double a_param = 10.0) {
    return json{{"kind", "ee-profile"},
                {"lattice",
                 {{"n_sites", 24}, {"omega", 1.0}, {"a_param", a_param}, {"precision_digits", 0}}},
                {"regions", {{"anchor", 0}, {"lengths", {2, 4, 6, 8}}}},
                {"output", {{"dir", out.string()}, {"formats", {"csv", "json", "svg", "dat"}}}},
                {"seed", 7}};
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// CSV stripped of its trailing wall_ms column (the only nondeterministic part).
std::string strip_timing(const std::string& csv) {
    std::istringstream in(csv);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') {
            const size_t cut = line.rfind(',');
            if (cut != std::string::npos)
                line.resize(cut);
        }
        out << line << "\n";
    }
    return out.str();
}

}  // namespace

TEST_CASE("config validation") {
    KernelCache cache(fresh_dir("val"));
    SUBCASE("zero-length interval is rejected") {
        json j = small_ee_config(fresh_dir("val-out"));
        j["regions"]["lengths"] = {0};
        CHECK_THROWS_AS(evaluate(ExperimentConfig::from_json(j), cache), ConfigError);
    }
    SUBCASE("missing grids are rejected") {
        json j = small_ee_config(fresh_dir("val-out2"));
        j["regions"].erase("lengths");
        CHECK_THROWS_AS(evaluate(ExperimentConfig::from_json(j), cache), ConfigError);
    }
    SUBCASE("lattice section required for field-theory kinds") {
        json j = small_ee_config(fresh_dir("val-out3"));
        j.erase("lattice");
        CHECK_THROWS_AS(evaluate(ExperimentConfig::from_json(j), cache), ConfigError);
    }
    SUBCASE("regions must fit the lattice") {
        json j = small_ee_config(fresh_dir("val-out4"));
        j["regions"]["lengths"] = {30};
        CHECK_THROWS_AS(evaluate(ExperimentConfig::from_json(j), cache), ConfigError);
    }
    SUBCASE("unknown kind") {
        json j = small_ee_config(fresh_dir("val-out5"));
        j["kind"] = "ee";
        CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);
    }
}

TEST_CASE("ee-profile at A=0 produces an all-zero entropy column") {
    KernelCache cache(fresh_dir("zero-cache"));
    ExperimentConfig cfg = ExperimentConfig::from_json(small_ee_config(fresh_dir("zero"), 0.0));
    RunResult rr = evaluate(cfg, cache);
    REQUIRE(rr.rows.size() == 4);
    for (const ResultRow& row : rr.rows) CHECK(std::stod(row.values[0].second) == 0.0);
}

TEST_CASE("identical configs give byte-identical CSV apart from timings") {
    const fs::path cache_dir = fresh_dir("det-cache");
    const fs::path out1 = fresh_dir("det1");
    const fs::path out2 = fresh_dir("det2");
    KernelCache cache(cache_dir);

    ExperimentConfig c1 = ExperimentConfig::from_json(small_ee_config(out1));
    c1.jobs = 3;
    ExperimentConfig c2 = ExperimentConfig::from_json(small_ee_config(out2));
    c2.jobs = 1;
    run(c1, cache);
    run(c2, cache);
    const std::string a = strip_timing(read_file(out1 / "ee-profile.csv"));
    std::string b = strip_timing(read_file(out2 / "ee-profile.csv"));
    // normalize the embedded output dir (the only intended difference)
    size_t pos;
    while ((pos = b.find(out2.string())) != std::string::npos)
        b.replace(pos, out2.string().size(), out1.string());
    CHECK(a == b);
}

TEST_CASE("cold and warm cache agree; cache bookkeeping") {
    const fs::path cache_dir = fresh_dir("warm-cache");
    KernelCache cache(cache_dir);
    CHECK(cache.stats().empty());

    ExperimentConfig cfg = ExperimentConfig::from_json(small_ee_config(fresh_dir("warm1")));
    RunResult cold = evaluate(cfg, cache);
    CHECK(cache.stats().size() == 1);  // one kernel key for this run

    RunResult warm = evaluate(cfg, cache);
    REQUIRE(cold.rows.size() == warm.rows.size());
    for (size_t i = 0; i < cold.rows.size(); ++i)
        CHECK(cold.rows[i].values[0].second == warm.rows[i].values[0].second);

    SUBCASE("round trip preserves the stored rows") {
        LatticeSpec spec{24, 1.0, 10.0, 0};
        KernelPair built = KernelPair::build_circulant(spec);
        auto loaded = cache.load(spec);
        REQUIRE(loaded.has_value());
        for (int j = 0; j < spec.n_sites; ++j) {
            CHECK(loaded->w_row()[j] == built.w_row()[j]);
            CHECK(loaded->winv_row()[j] == built.winv_row()[j]);
        }
    }

    SUBCASE("filtered clear removes only matching keys") {
        KernelPair other = KernelPair::build_circulant({16, 1.0, 40.0, 0});
        cache.store(other);
        CHECK(cache.stats().size() == 2);
        KernelCache::Filter f;
        f.a_param = 40.0;
        CHECK(cache.clear(f) == 1);
        CHECK(cache.stats().size() == 1);
        CHECK(cache.stats()[0].spec.a_param == 10.0);
    }

    SUBCASE("corruption is detected and triggers a rebuild") {
        const auto entries = cache.stats();
        REQUIRE(!entries.empty());
        const fs::path victim = cache_dir / entries[0].file;
        std::string content = read_file(victim);
        content[content.size() / 2] = (content[content.size() / 2] == '5') ? '6' : '5';
        std::ofstream(victim) << content;
        LatticeSpec spec{24, 1.0, 10.0, 0};
        CHECK_THROWS_AS(cache.load(spec), CacheCorruptionError);
        KernelPair rebuilt = cache.get_or_build(spec);
        CHECK(rebuilt.identity_residual() <=
              pow(Real(10), -(spec.effective_digits() - 10)));
        CHECK(cache.load(spec).has_value());
    }
}

TEST_CASE("mi-scan column is non-increasing at desk scale") {
    KernelCache cache(fresh_dir("mi-cache"));
    json j{{"kind", "mi-scan"},
           {"lattice", {{"n_sites", 64}, {"omega", 1.0}, {"a_param", 10.0}}},
           {"regions", {{"anchor", 0}, {"length", 4}, {"separations", {1, 2, 4, 8, 16}}}},
           {"output", {{"dir", fresh_dir("mi-out").string()}}}};
    RunResult rr = evaluate(ExperimentConfig::from_json(j), cache);
    double prev = 1e300;
    for (const ResultRow& row : rr.rows) {
        const double mi = std::stod(row.values[0].second);
        CHECK(mi >= -1e-8);
        CHECK(mi <= prev + 1e-12);
        prev = mi;
    }
    SUBCASE("report shape") {
        const json rep = rr.reports.at(0).to_json();
        for (const char* key :
             {"spec", "regions", "entropies", "mutual", "tripartite", "ssa_gap", "wall_time_ms"})
            CHECK(rep.contains(key));
        CHECK(rep["tripartite"].is_null());
        CHECK_FALSE(rep["mutual"].is_null());
    }
}

TEST_CASE("holo-mi run annotates phases and writes files") {
    KernelCache cache(fresh_dir("hm-cache"));
    json j{{"kind", "holo-mi"},
           {"geometry", {{"d", 2}, {"omega", 1.0}, {"a_cutoff", 1.0}, {"a0", 40.0}}},
           {"intervals", {{"length", 50.0}, {"separations", {1.0, 8.0, 20.0, 40.0}}}},
           {"output",
            {{"dir", fresh_dir("hm-out").string()}, {"formats", {"csv", "json", "svg", "dat"}}}}};
    ExperimentConfig cfg = ExperimentConfig::from_json(j);
    RunResult rr = run(cfg, cache);
    REQUIRE(rr.rows.size() == 4);
    CHECK(rr.rows.front().annotation == "connected");
    CHECK(rr.rows.back().annotation == "disconnected");
    CHECK(std::stod(rr.rows.back().values[0].second) == 0.0);
    for (const auto& f : rr.files) CHECK(fs::exists(f));
    const json rep = rr.reports.at(0).to_json();
    CHECK(rep.contains("phase"));
    CHECK(rep.contains("config"));
}

TEST_CASE("reproduce") {
    KernelCache cache(fresh_dir("fig-cache"));
    SUBCASE("unknown figure id") {
        CHECK_THROWS_AS(reproduce("fig99", false, fresh_dir("fig-out"), 0, cache), ConfigError);
    }
    SUBCASE("extended recipes refuse to run without the flag") {
        CHECK_THROWS_AS(reproduce("fig1-right", false, fresh_dir("fig-out2"), 0, cache),
                        ConfigError);
    }
    SUBCASE("fig7-left: strong nonlocality column vanishes") {
        const fs::path out = fresh_dir("fig7");
        FigureResult fig = reproduce("fig7-left", false, out, 0, cache);
        CHECK(fig.rows.size() == 300);  // 3 curves x 100 separations
        int zeros = 0;
        for (const ResultRow& row : fig.rows) {
            double a0 = 0;
            for (const auto& [k, v] : row.params)
                if (k == "a0")
                    a0 = std::stod(v);
            if (a0 == 400.0) {
                CHECK(std::stod(row.values[0].second) == 0.0);
                ++zeros;
            }
        }
        CHECK(zeros == 100);
        for (const char* name : {"data.csv", "plot.svg", "plot.dat", "recipe.json"})
            CHECK(fs::exists(out / "fig7-left" / name));
    }
    SUBCASE("fig6: slope ordering by nonlocality scale") {
        FigureResult fig = reproduce("fig6", false, fresh_dir("fig6"), 0, cache);
        // fit area(l) over l in [1,20] per curve, slopes must increase with a0
        std::map<double, std::vector<std::pair<double, double>>> pts;
        for (const ResultRow& row : fig.rows) {
            double a0 = 0, l = 0;
            for (const auto& [k, v] : row.params) {
                if (k == "a0")
                    a0 = std::stod(v);
                if (k == "l")
                    l = std::stod(v);
            }
            if (l <= 20)
                pts[a0].push_back({l, std::stod(row.values[0].second)});
        }
        double prev = 0.0;
        for (double a0 : {25.0, 30.0, 35.0}) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            const auto& v = pts[a0];
            for (auto [x, y] : v) {
                sx += x;
                sy += y;
                sxx += x * x;
                sxy += x * y;
            }
            const double n = static_cast<double>(v.size());
            const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            CHECK(slope > prev);
            prev = slope;
        }
    }
}

TEST_CASE("selfcheck passes on a healthy build") {
    SelfcheckResult res = selfcheck();
    for (const auto& s : res.suites) {
        INFO(s.name, ": ", s.detail);
        CHECK(s.passed);
    }
    CHECK(res.all_passed());
}

TEST_CASE("selfcheck diagnoses forced low precision") {
    SelfcheckOptions opts;
    opts.force_digits = 15;
    SelfcheckResult res = selfcheck(opts);
    bool purity_failed_with_precision = false;
    for (const auto& s : res.suites) {
        if (s.name == "purity-symmetry") {
            CHECK_FALSE(s.passed);
            purity_failed_with_precision =
                s.detail.find("precision-insufficient") != std::string::npos;
        }
    }
    CHECK(purity_failed_with_precision);
    CHECK_FALSE(res.all_passed());
}
