#pragma once

#include "nle/cache.hpp"
#include "nle/gaussian.hpp"
#include "nle/holography.hpp"
#include "nle/report.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nle {

enum class ExperimentKind { ee_profile, mi_scan, i3_scan, holo_ee, holo_mi, holo_i3 };

ExperimentKind kind_from_string(const std::string& name);
const char* to_string(ExperimentKind kind);

// Region grids for the lattice kinds. Separations and lengths are site
// counts; intervals are laid out left to right from the anchor with equal
// gaps between consecutive regions.
struct RegionGrid {
    int anchor = 0;
    std::vector<int> lengths;      // ee-profile sweep
    int length = 0;                // first-interval length for mi/i3
    int length2 = 0;               // second interval for mi (0 = same as length)
    std::vector<int> separations;  // gap grid for mi/i3
};

// Interval grids for the holographic kinds (boundary coordinates).
struct IntervalGrid {
    double length = 0.0;
    std::vector<double> lengths;  // holo-ee width sweep
    std::vector<double> separations;
};

struct OutputOptions {
    std::filesystem::path dir = "out";
    std::vector<std::string> formats = {"csv", "json"};
    int digits = 17;  // significant digits for CSV value columns

    bool has(const std::string& fmt) const;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::ee_profile;
    std::optional<LatticeSpec> lattice;
    std::optional<HoloGeometry> geometry;
    RegionGrid regions;
    IntervalGrid intervals;
    OutputOptions output;
    std::uint64_t seed = 12345;
    int jobs = 0;  // 0 = hardware concurrency

    static ExperimentConfig from_json(const json& j);
    static ExperimentConfig from_file(const std::filesystem::path& path);
    json to_json() const;
    // The experiment-defining content only (kind, physics, grids, seed);
    // output paths and worker counts are excluded so the recipe hash is
    // stable across where and how a run executes.
    json canonical_json() const;
    void validate() const;
};

// One evaluated grid point: ordered parameter columns, one or more value
// columns, an optional phase/config annotation and the aggregate wall time of
// the entropies the row depends on.
struct ResultRow {
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<std::pair<std::string, std::string>> values;
    std::string annotation;
    double wall_ms = 0.0;
};

struct RunResult {
    ExperimentConfig config;
    std::vector<ResultRow> rows;
    std::vector<CorrelationReport> reports;
    std::vector<std::filesystem::path> files;
};

// Evaluates the grid without touching the filesystem (kernels still go
// through the cache).
RunResult evaluate(const ExperimentConfig& config, KernelCache& cache);

// evaluate + CSV/JSON and optional SVG/DAT emission under output.dir.
RunResult run(const ExperimentConfig& config, KernelCache& cache);

// ---- figure reproduction ----

std::vector<std::string> reproduce_figure_ids();

// The frozen recipe: grids, lattice sizes and sweep values for one figure.
json recipe_for_figure(const std::string& figure_id);

struct FigureResult {
    std::string figure_id;
    json recipe;
    std::vector<ResultRow> rows;
    std::vector<std::filesystem::path> files;
};

FigureResult reproduce(const std::string& figure_id, bool extended,
                       const std::optional<std::filesystem::path>& out_dir, int jobs,
                       KernelCache& cache);

// ---- desk-scale invariant bundle ----

struct SelfcheckOptions {
    // Overrides working precision in the purity suite to demonstrate the
    // failure mode; leave unset for normal operation.
    std::optional<int> force_digits;
    std::ostream* log = nullptr;  // per-suite progress lines when set
};

struct SelfcheckResult {
    struct Suite {
        std::string name;
        bool passed = false;
        std::string detail;
        double wall_ms = 0.0;
    };
    std::vector<Suite> suites;

    bool all_passed() const;
};

SelfcheckResult selfcheck(const SelfcheckOptions& opts = {});

// Runs body(0..count-1) on a small thread pool; jobs <= 0 uses the hardware
// count. Exceptions are rethrown after completion, lowest index first, so
// failures are deterministic. Workers must not change the default precision.
void parallel_for(int count, int jobs, const std::function<void(int)>& body);

}  // namespace nle
