#include "nle/cache.hpp"
#include "nle/errors.hpp"
#include "nle/experiments.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <iostream>
#include <optional>

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::string cache_dir;
    int jobs = 0;
    int precision = 0;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool config_required) {
    auto* opt = cmd->add_option("-c,--config", flags.config_path, "experiment config (JSON)");
    if (config_required)
        opt->required();
    cmd->add_option("-o,--out", flags.out_dir, "output directory (overrides config)");
    cmd->add_option("-j,--jobs", flags.jobs, "worker threads (default: hardware)");
    cmd->add_option("-p,--precision", flags.precision,
                    "working decimal digits (overrides config; 0 = auto)");
    cmd->add_option("--cache-dir", flags.cache_dir,
                    "kernel cache directory (or NLE_CACHE_DIR; default ./nle-cache)");
}

nle::KernelCache make_cache(const CommonFlags& flags) {
    std::optional<std::filesystem::path> override_dir;
    if (!flags.cache_dir.empty())
        override_dir = flags.cache_dir;
    return nle::KernelCache::from_environment(override_dir);
}

int run_kind(const std::string& kind, const CommonFlags& flags) {
    nle::ExperimentConfig cfg = nle::ExperimentConfig::from_file(flags.config_path);
    cfg.kind = nle::kind_from_string(kind);
    if (!flags.out_dir.empty())
        cfg.output.dir = flags.out_dir;
    if (flags.jobs > 0)
        cfg.jobs = flags.jobs;
    if (flags.precision > 0 && cfg.lattice)
        cfg.lattice->precision_digits = flags.precision;

    nle::KernelCache cache = make_cache(flags);
    nle::RunResult rr = nle::run(cfg, cache);
    std::cout << rr.rows.size() << " grid points evaluated\n";
    for (const auto& f : rr.files) std::cout << "wrote " << f.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonlocal-lattice entanglement toolkit"};
    app.require_subcommand(1);

    CommonFlags flags;
    const std::vector<std::string> kinds = {"ee", "mi", "i3", "holo-ee", "holo-mi", "holo-i3"};
    const std::vector<std::string> kind_names = {"ee-profile", "mi-scan", "i3-scan",
                                                 "holo-ee", "holo-mi", "holo-i3"};
    std::string selected_kind;
    for (size_t i = 0; i < kinds.size(); ++i) {
        auto* cmd = app.add_subcommand(kinds[i], "run a " + kind_names[i] + " experiment");
        add_common(cmd, flags, true);
        const std::string name = kind_names[i];
        cmd->callback([&selected_kind, name] { selected_kind = name; });
    }

    auto* rep = app.add_subcommand("reproduce", "run a frozen figure recipe");
    std::string figure_id;
    bool extended = false;
    rep->add_option("figure", figure_id, "figure id (see --list)");
    bool list_figures = false;
    rep->add_flag("--list", list_figures, "list available figure ids");
    rep->add_flag("--extended", extended, "allow extended (multi-hour, high-precision) recipes");
    add_common(rep, flags, false);

    auto* self = app.add_subcommand("selfcheck", "run the bundled invariant suites");
    int force_digits = 0;
    self->add_option("--force-digits", force_digits,
                     "override working precision to demonstrate the failure mode");

    auto* cache_cmd = app.add_subcommand("cache", "kernel cache maintenance");
    cache_cmd->require_subcommand(1);
    auto* cache_stats = cache_cmd->add_subcommand("stats", "list cache entries");
    auto* cache_clear = cache_cmd->add_subcommand("clear", "remove cache entries");
    std::string cache_dir_flag;
    for (auto* c : {cache_stats, cache_clear})
        c->add_option("--cache-dir", cache_dir_flag, "cache directory");
    int f_n = 0, f_digits = 0;
    double f_omega = 0.0, f_a = -1.0;
    cache_clear->add_option("--n", f_n, "filter: n_sites");
    cache_clear->add_option("--omega", f_omega, "filter: omega");
    cache_clear->add_option("--a", f_a, "filter: a_param");
    cache_clear->add_option("--digits", f_digits, "filter: precision_digits");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (!selected_kind.empty())
            return run_kind(selected_kind, flags);

        if (rep->parsed()) {
            if (list_figures) {
                for (const auto& id : nle::reproduce_figure_ids()) std::cout << id << "\n";
                return 0;
            }
            if (figure_id.empty())
                throw nle::ConfigError("reproduce: figure id required (try --list)");
            std::optional<std::filesystem::path> out;
            if (!flags.out_dir.empty())
                out = flags.out_dir;
            nle::KernelCache cache = make_cache(flags);
            nle::FigureResult fig = nle::reproduce(figure_id, extended, out, flags.jobs, cache);
            std::cout << fig.rows.size() << " grid points evaluated\n";
            for (const auto& f : fig.files) std::cout << "wrote " << f.string() << "\n";
            return 0;
        }

        if (self->parsed()) {
            nle::SelfcheckOptions opts;
            if (force_digits > 0)
                opts.force_digits = force_digits;
            opts.log = &std::cout;
            nle::SelfcheckResult res = nle::selfcheck(opts);
            return res.all_passed() ? 0 : 2;
        }

        if (cache_cmd->parsed()) {
            std::optional<std::filesystem::path> override_dir;
            if (!cache_dir_flag.empty())
                override_dir = cache_dir_flag;
            nle::KernelCache cache = nle::KernelCache::from_environment(override_dir);
            if (cache_stats->parsed()) {
                const auto entries = cache.stats();
                std::cout << entries.size() << " cache entries in " << cache.dir().string()
                          << "\n";
                for (const auto& e : entries)
                    std::cout << e.file << "  n=" << e.spec.n_sites << " omega=" << e.spec.omega
                              << " A=" << e.spec.a_param << " bytes=" << e.bytes << " sha1="
                              << e.checksum.substr(0, 12)
                              << (e.checksum_ok ? "" : " (CORRUPT)") << "\n";
                return 0;
            }
            nle::KernelCache::Filter filter;
            if (f_n > 0)
                filter.n_sites = f_n;
            if (f_omega > 0)
                filter.omega = f_omega;
            if (f_a >= 0)
                filter.a_param = f_a;
            if (f_digits > 0)
                filter.precision_digits = f_digits;
            std::cout << cache.clear(filter) << " entries removed\n";
            return 0;
        }
    } catch (const nle::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const nle::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const nle::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
