#pragma once

#include "nle/kernel.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace nle {

// Disk cache for kernel pairs, one file per (n_sites, omega, a_param,
// precision_digits) key. Files carry a versioned header, a checksum over the
// payload, and decimal-string rows that round-trip exactly at construction
// precision. A checksum mismatch surfaces as CacheCorruptionError;
// get_or_build treats that as a miss and rebuilds.
class KernelCache {
  public:
    explicit KernelCache(std::filesystem::path dir);

    // Resolution order: explicit override, NLE_CACHE_DIR, ./nle-cache.
    static KernelCache from_environment(
        const std::optional<std::filesystem::path>& override_dir = std::nullopt);

    const std::filesystem::path& dir() const { return dir_; }

    KernelPair get_or_build(const LatticeSpec& spec);
    std::optional<KernelPair> load(const LatticeSpec& spec) const;  // throws on corruption
    void store(const KernelPair& kernels) const;

    static std::string key_filename(const LatticeSpec& spec);

    struct Entry {
        std::string file;
        LatticeSpec spec;
        uintmax_t bytes = 0;
        std::string checksum;
        bool checksum_ok = false;
    };
    std::vector<Entry> stats() const;

    struct Filter {
        std::optional<int> n_sites;
        std::optional<double> omega;
        std::optional<double> a_param;
        std::optional<int> precision_digits;

        bool matches(const LatticeSpec& spec) const;
    };
    // Removes matching entries, returns how many were deleted.
    int clear(const Filter& filter = {});

  private:
    std::filesystem::path dir_;
};

}  // namespace nle
