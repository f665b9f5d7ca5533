#include "nle/cache.hpp"

#include "nle/errors.hpp"
#include "nle/sha1.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace nle {

namespace fs = std::filesystem;

namespace {

constexpr const char* kMagic = "nle-kernel-cache";
constexpr int kFormatVersion = 1;

std::string format_double_token(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    std::string s = os.str();
    for (char& c : s) {
        if (c == '.')
            c = 'p';
        else if (c == '-')
            c = 'm';
        else if (c == '+')
            c = '\0';
    }
    std::string out;
    for (char c : s)
        if (c != '\0')
            out.push_back(c);
    return out;
}

}  // namespace

KernelCache::KernelCache(fs::path dir) : dir_(std::move(dir)) {}

KernelCache KernelCache::from_environment(const std::optional<fs::path>& override_dir) {
    if (override_dir)
        return KernelCache(*override_dir);
    if (const char* env = std::getenv("NLE_CACHE_DIR"); env && *env)
        return KernelCache(fs::path(env));
    return KernelCache(fs::path("nle-cache"));
}

std::string KernelCache::key_filename(const LatticeSpec& spec) {
    std::ostringstream os;
    os << "kernel_N" << spec.n_sites << "_om" << format_double_token(spec.omega) << "_A"
       << format_double_token(spec.a_param) << "_d" << spec.effective_digits() << ".nlk";
    return os.str();
}

void KernelCache::store(const KernelPair& kernels) const {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec)
        throw IoError("cache: cannot create directory " + dir_.string() + ": " + ec.message());

    const LatticeSpec& spec = kernels.spec();
    std::ostringstream payload;
    for (const Real& v : kernels.w_row()) payload << "w " << to_decimal_string(v) << "\n";
    for (const Real& v : kernels.winv_row()) payload << "v " << to_decimal_string(v) << "\n";
    const std::string body = payload.str();

    const fs::path file = dir_ / key_filename(spec);
    std::ofstream out(file);
    if (!out)
        throw IoError("cache: cannot open " + file.string() + " for writing");
    out << kMagic << " v" << kFormatVersion << "\n";
    out << "n_sites " << spec.n_sites << "\n";
    out.precision(17);
    out << "omega " << spec.omega << "\n";
    out << "a_param " << spec.a_param << "\n";
    out << "precision_digits " << spec.precision_digits << "\n";
    out << "construction_digits " << spec.construction_digits() << "\n";
    out << "sha1 " << sha1_hex(body) << "\n";
    out << body;
    if (!out)
        throw IoError("cache: write failed for " + file.string());
}

std::optional<KernelPair> KernelCache::load(const LatticeSpec& spec) const {
    const fs::path file = dir_ / key_filename(spec);
    std::ifstream in(file);
    if (!in)
        return std::nullopt;

    std::string line;
    if (!std::getline(in, line) || line != std::string(kMagic) + " v" + std::to_string(kFormatVersion))
        throw CacheCorruptionError("cache: bad header in " + file.string());

    LatticeSpec stored;
    int construction_digits = 0;
    std::string checksum;
    for (int i = 0; i < 5; ++i) {
        if (!std::getline(in, line))
            throw CacheCorruptionError("cache: truncated header in " + file.string());
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "n_sites")
            ls >> stored.n_sites;
        else if (key == "omega")
            ls >> stored.omega;
        else if (key == "a_param")
            ls >> stored.a_param;
        else if (key == "precision_digits")
            ls >> stored.precision_digits;
        else if (key == "construction_digits")
            ls >> construction_digits;
        else
            throw CacheCorruptionError("cache: unexpected header key in " + file.string());
    }
    if (!std::getline(in, line) || line.rfind("sha1 ", 0) != 0)
        throw CacheCorruptionError("cache: missing checksum in " + file.string());
    checksum = line.substr(5);

    std::ostringstream rest;
    rest << in.rdbuf();
    const std::string body = rest.str();
    if (sha1_hex(body) != checksum)
        throw CacheCorruptionError("cache: checksum mismatch in " + file.string());
    if (stored.n_sites != spec.n_sites || stored.omega != spec.omega ||
        stored.a_param != spec.a_param || stored.effective_digits() != spec.effective_digits())
        throw CacheCorruptionError("cache: spec echo mismatch in " + file.string());

    PrecisionScope scope(construction_digits);
    std::vector<Real> w_row, winv_row;
    std::istringstream bs(body);
    while (std::getline(bs, line)) {
        if (line.empty())
            continue;
        if (line.size() < 3 || (line[0] != 'w' && line[0] != 'v') || line[1] != ' ')
            throw CacheCorruptionError("cache: malformed row in " + file.string());
        Real value(line.substr(2));
        if (line[0] == 'w')
            w_row.push_back(std::move(value));
        else
            winv_row.push_back(std::move(value));
    }
    if (static_cast<int>(w_row.size()) != spec.n_sites ||
        static_cast<int>(winv_row.size()) != spec.n_sites)
        throw CacheCorruptionError("cache: row count mismatch in " + file.string());
    return KernelPair::from_rows(spec, std::move(w_row), std::move(winv_row));
}

KernelPair KernelCache::get_or_build(const LatticeSpec& spec) {
    try {
        if (auto cached = load(spec))
            return *std::move(cached);
    } catch (const CacheCorruptionError&) {
        // fall through to rebuild
    }
    KernelPair built = KernelPair::build_circulant(spec);
    store(built);
    return built;
}

std::vector<KernelCache::Entry> KernelCache::stats() const {
    std::vector<Entry> out;
    if (!fs::exists(dir_))
        return out;
    for (const auto& de : fs::directory_iterator(dir_)) {
        if (!de.is_regular_file() || de.path().extension() != ".nlk")
            continue;
        Entry e;
        e.file = de.path().filename().string();
        e.bytes = de.file_size();
        std::ifstream in(de.path());
        std::string line;
        std::getline(in, line);  // magic
        for (int i = 0; i < 5 && std::getline(in, line); ++i) {
            std::istringstream ls(line);
            std::string key;
            ls >> key;
            if (key == "n_sites")
                ls >> e.spec.n_sites;
            else if (key == "omega")
                ls >> e.spec.omega;
            else if (key == "a_param")
                ls >> e.spec.a_param;
            else if (key == "precision_digits")
                ls >> e.spec.precision_digits;
        }
        if (std::getline(in, line) && line.rfind("sha1 ", 0) == 0) {
            e.checksum = line.substr(5);
            std::ostringstream rest;
            rest << in.rdbuf();
            e.checksum_ok = (sha1_hex(rest.str()) == e.checksum);
        }
        out.push_back(std::move(e));
    }
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.file < b.file; });
    return out;
}

bool KernelCache::Filter::matches(const LatticeSpec& spec) const {
    if (n_sites && spec.n_sites != *n_sites)
        return false;
    if (omega && spec.omega != *omega)
        return false;
    if (a_param && spec.a_param != *a_param)
        return false;
    if (precision_digits && spec.precision_digits != *precision_digits)
        return false;
    return true;
}

int KernelCache::clear(const Filter& filter) {
    int removed = 0;
    for (const Entry& e : stats()) {
        if (!filter.matches(e.spec))
            continue;
        std::error_code ec;
        if (fs::remove(dir_ / e.file, ec))
            ++removed;
        else if (ec)
            throw IoError("cache: cannot remove " + (dir_ / e.file).string() + ": " + ec.message());
    }
    return removed;
}

}  // namespace nle
