#include "nle/region.hpp"

#include "nle/errors.hpp"

#include <algorithm>
#include <sstream>

namespace nle {

Region::Region(std::vector<int> sites, std::string label)
    : sites_(std::move(sites)), label_(std::move(label)) {
    std::sort(sites_.begin(), sites_.end());
    for (size_t i = 0; i < sites_.size(); ++i) {
        if (sites_[i] < 0)
            throw RegionError("region site index is negative");
        if (i > 0 && sites_[i] == sites_[i - 1])
            throw RegionError("region contains a duplicate site");
    }
}

Region Region::interval(int begin, int length, std::string label) {
    if (length <= 0)
        throw RegionError("interval length must be positive");
    std::vector<int> s(static_cast<size_t>(length));
    for (int i = 0; i < length; ++i) s[static_cast<size_t>(i)] = begin + i;
    return Region(std::move(s), std::move(label));
}

bool Region::disjoint_with(const Region& other) const {
    size_t i = 0, j = 0;
    while (i < sites_.size() && j < other.sites_.size()) {
        if (sites_[i] == other.sites_[j])
            return false;
        if (sites_[i] < other.sites_[j])
            ++i;
        else
            ++j;
    }
    return true;
}

Region Region::union_with(const Region& other) const {
    std::vector<int> merged;
    merged.reserve(sites_.size() + other.sites_.size());
    std::merge(sites_.begin(), sites_.end(), other.sites_.begin(), other.sites_.end(),
               std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    return Region(std::move(merged));
}

Region Region::complement(int n_sites) const {
    std::vector<int> comp;
    comp.reserve(static_cast<size_t>(n_sites) - sites_.size());
    size_t k = 0;
    for (int i = 0; i < n_sites; ++i) {
        if (k < sites_.size() && sites_[k] == i)
            ++k;
        else
            comp.push_back(i);
    }
    return Region(std::move(comp));
}

std::string Region::describe() const {
    if (!label_.empty())
        return label_;
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < sites_.size(); ++i) {
        if (i)
            os << ",";
        os << sites_[i];
    }
    os << "}";
    return os.str();
}

Region region_union(const Region& a, const Region& b) {
    return a.union_with(b);
}

Region region_union(const Region& a, const Region& b, const Region& c) {
    return a.union_with(b).union_with(c);
}

}  // namespace nle
