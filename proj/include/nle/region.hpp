#pragma once

#include <string>
#include <vector>

namespace nle {

// A subsystem: a sorted, duplicate-free set of lattice sites. Any union of
// intervals is allowed; the multipartite measures need non-contiguous sets.
// Site indices are validated against a concrete lattice at restriction time.
class Region {
  public:
    Region() = default;
    explicit Region(std::vector<int> sites, std::string label = "");

    // Contiguous block [begin, begin + length).
    static Region interval(int begin, int length, std::string label = "");

    const std::vector<int>& sites() const { return sites_; }
    int size() const { return static_cast<int>(sites_.size()); }
    bool empty() const { return sites_.empty(); }
    const std::string& label() const { return label_; }

    bool disjoint_with(const Region& other) const;
    Region union_with(const Region& other) const;

    // All sites of an n_sites lattice not in this region.
    Region complement(int n_sites) const;

    std::string describe() const;  // label if set, else the site list

  private:
    std::vector<int> sites_;
    std::string label_;
};

Region region_union(const Region& a, const Region& b);
Region region_union(const Region& a, const Region& b, const Region& c);

}  // namespace nle
