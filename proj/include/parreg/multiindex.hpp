#pragma once

#include <initializer_list>
#include <numeric>
#include <vector>

#include "parreg/errors.hpp"

namespace parreg {

// Multi-index alpha in n variables; entries are non-negative.
struct MultiIndex {
    std::vector<int> entries;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> e) : entries(std::move(e)) { validate(); }
    MultiIndex(std::initializer_list<int> e) : entries(e) { validate(); }

    int dim() const { return static_cast<int>(entries.size()); }

    int order() const { return std::accumulate(entries.begin(), entries.end(), 0); }

    int operator[](int i) const { return entries[static_cast<std::size_t>(i)]; }

    bool operator<(const MultiIndex& other) const { return entries < other.entries; }
    bool operator==(const MultiIndex& other) const { return entries == other.entries; }

  private:
    void validate() const {
        for (int e : entries)
            if (e < 0) throw config_error("multi-index entries must be non-negative");
    }
};

// xi^alpha for a real frequency vector.
template <typename Vec>
double monomial(const Vec& xi, const MultiIndex& alpha) {
    double v = 1.0;
    for (int i = 0; i < alpha.dim(); ++i)
        for (int k = 0; k < alpha[i]; ++k) v *= xi[i];
    return v;
}

}  // namespace parreg
