#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ringwalk/module.hpp"
#include "ringwalk/rational.hpp"

namespace ringwalk {

/// Exact probability vector over the elements of a ring or module.
struct Distribution {
    int n = 0;
    std::vector<Rat> weights;

    const Rat& operator[](int i) const { return weights[i]; }
    std::vector<int> support() const;
    // weights nonnegative and summing to exactly 1
    void validate() const;
};

Distribution uniform_distribution(int n);
Distribution point_mass(int n, int at);
Distribution distribution_from_strings(const std::vector<std::string>& weights);

// ok -> nullopt; otherwise a witness pair (v, u*v) with P(v) != P(u*v).
std::optional<std::pair<int, int>> validate_constant_on_associates(const FiniteModule& v,
                                                                   const Distribution& p);

// Replace each weight by the average over its U(R)-orbit; the result is
// constant on associates and still sums to 1.
Distribution symmetrize_over_associates(const FiniteModule& v, const Distribution& p);

} // namespace ringwalk
