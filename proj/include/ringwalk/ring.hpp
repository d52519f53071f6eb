#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ringwalk/errors.hpp"

namespace ringwalk {

/// A finite commutative unital ring with explicit element-indexed operation
/// tables. All builders fill the same representation regardless of how the
/// ring was constructed, so downstream code never branches on provenance.
/// The zero ring (size 1, one == zero) is a legal value everywhere.
struct FiniteRing {
    int n = 0;                    // element count
    std::vector<int> add;         // n×n, row-major
    std::vector<int> mul;         // n×n, row-major
    std::vector<int> neg;         // n
    int zero = 0;
    int one = 0;
    std::string name;             // human-readable construction descriptor
    std::vector<std::string> labels;

    int addv(int a, int b) const { return add[static_cast<size_t>(a) * n + b]; }
    int mulv(int a, int b) const { return mul[static_cast<size_t>(a) * n + b]; }
    int negv(int a) const { return neg[a]; }
    int subv(int a, int b) const { return addv(a, neg[b]); }
    bool is_zero_ring() const { return n == 1; }

    // Ring axioms. Exhaustive triples for n <= 256, randomized sampling
    // above. Throws ValidationError on the first violation.
    void validate() const;
};

using RingPtr = std::shared_ptr<const FiniteRing>;

struct Ideal {
    RingPtr ring;
    std::vector<int> members; // sorted

    bool contains(int a) const;
    int size() const { return static_cast<int>(members.size()); }
};

struct UnitGroup {
    RingPtr ring;
    std::vector<int> members;    // sorted
    std::vector<int> inverse;    // ring-element indexed; -1 for non-units

    bool contains(int a) const { return inverse[a] >= 0; }
    int size() const { return static_cast<int>(members.size()); }
};

// Result of quotienting a ring by an ideal. `ring` has one element per
// coset; cosets are ordered by their least representative. `to_rep` maps a
// parent element to the least element of its coset, `to_index` to the coset's
// position in the quotient, and `rep` is the inverse of `to_index`.
struct QuotientRing {
    RingPtr ring;
    std::vector<int> to_rep;
    std::vector<int> to_index;
    std::vector<int> rep;
};

RingPtr build_zn(int n);
RingPtr build_gf(int p, int k, const std::vector<int>& poly);
RingPtr build_product(const std::vector<RingPtr>& factors);
QuotientRing quotient_ring(const RingPtr& r, const Ideal& ideal);

UnitGroup units(const RingPtr& r);
std::vector<int> idempotents(const FiniteRing& r);
Ideal principal_ideal(const RingPtr& r, int a);
bool is_ideal(const FiniteRing& r, const std::vector<int>& members);

// Units of the corner ring Re (identity e) for an idempotent e, as ring
// element indices.
std::vector<int> corner_units(const FiniteRing& r, int e);

} // namespace ringwalk
