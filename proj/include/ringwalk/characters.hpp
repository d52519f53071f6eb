#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "ringwalk/module.hpp"

namespace ringwalk {

/// Exact root of unity e^{2*pi*i*num/den}, kept reduced with 0 <= num < den.
struct Angle {
    long num = 0;
    long den = 1;

    bool operator==(const Angle&) const = default;
    auto operator<=>(const Angle&) const = default;
    bool is_zero() const { return num == 0; }
    std::complex<double> value() const;
};

Angle make_angle(long num, long den);
Angle angle_add(Angle a, Angle b);
Angle angle_scale(Angle a, long k);

/// A finite group presented by a multiplication table over local indices
/// 0..n-1. `element` optionally records what each local index denotes in an
/// enclosing structure (e.g. ring element ids for a unit group).
struct GroupTable {
    int n = 0;
    std::vector<int> op; // n×n
    int id = 0;
    std::vector<int> inv;
    std::vector<int> element;

    int opv(int a, int b) const { return op[static_cast<size_t>(a) * n + b]; }
    int order_of(int a) const;
    void validate_abelian_group() const; // throws ValidationError
};

GroupTable additive_group(const FiniteModule& v);
GroupTable additive_group(const FiniteRing& r);
// Group over the given ring elements under ring multiplication (the caller
// guarantees closure, e.g. U(R) or U(Re)).
GroupTable multiplicative_group(const FiniteRing& r, const std::vector<int>& members, int identity);

/// Invariant-factor presentation of a finite abelian group: a basis
/// g_1..g_t of orders d_1 | d_2 | ... | d_t with every element uniquely
/// sum_i a_i g_i. coord stores the exponent tuple of each element.
struct AbelianPresentation {
    int group_size = 1;
    std::vector<int> basis;   // local indices into the group table
    std::vector<int> orders;  // ascending divisibility chain
    std::vector<int> coord;   // group_size × t

    int t() const { return static_cast<int>(orders.size()); }
    std::vector<int> coords_of(int x) const;
};

// Greedy maximal-order decomposition; recurses on the quotient by the
// chosen generator and searches each coset exhaustively for a minimal-order
// lift. Rejects tables that are not abelian groups.
AbelianPresentation invariant_factors(const GroupTable& g);

struct Character {
    std::shared_ptr<const AbelianPresentation> pres;
    std::vector<int> exponents;
};

/// All characters of a presented abelian group, indexed with the trivial
/// character first and the rest in lexicographic exponent order.
struct CharacterGroup {
    std::shared_ptr<const AbelianPresentation> pres;

    int size() const { return pres->group_size; }
    std::vector<int> exponents_of(int chi) const;
    int index_of(const std::vector<int>& exponents) const;
    Angle evaluate(int chi, int x) const;
    Character character(int chi) const { return {pres, exponents_of(chi)}; }
};

CharacterGroup character_group(std::shared_ptr<const AbelianPresentation> pres);
Angle evaluate(const Character& chi, int x);

/// The dual module V^ of V: characters of (V,+) with the R-action
/// (r*chi)(v) = chi(rv), materialized as a FiniteModule whose element
/// indices agree with the character indices of `chars`.
struct DualModule {
    ModulePtr base;
    std::shared_ptr<const AbelianPresentation> pres;
    CharacterGroup chars;
    ModulePtr mod;

    Angle chi_at(int chi, int v) const { return chars.evaluate(chi, v); }
};

DualModule dual_module(const ModulePtr& v);

// {u in unit_members : u * chi = chi} under the dual action.
std::vector<int> stabilizer_in_units(const DualModule& d, int chi,
                                     const std::vector<int>& unit_members);

} // namespace ringwalk
