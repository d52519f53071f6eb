#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ringwalk/ring.hpp"

namespace ringwalk {

/// A finite module over a FiniteRing, stored as explicit tables: the
/// abelian-group structure of (V,+) plus the scalar action r·v.
struct FiniteModule {
    RingPtr ring;
    int n = 0;
    std::vector<int> add;     // n×n
    std::vector<int> neg;     // n
    int zero = 0;
    std::vector<int> action;  // |R|×n, row r = action of scalar r
    std::string name;
    std::vector<std::string> labels;

    int addv(int a, int b) const { return add[static_cast<size_t>(a) * n + b]; }
    int negv(int a) const { return neg[a]; }
    int subv(int a, int b) const { return addv(a, neg[b]); }
    int act(int r, int v) const { return action[static_cast<size_t>(r) * n + v]; }

    // Module axioms: abelian group plus 1·v = v, (r+s)v = rv+sv,
    // r(v+w) = rv+rw, (rs)v = r(sv). Exhaustive while |R|·|V| <= 4096,
    // randomized sampling above.
    void validate() const;
};

using ModulePtr = std::shared_ptr<const FiniteModule>;

struct CyclicSubmodule {
    ModulePtr module;
    int generator = 0;          // least element generating `members`
    std::vector<int> members;   // sorted; equals {r·generator : r in R}
    Ideal annihilator;          // of the generator (hence of the submodule)

    int size() const { return static_cast<int>(members.size()); }
};

ModulePtr build_free_module(const RingPtr& r, int d);
ModulePtr build_cyclic_module(const RingPtr& r, const Ideal& ideal);
ModulePtr direct_sum(const std::vector<ModulePtr>& modules);

Ideal annihilator_of(const FiniteModule& v, int elem);
std::vector<CyclicSubmodule> cyclic_submodules(const ModulePtr& v);
std::vector<int> associates_orbit(const FiniteModule& v, const UnitGroup& u, int elem);

// Prop: Rv = Rw iff U(R)v = U(R)w, for every finite module. Exposed as a
// test oracle; enumerates all pairs.
bool check_cyclic_equals_unit_orbit(const FiniteModule& v);

// The least idempotent e (in the Re-containment order) with e·v = v,
// computed as the product of all fixing idempotents.
int minimal_fixing_idempotent(const FiniteModule& v, int elem);

// The set R·v, sorted.
std::vector<int> cyclic_span(const FiniteModule& v, int elem);

} // namespace ringwalk
