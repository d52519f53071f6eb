#pragma once

#include <complex>
#include <string>

#include "ringwalk/characters.hpp"
#include "ringwalk/walk.hpp"

namespace ringwalk {

/// One predicted eigenvalue. On the dual-side paths W = R*chi is a cyclic
/// submodule of V^ named by its canonical generator character; on the
/// module-side paths (Frobenius, uniform) W lives in V itself. rho is a
/// character of U(R/ann W) given by exponents against the invariant-factor
/// presentation of that unit group (except on the triple path, where it is
/// a character of U(Re)).
struct SpectrumItem {
    int w_generator = 0;
    std::vector<int> w_gen_coords;
    int w_size = 1;
    std::vector<int> rho_exponents;
    std::vector<int> rho_orders;
    int apex_idempotent = -1;
    std::complex<double> value;
    int multiplicity = 1;
    bool unit_item = false;
    std::string side; // "dual" or "module"
};

struct SpectrumReport {
    std::string path; // general | triple | frobenius | uniform | multiplication
    std::vector<SpectrumItem> items;
    std::vector<std::pair<std::complex<double>, int>> grouped;

    int total_multiplicity() const;
    // flat eigenvalue list with multiplicities expanded
    std::vector<std::complex<double>> eigenvalues() const;
};

// Display grouping of equal eigenvalues at the given tolerance.
std::vector<std::pair<std::complex<double>, int>> group_values(
    const std::vector<std::complex<double>>& values, double tol);

// P^(chi) = sum_b P(b) chi(b); asserts the value is identical (within 1e-12)
// for every generator of R*chi, which holds exactly when P is constant on
// associates.
std::complex<double> fourier_P(const DualModule& d, const Distribution& p, int chi,
                               const UnitGroup& ur);

// Q^(rho) for the pair indexing: sum over those a whose coset a+ann(W) is a
// unit of R/ann(W), of Q(a) rho(a+ann(W)).
struct AnnQuotient {
    QuotientRing quotient;
    UnitGroup q_units;
    GroupTable unit_table;
    std::shared_ptr<const AbelianPresentation> pres;
    CharacterGroup rhos;
    std::vector<int> unit_local;          // quotient index -> local index in unit_table, or -1
    std::vector<int> least_unit_in_coset; // quotient index -> least unit of R in that coset, or -1
};
AnnQuotient ann_quotient(const RingPtr& r, const Ideal& ann, const UnitGroup& ur);
std::complex<double> fourier_Q(const Distribution& q, const AnnQuotient& aq, int rho);

std::complex<double> walk_value(const WalkSpec& spec, std::complex<double> phat,
                                std::complex<double> qhat);

// Pair indexing over cyclic submodules of the dual module.
SpectrumReport predicted_spectrum(const ModulePtr& v, const DualModule& d, const WalkSpec& spec);

// Triple indexing (e, orbit, rho in U(Re)^ vanishing on the stabilizer);
// computed independently of the pair path.
SpectrumReport predicted_spectrum_triple(const ModulePtr& v, const DualModule& d,
                                         const WalkSpec& spec);

// Frobenius fast path for V = R: items indexed by principal ideals Rb, the
// P-transform evaluated through a generating character. Throws
// NoGeneratingCharacter if the ring has none.
SpectrumReport predicted_spectrum_frobenius(const ModulePtr& v, const DualModule& d,
                                            const WalkSpec& spec);

// Finds the least generating character of V = R, or -1 if none exists.
int find_generating_character(const DualModule& d);

// Uniform-P coin-toss path: items indexed by isomorphism classes of cyclic
// submodules of V itself, with multiplicities.
SpectrumReport predicted_spectrum_uniform(const ModulePtr& v, const Distribution& q,
                                          const Rat& alpha);

// Spectrum of the multiplication walk x -> a*x driven by Q (the alpha = 0
// coin-toss with uniform P).
SpectrumReport multiplication_walk_spectrum(const ModulePtr& v, const Distribution& q);

} // namespace ringwalk
