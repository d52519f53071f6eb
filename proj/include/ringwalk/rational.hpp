#pragma once

#include <complex>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ringwalk/errors.hpp"

namespace ringwalk {

using Int = mpz_class;
using Rat = mpq_class;

// Parses "a/b" or "a" (optionally signed). Throws Error on malformed input
// or zero denominator. Result is canonicalized.
Rat parse_rational(const std::string& text);

// Canonical text form: "a" for integers, "a/b" otherwise.
std::string rational_to_string(const Rat& q);

inline double to_double(const Rat& q) { return q.get_d(); }

// Complex number with exact rational real and imaginary parts.
struct CRat {
    Rat re;
    Rat im;

    CRat() = default;
    CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    explicit CRat(Rat r) : re(std::move(r)), im(0) {}

    bool operator==(const CRat& o) const { return re == o.re && im == o.im; }
    bool is_zero() const { return re == 0 && im == 0; }

    CRat operator+(const CRat& o) const { return {re + o.re, im + o.im}; }
    CRat operator-(const CRat& o) const { return {re - o.re, im - o.im}; }
    CRat operator*(const CRat& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

// lcm of the denominators of a range of rationals (at least 1).
Int common_denominator(const std::vector<Rat>& values);

} // namespace ringwalk
