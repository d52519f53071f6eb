#pragma once

#include <stdexcept>
#include <string>

namespace ringwalk {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A constructed table violates the axioms it is supposed to satisfy
// (not a group, not a ring, not an ideal, ...).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// The constant-on-associates hypothesis on P is violated; carries a witness
// pair of associate elements with unequal weights.
class HypothesisError : public Error {
public:
    HypothesisError(const std::string& msg, int v, int w)
        : Error(msg), witness_v(v), witness_w(w) {}
    int witness_v;
    int witness_w;
};

// A GF(p^k) modulus polynomial that factors over Z/pZ.
class ReduciblePolyError : public ValidationError {
public:
    explicit ReduciblePolyError(const std::string& msg) : ValidationError(msg) {}
};

// Requested a Frobenius-path spectrum but no generating character exists.
class NoGeneratingCharacter : public Error {
public:
    explicit NoGeneratingCharacter(const std::string& msg) : Error(msg) {}
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

} // namespace ringwalk
