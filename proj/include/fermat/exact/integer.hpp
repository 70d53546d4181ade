#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fermat {

using Integer = mpz_class;
using Rational = mpq_class;

/// Thrown when an operation is applied to values from incompatible rings.
struct IncompatibleRingError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a precondition of a computation is violated.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct WrongSymmetryError : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct DegenerateLatticeError : PreconditionError {
    using PreconditionError::PreconditionError;
};

/// An extremal object asked to be unique was not.
struct NonUniqueError : PreconditionError {
    using PreconditionError::PreconditionError;
};

struct EmptyFormError : PreconditionError {
    using PreconditionError::PreconditionError;
};

/// Thrown when a structural invariant fails to verify.
struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a requested object exceeds the configured size bound.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline int sign(const Integer& x) { return sgn(x); }
inline int sign(const Rational& x) { return sgn(x); }

/// Compares |a| with |b|.
inline int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

inline bool fits_i64(const Integer& x) { return x.fits_slong_p(); }

inline std::int64_t to_i64(const Integer& x) {
    if (!x.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits");
    return x.get_si();
}

/// Euclidean modulus with result in [0, m).
inline int mod(long a, int m) {
    long r = a % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

inline Integer ipow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// Floor division rounding toward negative infinity.
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// Nearest integer to a rational, ties toward +infinity.
inline Integer round_nearest(const Rational& x) {
    Rational shifted = x + Rational(1, 2);
    return floor_div(shifted.get_num(), shifted.get_den());
}

/// Canonical "p/q" (or "p") text for a rational.
inline std::string to_string(const Rational& x) {
    Rational c = x;
    c.canonicalize();
    return c.get_str();
}

inline Rational parse_rational(const std::string& text) {
    Rational r;
    if (r.set_str(text, 10) != 0 || r.get_den() == 0)
        throw PreconditionError("malformed rational: '" + text + "'");
    r.canonicalize();
    return r;
}

namespace detail {

/// Calls f on every increasing k-subset of {0, ..., n-1}, lexicographically.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        f(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace detail

}  // namespace fermat
