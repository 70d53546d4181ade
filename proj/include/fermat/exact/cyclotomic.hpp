#pragma once

#include <mpfr.h>

#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "fermat/exact/integer.hpp"

namespace fermat {

namespace detail {

inline std::vector<Integer> poly_divexact(std::vector<Integer> num, const std::vector<Integer>& den) {
    // both low-degree-first, den monic
    const std::size_t dn = den.size() - 1;
    if (num.size() < den.size()) return {0};
    std::vector<Integer> q(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
        Integer c = num[i];
        q[i - dn] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    return q;
}

inline std::vector<Integer> compute_cyclotomic(int d) {
    std::vector<Integer> p(d + 1, 0);
    p[0] = -1;
    p[d] = 1;
    for (int e = 1; e < d; ++e)
        if (d % e == 0) p = poly_divexact(p, compute_cyclotomic(e));
    return p;
}

}  // namespace detail

/// Coefficients (low degree first) of the d-th cyclotomic polynomial.
inline const std::vector<Integer>& cyclotomic_polynomial(int d) {
    static std::mutex lock;
    static std::map<int, std::vector<Integer>> cache;
    if (d < 1) throw PreconditionError("cyclotomic conductor must be >= 1");
    std::lock_guard<std::mutex> guard(lock);
    if (auto it = cache.find(d); it != cache.end()) return it->second;
    return cache.emplace(d, detail::compute_cyclotomic(d)).first->second;
}

inline int euler_phi(int d) {
    int r = 0;
    for (int a = 1; a <= d; ++a)
        if (std::gcd(a, d) == 1) ++r;
    return r;
}

/// Element of Z[zeta_d] (Scalar = Integer) or Q(zeta_d) (Scalar = Rational) in
/// the power basis 1, zeta, ..., zeta^{phi(d)-1}.
template <class Scalar>
class CyclotomicNumber {
public:
    CyclotomicNumber() : CyclotomicNumber(3) {}
    explicit CyclotomicNumber(int d) : d_(d), coords_(euler_phi(d), Scalar(0)) {}
    CyclotomicNumber(int d, const Scalar& c) : CyclotomicNumber(d) { coords_[0] = c; }

    /// Builds from an arbitrary polynomial in zeta, reducing modulo the cyclotomic polynomial.
    static CyclotomicNumber from_poly(int d, std::vector<Scalar> poly) {
        const auto& phi = cyclotomic_polynomial(d);
        const std::size_t n = phi.size() - 1;
        for (std::size_t i = poly.size(); i-- > n;) {
            Scalar c = poly[i];
            if (c == 0) continue;
            for (std::size_t j = 0; j <= n; ++j) poly[i - n + j] -= c * Scalar(phi[j]);
        }
        CyclotomicNumber r(d);
        for (std::size_t i = 0; i < n && i < poly.size(); ++i) r.coords_[i] = poly[i];
        return r;
    }

    static CyclotomicNumber zeta_power(int d, long j) {
        std::vector<Scalar> p(mod(j, d) + 1, Scalar(0));
        p.back() = 1;
        return from_poly(d, std::move(p));
    }

    template <class Other>
    static CyclotomicNumber from(const CyclotomicNumber<Other>& x) {
        CyclotomicNumber r(x.conductor());
        for (std::size_t i = 0; i < r.coords_.size(); ++i) r.coords_[i] = Scalar(x.coords()[i]);
        return r;
    }

    int conductor() const { return d_; }
    const std::vector<Scalar>& coords() const { return coords_; }
    bool is_zero() const {
        for (const auto& c : coords_)
            if (c != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < coords_.size(); ++i)
            if (coords_[i] != 0) return false;
        return true;
    }

    /// Galois automorphism zeta -> zeta^a, gcd(a, d) = 1.
    CyclotomicNumber galois(int a) const {
        std::vector<Scalar> p(d_, Scalar(0));
        for (std::size_t i = 0; i < coords_.size(); ++i) p[mod(static_cast<long>(i) * a, d_)] += coords_[i];
        return from_poly(d_, std::move(p));
    }

    CyclotomicNumber conj() const { return galois(d_ - 1); }
    bool is_real() const { return *this == conj(); }

    /// Field norm down to Q.
    Scalar norm() const {
        CyclotomicNumber p(d_, Scalar(1));
        for (int a = 1; a < d_; ++a)
            if (std::gcd(a, d_) == 1) p = p * galois(a);
        return p.coords_[0];
    }

    CyclotomicNumber& operator+=(const CyclotomicNumber& b) {
        check(b);
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += b.coords_[i];
        return *this;
    }
    CyclotomicNumber& operator-=(const CyclotomicNumber& b) {
        check(b);
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= b.coords_[i];
        return *this;
    }
    friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
    friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
    friend CyclotomicNumber operator-(CyclotomicNumber a) {
        for (auto& c : a.coords_) c = -c;
        return a;
    }
    friend CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b) {
        a.check(b);
        const std::size_t n = a.coords_.size();
        std::vector<Scalar> p(2 * n, Scalar(0));
        for (std::size_t i = 0; i < n; ++i) {
            if (a.coords_[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) p[i + j] += a.coords_[i] * b.coords_[j];
        }
        return from_poly(a.d_, std::move(p));
    }
    friend CyclotomicNumber operator*(const Scalar& s, CyclotomicNumber a) {
        for (auto& c : a.coords_) c *= s;
        return a;
    }
    CyclotomicNumber& operator*=(const CyclotomicNumber& b) { return *this = *this * b; }

    friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
        return a.d_ == b.d_ && a.coords_ == b.coords_;
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (coords_[i] == 0) continue;
            std::string c = coords_[i].get_str();
            if (!s.empty()) s += (c[0] == '-') ? " - " : " + ";
            else if (c[0] == '-') s += "-";
            if (c[0] == '-') c.erase(0, 1);
            if (i == 0) s += c;
            else {
                if (c != "1") s += c + "*";
                s += "z" + (i > 1 ? "^" + std::to_string(i) : std::string());
            }
        }
        return s.empty() ? "0" : s;
    }

private:
    void check(const CyclotomicNumber& b) const {
        if (d_ != b.d_) throw IncompatibleRingError("cyclotomic elements with different conductors");
    }

    int d_;
    std::vector<Scalar> coords_;
};

using CyclotomicElement = CyclotomicNumber<Integer>;
using CyclotomicRational = CyclotomicNumber<Rational>;

inline CyclotomicRational inverse(const CyclotomicRational& x) {
    if (x.is_zero()) throw std::domain_error("inverse of zero in Q(zeta)");
    const int d = x.conductor();
    CyclotomicRational p(d, Rational(1));
    for (int a = 2; a < d; ++a)
        if (std::gcd(a, d) == 1) p = p * x.galois(a);
    Rational n = (p * x).coords()[0];
    return Rational(1) / n * p;
}

/// Sign of a real element of Q(zeta_d) under zeta -> exp(2 pi i / d).
/// The zero test is exact; a nonzero value is evaluated with enough MPFR
/// precision that the Liouville-type bound |x| >= S^{-(phi-1)} separates it
/// from the rounding error.
inline int real_sign(const CyclotomicRational& x) {
    if (!x.is_real()) throw PreconditionError("real_sign of a non-real cyclotomic number");
    if (x.is_zero()) return 0;
    const int d = x.conductor();
    Integer den = 1;
    for (const auto& c : x.coords()) den = lcm(den, c.get_den());
    std::vector<Integer> ic;
    Integer s = 0;
    for (const auto& c : x.coords()) {
        Rational t = c * den;
        ic.push_back(t.get_num());
        s += abs(t.get_num());
    }
    if (x.is_rational()) return sgn(ic[0]);
    const long phi = static_cast<long>(ic.size());
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(phi * (mpz_sizeinbase(s.get_mpz_t(), 2) + 2) + 96);
    mpfr_t acc, term, angle;
    mpfr_inits2(prec, acc, term, angle, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_zero(acc, 1);
    for (long i = 0; i < phi; ++i) {
        if (ic[i] == 0) continue;
        mpfr_const_pi(angle, MPFR_RNDN);
        mpfr_mul_si(angle, angle, 2 * i, MPFR_RNDN);
        mpfr_div_si(angle, angle, d, MPFR_RNDN);
        mpfr_cos(term, angle, MPFR_RNDN);
        mpfr_mul_z(term, term, ic[i].get_mpz_t(), MPFR_RNDN);
        mpfr_add(acc, acc, term, MPFR_RNDN);
    }
    int r = mpfr_sgn(acc);
    mpfr_clears(acc, term, angle, static_cast<mpfr_ptr>(nullptr));
    if (r == 0) throw VerificationError("real_sign: nonzero cyclotomic value evaluated to zero");
    return r;
}

inline int real_sign(const CyclotomicElement& x) { return real_sign(CyclotomicRational::from(x)); }

}  // namespace fermat
