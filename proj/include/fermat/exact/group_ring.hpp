#pragma once

#include <map>
#include <string>
#include <vector>

#include "fermat/exact/integer.hpp"

namespace fermat {

/// Element of the integral group ring Z[(Z/d)^k]. Group elements are exponent
/// tuples; the product adds tuples componentwise mod d.
class GroupRingElement {
public:
    using Exponent = std::vector<int>;
    using Terms = std::map<Exponent, Integer>;

    GroupRingElement(int d, int k) : d_(d), k_(k) {
        if (d < 2) throw PreconditionError("group ring modulus must be >= 2");
        if (k < 0) throw PreconditionError("group ring arity must be >= 0");
    }

    static GroupRingElement one(int d, int k) { return monomial(d, Exponent(k, 0), 1); }

    static GroupRingElement monomial(int d, Exponent e, const Integer& c = 1) {
        GroupRingElement r(d, static_cast<int>(e.size()));
        r.add_term(std::move(e), c);
        return r;
    }

    /// u_i for i in [0, k)
    static GroupRingElement generator(int d, int k, int i) {
        Exponent e(k, 0);
        e.at(i) = 1;
        return monomial(d, std::move(e));
    }

    int modulus() const { return d_; }
    int arity() const { return k_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Integer coefficient(const Exponent& e) const {
        auto it = terms_.find(normalized(e));
        return it == terms_.end() ? Integer(0) : it->second;
    }
    Integer identity_coefficient() const { return coefficient(Exponent(k_, 0)); }

    void add_term(Exponent e, const Integer& c) {
        if (static_cast<int>(e.size()) != k_) throw IncompatibleRingError("exponent tuple has wrong length");
        e = normalized(std::move(e));
        auto [it, inserted] = terms_.try_emplace(std::move(e), c);
        if (!inserted) it->second += c;
        if (it->second == 0) terms_.erase(it);
    }

    /// Involution g -> g^{-1}.
    GroupRingElement bar() const {
        GroupRingElement r(d_, k_);
        for (const auto& [e, c] : terms_) {
            Exponent neg(e.size());
            for (std::size_t i = 0; i < e.size(); ++i) neg[i] = mod(-e[i], d_);
            r.add_term(std::move(neg), c);
        }
        return r;
    }

    GroupRingElement& operator+=(const GroupRingElement& b) {
        check_compatible(b);
        for (const auto& [e, c] : b.terms_) add_term(e, c);
        return *this;
    }
    GroupRingElement& operator-=(const GroupRingElement& b) {
        check_compatible(b);
        for (const auto& [e, c] : b.terms_) add_term(e, -c);
        return *this;
    }

    friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
    friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
    friend GroupRingElement operator-(const GroupRingElement& a) {
        GroupRingElement r(a.d_, a.k_);
        for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
        return r;
    }

    friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
        a.check_compatible(b);
        GroupRingElement r(a.d_, a.k_);
        Exponent e(a.k_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (int i = 0; i < a.k_; ++i) e[i] = (ea[i] + eb[i]) % a.d_;
                r.add_term(e, ca * cb);
            }
        return r;
    }

    friend GroupRingElement operator*(const Integer& s, const GroupRingElement& a) {
        GroupRingElement r(a.d_, a.k_);
        if (s == 0) return r;
        for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, s * c);
        return r;
    }

    friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
        return a.d_ == b.d_ && a.k_ == b.k_ && a.terms_ == b.terms_;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [e, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += c.get_str();
            for (int i = 0; i < k_; ++i)
                if (e[i]) s += "*u" + std::to_string(i) + (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
        }
        return s;
    }

private:
    Exponent normalized(Exponent e) const {
        for (auto& x : e) x = mod(x, d_);
        return e;
    }
    void check_compatible(const GroupRingElement& b) const {
        if (d_ != b.d_ || k_ != b.k_)
            throw IncompatibleRingError("group ring elements over different groups");
    }

    int d_;
    int k_;
    Terms terms_;
};

/// (1 - u_0)(1 - u_1)...(1 - u_{k-1})
inline GroupRingElement prod_one_minus_generators(int d, int k) {
    GroupRingElement r = GroupRingElement::one(d, k);
    for (int i = 0; i < k; ++i)
        r = r * (GroupRingElement::one(d, k) - GroupRingElement::generator(d, k, i));
    return r;
}

/// Pham's self-pairing of the Milnor generator in Z[mu_d^{k}]:
/// (1 - bar(u_1...u_k)) * prod (1 - u_nu).
inline GroupRingElement pham_self_pairing(int d, int k) {
    GroupRingElement all = GroupRingElement::monomial(d, std::vector<int>(k, 1));
    return (GroupRingElement::one(d, k) - all.bar()) * prod_one_minus_generators(d, k);
}

}  // namespace fermat
