#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fermat/lattice/charpoly.hpp"
#include "fermat/lattice/normal_forms.hpp"

namespace fermat {

enum class Symmetry { symmetric, antisymmetric };

inline const char* to_string(Symmetry s) { return s == Symmetry::symmetric ? "symmetric" : "antisymmetric"; }

/// Free abelian group with an integral (anti)symmetric bilinear form.
class IntegerLattice {
public:
    IntegerLattice() = default;
    IntegerLattice(IntMatrix gram, Symmetry symmetry, std::string label = {})
        : gram_(std::move(gram)), symmetry_(symmetry), label_(std::move(label)) {
        if (!gram_.square()) throw PreconditionError("Gram matrix must be square");
        const int s = symmetry_ == Symmetry::symmetric ? 1 : -1;
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t j = 0; j < rank(); ++j)
                if (gram_(i, j) != s * gram_(j, i))
                    throw PreconditionError(std::string("Gram matrix is not ") + fermat::to_string(symmetry_));
    }

    std::size_t rank() const { return gram_.rows(); }
    const IntMatrix& gram() const { return gram_; }
    Symmetry symmetry() const { return symmetry_; }
    const std::string& label() const { return label_; }
    void set_label(std::string l) { label_ = std::move(l); }

    Integer pair(const IntVector& x, const IntVector& y) const { return bilinear(gram_, x, y); }
    Integer norm(const IntVector& x) const { return pair(x, x); }

    friend bool operator==(const IntegerLattice& a, const IntegerLattice& b) {
        return a.symmetry_ == b.symmetry_ && a.gram_ == b.gram_;
    }

private:
    IntMatrix gram_;
    Symmetry symmetry_ = Symmetry::symmetric;
    std::string label_;
};

struct DiscriminantData {
    std::vector<Integer> elementary_divisors;  // nontrivial (> 1), divisibility order
    Integer group_order = 1;

    bool is_cyclic() const { return elementary_divisors.size() <= 1; }
};

struct Signature {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t radical = 0;

    friend bool operator==(const Signature&, const Signature&) = default;
};

/// Nondegenerate quotient L / rad(L) together with the projection.
struct RadicalQuotient {
    IntegerLattice lattice;
    IntMatrix projection;  // rank(Q) x rank(L): column i = image of old basis vector i
    IntMatrix lifts;       // rank(L) x rank(Q): column j = a preimage of new basis vector j
    IntMatrix radical;     // rank(L) x rank(rad): saturated basis of the radical
};

/// Quotient by the kernel of the pairing. The quotient basis is canonical: the
/// projection matrix is in row Hermite normal form.
inline RadicalQuotient radical_quotient(const IntegerLattice& l) {
    const std::size_t n = l.rank();
    SmithForm s = smith_normal_form(l.gram());
    const std::size_t r = s.rank;
    std::vector<std::size_t> comp, rad, all(n);
    for (std::size_t j = 0; j < n; ++j) all[j] = j;
    for (std::size_t j = 0; j < r; ++j) comp.push_back(j);
    for (std::size_t j = r; j < n; ++j) rad.push_back(j);

    IntMatrix raw_projection = s.right_inverse.submatrix(comp, all);  // r x n
    IntMatrix raw_lifts = s.right.columns(comp);                      // n x r
    HermiteForm h = hermite_normal_form(raw_projection);
    // H = W P, lifts' = lifts W^{-1}
    IntMatrix w_inv = unimodular_inverse(h.transform);
    IntMatrix lifts = raw_lifts * w_inv;
    IntMatrix gram = lifts.transpose() * l.gram() * lifts;

    RadicalQuotient q{IntegerLattice(std::move(gram), l.symmetry(), l.label().empty() ? "" : l.label() + "/rad"),
                      std::move(h.form), std::move(lifts), s.right.columns(rad)};
    return q;
}

/// Signature of a symmetric Gram via the exact characteristic polynomial and
/// Descartes' rule of signs (all roots are real).
inline Signature signature(const IntMatrix& gram) {
    const std::size_t n = gram.rows();
    FieldMatrix<Rational> a(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = gram(i, j);
    auto poly = characteristic_polynomial<Rational>(std::move(a), Rational(0), Rational(1));
    auto in = descartes_inertia(poly);
    return {in.positive, in.negative, in.zero};
}

inline Signature signature(const IntegerLattice& l) {
    if (l.symmetry() != Symmetry::symmetric) throw WrongSymmetryError("signature requires a symmetric lattice");
    return signature(l.gram());
}

inline Integer gram_determinant(const IntegerLattice& l) { return determinant(l.gram()); }

inline DiscriminantData discriminant(const IntegerLattice& l) {
    auto divs = elementary_divisors(l.gram());
    DiscriminantData d;
    for (const auto& x : divs) {
        if (x == 0) throw DegenerateLatticeError("discriminant of a degenerate lattice");
        if (x != 1) d.elementary_divisors.push_back(x);
        d.group_order *= x;
    }
    return d;
}

/// Discriminant group of the nondegenerate quotient, read off the torsion of
/// coker(Gram) of a possibly degenerate lattice.
inline DiscriminantData quotient_discriminant(const IntegerLattice& l) {
    DiscriminantData d;
    for (const auto& x : elementary_divisors(l.gram())) {
        if (x == 0 || x == 1) continue;
        d.elementary_divisors.push_back(x);
        d.group_order *= x;
    }
    return d;
}

inline bool is_even(const IntegerLattice& l) {
    if (l.symmetry() != Symmetry::symmetric) throw WrongSymmetryError("parity requires a symmetric lattice");
    for (std::size_t i = 0; i < l.rank(); ++i)
        if (l.gram()(i, i) % 2 != 0) return false;
    return true;
}

inline bool is_unimodular(const IntegerLattice& l) {
    Integer det = gram_determinant(l);
    return det == 1 || det == -1;
}

/// For antisymmetric nondegenerate lattices the determinant is a square.
inline bool determinant_is_square(const IntegerLattice& l) {
    Integer det = gram_determinant(l);
    if (det < 0) return false;
    return mpz_perfect_square_p(det.get_mpz_t()) != 0;
}

inline IntegerLattice orthogonal_sum(const std::vector<IntegerLattice>& parts) {
    std::size_t n = 0;
    for (const auto& p : parts) n += p.rank();
    IntMatrix g(n, n);
    std::size_t off = 0;
    Symmetry sym = parts.empty() ? Symmetry::symmetric : parts.front().symmetry();
    for (const auto& p : parts) {
        if (p.symmetry() != sym) throw PreconditionError("orthogonal sum of lattices with mixed symmetry");
        for (std::size_t i = 0; i < p.rank(); ++i)
            for (std::size_t j = 0; j < p.rank(); ++j) g(off + i, off + j) = p.gram()(i, j);
        off += p.rank();
    }
    return IntegerLattice(std::move(g), sym);
}

struct GlueSpec {
    std::vector<IntegerLattice> components;
    std::vector<std::vector<Rational>> glue_vectors;  // coordinates in the orthogonal-sum basis
};

struct GlueResult {
    IntegerLattice lattice;
    IntegerLattice sum;
    RatMatrix basis;  // rows: new basis vectors in orthogonal-sum coordinates
    Integer index;    // [glued : sum]
};

struct InvalidGlueError : PreconditionError {
    using PreconditionError::PreconditionError;
};

/// Overlattice generated by an orthogonal sum and rational glue vectors.
inline GlueResult glue(const GlueSpec& spec) {
    IntegerLattice sum = orthogonal_sum(spec.components);
    const std::size_t n = sum.rank();
    Integer den = 1;
    for (const auto& g : spec.glue_vectors) {
        if (g.size() != n) throw PreconditionError("glue vector has wrong length");
        for (const auto& x : g) den = lcm(den, x.get_den());
    }
    IntMatrix gens(n + spec.glue_vectors.size(), n);
    for (std::size_t i = 0; i < n; ++i) gens(i, i) = den;
    for (std::size_t k = 0; k < spec.glue_vectors.size(); ++k)
        for (std::size_t j = 0; j < n; ++j) {
            Rational t = spec.glue_vectors[k][j] * den;
            gens(n + k, j) = t.get_num();
        }
    HermiteForm h = hermite_normal_form(gens);
    RatMatrix basis(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            basis(i, j) = Rational(h.form(i, j), den);
            basis(i, j).canonicalize();
        }
    RatMatrix g = basis * RatMatrix::from(sum.gram()) * basis.transpose();
    IntMatrix gi(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (g(i, j).get_den() != 1) throw InvalidGlueError("glue produces a non-integral pairing");
            gi(i, j) = g(i, j).get_num();
        }
    Integer det_scaled = determinant(h.form);  // det(basis) * den^n
    Integer index = ipow(den, static_cast<unsigned long>(n)) / abs(det_scaled);
    return {IntegerLattice(std::move(gi), sum.symmetry()), std::move(sum), std::move(basis), index};
}

struct IndefiniteLatticeError : PreconditionError {
    using PreconditionError::PreconditionError;
};

namespace detail {

/// Q(x) = sum_i diag[i] * (x_i + sum_{j>i} mu[i][j] x_j)^2 for positive definite Gram.
struct RationalLdl {
    std::vector<Rational> diag;
    std::vector<std::vector<Rational>> mu;
};

inline std::optional<RationalLdl> positive_ldl(const IntMatrix& gram) {
    const std::size_t n = gram.rows();
    RatMatrix a = RatMatrix::from(gram);
    RationalLdl r{std::vector<Rational>(n), std::vector<std::vector<Rational>>(n, std::vector<Rational>(n))};
    for (std::size_t i = 0; i < n; ++i) {
        if (a(i, i) <= 0) return std::nullopt;
        r.diag[i] = a(i, i);
        for (std::size_t j = i + 1; j < n; ++j) r.mu[i][j] = a(i, j) / a(i, i);
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = i + 1; k < n; ++k) a(j, k) -= r.mu[i][j] * a(i, k);
    }
    return r;
}

/// Enumerates integer x with Q(x) <= bound (Fincke-Pohst), exact arithmetic.
template <class Visit>
void fincke_pohst(const RationalLdl& ldl, const Rational& bound, Visit&& visit) {
    const std::size_t n = ldl.diag.size();
    std::vector<Integer> x(n);
    std::vector<Rational> remaining(n + 1);
    remaining[n] = bound;
    // recursive lambda over index i = n-1 .. 0
    auto rec = [&](auto&& self, std::size_t i) -> void {
        Rational center = 0;
        for (std::size_t j = i + 1; j < n; ++j) center -= ldl.mu[i][j] * x[j];
        const Rational& rem = remaining[i + 1];
        auto fits = [&](const Integer& v) {
            Rational t = Rational(v) - center;
            return ldl.diag[i] * t * t <= rem;
        };
        Integer start = round_nearest(center);
        auto descend = [&](const Integer& v) {
            x[i] = v;
            Rational t = Rational(v) - center;
            remaining[i] = rem - ldl.diag[i] * t * t;
            if (i == 0) visit(x);
            else self(self, i - 1);
        };
        if (fits(start)) {
            descend(start);
            for (Integer v = start + 1; fits(v); ++v) descend(v);
            for (Integer v = start - 1; fits(v); --v) descend(v);
        } else {
            // center is at most 1/2 away from start; nothing else can fit
        }
    };
    if (n == 0) {
        visit(x);
        return;
    }
    rec(rec, n - 1);
}

}  // namespace detail

/// All v with v.v = norm in a definite lattice, sorted lexicographically.
inline std::vector<IntVector> short_vectors(const IntegerLattice& l, const Integer& norm) {
    if (l.symmetry() != Symmetry::symmetric) throw WrongSymmetryError("short_vectors requires a symmetric lattice");
    Signature sig = signature(l);
    if (sig.radical != 0 || (sig.positive != 0 && sig.negative != 0))
        throw IndefiniteLatticeError("short_vectors requires a definite lattice");
    const bool negative = sig.negative != 0;
    IntMatrix g = negative ? -l.gram() : l.gram();
    Integer target = negative ? Integer(-norm) : norm;
    std::vector<IntVector> out;
    if (target < 0) return out;
    auto ldl = detail::positive_ldl(g);
    if (!ldl) throw IndefiniteLatticeError("short_vectors: Gram is not definite");
    detail::fincke_pohst(*ldl, Rational(target), [&](const IntVector& x) {
        if (bilinear(g, x, x) == target) out.push_back(x);
    });
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace fermat
