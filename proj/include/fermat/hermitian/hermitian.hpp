#pragma once

#include <string>
#include <vector>

#include "fermat/hermitian/field_linalg.hpp"
#include "fermat/homology/primitive.hpp"

namespace fermat {

enum class FormKind { h_plus, h_minus, raw };

inline const char* to_string(FormKind k) {
    switch (k) {
        case FormKind::h_plus: return "h_plus";
        case FormKind::h_minus: return "h_minus";
        default: return "raw";
    }
}

/// Which primitive d-th root u_i is sent to.
enum class CharacterConvention { zeta, zeta_bar };

struct HermitianLattice {
    int d = 3;
    std::size_t rank = 0;
    CycMatrix gram;  // h(b_i, b_j): linear in the first slot
    FormKind form_kind = FormKind::raw;
    Rational scaling = 1;  // stored gram = scaling * (form as defined)
    bool excluded = false;  // outside the hypothesis d does not divide k
    std::string label;

    bool is_hermitian() const {
        for (std::size_t i = 0; i < rank; ++i)
            for (std::size_t j = 0; j < rank; ++j)
                if (!(gram[i][j] == gram[j][i].conj())) return false;
        return true;
    }
};

/// Signature (p, q) of a nondegenerate hermitian Gram: the characteristic
/// polynomial over Q(zeta) has real coefficients and real roots, so
/// Descartes' rule applies with certified signs.
inline Signature hermitian_inertia(const HermitianLattice& h) {
    if (!h.is_hermitian()) throw PreconditionError("Gram matrix is not hermitian");
    auto poly = characteristic_polynomial<CyclotomicRational>(to_field(h.gram), CyclotomicRational(h.d),
                                                              CyclotomicRational(h.d, Rational(1)));
    auto in = descartes_inertia(poly);
    return {in.positive, in.negative, in.zero};
}

inline Signature hermitian_signature(const HermitianLattice& h) {
    Signature s = hermitian_inertia(h);
    if (s.radical != 0) throw DegenerateLatticeError("hermitian signature of a degenerate lattice");
    return s;
}

inline CyclotomicRational hermitian_determinant(const HermitianLattice& h) {
    return field_determinant(to_field(h.gram), h.d);
}

/// |N_{Q(zeta)/Q}(det)|, invariant under change of Z[zeta]-basis.
inline Rational determinant_norm(const HermitianLattice& h) { return abs(hermitian_determinant(h).norm()); }

/// The same Gram read through zeta -> zeta^a, gcd(a, d) = 1.
inline HermitianLattice galois_twist(HermitianLattice h, int a) {
    if (std::gcd(a, h.d) != 1) throw PreconditionError("Galois twist needs gcd(a, d) = 1");
    for (auto& row : h.gram)
        for (auto& x : row) x = x.galois(a);
    return h;
}

/// Generator of the ideal spanned by the Gram entries (zero for the zero form).
inline CyclotomicElement content(const HermitianLattice& h) {
    CyclotomicElement c(h.d);
    for (const auto& row : h.gram)
        for (const auto& x : row) {
            CyclotomicElement a = c, b = x;
            while (!b.is_zero()) {
                CyclotomicElement r = a - euclidean_quotient(a, b) * b;
                a = std::move(b);
                b = std::move(r);
            }
            c = std::move(a);
        }
    return c;
}

/// |N(det)| / |N(content)|^rank: unchanged when the form is scaled by any
/// nonzero element of Q(zeta).
inline Rational normalized_determinant_norm(const HermitianLattice& h) {
    if (h.rank == 0) return 1;
    const CyclotomicElement c = content(h);
    if (c.is_zero()) return 0;
    return determinant_norm(h) / Rational(ipow(abs_norm(c), static_cast<unsigned long>(h.rank)));
}

/// Symmetric rational matrix Tr(zeta^a conj(zeta^b) h_ij) of the underlying
/// Z-lattice; for imaginary quadratic fields its signature is twice (p, q).
inline IntMatrix trace_form(const HermitianLattice& h) {
    const std::size_t phi = static_cast<std::size_t>(euler_phi(h.d));
    IntMatrix t(h.rank * phi, h.rank * phi);
    for (std::size_t i = 0; i < h.rank; ++i)
        for (std::size_t j = 0; j < h.rank; ++j)
            for (std::size_t a = 0; a < phi; ++a)
                for (std::size_t b = 0; b < phi; ++b) {
                    auto x = CyclotomicElement::zeta_power(h.d, static_cast<long>(a)) *
                             CyclotomicElement::zeta_power(h.d, -static_cast<long>(b)) * h.gram[i][j];
                    CyclotomicElement sum(h.d);
                    for (int g = 1; g < h.d; ++g)
                        if (std::gcd(g, h.d) == 1) sum += x.galois(g);
                    if (!sum.is_rational()) throw VerificationError("trace is not rational");
                    t(i * phi + a, j * phi + b) = sum.coords()[0];
                }
    return t;
}

// ---------------------------------------------------------------------------
// The h+ / h- table on the generators u^K

namespace detail {

/// 0/1 indicator I with a = b + 1_I (mod d), if any; returns |I| or -1.
inline int unit_step(const Exponent& a, const Exponent& b, int d) {
    int size = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        int e = mod(a[i] - b[i], d);
        if (e > 1) return -1;
        size += e;
    }
    return size;
}

inline std::vector<Exponent> all_exponents(int d, int len) {
    std::vector<Exponent> out;
    Exponent k(len, 0);
    for (;;) {
        out.push_back(k);
        int i = len - 1;
        while (i >= 0 && k[i] == d - 1) k[i--] = 0;
        if (i < 0) break;
        ++k[i];
    }
    return out;
}

}  // namespace detail

/// Printed table entry of h_sign(u^K, u^L); sign = +1 for h_plus, -1 for h_minus.
inline CyclotomicElement hermitian_table_entry(int d, int sign, const Exponent& k, const Exponent& l) {
    const CyclotomicElement one(d, 1);
    const auto z = CyclotomicElement::zeta_power(d, 1);
    const auto zb = z.conj();
    const Integer s = sign;
    if (k == l) return (one - s * z) * (one - s * zb);
    if (int i = detail::unit_step(k, l, d); i > 0) return Integer(i % 2 ? -1 : 1) * (one - s * zb);
    if (int i = detail::unit_step(l, k, d); i > 0) return Integer(i % 2 ? -1 : 1) * (one - s * z);
    return CyclotomicElement(d);
}

struct SpanningGram {
    std::vector<Exponent> generators;
    CycMatrix gram;
};

inline SpanningGram hermitian_table(int d, int n, int sign) {
    check_parameters(d, n);
    SpanningGram s;
    s.generators = detail::all_exponents(d, n);
    for (const auto& k : s.generators) {
        s.gram.emplace_back();
        for (const auto& l : s.generators) s.gram.back().push_back(hermitian_table_entry(d, sign, k, l));
    }
    return s;
}

namespace detail {

inline CyclotomicElement scale_to_integral(const CyclotomicRational& x, const Rational& den) {
    std::vector<Integer> c;
    for (const auto& q : x.coords()) {
        Rational t = q * den;
        if (t.get_den() != 1) throw VerificationError("hermitian Gram is not integral after scaling");
        c.push_back(t.get_num());
    }
    return CyclotomicElement::from_poly(x.conductor(), std::move(c));
}

}  // namespace detail

/// Nondegenerate quotient of a hermitian form given on a spanning set of a
/// Z[zeta]-module. Each generator x is sent to w_x = (h(x, b_j))_j for a
/// greedy field basis b; Euclidean elimination on the w's gives a Z[zeta]-basis
/// y of the image, and h(y, y') = w_y G_bb^{-1} conj(w_y')^T.
inline HermitianLattice reduce_spanning_gram(const CycMatrix& g, int d, FormKind kind, std::string label) {
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (!(g[i][j] == g[j][i].conj())) throw PreconditionError("spanning Gram is not hermitian");
    EchelonBasis eb(d);
    std::vector<std::size_t> sel;
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::vector<CyclotomicRational> row;
        for (const auto& x : g[i]) row.push_back(CyclotomicRational::from(x));
        if (eb.add(std::move(row))) sel.push_back(i);
    }
    const std::size_t rho = sel.size();
    std::vector<std::vector<CyclotomicElement>> w;
    for (const auto& row : g) {
        w.emplace_back();
        for (std::size_t j : sel) w.back().push_back(row[j]);
    }
    auto ys = euclidean_echelon(std::move(w));
    if (ys.size() != rho) throw VerificationError("image lattice has unexpected rank");

    CycRatMatrix gss(rho, std::vector<CyclotomicRational>(rho, CyclotomicRational(d)));
    for (std::size_t i = 0; i < rho; ++i)
        for (std::size_t j = 0; j < rho; ++j) gss[i][j] = CyclotomicRational::from(g[sel[i]][sel[j]]);
    const CycRatMatrix ginv = field_inverse(gss, d);

    HermitianLattice h;
    h.d = d;
    h.rank = rho;
    h.form_kind = kind;
    h.label = std::move(label);
    for (std::size_t i = 0; i < rho; ++i) {
        // coefficients of y_i in the field basis
        std::vector<CyclotomicRational> c(rho, CyclotomicRational(d));
        for (std::size_t l = 0; l < rho; ++l) {
            if (ys[i][l].is_zero()) continue;
            const auto yl = CyclotomicRational::from(ys[i][l]);
            for (std::size_t j = 0; j < rho; ++j) c[j] = c[j] + yl * ginv[l][j];
        }
        h.gram.emplace_back();
        for (std::size_t j = 0; j < rho; ++j) {
            CyclotomicRational e(d);
            for (std::size_t l = 0; l < rho; ++l) e = e + c[l] * CyclotomicRational::from(ys[j][l].conj());
            h.gram.back().push_back(detail::scale_to_integral(e, Rational(1)));
        }
    }
    return h;
}

/// h_plus (sign = +1) or h_minus (sign = -1) of the k = 1 reduction of the
/// degree-d, dimension-n lattice, on the generators u^K, K in (Z/d)^n
/// (u_0 eliminated, u_{n+1} -> zeta), reduced to a Z[zeta]-basis.
inline HermitianLattice hermitian_gram(int d, int n, int sign) {
    if (sign != 1 && sign != -1) throw PreconditionError("sign must be +1 or -1");
    SpanningGram s = hermitian_table(d, n, sign);
    return reduce_spanning_gram(s.gram, d, sign > 0 ? FormKind::h_plus : FormKind::h_minus,
                                std::string(sign > 0 ? "h_plus" : "h_minus") + "(d=" + std::to_string(d) +
                                    ",n=" + std::to_string(n) + ")");
}

// ---------------------------------------------------------------------------
// chi_k reduction of the primitive lattice

struct ChiReduction {
    HermitianLattice lattice;
    int k = 0;
    int m = 0;
    std::size_t z_rank = 0;               // Z-rank of the torsion-free coinvariant quotient
    std::vector<int> symmetric_scalars;   // (Z_i Z_{i+1}) within the last k coordinates
    IntMatrix quotient;                   // Lambda -> Z^{z_rank}
    IntMatrix lifts;                      // columns: lifts of the quotient basis
};

/// sum over g in <A_a : a in gens> of (x . g y) zeta^{chi_exp * deg g}
inline CyclotomicElement chi_pairing(const PrimitiveFermatLattice& p, const std::vector<int>& gens, int chi_exp,
                                     const IntVector& x, const IntVector& y) {
    const int d = p.d;
    std::vector<Integer> coeffs(d, 0);
    const IntVector gx = p.lattice.gram().transpose() * x;
    std::vector<IntVector> partial(gens.size() + 1);
    partial[0] = y;
    auto rec = [&](auto&& self, std::size_t depth, int total) -> void {
        if (depth == gens.size()) {
            coeffs[mod(static_cast<long>(total) * chi_exp, d)] += dot(gx, partial[depth]);
            return;
        }
        IntVector v = partial[depth];
        for (int a = 0; a < d; ++a) {
            partial[depth + 1] = v;
            self(self, depth + 1, total + a);
            v = p.u[gens[depth]] * v;
        }
    };
    rec(rec, 0, 0);
    return CyclotomicElement::from_poly(d, std::move(coeffs));
}

/// C_t = sum of g * y over g in <A_a : a in gens> of total degree t mod d,
/// for the columns y of `y`; built one generator at a time by Horner's rule.
inline std::vector<IntMatrix> character_sums(const PrimitiveFermatLattice& p, const std::vector<int>& gens,
                                             const IntMatrix& y) {
    const int d = p.d;
    std::vector<IntMatrix> c(d, IntMatrix(y.rows(), y.cols()));
    c[0] = y;
    for (int g : gens) {
        const IntMatrix& a = p.u[g];
        // next_t = sum_a A^a c_{t-a} = c_t + A (c_{t-1} + A (c_{t-2} + ...))
        std::vector<IntMatrix> next(d);
        for (int t = 0; t < d; ++t) {
            IntMatrix acc = c[mod(t - (d - 1), d)];
            for (int s = d - 2; s >= 0; --s) acc = c[mod(t - s, d)] + a * acc;
            next[t] = std::move(acc);
        }
        c = std::move(next);
    }
    return c;
}

/// Factor turning the raw pairing of the dimension-n lattice into h_plus
/// (n even) or h_minus (n odd); matches the table entrywise for k = 1.
inline CyclotomicRational parity_normalization(int d, int n, CharacterConvention conv) {
    const int e = conv == CharacterConvention::zeta ? 1 : d - 1;
    CyclotomicRational f(d, Rational(intersection_sign(n)));
    if (n % 2 == 0) return f;
    const CyclotomicRational one(d, Rational(1));
    const auto z = CyclotomicRational::zeta_power(d, e);
    return -(f * (z + one) * inverse(z - one));
}

/// Raw k = 1 pairing on the monomial generators u^K, K in (Z/d)^n, of the
/// primitive lattice; the spanning set behind hermitian_gram.
inline CycMatrix chi_monomial_gram(const PrimitiveFermatLattice& p) {
    const auto ks = detail::all_exponents(p.d, p.n);
    std::vector<IntVector> v;
    for (auto k : ks) {
        k.push_back(0);
        v.push_back(p.monomial(k));
    }
    CycMatrix g;
    for (const auto& x : v) {
        g.emplace_back();
        for (const auto& y : v) g.back().push_back(chi_pairing(p, {p.n + 1}, 1, x, y));
    }
    return g;
}

inline ChiReduction chi_reduce(const PrimitiveFermatLattice& p, int k,
                               CharacterConvention conv = CharacterConvention::zeta) {
    const int d = p.d, n = p.n;
    if (k < 1 || k > n + 1) throw PreconditionError("chi_reduce needs 1 <= k <= n+1");
    const std::size_t big = p.lattice.rank();
    std::vector<int> gens;
    for (int a = n + 2 - k; a <= n + 1; ++a) gens.push_back(a);
    const IntMatrix& last = p.u[gens.back()];
    // relations Phi_d(A_last), A_a - A_last
    const auto& phi_poly = cyclotomic_polynomial(d);
    IntMatrix phi_a(big, big), power = IntMatrix::identity(big);
    for (const auto& c : phi_poly) {
        for (std::size_t r = 0; r < big; ++r)
            for (std::size_t col = 0; col < big; ++col) phi_a(r, col) += c * power(r, col);
        power = power * last;
    }
    IntMatrix rel(big, big * gens.size());
    for (std::size_t r = 0; r < big; ++r)
        for (std::size_t c = 0; c < big; ++c) rel(r, c) = phi_a(r, c);
    for (std::size_t g = 0; g + 1 < gens.size(); ++g)
        for (std::size_t r = 0; r < big; ++r)
            for (std::size_t c = 0; c < big; ++c) rel(r, big * (g + 1) + c) = p.u[gens[g]](r, c) - last(r, c);
    SmithForm s = smith_normal_form(rel);
    const IntMatrix uinv = unimodular_inverse(s.left);
    std::vector<std::size_t> keep, all(big);
    for (std::size_t i = 0; i < big; ++i) all[i] = i;
    for (std::size_t i = s.rank; i < big; ++i) keep.push_back(i);

    ChiReduction out;
    out.k = k;
    out.m = n - k;
    out.z_rank = keep.size();
    out.quotient = s.left.submatrix(keep, all);
    out.lifts = uinv.columns(keep);
    for (int i = n + 2 - k; i <= n; ++i) {
        IntMatrix tau = out.quotient * p.transpositions[static_cast<std::size_t>(i - 1)] * out.lifts;
        if (tau == IntMatrix::identity(out.z_rank)) out.symmetric_scalars.push_back(1);
        else if (tau == -IntMatrix::identity(out.z_rank)) out.symmetric_scalars.push_back(-1);
        else throw VerificationError("permutation of the last coordinates is not scalar on the reduction");
    }

    const int chi_exp = conv == CharacterConvention::zeta ? 1 : d - 1;
    const auto blocks = character_sums(p, gens, out.lifts);
    const IntMatrix left = out.lifts.transpose() * p.lattice.gram();
    std::vector<IntMatrix> coeff;
    for (const auto& b : blocks) coeff.push_back(left * b);
    CycMatrix raw;
    for (std::size_t i = 0; i < out.z_rank; ++i) {
        raw.emplace_back();
        for (std::size_t j = 0; j < out.z_rank; ++j) {
            std::vector<Integer> c(d, 0);
            for (int t = 0; t < d; ++t) c[mod(static_cast<long>(t) * chi_exp, d)] += coeff[t](i, j);
            raw.back().push_back(CyclotomicElement::from_poly(d, std::move(c)));
        }
    }
    // parity factor first: the spanning reduction needs a hermitian form
    const CyclotomicRational f = parity_normalization(d, n, conv);
    Integer den = 1;
    std::vector<std::vector<CyclotomicRational>> scaled;
    for (const auto& row : raw) {
        scaled.emplace_back();
        for (const auto& x : row) {
            scaled.back().push_back(f * CyclotomicRational::from(x));
            for (const auto& c : scaled.back().back().coords()) den = lcm(den, c.get_den());
        }
    }
    CycMatrix integral;
    for (const auto& row : scaled) {
        integral.emplace_back();
        for (const auto& x : row) integral.back().push_back(detail::scale_to_integral(x, Rational(den)));
    }
    HermitianLattice base = reduce_spanning_gram(integral, d, FormKind::raw, "");
    if (base.rank * static_cast<std::size_t>(euler_phi(d)) != out.z_rank)
        throw VerificationError("chi-reduced form is degenerate on the coinvariant quotient");
    // then the positive rational leaving coprime integer coefficients
    Integer icontent = 0;
    for (const auto& row : base.gram)
        for (const auto& x : row)
            for (const auto& c : x.coords()) icontent = gcd(icontent, c);
    if (icontent == 0) icontent = 1;
    HermitianLattice& h = out.lattice;
    h.d = d;
    h.rank = base.rank;
    h.form_kind = n % 2 ? FormKind::h_minus : FormKind::h_plus;
    h.scaling = Rational(den, icontent);
    h.scaling.canonicalize();
    h.excluded = k % d == 0;
    h.label = "chi_" + std::to_string(k) + "(d=" + std::to_string(d) + ",n=" + std::to_string(n) + ")";
    for (const auto& row : base.gram) {
        h.gram.emplace_back();
        for (const auto& x : row)
            h.gram.back().push_back(detail::scale_to_integral(CyclotomicRational::from(x), Rational(1, icontent)));
    }
    return out;
}

/// Z[zeta]-rank predicted for the reduction with n = m + k: ((d-1)^{m+2} + (-1)^{m+1}) / d.
inline Integer reduction_rank_formula(int d, int m) {
    if (m < -1) throw PreconditionError("reduction_rank_formula needs m >= -1");
    Integer num = ipow(Integer(d - 1), static_cast<unsigned long>(m + 2)) + ((m + 1) % 2 ? -1 : 1);
    if (num % d != 0) throw VerificationError("reduction rank formula is not integral");
    return num / d;
}

/// Invariants compared across k for fixed m. Signatures are listed per
/// embedding zeta -> exp(2 pi i a / d) after undoing the twist by k, each as
/// an unordered pair since a real rescaling may flip signs embedding-wise.
struct ReductionInvariants {
    int d = 0;
    int n = 0;
    int k = 0;
    int m = 0;
    std::size_t rank = 0;
    Rational normalized_det_norm = 1;
    std::vector<std::pair<std::size_t, std::size_t>> signatures;  // a = 1, ..., coprime to d, a <= d/2
    bool comparable = false;  // gcd(k, d) = 1
};

inline ReductionInvariants reduction_invariants(const ChiReduction& r, int d, int n) {
    ReductionInvariants inv;
    inv.d = d;
    inv.n = n;
    inv.k = r.k;
    inv.m = r.m;
    inv.rank = r.lattice.rank;
    inv.normalized_det_norm = normalized_determinant_norm(r.lattice);
    inv.comparable = std::gcd(r.k, d) == 1;
    if (!inv.comparable) return inv;
    int kinv = 1;
    while (mod(static_cast<long>(kinv) * r.k, d) != 1) ++kinv;
    // a and d - a give conjugate embeddings with the same signature
    for (int a = 1; 2 * a <= d; ++a) {
        if (std::gcd(a, d) != 1) continue;
        Signature s = hermitian_inertia(galois_twist(r.lattice, mod(static_cast<long>(a) * kinv, d)));
        if (s.radical != 0) throw VerificationError("reduction is degenerate");
        inv.signatures.emplace_back(std::max(s.positive, s.negative), std::min(s.positive, s.negative));
    }
    return inv;
}

inline bool same_reduction_invariants(const ReductionInvariants& a, const ReductionInvariants& b) {
    return a.rank == b.rank && a.normalized_det_norm == b.normalized_det_norm && a.signatures == b.signatures;
}

}  // namespace fermat
