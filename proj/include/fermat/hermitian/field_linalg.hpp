#pragma once

#include <optional>
#include <vector>

#include "fermat/lattice/charpoly.hpp"
#include "fermat/lattice/normal_forms.hpp"

namespace fermat {

using CycMatrix = FieldMatrix<CyclotomicElement>;
using CycRatMatrix = FieldMatrix<CyclotomicRational>;

inline CycRatMatrix to_field(const CycMatrix& m) {
    CycRatMatrix r;
    for (const auto& row : m) {
        r.emplace_back();
        for (const auto& x : row) r.back().push_back(CyclotomicRational::from(x));
    }
    return r;
}

/// Determinant over Q(zeta) by Gaussian elimination.
inline CyclotomicRational field_determinant(CycRatMatrix a, int d) {
    const std::size_t n = a.size();
    CyclotomicRational det(d, Rational(1));
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c].is_zero()) ++p;
        if (p == n) return CyclotomicRational(d);
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det = det * a[c][c];
        CyclotomicRational inv = inverse(a[c][c]);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a[i][c].is_zero()) continue;
            CyclotomicRational f = a[i][c] * inv;
            for (std::size_t j = c; j < n; ++j) a[i][j] = a[i][j] - f * a[c][j];
        }
    }
    return det;
}

inline CycRatMatrix field_inverse(CycRatMatrix a, int d) {
    const std::size_t n = a.size();
    CycRatMatrix inv(n, std::vector<CyclotomicRational>(n, CyclotomicRational(d)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = CyclotomicRational(d, Rational(1));
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c].is_zero()) ++p;
        if (p == n) throw std::domain_error("singular matrix over Q(zeta)");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        CyclotomicRational s = inverse(a[c][c]);
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] = s * a[c][j];
            inv[c][j] = s * inv[c][j];
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c].is_zero()) continue;
            CyclotomicRational f = a[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] = a[i][j] - f * a[c][j];
                inv[i][j] = inv[i][j] - f * inv[c][j];
            }
        }
    }
    return inv;
}

/// Incremental row echelon basis over Q(zeta): add() reports whether a row
/// is independent of those accepted so far.
class EchelonBasis {
public:
    explicit EchelonBasis(int d) : d_(d) {}

    bool add(std::vector<CyclotomicRational> row) {
        for (std::size_t b = 0; b < rows_.size(); ++b) {
            const auto& x = row[pivots_[b]];
            if (x.is_zero()) continue;
            CyclotomicRational f = x;  // basis rows are normalized to pivot 1
            for (std::size_t j = 0; j < row.size(); ++j) row[j] = row[j] - f * rows_[b][j];
        }
        std::size_t p = 0;
        while (p < row.size() && row[p].is_zero()) ++p;
        if (p == row.size()) return false;
        CyclotomicRational s = inverse(row[p]);
        for (auto& x : row) x = s * x;
        // keep earlier rows reduced at the new pivot
        for (auto& r : rows_) {
            if (r[p].is_zero()) continue;
            CyclotomicRational f = r[p];
            for (std::size_t j = 0; j < r.size(); ++j) r[j] = r[j] - f * row[j];
        }
        rows_.push_back(std::move(row));
        pivots_.push_back(p);
        return true;
    }

    std::size_t rank() const { return rows_.size(); }

private:
    int d_;
    std::vector<std::vector<CyclotomicRational>> rows_;
    std::vector<std::size_t> pivots_;
};

/// |N(x)| for x in Z[zeta]; zero only for x = 0.
inline Integer abs_norm(const CyclotomicElement& x) { return abs(x.norm()); }

/// q with |N(a - q b)| < |N(b)|: rounds a/b in the power basis, then tries
/// the neighbouring lattice points. Throws when d is not handled by rounding.
inline CyclotomicElement euclidean_quotient(const CyclotomicElement& a, const CyclotomicElement& b) {
    const int d = a.conductor();
    const CyclotomicRational x = CyclotomicRational::from(a) * inverse(CyclotomicRational::from(b));
    const Integer nb = abs_norm(b);
    std::vector<Integer> base;
    for (const auto& c : x.coords()) base.push_back(floor_div(c.get_num(), c.get_den()));
    std::vector<Integer> nearest;
    for (const auto& c : x.coords()) nearest.push_back(round_nearest(c));
    auto q = CyclotomicElement::from_poly(d, nearest);
    if (abs_norm(a - q * b) < nb) return q;
    const std::size_t phi = base.size();
    std::optional<std::pair<Integer, CyclotomicElement>> best;
    for (std::size_t mask = 0; mask < (std::size_t{1} << phi); ++mask) {
        std::vector<Integer> c = base;
        for (std::size_t i = 0; i < phi; ++i)
            if (mask >> i & 1) c[i] += 1;
        auto t = CyclotomicElement::from_poly(d, c);
        Integer nr = abs_norm(a - t * b);
        if (!best || nr < best->first) best.emplace(nr, t);
    }
    if (best->first >= nb) throw ResourceError("Euclidean step failed in Z[zeta_" + std::to_string(d) + "]");
    return best->second;
}

/// Echelon basis over Z[zeta] of the row span of `rows` (zero rows dropped),
/// by Euclidean elimination on the field norm.
inline std::vector<std::vector<CyclotomicElement>> euclidean_echelon(std::vector<std::vector<CyclotomicElement>> rows) {
    if (rows.empty()) return rows;
    const std::size_t cols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        for (;;) {
            std::size_t best = rows.size();
            Integer bn;
            for (std::size_t i = r; i < rows.size(); ++i) {
                if (rows[i][c].is_zero()) continue;
                Integer n = abs_norm(rows[i][c]);
                if (best == rows.size() || n < bn) {
                    best = i;
                    bn = n;
                }
            }
            if (best == rows.size()) break;
            std::swap(rows[r], rows[best]);
            bool clean = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c].is_zero()) continue;
                auto q = euclidean_quotient(rows[i][c], rows[r][c]);
                for (std::size_t j = c; j < cols; ++j) rows[i][j] -= q * rows[r][j];
                if (!rows[i][c].is_zero()) clean = false;
            }
            if (clean) break;
        }
        if (!rows[r][c].is_zero()) ++r;
    }
    rows.resize(r);
    return rows;
}

}  // namespace fermat
