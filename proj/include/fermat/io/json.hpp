#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "fermat/cubic/cubic.hpp"
#include "fermat/git/stability.hpp"
#include "fermat/hodge/hodge.hpp"

namespace fermat::io {

using Json = nlohmann::json;

struct ParseError : PreconditionError {
    using PreconditionError::PreconditionError;
};

// machine integers stay numbers; anything wider becomes a decimal string
inline Json integer(const Integer& x) {
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}

inline Integer parse_integer(const Json& j) {
    if (j.is_number_integer()) return Integer(j.get<long>());
    if (j.is_string()) {
        Integer x;
        if (x.set_str(j.get<std::string>(), 10) != 0) throw ParseError("bad integer '" + j.get<std::string>() + "'");
        return x;
    }
    throw ParseError("expected an integer");
}

inline std::string rational(const Rational& q) { return q.get_str(); }

inline Rational parse_rational(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw ParseError("coefficients are strings \"p/q\" or integers");
    const std::string s = j.get<std::string>();
    Rational q;
    if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0) throw ParseError("bad rational '" + s + "'");
    q.canonicalize();
    return q;
}

inline Json vector(const IntVector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(integer(x));
    return a;
}

inline Json vector(const std::vector<Rational>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(rational(x));
    return a;
}

inline Json matrix(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(vector(m.row(i)));
    return rows;
}

inline Json signature(const Signature& s) {
    return {{"positive", s.positive}, {"negative", s.negative}, {"radical", s.radical}};
}

/// {rank, symmetry, gram (row-major), label}
inline Json lattice(const IntegerLattice& l) {
    Json g = Json::array();
    for (std::size_t i = 0; i < l.rank(); ++i)
        for (std::size_t j = 0; j < l.rank(); ++j) g.push_back(integer(l.gram()(i, j)));
    return {{"rank", l.rank()}, {"symmetry", to_string(l.symmetry())}, {"gram", g}, {"label", l.label()}};
}

inline IntegerLattice parse_lattice(const Json& j) {
    try {
        const std::size_t r = j.at("rank").get<std::size_t>();
        const std::string sym = j.at("symmetry").get<std::string>();
        if (sym != "symmetric" && sym != "antisymmetric") throw ParseError("unknown symmetry '" + sym + "'");
        const Json& g = j.at("gram");
        if (!g.is_array() || g.size() != r * r) throw ParseError("gram must hold rank^2 entries");
        IntMatrix m(r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t k = 0; k < r; ++k) m(i, k) = parse_integer(g[i * r + k]);
        return IntegerLattice(std::move(m), sym == "symmetric" ? Symmetry::symmetric : Symmetry::antisymmetric,
                              j.value("label", std::string{}));
    } catch (const Json::exception& e) {
        throw ParseError(std::string("lattice JSON: ") + e.what());
    }
}

/// Rank, symmetry, determinant; parity, signature and discriminant when they apply.
inline Json invariants(const IntegerLattice& l) {
    Json j{{"rank", l.rank()}, {"symmetry", to_string(l.symmetry())}};
    j["determinant"] = integer(determinant(l.gram()));
    if (l.symmetry() == Symmetry::symmetric) {
        j["even"] = is_even(l);
        const Signature s = signature(l);
        j["signature"] = signature(s);
        const auto disc = s.radical ? quotient_discriminant(l) : discriminant(l);
        Json ed = Json::array();
        for (const auto& x : disc.elementary_divisors) ed.push_back(integer(x));
        j["discriminant"] = {{"elementary_divisors", ed}, {"order", integer(disc.group_order)}, {"cyclic", disc.is_cyclic()}};
    }
    return j;
}

inline Json actions(const PrimitiveFermatLattice& p) {
    Json a = Json::object();
    for (std::size_t i = 0; i < p.u.size(); ++i) a["u_" + std::to_string(i)] = matrix(p.u[i]);
    for (std::size_t i = 0; i < p.transpositions.size(); ++i)
        a["(" + std::to_string(i + 1) + " " + std::to_string(i + 2) + ")"] = matrix(p.transpositions[i]);
    return a;
}

inline Json cyclotomic(const CyclotomicElement& x) {
    Json a = Json::array();
    for (const auto& c : x.coords()) a.push_back(integer(c));
    return a;
}

/// {d, rank, gram: coordinate vectors per entry, form_kind, scaling}
inline Json hermitian(const HermitianLattice& h) {
    Json g = Json::array();
    for (const auto& row : h.gram) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(cyclotomic(x));
        g.push_back(std::move(r));
    }
    return {{"d", h.d},          {"rank", h.rank},     {"gram", g}, {"form_kind", to_string(h.form_kind)},
            {"scaling", rational(h.scaling)}, {"label", h.label}, {"excluded", h.excluded}};
}

inline Json hodge_report(int d, int n) {
    Json chars = Json::array();
    for (const auto& c : enumerate_characters(d, n)) {
        const auto t = hodge_type(c);
        chars.push_back({{"K", c.k}, {"p", t.p}, {"q", t.q}});
    }
    Json h = Json::object();
    for (const auto& [p, count] : hodge_numbers(d, n)) h[std::to_string(p)] = count;
    return {{"d", d}, {"n", n}, {"characters", chars}, {"hodge_numbers", h}};
}

// forms: {m, degree, terms: [{exponents, coeff: "p/q"}]}

inline Json form(const HomogeneousForm& f) {
    Json terms = Json::array();
    for (const auto& [e, c] : f.terms()) terms.push_back({{"exponents", e}, {"coeff", rational(c)}});
    return {{"m", f.m()}, {"degree", f.degree()}, {"terms", terms}};
}

inline HomogeneousForm parse_form(const Json& j) {
    try {
        HomogeneousForm f(j.at("m").get<int>(), j.at("degree").get<int>());
        for (const auto& t : j.at("terms")) f.add_term(t.at("exponents").get<std::vector<int>>(), parse_rational(t.at("coeff")));
        return f;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("form JSON: ") + e.what());
    }
}

inline Json semistability(const SemistabilityCertificate& c) {
    Json j{{"semistable", c.semistable}};
    if (c.semistable) j["lambda"] = vector(c.lambda);
    else j["separator"] = vector(c.separator);
    return j;
}

inline Json stability(const StabilityCertificate& c) {
    Json j{{"stable", c.stable}, {"semistable", c.semistable}, {"hull_dimension", c.hull_dimension}, {"facets", c.facets}};
    if (!c.blocking_facet.empty()) j["blocking_facet"] = vector(c.blocking_facet);
    return j;
}

/// {bound, basis_label, hits, truncated}; elapsed only when asked for
inline Json search(const SearchReport& s, std::optional<long> elapsed_ms = std::nullopt) {
    Json hits = Json::array();
    for (const auto& h : s.hits) hits.push_back(vector(h));
    Json j{{"bound", s.bound}, {"basis_label", s.basis_label}, {"hits", hits}, {"truncated", s.truncated}};
    if (elapsed_ms) j["elapsed_ms"] = *elapsed_ms;
    return j;
}

}  // namespace fermat::io
