/*
 * Valuation vectors of monomial sections.
 *
 * Sections are represented by their monomial support: a duplicate-free set
 * of nonnegative exponent vectors.  Over a torus-equivariant basis the
 * monomials appearing in a section are distinct, so no cancellation can
 * remove the extremal term; every valuation below therefore depends on the
 * support alone, and generic coefficients are never materialized.
 *
 * Two valuations are provided:
 *   - flag_valuation: reads the flag of coordinate subspaces at the origin
 *     of the local chart (iteratively minimal exponent, i.e. the lex-least
 *     term);
 *   - infinitesimal_valuation: the flag through the exceptional divisor of
 *     the blow-up at the origin.  Its first entry is the minimal total
 *     degree; the remaining entries are read off the lex-least monomial
 *     among the lowest-degree terms.
 *
 * The tie-breaking order on exponent tuples is configurable; the default
 * compares entries left to right.
 */

#ifndef OKKIT_VALUATION_HPP
#define OKKIT_VALUATION_HPP

#include "okkit/polytope.hpp"
#include "okkit/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace okkit {

using Exponent        = std::vector<std::int64_t>;
using ValuationVector = std::vector<std::int64_t>;

/* Which way exponent tuples are read when breaking ties. */
enum class LexConvention { LeftToRight, RightToLeft };

inline bool lex_less_exp(const Exponent& a, const Exponent& b,
                         LexConvention conv = LexConvention::LeftToRight) {
    if (a.size() != b.size())
        throw std::invalid_argument("lex_less_exp: dimension mismatch");
    if (conv == LexConvention::LeftToRight)
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

/* A section given by its monomial support. */
struct MonomialSection {
    std::vector<Exponent> terms;
};

/* Validates and canonicalizes (sorts, rejects duplicates/negatives). */
inline MonomialSection make_section(std::vector<Exponent> terms) {
    if (terms.empty())
        throw std::invalid_argument("section: empty term set");
    const std::size_t n = terms.front().size();
    for (const auto& t : terms) {
        if (t.size() != n)
            throw std::invalid_argument("section: mixed exponent dimensions");
        for (auto e : t)
            if (e < 0)
                throw std::invalid_argument("section: negative exponent");
    }
    std::sort(terms.begin(), terms.end());
    if (std::adjacent_find(terms.begin(), terms.end()) != terms.end())
        throw std::invalid_argument("section: duplicate term");
    return MonomialSection{std::move(terms)};
}

inline std::int64_t total_degree(const Exponent& w) {
    std::int64_t s = 0;
    for (auto e : w) s += e;
    return s;
}

/*
 * Valuation along the flag of coordinate subspaces: first minimize the
 * first exponent, then the second among survivors, and so on -- which is
 * exactly the lex-least term of the support.
 */
inline ValuationVector flag_valuation(const MonomialSection& s,
                                      LexConvention conv = LexConvention::LeftToRight) {
    if (s.terms.empty())
        throw std::invalid_argument("flag_valuation: empty section");
    const Exponent* best = &s.terms.front();
    for (const auto& t : s.terms)
        if (lex_less_exp(t, *best, conv))
            best = &t;
    return *best;
}

/*
 * Valuation along the flag through the exceptional divisor of the blow-up
 * at the chart origin: (min total degree, then entries 2..n of the
 * lex-least monomial among the lowest-degree terms).
 */
inline ValuationVector infinitesimal_valuation(
        const MonomialSection& s,
        LexConvention conv = LexConvention::LeftToRight) {
    if (s.terms.empty())
        throw std::invalid_argument("infinitesimal_valuation: empty section");
    const Exponent* best = nullptr;
    std::int64_t best_deg = 0;
    for (const auto& t : s.terms) {
        std::int64_t d = total_degree(t);
        if (!best || d < best_deg ||
            (d == best_deg && lex_less_exp(t, *best, conv))) {
            best = &t;
            best_deg = d;
        }
    }
    ValuationVector v;
    v.reserve(best->size());
    v.push_back(best_deg);
    for (std::size_t i = 1; i < best->size(); ++i)
        v.push_back((*best)[i]);
    return v;
}

/*
 * Coordinate change taking flag valuation vectors to infinitesimal ones:
 * (v_1, ..., v_n) |-> (v_1 + ... + v_n, v_2, ..., v_n).  Unimodular, so
 * it preserves lattice structure and Euclidean volume.
 */
inline ValuationVector jet_to_infinitesimal(const ValuationVector& v) {
    if (v.empty())
        throw std::invalid_argument("jet_to_infinitesimal: empty vector");
    ValuationVector out;
    out.reserve(v.size());
    out.push_back(total_degree(v));
    for (std::size_t i = 1; i < v.size(); ++i)
        out.push_back(v[i]);
    return out;
}

/* Matrix of the transform above, as rows of output functionals. */
inline RatMat jet_to_infinitesimal_matrix(int n) {
    if (n < 1)
        throw std::invalid_argument("jet_to_infinitesimal_matrix: n must be >= 1");
    RatMat m(n, RatVec(n, Rational(0)));
    for (int j = 0; j < n; ++j)
        m[0][j] = 1;
    for (int i = 1; i < n; ++i)
        m[i][i] = 1;
    return m;
}

/* Image of a body under the jet-to-infinitesimal coordinate change. */
inline Polytope transform_body(const Polytope& p) {
    return linear_image(p, jet_to_infinitesimal_matrix(p.dim()));
}

}  // namespace okkit

#endif
