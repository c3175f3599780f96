/*
 * Exact rational scalars, vectors, and small dense linear algebra.
 *
 * Everything downstream (polytopes, valuations, certificates) is built on
 * these types; no floating point is used anywhere in the library core.
 * Scalars are boost::multiprecision rationals, which keep themselves in
 * lowest terms with positive denominator, so value equality is plain
 * operator== and printing is canonical.
 */

#ifndef OKKIT_RATIONAL_HPP
#define OKKIT_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace okkit {

using Int      = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/* A point or direction with exact rational entries. */
using RatVec = std::vector<Rational>;

/* Row-major dense matrix; rows may be appended freely before use. */
using RatMat = std::vector<RatVec>;

/* -------------------------------------------------------------------- */
/* scalar parsing / printing                                            */
/* -------------------------------------------------------------------- */

/* Renders in lowest terms: "p/q", or just "p" when the denominator is 1. */
inline std::string format_rational(const Rational& r) {
    if (denominator(r) == 1)
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

/* Accepts "p", "-p", "p/q"; rejects empty strings and zero denominators. */
inline Rational parse_rational(const std::string& text) {
    if (text.empty())
        throw std::invalid_argument("empty rational literal");
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos)
            return Rational(Int(text));
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den == 0)
            throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument("bad rational literal '" + text + "'");
    }
}

/* -------------------------------------------------------------------- */
/* vector helpers                                                       */
/* -------------------------------------------------------------------- */

inline Rational dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dot: dimension mismatch");
    Rational acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += a[i] * b[i];
    return acc;
}

inline RatVec vec_add(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("vec_add: dimension mismatch");
    RatVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] + b[i];
    return out;
}

inline RatVec vec_sub(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("vec_sub: dimension mismatch");
    RatVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] - b[i];
    return out;
}

inline RatVec vec_scale(const RatVec& a, const Rational& s) {
    RatVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] * s;
    return out;
}

inline bool is_zero_vec(const RatVec& a) {
    for (const auto& x : a)
        if (x != 0)
            return false;
    return true;
}

/* Strict lexicographic order, left to right. */
inline bool lex_less(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("lex_less: dimension mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return false;
}

/*
 * Scale a rational vector by the unique positive rational that makes it an
 * integer vector with content 1 (gcd of entries).  Used to put facet normals
 * and ray directions into canonical form without flipping orientation.
 * The zero vector is returned unchanged.
 */
inline RatVec primitive(const RatVec& v) {
    Int den_lcm = 1;
    for (const auto& x : v)
        den_lcm = lcm(den_lcm, denominator(x));
    Int num_gcd = 0;
    for (const auto& x : v)
        num_gcd = gcd(num_gcd, numerator(x) * (den_lcm / denominator(x)));
    if (num_gcd == 0)
        return v;
    RatVec out(v.size());
    Rational factor(den_lcm, num_gcd);
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = v[i] * factor;
    return out;
}

/* -------------------------------------------------------------------- */
/* small dense linear algebra (exact Gaussian elimination)              */
/* -------------------------------------------------------------------- */

/*
 * Reduce `m` in place to row echelon form; returns the rank.  If `pivots`
 * is given it receives the pivot column of each nonzero row in order.
 */
inline int row_echelon(RatMat& m, std::vector<int>* pivots = nullptr) {
    if (pivots) pivots->clear();
    if (m.empty()) return 0;
    const std::size_t cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t piv = row;
        while (piv < m.size() && m[piv][col] == 0)
            ++piv;
        if (piv == m.size())
            continue;
        std::swap(m[row], m[piv]);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0)
                continue;
            Rational f = m[r][col] / m[row][col];
            for (std::size_t c = col; c < cols; ++c)
                m[r][c] -= f * m[row][c];
        }
        if (pivots) pivots->push_back(static_cast<int>(col));
        ++row;
    }
    return static_cast<int>(row);
}

inline int rank_of(RatMat m) { return row_echelon(m); }

/*
 * Basis of { x : m x = 0 }.  Result has (cols - rank) vectors; exact.
 */
inline std::vector<RatVec> kernel_basis(RatMat m) {
    if (m.empty())
        throw std::invalid_argument("kernel_basis: empty matrix");
    const std::size_t cols = m[0].size();
    std::vector<int> pivots;
    int rank = row_echelon(m, &pivots);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;

    std::vector<RatVec> basis;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col])
            continue;
        RatVec v(cols, Rational(0));
        v[free_col] = 1;
        // back-substitute through the echelon rows
        for (int r = rank - 1; r >= 0; --r) {
            int pc = pivots[r];
            Rational acc = 0;
            for (std::size_t c = pc + 1; c < cols; ++c)
                acc += m[r][c] * v[c];
            v[pc] = -acc / m[r][pc];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/* Solve the square system a x = b; nullopt when `a` is singular. */
inline std::optional<RatVec> solve_square(RatMat a, RatVec b) {
    const std::size_t n = a.size();
    if (n == 0 || a[0].size() != n || b.size() != n)
        throw std::invalid_argument("solve_square: shape mismatch");
    for (std::size_t i = 0; i < n; ++i)
        a[i].push_back(b[i]);
    std::vector<int> pivots;
    int rank = row_echelon(a, &pivots);
    if (rank < static_cast<int>(n) || pivots.back() == static_cast<int>(n))
        return std::nullopt;    // singular (or only consistent with rhs column pivot)
    RatVec x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[pivots[i]] = a[i][n] / a[i][pivots[i]];
    return x;
}

inline Rational determinant(RatMat m) {
    const std::size_t n = m.size();
    if (n == 0 || m[0].size() != n)
        throw std::invalid_argument("determinant: not square");
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0)
            ++piv;
        if (piv == n)
            return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0)
                continue;
            Rational f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c)
                m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

}  // namespace okkit

#endif
