/*
 * Toric divisor data and graded-semigroup computations.
 *
 * A divisor is its lattice polytope P; level-k sections are the lattice
 * points of kP read as monomials.  A marked evaluation point is a smooth
 * torus-fixed point, i.e. a vertex of P whose cone of primitive edge
 * directions is unimodular; the inverse of that edge matrix straightens
 * the cone onto the positive orthant and turns sections into local
 * exponents.  All bodies are built from those exponents:
 *
 *   - the invariant-flag body is the straightened image of P (exact);
 *   - the infinitesimal body applies the jet-to-infinitesimal reading to
 *     local exponents, hulled over levels k <= kmax (exact for lattice P,
 *     certified by comparing with the closed-form image);
 *   - multipoint bodies split each level's sections by lexicographic
 *     competition between the marked points.
 *
 * Enumeration is guarded by a hard cap on lattice points per level so a
 * bad input degrades into a clean CapExceeded instead of an OOM.
 */

#ifndef OKKIT_TORIC_HPP
#define OKKIT_TORIC_HPP

#include "okkit/jetsep.hpp"
#include "okkit/polytope.hpp"
#include "okkit/rational.hpp"
#include "okkit/valuation.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace okkit {

using LatticePoint = std::vector<std::int64_t>;
using IntMat       = std::vector<std::vector<std::int64_t>>;

inline constexpr long long kDefaultEnumerationCap = 200000;

/* Thrown when a single level would enumerate more lattice points than the cap. */
class CapExceeded : public std::runtime_error {
public:
    CapExceeded(long long requested, long long cap)
        : std::runtime_error("lattice enumeration would visit " +
                             std::to_string(requested) + " points (cap " +
                             std::to_string(cap) + ")"),
          requested_(requested), cap_(cap) {}
    long long requested() const { return requested_; }
    long long cap() const { return cap_; }

private:
    long long requested_, cap_;
};

/* A marked smooth torus-fixed point: a vertex of P plus a frame, i.e. a
 * permutation selecting which canonical edge serves as which local axis. */
struct EvaluationPoint {
    LatticePoint     vertex;
    std::vector<int> frame;   // permutation of 0..n-1; empty means identity
    std::string      label;   // display id; assigned "p<i>" when empty
};

/* Compact id for a frame permutation: digit string like "01" or "120" for
 * up to ten axes (the enumerable range), bracketed comma form above that. */
inline std::string frame_label(const std::vector<int>& frame) {
    if (frame.size() <= 10) {
        std::string s;
        for (int v : frame)
            s += static_cast<char>('0' + v);
        return s;
    }
    std::string s = "[";
    for (std::size_t i = 0; i < frame.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(frame[i]);
    }
    return s + "]";
}

inline RatVec to_ratvec(const LatticePoint& p) {
    RatVec v(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        v[i] = p[i];
    return v;
}

class ToricDivisorData {
public:
    /*
     * `poly` must be a lattice polytope, either full-dimensional (an ample
     * divisor on the corresponding smooth toric variety) or a single
     * lattice point (a trivial-twist divisor, kept so jet oracles can be
     * run against degree-zero bundles).  Every marked point must be a
     * vertex with a simple, unimodular cone; frames default to identity.
     */
    ToricDivisorData(Polytope poly, std::vector<EvaluationPoint> pts)
        : polytope_(std::move(poly)), points_(std::move(pts)) {
        if (polytope_.is_empty())
            throw std::invalid_argument("toric divisor: empty polytope");
        if (!polytope_.is_lattice())
            throw std::invalid_argument("toric divisor: polytope is not a lattice polytope");
        if (!polytope_.is_full_dimensional() && polytope_.affine_dim() != 0)
            throw std::invalid_argument(
                "toric divisor: polytope must be full-dimensional or a single point");
        const int n = polytope_.dim();
        std::set<LatticePoint> seen;
        for (std::size_t i = 0; i < points_.size(); ++i) {
            auto& p = points_[i];
            if (static_cast<int>(p.vertex.size()) != n)
                throw std::invalid_argument("toric divisor: point dimension mismatch");
            if (!seen.insert(p.vertex).second)
                throw std::invalid_argument("toric divisor: repeated evaluation point");
            if (p.frame.empty()) {
                p.frame.resize(n);
                for (int j = 0; j < n; ++j) p.frame[j] = j;
            }
            validate_permutation(p.frame, n);
            if (p.label.empty())
                p.label = "p" + std::to_string(i);
            edges_.push_back(canonical_edges_at(p.vertex));
        }
    }

    int dim() const { return polytope_.dim(); }
    bool is_point_divisor() const { return polytope_.affine_dim() == 0; }
    const Polytope& polytope() const { return polytope_; }
    const std::vector<EvaluationPoint>& points() const { return points_; }

    /* Primitive edge directions at a marked vertex, lex-sorted (canonical). */
    const std::vector<LatticePoint>& canonical_edges(int pt) const {
        return edges_.at(pt);
    }

    /* Rows of the unimodular map sending the vertex cone (edges ordered by
     * the given permutation of the canonical order) to the positive orthant. */
    IntMat frame_matrix(int pt, const std::vector<int>& perm) const {
        const int n = dim();
        validate_permutation(perm, n);
        if (is_point_divisor())
            throw std::domain_error("frame_matrix: point divisor has no vertex cone");
        const auto& edges = edges_.at(pt);
        RatMat cols(n, RatVec(n));
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                cols[i][j] = edges[perm[j]][i];
        // invert the edge matrix by solving U x = e_i for each i; the
        // solutions are the inverse's columns, and unimodularity makes
        // every entry an integer
        IntMat m(n, std::vector<std::int64_t>(n));
        std::vector<RatVec> inv_cols;
        for (int i = 0; i < n; ++i) {
            RatVec e(n, Rational(0));
            e[i] = 1;
            auto x = solve_square(cols, e);
            if (!x)
                throw std::domain_error("frame_matrix: degenerate edge matrix");
            inv_cols.push_back(*x);
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Rational& val = inv_cols[j][i];
                if (denominator(val) != 1)
                    throw std::domain_error("frame_matrix: vertex cone is not unimodular");
                m[i][j] = static_cast<std::int64_t>(numerator(val));
            }
        return m;
    }

    IntMat frame_matrix(int pt) const { return frame_matrix(pt, points_.at(pt).frame); }

private:
    static void validate_permutation(const std::vector<int>& perm, int n) {
        if (static_cast<int>(perm.size()) != n)
            throw std::invalid_argument("frame: wrong length");
        std::vector<bool> hit(n, false);
        for (int v : perm) {
            if (v < 0 || v >= n || hit[v])
                throw std::invalid_argument("frame: not a permutation");
            hit[v] = true;
        }
    }

    /* Primitive directions of the edges incident to `v`; requires a simple
     * unimodular cone (smooth fixed point) and throws otherwise. */
    std::vector<LatticePoint> canonical_edges_at(const LatticePoint& v) const {
        const int n = dim();
        if (is_point_divisor()) {
            if (to_ratvec(v) != polytope_.vertices().front())
                throw std::invalid_argument("toric divisor: point is not the polytope vertex");
            return {};
        }
        RatVec vr = to_ratvec(v);
        bool is_vertex = false;
        for (const auto& w : polytope_.vertices())
            is_vertex = is_vertex || w == vr;
        if (!is_vertex)
            throw std::invalid_argument("toric divisor: marked point is not a vertex");

        RatMat tight;
        for (const auto& f : polytope_.facets())
            if (dot(f.normal, vr) == f.offset)
                tight.push_back(f.normal);
        if (static_cast<int>(tight.size()) != n)
            throw std::invalid_argument("toric divisor: fixed point is not smooth (vertex not simple)");

        std::vector<LatticePoint> edges;
        for (int skip = 0; skip < n; ++skip) {
            RatMat rows;
            for (int j = 0; j < n; ++j)
                if (j != skip)
                    rows.push_back(tight[j]);
            if (rows.empty())
                rows.push_back(RatVec(n, Rational(0)));
            auto ker = kernel_basis(rows);
            if (ker.size() != 1)
                throw std::invalid_argument("toric divisor: degenerate vertex cone");
            RatVec dir = primitive(ker[0]);
            Rational side = dot(tight[skip], dir);
            if (side == 0)
                throw std::invalid_argument("toric divisor: degenerate vertex cone");
            if (side > 0)
                dir = vec_scale(dir, Rational(-1));
            LatticePoint e(n);
            for (int i = 0; i < n; ++i) {
                if (denominator(dir[i]) != 1)
                    throw std::invalid_argument("toric divisor: non-integral edge direction");
                e[i] = static_cast<std::int64_t>(numerator(dir[i]));
            }
            edges.push_back(std::move(e));
        }
        std::sort(edges.begin(), edges.end());

        RatMat u(n, RatVec(n));
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                u[i][j] = edges[j][i];
        Rational det = determinant(u);
        if (det != 1 && det != -1)
            throw std::invalid_argument("toric divisor: fixed point is not smooth (cone not unimodular)");
        return edges;
    }

    Polytope polytope_;
    std::vector<EvaluationPoint> points_;
    std::vector<std::vector<LatticePoint>> edges_;
};

/* ------------------------------------------------------------------ */
/* sections and local exponents                                       */
/* ------------------------------------------------------------------ */

/* Lattice points of k*P, i.e. the monomial basis of the level-k sections. */
inline std::vector<LatticePoint> sections(const ToricDivisorData& t, int k,
                                          long long cap = kDefaultEnumerationCap) {
    if (k < 1)
        throw std::invalid_argument("sections: level must be >= 1");
    const Polytope& p = t.polytope();
    const int n = p.dim();

    std::vector<std::int64_t> lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
        Rational mn = p.vertices().front()[i], mx = mn;
        for (const auto& v : p.vertices()) {
            if (v[i] < mn) mn = v[i];
            if (v[i] > mx) mx = v[i];
        }
        lo[i] = static_cast<std::int64_t>(numerator(mn)) * k;
        hi[i] = static_cast<std::int64_t>(numerator(mx)) * k;
    }
    long long count = 1;
    for (int i = 0; i < n; ++i) {
        count *= (hi[i] - lo[i] + 1);
        if (count > cap)
            throw CapExceeded(count, cap);
    }

    // integer facet data for k*P
    std::vector<std::vector<std::int64_t>> normals;
    std::vector<std::int64_t> offsets;
    for (const auto& f : p.facets()) {
        std::vector<std::int64_t> a(n);
        for (int i = 0; i < n; ++i)
            a[i] = static_cast<std::int64_t>(numerator(f.normal[i]));
        normals.push_back(std::move(a));
        offsets.push_back(static_cast<std::int64_t>(numerator(f.offset)) * k);
    }

    std::vector<LatticePoint> out;
    LatticePoint cur(n);
    auto scan = [&](auto&& self, int coord) -> void {
        if (coord == n) {
            for (std::size_t fi = 0; fi < normals.size(); ++fi) {
                std::int64_t s = 0;
                for (int i = 0; i < n; ++i)
                    s += normals[fi][i] * cur[i];
                if (s > offsets[fi])
                    return;
            }
            out.push_back(cur);
            return;
        }
        for (std::int64_t x = lo[coord]; x <= hi[coord]; ++x) {
            cur[coord] = x;
            self(self, coord + 1);
        }
    };
    scan(scan, 0);
    return out;
}

/* M * (u - k*v) for an integer frame matrix M. */
inline ValuationVector apply_frame(const IntMat& m, const LatticePoint& u,
                                   const LatticePoint& v, int k) {
    const int n = static_cast<int>(m.size());
    ValuationVector w(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            w[i] += m[i][j] * (u[j] - static_cast<std::int64_t>(k) * v[j]);
    return w;
}

/*
 * Local exponents of the level-k sections in the straightened chart at a
 * marked point: M*(u - k*vertex) over the lattice points u of kP.  All
 * results are componentwise nonnegative.
 */
inline std::vector<LatticePoint> local_exponents(const ToricDivisorData& t, int pt, int k,
                                                 long long cap = kDefaultEnumerationCap) {
    if (t.is_point_divisor()) {
        if (k < 1)
            throw std::invalid_argument("local_exponents: level must be >= 1");
        // one section per level, exponent zero in the trivializing chart
        return {LatticePoint(t.dim(), 0)};
    }
    const auto& p = t.points().at(pt);
    IntMat m = t.frame_matrix(pt);
    std::vector<LatticePoint> out;
    for (const auto& u : sections(t, k, cap)) {
        ValuationVector w = apply_frame(m, u, p.vertex, k);
        for (auto e : w)
            if (e < 0)
                throw std::domain_error("local_exponents: negative exponent (frame map bug)");
        out.push_back(std::move(w));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/* ------------------------------------------------------------------ */
/* bodies                                                              */
/* ------------------------------------------------------------------ */

/*
 * Body for the flag of torus-invariant subvarieties through the marked
 * fixed point: the image of P under x -> M(x - vertex).  Exact (no
 * enumeration enters).
 */
inline Polytope okounkov_body_invariant_flag(const ToricDivisorData& t, int pt) {
    const int n = t.dim();
    if (t.is_point_divisor())
        return Polytope::hull(n, {RatVec(n, Rational(0))});
    const auto& p = t.points().at(pt);
    IntMat m = t.frame_matrix(pt);
    RatMat rows(n, RatVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            rows[i][j] = m[i][j];
    return linear_image(translate(t.polytope(), vec_scale(to_ratvec(p.vertex), Rational(-1))),
                        rows);
}

struct InfinitesimalBody {
    Polytope body;     // hull over levels k <= kmax of normalized values
    Polytope level1;   // the k = 1 hull (certified inner bound on its own)
    bool exact;        // body == closed-form limit (checked, not assumed)
    int kmax;
};

/*
 * Body for the flag through the exceptional divisor of the blow-up at the
 * marked fixed point: normalized (|w|_1, w_2, ..., w_n) over local
 * exponents w of all levels up to kmax.  For lattice polytopes the level-1
 * hull already equals the limit, which is the straightened image of P
 * pushed through the jet-to-infinitesimal transform; `exact` records the
 * outcome of that comparison rather than trusting it.
 */
inline InfinitesimalBody infinitesimal_body_fixed_point(
        const ToricDivisorData& t, int pt, int kmax,
        long long cap = kDefaultEnumerationCap) {
    if (kmax < 1)
        throw std::invalid_argument("infinitesimal body: kmax must be >= 1");
    const int n = t.dim();
    std::vector<RatVec> pts, level1;
    for (int k = 1; k <= kmax; ++k) {
        for (const auto& w : local_exponents(t, pt, k, cap)) {
            ValuationVector v;
            v.push_back(total_degree(w));
            for (std::size_t i = 1; i < w.size(); ++i)
                v.push_back(w[i]);
            RatVec q(n);
            for (int i = 0; i < n; ++i)
                q[i] = Rational(v[i], k);
            if (k == 1)
                level1.push_back(q);
            pts.push_back(std::move(q));
        }
    }
    InfinitesimalBody out{Polytope::hull(n, std::move(pts)),
                          Polytope::hull(n, std::move(level1)), false, kmax};
    Polytope closed_form = transform_body(okounkov_body_invariant_flag(t, pt));
    out.exact = (out.body == closed_form);
    return out;
}

/* ------------------------------------------------------------------ */
/* multipoint bodies                                                   */
/* ------------------------------------------------------------------ */

enum class MultipointValuation { Flag, Infinitesimal };

/*
 * How sections with tied minimal valuation are attributed.  Strict follows
 * the letter of the competition (ties enter no body); Closure also credits
 * every tying point.  Tie values are limits of strict winners one level up
 * -- multiply by the vertex monomial of the tying point, which is valuation
 * zero there and strictly positive elsewhere -- so Closure stays an inner
 * approximation of the limit body while converging faster.  Closure is the
 * default for that reason.
 */
enum class TiePolicy { Strict, Closure };

/* The family of first flag divisors at the marked points (exceptional
 * divisors for the infinitesimal reading); L - t*family drives shrink/slice
 * computations. */
struct DivisorFamily {
    std::vector<int> component_points;   // indices into ToricDivisorData::points()
    MultipointValuation kind = MultipointValuation::Flag;
};

struct MultipointBodies {
    std::vector<Polytope>    bodies;      // indexed like the marked points
    std::vector<std::string> labels;
    MultipointValuation      kind;
    TiePolicy                ties;
    Rational                 shrink;      // the t in L - t*family (0 = plain)
    int                      kmax;
};

/*
 * Splits every level's sections among the marked points by strict (or
 * closure, see TiePolicy) lexicographic competition of their valuation
 * vectors and hulls each point's normalized share.  With shrink t > 0 the
 * sections are restricted to those vanishing to order >= k*t along every
 * component of the family (i.e. sections of k(L - t*family)), and the
 * first coordinate of each valuation drops by k*t before normalizing.
 */
inline MultipointBodies multipoint_bodies(const ToricDivisorData& t, int kmax,
                                          MultipointValuation kind,
                                          const Rational& shrink = Rational(0),
                                          TiePolicy ties = TiePolicy::Closure,
                                          long long cap = kDefaultEnumerationCap) {
    if (kmax < 1)
        throw std::invalid_argument("multipoint bodies: kmax must be >= 1");
    if (t.points().empty())
        throw std::invalid_argument("multipoint bodies: no marked points");
    if (t.is_point_divisor())
        throw std::invalid_argument("multipoint bodies: need a full-dimensional divisor");
    if (shrink < 0)
        throw std::invalid_argument("multipoint bodies: negative shrink");
    const int n = t.dim();
    const std::size_t np = t.points().size();

    std::vector<IntMat> frames;
    for (std::size_t j = 0; j < np; ++j)
        frames.push_back(t.frame_matrix(static_cast<int>(j)));

    std::vector<std::vector<RatVec>> buckets(np);
    for (int k = 1; k <= kmax; ++k) {
        const Rational kt = shrink * k;
        for (const auto& u : sections(t, k, cap)) {
            std::vector<ValuationVector> vals(np);
            bool admitted = true;
            for (std::size_t j = 0; j < np; ++j) {
                ValuationVector w = apply_frame(frames[j], u, t.points()[j].vertex, k);
                if (kind == MultipointValuation::Infinitesimal) {
                    ValuationVector v;
                    v.push_back(total_degree(w));
                    for (std::size_t i = 1; i < w.size(); ++i)
                        v.push_back(w[i]);
                    w = std::move(v);
                }
                // sections of the shrunken divisor vanish to order >= k*t
                // along every component
                if (shrink > 0 && Rational(w[0]) < kt)
                    admitted = false;
                vals[j] = std::move(w);
            }
            if (!admitted)
                continue;

            std::size_t best = 0;
            for (std::size_t j = 1; j < np; ++j)
                if (vals[j] < vals[best])
                    best = j;
            for (std::size_t j = 0; j < np; ++j) {
                if (vals[j] != vals[best])
                    continue;
                if (ties == TiePolicy::Strict) {
                    bool strictly_least = true;
                    for (std::size_t i = 0; i < np && strictly_least; ++i)
                        strictly_least = (i == j) || vals[j] < vals[i];
                    if (!strictly_least)
                        continue;
                }
                RatVec q(n);
                q[0] = (Rational(vals[j][0]) - kt) / k;
                for (int i = 1; i < n; ++i)
                    q[i] = Rational(vals[j][i], k);
                buckets[j].push_back(std::move(q));
            }
        }
    }

    MultipointBodies out;
    out.kind = kind;
    out.ties = ties;
    out.shrink = shrink;
    out.kmax = kmax;
    for (std::size_t j = 0; j < np; ++j) {
        out.bodies.push_back(Polytope::hull(n, std::move(buckets[j])));
        out.labels.push_back(t.points()[j].label);
    }
    return out;
}

/* ------------------------------------------------------------------ */
/* shrink threshold mu                                                 */
/* ------------------------------------------------------------------ */

/*
 * mu(L; family) = sup { t >= 0 : L - t*family is big }.  Over the polytope
 * this is the max over x in P of the smallest first-coordinate functional
 * of the family components -- an exact rational linear program, solved by
 * brute force over basic solutions (constraint subsets), which is plenty at
 * desk scale.
 */
inline Rational compute_mu(const ToricDivisorData& t, const DivisorFamily& family) {
    if (family.component_points.empty())
        throw std::invalid_argument("compute_mu: empty family (threshold unbounded)");
    if (t.is_point_divisor())
        throw std::invalid_argument("compute_mu: need a full-dimensional divisor");
    const int n = t.dim();

    // constraint rows in variables (x, t):  <a, x> + c*t <= b
    RatMat rows;
    RatVec rhs;
    for (const auto& f : t.polytope().facets()) {
        RatVec row = f.normal;
        row.push_back(0);
        rows.push_back(std::move(row));
        rhs.push_back(f.offset);
    }
    for (int pi : family.component_points) {
        IntMat m = t.frame_matrix(pi);
        RatVec g(n, Rational(0));
        for (int j = 0; j < n; ++j) {
            if (family.kind == MultipointValuation::Infinitesimal) {
                for (int i = 0; i < n; ++i)
                    g[j] += m[i][j];
            } else {
                g[j] = m[0][j];
            }
        }
        // t <= <g, x - vertex> becomes -<g, x> + t <= -<g, vertex>
        RatVec row = vec_scale(g, Rational(-1));
        row.push_back(1);
        rows.push_back(std::move(row));
        rhs.push_back(-dot(g, to_ratvec(t.points().at(pi).vertex)));
    }

    const std::size_t mrows = rows.size();
    const int nv = n + 1;
    std::optional<Rational> best;
    std::vector<std::size_t> idx(nv);
    for (int i = 0; i < nv; ++i) idx[i] = i;
    if (mrows < static_cast<std::size_t>(nv))
        throw std::domain_error("compute_mu: underdetermined system");
    while (true) {
        RatMat a;
        RatVec b;
        for (int i = 0; i < nv; ++i) {
            a.push_back(rows[idx[i]]);
            b.push_back(rhs[idx[i]]);
        }
        if (auto z = solve_square(a, b)) {
            bool feasible = true;
            for (std::size_t r = 0; r < mrows && feasible; ++r)
                feasible = dot(rows[r], *z) <= rhs[r];
            if (feasible) {
                Rational tval = (*z)[n];
                if (!best || tval > *best)
                    best = tval;
            }
        }
        int k = nv - 1;
        while (k >= 0 && idx[k] == mrows - static_cast<std::size_t>(nv - k))
            --k;
        if (k < 0) break;
        ++idx[k];
        for (int j = k + 1; j < nv; ++j)
            idx[j] = idx[j - 1] + 1;
    }
    if (!best)
        throw std::domain_error("compute_mu: infeasible system");
    return *best;
}

/* ------------------------------------------------------------------ */
/* oracles                                                             */
/* ------------------------------------------------------------------ */

/*
 * Brute-force k-jet surjectivity check at a fixed point: monomials
 * diagonalize the jet evaluation there, so sections separate k-jets
 * exactly when every exponent of total degree <= k occurs among the
 * level-1 local exponents.
 */
inline bool jet_oracle_fixed_point(const ToricDivisorData& t, int pt, int k,
                                   long long cap = kDefaultEnumerationCap) {
    if (k < 0)
        throw std::invalid_argument("jet oracle: jet order must be >= 0");
    const int n = t.dim();
    auto exps = local_exponents(t, pt, 1, cap);
    std::set<LatticePoint> have(exps.begin(), exps.end());

    LatticePoint a(n, 0);
    auto walk = [&](auto&& self, int coord, std::int64_t left) -> bool {
        if (coord == n)
            return have.count(a) > 0;
        for (std::int64_t e = 0; e <= left; ++e) {
            a[coord] = e;
            if (!self(self, coord + 1, left - e))
                return false;
        }
        a[coord] = 0;
        return true;
    };
    return walk(walk, 0, k);
}

/* A finite slice of the valuation semigroup: all level-k values. */
struct SemigroupSample {
    int level;
    std::vector<ValuationVector> values;
};

/* Monomial valuation values for every level up to kmax. */
inline std::vector<SemigroupSample> semigroup_sample(
        const ToricDivisorData& t, int pt, int kmax, bool infinitesimal,
        long long cap = kDefaultEnumerationCap) {
    if (kmax < 1)
        throw std::invalid_argument("semigroup sample: kmax must be >= 1");
    std::vector<SemigroupSample> out;
    for (int k = 1; k <= kmax; ++k) {
        SemigroupSample s;
        s.level = k;
        for (const auto& w : local_exponents(t, pt, k, cap)) {
            if (infinitesimal) {
                ValuationVector v;
                v.push_back(total_degree(w));
                for (std::size_t i = 1; i < w.size(); ++i)
                    v.push_back(w[i]);
                s.values.push_back(std::move(v));
            } else {
                s.values.push_back(w);
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

struct SamplingOutlier {
    int level;
    std::vector<LatticePoint> support;   // the sampled section's terms
    ValuationVector value;
};

struct SamplingOracleReport {
    std::uint64_t seed;
    int kmax;
    int samples_per_level;
    long long sections_sampled = 0;
    std::vector<SamplingOutlier> outliers;   // values landing outside the body
};

/*
 * Random-coefficient cross-check: sample sections with random monomial
 * support at each level, take the valuation of the sampled section (which
 * depends only on its support -- distinct monomials cannot cancel in the
 * extremal term), and report any normalized value falling outside `body`.
 * An empty report certifies the sampled slice against the claimed body.
 * Index draws reduce the raw engine output modulo the universe size so a
 * seed pins the exact sample across platforms.
 */
inline SamplingOracleReport sampling_oracle(const ToricDivisorData& t, int pt,
                                            const Polytope& body, int kmax,
                                            int samples_per_level, std::uint64_t seed,
                                            bool infinitesimal,
                                            long long cap = kDefaultEnumerationCap) {
    if (samples_per_level < 1)
        throw std::invalid_argument("sampling oracle: need at least one sample per level");
    SamplingOracleReport rep;
    rep.seed = seed;
    rep.kmax = kmax;
    rep.samples_per_level = samples_per_level;
    std::mt19937_64 rng(seed);
    const int n = t.dim();

    for (int k = 1; k <= kmax; ++k) {
        auto universe = local_exponents(t, pt, k, cap);
        const std::size_t m = universe.size();
        for (int s = 0; s < samples_per_level; ++s) {
            std::size_t want = 1 + static_cast<std::size_t>(rng() % std::min<std::size_t>(m, 8));
            std::set<std::size_t> picked;
            while (picked.size() < want)
                picked.insert(static_cast<std::size_t>(rng() % m));
            std::vector<Exponent> terms;
            for (auto i : picked)
                terms.push_back(universe[i]);
            MonomialSection sec = make_section(terms);
            ValuationVector v = infinitesimal ? infinitesimal_valuation(sec)
                                              : flag_valuation(sec);
            ++rep.sections_sampled;
            RatVec q(n);
            for (int i = 0; i < n; ++i)
                q[i] = Rational(v[i], k);
            if (!body.contains_point(q))
                rep.outliers.push_back(SamplingOutlier{k, terms, v});
        }
    }
    return rep;
}

/* All n! frames at a point, for exhaustive flag sweeps. */
inline std::vector<std::vector<int>> enumerate_frames(int n) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::vector<std::vector<int>> out;
    do {
        out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace okkit

#endif
