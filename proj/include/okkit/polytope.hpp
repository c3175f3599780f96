/*
 * Exact convex polytopes in Q^n, n <= 4 at desk scale.
 *
 * A Polytope carries both representations at all times:
 *   - vertices: irredundant, lexicographically sorted (canonical), and
 *   - facets:   a complete list of closed halfspaces <a,x> <= b whose
 *               intersection is exactly the body.  For lower-dimensional
 *               bodies the list includes the affine-hull equations as
 *               opposite halfspace pairs, so membership testing is always
 *               just "satisfies every facet".
 *
 * The empty set and lower-dimensional bodies are first-class values: the
 * empty polytope has no vertices and a single infeasible facet, a single
 * point has no facets beyond its equality pairs.  Facet enumeration is
 * exhaustive over vertex subsets (simple and exact rather than fast), with
 * one concession: planar hulls reduce the vertex set by monotone chain
 * first, since planar instances are the ones that see thousands of points.
 */

#ifndef OKKIT_POLYTOPE_HPP
#define OKKIT_POLYTOPE_HPP

#include "okkit/rational.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace okkit {

/* Closed halfspace { x : <normal, x> <= offset }. */
struct Halfspace {
    RatVec   normal;
    Rational offset;

    bool operator==(const Halfspace& o) const {
        return normal == o.normal && offset == o.offset;
    }
    bool operator<(const Halfspace& o) const {
        if (normal != o.normal)
            return lex_less(normal, o.normal);
        return offset < o.offset;
    }
};

class Polytope {
public:
    /* Convex hull of a point set; the empty set when `points` is empty. */
    static Polytope hull(int dim, std::vector<RatVec> points);

    static Polytope empty(int dim) {
        Polytope p(dim);
        p.affine_dim_ = -1;
        p.facets_.push_back(Halfspace{RatVec(dim, Rational(0)), Rational(-1)});
        return p;
    }

    int  dim() const { return dim_; }
    int  affine_dim() const { return affine_dim_; }
    bool is_empty() const { return affine_dim_ < 0; }
    bool is_full_dimensional() const { return affine_dim_ == dim_; }

    const std::vector<RatVec>&    vertices() const { return vertices_; }
    const std::vector<Halfspace>& facets() const { return facets_; }

    /* Closed membership: boundary points count as inside. */
    bool contains_point(const RatVec& x) const {
        if (static_cast<int>(x.size()) != dim_)
            throw std::invalid_argument("contains_point: dimension mismatch");
        for (const auto& f : facets_)
            if (dot(f.normal, x) > f.offset)
                return false;
        return !is_empty();
    }

    /* True when every vertex is integral. */
    bool is_lattice() const {
        for (const auto& v : vertices_)
            for (const auto& c : v)
                if (denominator(c) != 1)
                    return false;
        return true;
    }

    bool operator==(const Polytope& o) const {
        return dim_ == o.dim_ && vertices_ == o.vertices_;
    }
    bool operator!=(const Polytope& o) const { return !(*this == o); }

    friend Polytope translate(const Polytope&, const RatVec&);
    friend Polytope scaled(const Polytope&, const Rational&);

private:
    explicit Polytope(int dim) : dim_(dim) {
        if (dim < 1)
            throw std::invalid_argument("Polytope: dimension must be >= 1");
    }

    int dim_;
    int affine_dim_ = -1;
    std::vector<RatVec>    vertices_;
    std::vector<Halfspace> facets_;

    static void chain_reduce_2d(std::vector<RatVec>& pts);
    static std::vector<Halfspace> enumerate_facets(int r,
                                                   const std::vector<RatVec>& pts);
};

/* -------------------------------------------------------------------- */
/* hull construction                                                    */
/* -------------------------------------------------------------------- */

/* 2-D cross product of (a-o) and (b-o); sign gives turn direction. */
inline Rational cross2(const RatVec& o, const RatVec& a, const RatVec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

/* Andrew's monotone chain; replaces `pts` by its hull vertices in ccw order. */
inline void Polytope::chain_reduce_2d(std::vector<RatVec>& pts) {
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3)
        return;
    std::vector<RatVec> h;
    h.reserve(pts.size() + 1);
    for (const auto& p : pts) {                       // lower chain
        while (h.size() >= 2 && cross2(h[h.size() - 2], h.back(), p) <= 0)
            h.pop_back();
        h.push_back(p);
    }
    std::size_t lower = h.size() + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {  // upper chain
        while (h.size() >= lower && cross2(h[h.size() - 2], h.back(), *it) <= 0)
            h.pop_back();
        h.push_back(*it);
    }
    h.pop_back();                                     // closes the cycle
    pts = std::move(h);
}

/*
 * All facets of a full-dimensional point configuration in Q^r: every
 * r-subset spanning a hyperplane is tested for having the whole set on
 * one closed side.  Hyperplanes are deduplicated by canonical key so each
 * side scan runs once.
 */
inline std::vector<Halfspace> Polytope::enumerate_facets(
        int r, const std::vector<RatVec>& pts) {
    const std::size_t m = pts.size();
    std::set<std::pair<RatVec, Rational>> seen;
    std::vector<Halfspace> out;

    std::vector<std::size_t> idx(r);
    // lexicographic subset walk over C(m, r)
    for (int i = 0; i < r; ++i) idx[i] = i;
    while (true) {
        RatMat rows;
        for (int i = 1; i < r; ++i)
            rows.push_back(vec_sub(pts[idx[i]], pts[idx[0]]));
        if (r == 1)
            rows.push_back(RatVec(1, Rational(0)));   // hyperplane = point in 1-D
        auto ker = kernel_basis(rows);
        if (ker.size() == 1) {
            RatVec a = primitive(ker[0]);
            Rational b = dot(a, pts[idx[0]]);
            // sign-canonical key so each hyperplane is scanned once
            RatVec key_a = a;
            Rational key_b = b;
            for (const auto& c : key_a) {
                if (c > 0) break;
                if (c < 0) {
                    key_a = vec_scale(key_a, Rational(-1));
                    key_b = -key_b;
                    break;
                }
            }
            if (seen.emplace(key_a, key_b).second) {
                bool below = true, above = true;
                for (const auto& p : pts) {
                    Rational s = dot(a, p);
                    if (s > b) below = false;
                    if (s < b) above = false;
                    if (!below && !above) break;
                }
                if (below)
                    out.push_back(Halfspace{a, b});
                else if (above)
                    out.push_back(Halfspace{vec_scale(a, Rational(-1)), -b});
            }
        }
        // advance subset
        int k = r - 1;
        while (k >= 0 && idx[k] == m - static_cast<std::size_t>(r - k))
            --k;
        if (k < 0) break;
        ++idx[k];
        for (int j = k + 1; j < r; ++j)
            idx[j] = idx[j - 1] + 1;
    }
    return out;
}

inline Polytope Polytope::hull(int dim, std::vector<RatVec> points) {
    Polytope p(dim);
    for (const auto& pt : points)
        if (static_cast<int>(pt.size()) != dim)
            throw std::invalid_argument("hull: point dimension mismatch");
    if (points.empty())
        return empty(dim);

    std::sort(points.begin(), points.end(), lex_less);
    points.erase(std::unique(points.begin(), points.end()), points.end());

    /* affine hull: rank and pivot coordinates of the direction space */
    const RatVec v0 = points[0];
    RatMat dirs;
    for (std::size_t i = 1; i < points.size(); ++i)
        dirs.push_back(vec_sub(points[i], v0));
    std::vector<int> piv_cols;
    int r = 0;
    if (!dirs.empty()) {
        RatMat ech = dirs;
        r = row_echelon(ech, &piv_cols);
        ech.resize(r);
        dirs = std::move(ech);
    }
    p.affine_dim_ = r;

    /* affine-hull equations, emitted as opposite halfspace pairs */
    std::vector<Halfspace> eqs;
    if (r < dim) {
        RatMat d = dirs;
        if (d.empty())
            d.push_back(RatVec(dim, Rational(0)));
        for (auto& a : kernel_basis(d)) {
            a = primitive(a);
            Rational b = dot(a, v0);
            eqs.push_back(Halfspace{a, b});
            eqs.push_back(Halfspace{vec_scale(a, Rational(-1)), -b});
        }
    }

    if (r == 0) {
        p.vertices_ = {v0};
        p.facets_ = std::move(eqs);
        std::sort(p.facets_.begin(), p.facets_.end());
        return p;
    }

    /* coordinates on the affine hull: project to the pivot columns */
    std::map<RatVec, RatVec> back;    // projected -> original
    std::vector<RatVec> proj;
    proj.reserve(points.size());
    for (const auto& pt : points) {
        RatVec y(r);
        for (int i = 0; i < r; ++i)
            y[i] = pt[piv_cols[i]] - v0[piv_cols[i]];
        back.emplace(y, pt);
        proj.push_back(std::move(y));
    }

    std::vector<RatVec> hull_proj;
    std::vector<Halfspace> facets_proj;
    if (r == 2) {
        chain_reduce_2d(proj);
        hull_proj = proj;
        const std::size_t h = proj.size();
        for (std::size_t i = 0; i < h; ++i) {
            const RatVec& u = proj[i];
            const RatVec& w = proj[(i + 1) % h];
            RatVec a = primitive({w[1] - u[1], u[0] - w[0]});
            facets_proj.push_back(Halfspace{a, dot(a, u)});
        }
    } else {
        facets_proj = enumerate_facets(r, proj);
        for (const auto& y : proj) {
            RatMat active;
            for (const auto& f : facets_proj)
                if (dot(f.normal, y) == f.offset)
                    active.push_back(f.normal);
            if (!active.empty() && rank_of(active) == r)
                hull_proj.push_back(y);
        }
        if (r == 1) {
            // rank test above also works in 1-D, but spell out the intent
            // (the two facet planes are the endpoints)
        }
    }

    /* pull back to ambient coordinates */
    for (const auto& y : hull_proj)
        p.vertices_.push_back(back.at(y));
    for (const auto& f : facets_proj) {
        RatVec a(dim, Rational(0));
        Rational b = f.offset;
        for (int i = 0; i < r; ++i) {
            a[piv_cols[i]] = f.normal[i];
            b += f.normal[i] * v0[piv_cols[i]];
        }
        a = primitive(a);   // already primitive in projected coords; keep canonical
        p.facets_.push_back(Halfspace{a, b});
    }
    for (auto& e : eqs)
        p.facets_.push_back(std::move(e));

    std::sort(p.vertices_.begin(), p.vertices_.end(), lex_less);
    std::sort(p.facets_.begin(), p.facets_.end());
    return p;
}

/* -------------------------------------------------------------------- */
/* operations                                                           */
/* -------------------------------------------------------------------- */

/* Set containment, closed on both sides: inner \subseteq outer. */
inline bool contains(const Polytope& outer, const Polytope& inner) {
    if (outer.dim() != inner.dim())
        throw std::invalid_argument("contains: dimension mismatch");
    if (inner.is_empty())
        return true;
    for (const auto& v : inner.vertices())
        if (!outer.contains_point(v))
            return false;
    return true;
}

inline Polytope minkowski_sum(const Polytope& a, const Polytope& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("minkowski_sum: dimension mismatch");
    if (a.is_empty() || b.is_empty())
        return Polytope::empty(a.dim());
    std::vector<RatVec> sums;
    sums.reserve(a.vertices().size() * b.vertices().size());
    for (const auto& u : a.vertices())
        for (const auto& v : b.vertices())
            sums.push_back(vec_add(u, v));
    return Polytope::hull(a.dim(), std::move(sums));
}

/* Intersection with { x : x_1 >= t }. */
inline Polytope slice_ge(const Polytope& p, const Rational& t) {
    if (p.is_empty())
        return Polytope::empty(p.dim());
    std::vector<RatVec> cand;
    const auto& vs = p.vertices();
    for (const auto& v : vs)
        if (v[0] >= t)
            cand.push_back(v);
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            const bool lo_i = vs[i][0] < t, lo_j = vs[j][0] < t;
            if (lo_i == lo_j)
                continue;
            // segment crosses the hyperplane; the crossing point is in the slice
            Rational lambda = (t - vs[i][0]) / (vs[j][0] - vs[i][0]);
            cand.push_back(vec_add(vs[i], vec_scale(vec_sub(vs[j], vs[i]), lambda)));
        }
    return Polytope::hull(p.dim(), std::move(cand));
}

inline Polytope translate(const Polytope& p, const RatVec& shift) {
    if (static_cast<int>(shift.size()) != p.dim())
        throw std::invalid_argument("translate: dimension mismatch");
    if (p.is_empty())
        return Polytope::empty(p.dim());
    Polytope out(p.dim());
    out.affine_dim_ = p.affine_dim_;
    for (const auto& v : p.vertices_)
        out.vertices_.push_back(vec_add(v, shift));
    for (const auto& f : p.facets_)
        out.facets_.push_back(Halfspace{f.normal, f.offset + dot(f.normal, shift)});
    std::sort(out.vertices_.begin(), out.vertices_.end(), lex_less);
    std::sort(out.facets_.begin(), out.facets_.end());
    return out;
}

/* Dilation by a nonnegative rational factor about the origin. */
inline Polytope scaled(const Polytope& p, const Rational& s) {
    if (s < 0)
        throw std::invalid_argument("scaled: negative factor");
    if (p.is_empty())
        return Polytope::empty(p.dim());
    if (s == 0)
        return Polytope::hull(p.dim(), {RatVec(p.dim(), Rational(0))});
    Polytope out(p.dim());
    out.affine_dim_ = p.affine_dim_;
    for (const auto& v : p.vertices_)
        out.vertices_.push_back(vec_scale(v, s));
    for (const auto& f : p.facets_)
        out.facets_.push_back(Halfspace{f.normal, f.offset * s});
    std::sort(out.vertices_.begin(), out.vertices_.end(), lex_less);
    std::sort(out.facets_.begin(), out.facets_.end());
    return out;
}

/* Image under a linear map given by `rows` (output coordinate functionals). */
inline Polytope linear_image(const Polytope& p, const RatMat& rows) {
    for (const auto& row : rows)
        if (static_cast<int>(row.size()) != p.dim())
            throw std::invalid_argument("linear_image: shape mismatch");
    const int out_dim = static_cast<int>(rows.size());
    if (p.is_empty())
        return Polytope::empty(out_dim);
    std::vector<RatVec> imgs;
    imgs.reserve(p.vertices().size());
    for (const auto& v : p.vertices()) {
        RatVec y(out_dim);
        for (int i = 0; i < out_dim; ++i)
            y[i] = dot(rows[i], v);
        imgs.push_back(std::move(y));
    }
    return Polytope::hull(out_dim, std::move(imgs));
}

/* -------------------------------------------------------------------- */
/* volume                                                               */
/* -------------------------------------------------------------------- */

namespace detail {

/*
 * Triangulation of a full-dimensional polytope by coning a base vertex over
 * the triangulated facets that avoid it.  Facet triangulations are obtained
 * recursively after projecting the facet's hyperplane into one dimension
 * fewer (dropping a coordinate in which the facet normal is nonzero keeps
 * the projection injective on the hyperplane).
 */
inline std::vector<std::vector<RatVec>> triangulate_full(
        int n,
        const std::vector<RatVec>& verts,
        const std::vector<Halfspace>& facets) {
    std::vector<std::vector<RatVec>> out;
    if (n == 1) {
        out.push_back({verts.front(), verts.back()});   // verts are lex-sorted
        return out;
    }
    if (verts.size() == static_cast<std::size_t>(n) + 1) {
        out.push_back(verts);
        return out;
    }
    const RatVec& apex = verts.front();
    for (const auto& f : facets) {
        if (dot(f.normal, apex) == f.offset)
            continue;                                   // cone degenerates
        std::vector<RatVec> tight;
        for (const auto& v : verts)
            if (dot(f.normal, v) == f.offset)
                tight.push_back(v);
        int drop = 0;
        while (f.normal[drop] == 0)
            ++drop;
        std::map<RatVec, RatVec> lift;
        std::vector<RatVec> shadow;
        for (const auto& v : tight) {
            RatVec y;
            for (int i = 0; i < n; ++i)
                if (i != drop)
                    y.push_back(v[i]);
            lift.emplace(y, v);
            shadow.push_back(std::move(y));
        }
        Polytope facet_body = Polytope::hull(n - 1, shadow);
        for (auto simplex : triangulate_full(n - 1, facet_body.vertices(),
                                             facet_body.facets())) {
            std::vector<RatVec> lifted{apex};
            for (auto& y : simplex)
                lifted.push_back(lift.at(y));
            out.push_back(std::move(lifted));
        }
    }
    return out;
}

}  // namespace detail

/*
 * Exact Euclidean volume in the ambient dimension; lower-dimensional and
 * empty bodies have volume 0 by convention.
 */
inline Rational volume(const Polytope& p) {
    const int n = p.dim();
    if (p.affine_dim() < n)
        return 0;
    Rational total = 0;
    Int fact = 1;
    for (int i = 2; i <= n; ++i)
        fact *= i;
    for (const auto& s : detail::triangulate_full(n, p.vertices(), p.facets())) {
        RatMat edges;
        for (std::size_t i = 1; i < s.size(); ++i)
            edges.push_back(vec_sub(s[i], s[0]));
        Rational d = determinant(edges);
        total += (d < 0 ? -d : d);
    }
    return total / Rational(fact);
}

}  // namespace okkit

#endif
