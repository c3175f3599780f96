/* Shared constructors and random generators for the test suites. */

#ifndef OKKIT_TESTS_HELPERS_HPP
#define OKKIT_TESTS_HELPERS_HPP

#include "okkit/okkit.hpp"

#include <random>
#include <vector>

namespace th {

using namespace okkit;

inline Rational rq(long long p, long long q = 1) {
    if (q < 0) { p = -p; q = -q; }
    return Rational(p, q);
}

/* conv{0, s e_1, ..., s e_n} */
inline Polytope simplex(int n, const Rational& s) {
    std::vector<RatVec> pts;
    pts.push_back(RatVec(n, Rational(0)));
    for (int i = 0; i < n; ++i) {
        RatVec v(n, Rational(0));
        v[i] = s;
        pts.push_back(v);
    }
    return Polytope::hull(n, std::move(pts));
}

/* [0, s]^n */
inline Polytope box(int n, const Rational& s) {
    std::vector<RatVec> pts;
    for (int mask = 0; mask < (1 << n); ++mask) {
        RatVec v(n, Rational(0));
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i))
                v[i] = s;
        pts.push_back(v);
    }
    return Polytope::hull(n, std::move(pts));
}

inline ToricDivisorData plane_divisor(std::int64_t d) {
    Polytope p = Polytope::hull(
        2, {{Rational(0), Rational(0)}, {Rational(d), Rational(0)}, {Rational(0), Rational(d)}});
    return ToricDivisorData(p, {EvaluationPoint{{0, 0}, {0, 1}, "v0"}});
}

inline ToricDivisorData line_divisor(std::int64_t d) {
    Polytope p = Polytope::hull(1, {{Rational(0)}, {Rational(d)}});
    return ToricDivisorData(p, {EvaluationPoint{{0}, {0}, "0"},
                                EvaluationPoint{{d}, {0}, "inf"}});
}

inline ToricDivisorData square_divisor(std::int64_t s) {
    Polytope p = Polytope::hull(2, {{Rational(0), Rational(0)},
                                    {Rational(s), Rational(0)},
                                    {Rational(s), Rational(s)},
                                    {Rational(0), Rational(s)}});
    return ToricDivisorData(p, {EvaluationPoint{{0, 0}, {0, 1}, "p0"},
                                EvaluationPoint{{s, s}, {0, 1}, "p1"}});
}

/* Degenerate-proof random rational in [lo, hi] with denominator <= dmax. */
inline Rational random_rational(std::mt19937_64& rng, long long lo, long long hi,
                                long long dmax = 8) {
    long long den = 1 + static_cast<long long>(rng() % dmax);
    long long num = lo * den + static_cast<long long>(rng() % (den * (hi - lo) + 1));
    return Rational(num, den);
}

/* Hull of `npts` random rational points in [lo, hi]^n. */
inline Polytope random_polytope(std::mt19937_64& rng, int n, int npts, long long lo,
                                long long hi) {
    std::vector<RatVec> pts;
    for (int i = 0; i < npts; ++i) {
        RatVec v(n);
        for (int j = 0; j < n; ++j)
            v[j] = random_rational(rng, lo, hi);
        pts.push_back(std::move(v));
    }
    return Polytope::hull(n, std::move(pts));
}

/* Random full-dimensional polytope whose interior contains the origin:
 * a random body recentered at the average of its defining points. */
inline Polytope random_origin_polytope(std::mt19937_64& rng, int n, int npts) {
    while (true) {
        std::vector<RatVec> pts;
        for (int i = 0; i < npts; ++i) {
            RatVec v(n);
            for (int j = 0; j < n; ++j)
                v[j] = random_rational(rng, -5, 5);
            pts.push_back(std::move(v));
        }
        RatVec center(n, Rational(0));
        for (const auto& p : pts)
            center = vec_add(center, p);
        center = vec_scale(center, Rational(1, static_cast<long long>(pts.size())));
        for (auto& p : pts)
            p = vec_sub(p, center);
        Polytope body = Polytope::hull(n, std::move(pts));
        if (body.affine_dim() == n)
            return body;
    }
}

/* Random 2-D lattice polytope with vertex 0 and the standard cone there:
 * hull of 0, (a,0), (0,b), and a few positive lattice points. */
inline Polytope random_corner_polytope(std::mt19937_64& rng, long long span) {
    std::vector<RatVec> pts;
    pts.push_back({Rational(0), Rational(0)});
    pts.push_back({Rational(1 + static_cast<long long>(rng() % span)), Rational(0)});
    pts.push_back({Rational(0), Rational(1 + static_cast<long long>(rng() % span))});
    int extra = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < extra; ++i)
        pts.push_back({Rational(1 + static_cast<long long>(rng() % span)),
                       Rational(1 + static_cast<long long>(rng() % span))});
    return Polytope::hull(2, std::move(pts));
}

}  // namespace th

#endif
