/*
 * The self-product abelian surface X = E x E and its double covers.
 *
 * Numerical classes are integer triples (a, b, c) against the basis
 * (fiber F1, fiber F2, diagonal Delta).  On X the three basis classes
 * square to zero and meet each other once, which pins the whole
 * intersection form; ampleness on an abelian surface is positivity of the
 * self-intersection plus positivity against one fixed ample class.
 *
 * The family A_l = l F1 + (l^2-l+1) F2 - (l-1) Delta has A_l^2 = 2 and
 * degree N_l = A_l.(F1+F2) = l^2-2l+3 growing with l, which is what makes
 * the downstream jet bounds scale.  A double cover f : Y -> X doubles
 * intersection numbers and pulls the canonical class back from the branch
 * data; the jet certificate at the end of the file chains these facts with
 * a cited Seshadri lower bound into a jet-ampleness certificate for an
 * explicit multiple of f^*(A_l).
 */

#ifndef OKKIT_SURFACES_HPP
#define OKKIT_SURFACES_HPP

#include "okkit/jetsep.hpp"
#include "okkit/rational.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace okkit {

/* Numerical class a*F1 + b*F2 + c*Delta on E x E. */
struct SurfaceClass {
    std::int64_t a = 0, b = 0, c = 0;

    bool operator==(const SurfaceClass& o) const {
        return a == o.a && b == o.b && c == o.c;
    }
};

inline const SurfaceClass kFiber1{1, 0, 0};
inline const SurfaceClass kFiber2{0, 1, 0};
inline const SurfaceClass kDiagonal{0, 0, 1};
inline const SurfaceClass kPolarization{1, 1, 0};   // H = F1 + F2

/* Intersection form: basis classes are square-zero and pairwise meet once. */
inline std::int64_t intersect(const SurfaceClass& x, const SurfaceClass& y) {
    return x.a * y.b + x.b * y.a + x.a * y.c + x.c * y.a + x.b * y.c + x.c * y.b;
}

inline std::int64_t self_intersection(const SurfaceClass& x) { return intersect(x, x); }

/* The divisor family driving the growing-degree example; defined for l >= 2. */
inline SurfaceClass a_ell(std::int64_t l) {
    if (l < 2)
        throw std::invalid_argument("a_ell: family starts at l = 2");
    return SurfaceClass{l, l * l - l + 1, -(l - 1)};
}

/* Degree of the family member against the fixed polarization H. */
inline std::int64_t n_ell(std::int64_t l) { return intersect(a_ell(l), kPolarization); }

/*
 * Ampleness on an abelian surface: no curves to obstruct beyond the
 * Nakai-Moishezon numbers, so C^2 > 0 together with C.H > 0 (H ample)
 * decides it.
 */
inline bool is_ample_abelian(const SurfaceClass& c) {
    return self_intersection(c) > 0 && intersect(c, kPolarization) > 0;
}

/* Degree-2 cover f : Y -> X with K_Y the pullback of `canonical_pullback`. */
struct CoverClass {
    SurfaceClass canonical_pullback{1, 1, 0};   // R with K_Y = f^*(R)
    int degree = 2;
};

/* (f^* x).(f^* y) = deg(f) * x.y. */
inline std::int64_t pullback_intersect(const CoverClass& f, const SurfaceClass& x,
                                       const SurfaceClass& y) {
    return static_cast<std::int64_t>(f.degree) * intersect(x, y);
}

inline SurfaceClass canonical_Y(const CoverClass& f) { return f.canonical_pullback; }

/*
 * Base-point-freeness threshold m(D) for D = f^*(A_l): the least q >= 1
 * with q A_l - R ample upstairs (R the canonical pullback class).  Found
 * by direct upward search; lands at N_l because q^2 - N_l q + 1 first
 * turns positive at q = N_l.
 */
inline std::int64_t m_of_D(std::int64_t l, const CoverClass& f = CoverClass{}) {
    const SurfaceClass a = a_ell(l);
    const SurfaceClass r = canonical_Y(f);
    for (std::int64_t q = 1; q <= n_ell(l) + 2; ++q) {
        SurfaceClass c{q * a.a - r.a, q * a.b - r.b, q * a.c - r.c};
        if (is_ample_abelian(c))
            return q;
    }
    throw std::logic_error("m_of_D: search bound exceeded");   // cannot happen for l >= 2
}

/* ------------------------------------------------------------------ */
/* the ampleness threshold as a real number                           */
/* ------------------------------------------------------------------ */

struct RootBracket {
    Rational lo, hi;          // lo < root < hi, hi - lo <= width
    std::int64_t ceiling;     // smallest integer above the root
};

inline Int ceil_rational(const Rational& r) {
    Int num = numerator(r), den = denominator(r);
    Int q = num / den;
    if (q * den < num)
        ++q;
    return q;
}

/*
 * The real threshold above which q A_l - R is ample: the larger root of
 * x^2 - N_l x + 1 (the roots multiply to 1, so the larger one sits in
 * (N_l - 1, N_l) strictly for N_l >= 3).  Returned as an exact rational
 * bisection bracket of the requested width; the integer ceiling of the
 * bracket is the search answer m_of_D.
 */
inline RootBracket threshold_real(std::int64_t l,
                                  const Rational& width = Rational(1, 1000000)) {
    if (width <= 0)
        throw std::invalid_argument("threshold_real: width must be positive");
    const Rational n = Rational(n_ell(l));
    auto poly = [&n](const Rational& x) { return x * x - n * x + 1; };
    Rational lo = n - 1, hi = n;
    if (poly(lo) >= 0 || poly(hi) <= 0)
        throw std::logic_error("threshold_real: bracket seed failed");
    while (hi - lo > width) {
        Rational mid = (lo + hi) / 2;
        if (poly(mid) < 0)
            lo = mid;
        else
            hi = mid;
    }
    RootBracket out{lo, hi, 0};
    out.ceiling = static_cast<std::int64_t>(ceil_rational(hi));
    return out;
}

/* ------------------------------------------------------------------ */
/* Seshadri data and the end-to-end jet certificate                   */
/* ------------------------------------------------------------------ */

inline const char* kSeshadriAssumption =
    "uniform Seshadri bound: epsilon(A_l; x) >= 1 at every point of the abelian "
    "surface (cited lower bound), matched by the computed upper bound A_l.F2 = 1";

struct SeshadriData {
    Rational upper;        // from the curve below
    Rational lower;        // cited bound for ample classes on abelian surfaces
    Rational epsilon;      // the two agree, pinning epsilon exactly
    SurfaceClass curve;    // the fiber realizing the upper bound
};

inline SeshadriData seshadri_data(std::int64_t l) {
    SeshadriData s;
    s.curve = kFiber2;
    s.upper = Rational(intersect(a_ell(l), s.curve));   // = 1 for every l
    s.lower = 1;
    if (s.upper != s.lower)
        throw std::logic_error("seshadri_data: bounds fail to pinch");
    s.epsilon = s.lower;
    return s;
}

/* s + m(D_l) with the default jet multiplier s = 4 (= dim + k + 1 at k = 1). */
inline std::int64_t final_coefficient(std::int64_t l, std::int64_t s = 4) {
    return s + m_of_D(l);
}

/* One row of the family summary table. */
struct SurfaceTableRow {
    std::int64_t ell;
    SurfaceClass a;
    std::int64_t a_squared;
    std::int64_t a_dot_h;
    std::int64_t n_ell;
    std::int64_t m_of_d;
    std::int64_t coefficient;
};

inline std::vector<SurfaceTableRow> surface_table(std::int64_t lo, std::int64_t hi,
                                                  std::int64_t s = 4) {
    if (lo < 2 || hi < lo)
        throw std::invalid_argument("surface_table: need 2 <= lo <= hi");
    std::vector<SurfaceTableRow> rows;
    for (std::int64_t l = lo; l <= hi; ++l) {
        SurfaceTableRow r;
        r.ell = l;
        r.a = a_ell(l);
        r.a_squared = self_intersection(r.a);
        r.a_dot_h = intersect(r.a, kPolarization);
        r.n_ell = n_ell(l);
        r.m_of_d = m_of_D(l);
        r.coefficient = s + r.m_of_d;
        rows.push_back(r);
    }
    return rows;
}

/*
 * The full double-cover pipeline for D_l = f^*(A_l) on a surface Y with
 * K_Y = f^*(F1 + F2):
 *
 *   - the Seshadri bound pins epsilon(A_l) = 1, so at every point of Y and
 *     every infinitely near flag the body of s*D_l contains the inverted
 *     simplex of size s * epsilon = s;
 *   - with s = dim + k + 1 that containment beats the threshold dim + k
 *     strictly, certifying jet separation at any k+1 points at once;
 *   - m(D_l) = N_l supplies the twist multiplier, and uniformity over Y
 *     upgrades the conclusion to k-jet ampleness of (s + m(D_l)) * D_l.
 *
 * The certificate stores the assumption-backed inner bodies (the inverted
 * simplices themselves) so re-verification can re-run the containment.
 */
inline Certificate double_cover_jet_certificate(std::int64_t l, int k = 1,
                                                std::int64_t s = 4,
                                                const CoverClass& f = CoverClass{}) {
    const int n = 2;
    if (k < 0 || s < 1)
        throw std::invalid_argument("double_cover_jet_certificate: bad k or s");
    SeshadriData sd = seshadri_data(l);
    const Rational body_size = Rational(s) * sd.epsilon;

    std::vector<BodyRecord> bodies;
    for (int i = 0; i <= k; ++i) {
        BodyRecord b;
        b.point = "y" + std::to_string(i);
        b.frame = "any";
        b.body = inverted_simplex(n, body_size).body;
        b.exact = false;   // an inner bound guaranteed by the Seshadri route
        b.kmax = 0;
        b.source = "Seshadri lower-bound body for s*D_l, s = " + std::to_string(s);
        bodies.push_back(std::move(b));
    }

    const std::int64_t md = m_of_D(l, f);
    const std::string divisor =
        "(" + std::to_string(s + md) + ")*f^*(A_" + std::to_string(l) + ")";
    Certificate cert = certify_canonical_free(bodies, s, md, n, k, divisor);
    cert.assumptions.push_back(kSeshadriAssumption);
    if (!cert.certified())
        return cert;
    return certify_jet_ample(cert, k, /*all_points_covered=*/true, kSeshadriAssumption);
}

}  // namespace okkit

#endif
