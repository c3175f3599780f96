/*
 * Jet separation certificates from inverted-simplex containment.
 *
 * The criterion: with n = dim X and k the jet order, containment of the
 * inverted standard simplex of size strictly larger than n + k inside an
 * Okounkov-type body attached to a (possibly infinitely near) flag at each
 * marked point forces the relevant adjoint or twisted divisor to separate
 * k-jets there.  We work with the largest size that fits,
 *
 *     xi_max(P) = sup { xi >= 0 : inverted_simplex(xi) subseteq P },
 *
 * which has a closed form over the facet description, and certify exactly
 * when min over bodies of xi_max exceeds n + k as an exact rational
 * comparison -- no epsilon ever enters as data.
 *
 * Everything a conclusion depends on is recorded in a Certificate so that
 * verification can re-run the geometry from the stored bodies alone.  The
 * criterion is sufficient only: a failed containment yields "not-certified",
 * never a disproof, and bodies that are finite-level inner hulls make a
 * failure "inconclusive at kmax" rather than a refutation.
 */

#ifndef OKKIT_JETSEP_HPP
#define OKKIT_JETSEP_HPP

#include "okkit/polytope.hpp"
#include "okkit/rational.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace okkit {

/* ------------------------------------------------------------------ */
/* inverted standard simplex                                          */
/* ------------------------------------------------------------------ */

/* The body Delta^{-1}_xi together with its size parameter. */
struct InvertedSimplex {
    Rational xi;
    Polytope body;
};

/*
 * conv{ 0, xi e_1, xi (e_1+e_2), ..., xi (e_1+...+e_n) }; degenerates to
 * the origin when xi = 0.
 */
inline InvertedSimplex inverted_simplex(int n, const Rational& xi) {
    if (n < 1)
        throw std::invalid_argument("inverted_simplex: dimension must be >= 1");
    if (xi < 0)
        throw std::invalid_argument("inverted_simplex: negative size");
    std::vector<RatVec> pts;
    pts.push_back(RatVec(n, Rational(0)));
    RatVec partial(n, Rational(0));
    for (int i = 0; i < n; ++i) {
        partial[i] = 1;
        pts.push_back(vec_scale(partial, xi));
    }
    return InvertedSimplex{xi, Polytope::hull(n, std::move(pts))};
}

inline bool origin_membership(const Polytope& p) {
    return p.contains_point(RatVec(p.dim(), Rational(0)));
}

/*
 * Largest xi with inverted_simplex(xi).body inside `p`.  Scaling the chain
 * of partial-sum vertices, a facet <a,x> <= b constrains xi exactly when
 * some partial sum of `a` is positive, and then contributes b over that
 * maximum.  Requires the origin to lie in `p`; nullopt encodes an
 * unconstrained supremum (unreachable for bounded bodies, kept so the
 * signature states the full mathematical contract).
 */
inline std::optional<Rational> xi_max(const Polytope& p) {
    if (!origin_membership(p))
        throw std::domain_error("xi_max: body does not contain the origin");
    std::optional<Rational> best;
    for (const auto& f : p.facets()) {
        Rational prefix = 0, max_prefix = 0;
        for (const auto& c : f.normal) {
            prefix += c;
            if (prefix > max_prefix)
                max_prefix = prefix;
        }
        if (max_prefix > 0) {
            Rational ratio = f.offset / max_prefix;
            if (!best || ratio < *best)
                best = ratio;
        }
    }
    return best;
}

/* ------------------------------------------------------------------ */
/* certificates                                                       */
/* ------------------------------------------------------------------ */

inline const char* kConcludeSeparates = "separates-k-jets-at-points";
inline const char* kConcludeAmpleOnZ  = "k-jet-ample-supported-on-Z";
inline const char* kConcludeAmple     = "k-jet-ample";
inline const char* kConcludeNone      = "not-certified";

/* One body entering a certificate, tagged with where it came from. */
struct BodyRecord {
    std::string point;                     // marked point label
    std::string frame;                     // flag/frame label at that point
    Polytope    body = Polytope::empty(1); // placeholder until assigned
    bool        exact = false;             // limit object vs. finite-level inner hull
    int         kmax = 0;                  // enumeration depth for inner hulls (0 if exact)
    std::string source;                    // e.g. "infinitesimal body", "multipoint body"

    std::string label() const { return point + ":" + frame; }
};

struct Certificate {
    std::string rule;        // "adjoint" | "canonical-free" | "jet-ample" | "cyclic-cover"
    std::string conclusion;  // one of the kConclude* strings
    std::string divisor;     // display name of the divisor certified
    int dim = 0;             // n
    int jet_order = 0;       // k

    std::optional<std::int64_t> m;        // multiplier (canonical-free rule)
    std::optional<std::int64_t> m_of_d;   // base-point-freeness threshold m(D)

    std::vector<std::string> points;
    std::vector<std::string> flags_checked;
    std::vector<BodyRecord>  bodies;

    Rational threshold = 0;  // n + jet_order
    std::vector<std::pair<std::string, Rational>> xi_values;  // per body label
    Rational min_xi = 0;
    Rational epsilon_witness = 0;  // min_xi - threshold when certified

    std::vector<std::string> assumptions;
    std::string detail;      // failure/inconclusiveness explanation

    std::vector<int> cover_checks;  // cyclic-cover rule: verified jet orders
    int cover_degree = 0;           // cyclic-cover rule: dim of the cover

    bool certified() const { return conclusion != kConcludeNone; }
};

namespace detail {

/* Shared xi-threshold evaluation for the adjoint and canonical-free rules. */
inline void run_xi_criterion(Certificate& cert, const std::vector<BodyRecord>& bodies,
                             int n, int k) {
    if (bodies.empty())
        throw std::invalid_argument("certify: no bodies supplied");
    if (n < 1 || k < 0)
        throw std::invalid_argument("certify: need dim >= 1 and jet order >= 0");
    cert.dim = n;
    cert.jet_order = k;
    cert.threshold = Rational(n + k);
    cert.bodies = bodies;

    bool all_exact = true;
    int worst_kmax = 0;
    std::optional<Rational> min_xi;
    for (const auto& b : bodies) {
        if (b.body.dim() != n)
            throw std::invalid_argument("certify: body dimension does not match dim X");
        auto xi = xi_max(b.body);
        Rational val = xi ? *xi : Rational(0);   // bounded bodies always constrain
        cert.xi_values.emplace_back(b.label(), val);
        cert.flags_checked.push_back(b.label());
        if (!min_xi || val < *min_xi)
            min_xi = val;
        all_exact = all_exact && b.exact;
        if (!b.exact && b.kmax > worst_kmax)
            worst_kmax = b.kmax;
        bool seen = false;
        for (const auto& pt : cert.points)
            seen = seen || pt == b.point;
        if (!seen)
            cert.points.push_back(b.point);
    }
    cert.min_xi = *min_xi;

    if (cert.min_xi > cert.threshold) {
        cert.epsilon_witness = cert.min_xi - cert.threshold;
    } else {
        cert.conclusion = kConcludeNone;
        cert.epsilon_witness = 0;
        if (all_exact)
            cert.detail = "threshold not exceeded on exact bodies";
        else
            cert.detail = "inconclusive at kmax=" + std::to_string(worst_kmax) +
                          " (inner bounds only)";
    }
}

}  // namespace detail

/*
 * Adjoint rule: bodies attached to the marked points of D certify that
 * K_X + D separates k-jets at those points when every xi_max strictly
 * exceeds n + k.
 */
inline Certificate certify_adjoint(const std::vector<BodyRecord>& bodies,
                                   int n, int k,
                                   const std::string& divisor_name = "K_X + D") {
    Certificate cert;
    cert.rule = "adjoint";
    cert.divisor = divisor_name;
    cert.conclusion = kConcludeSeparates;
    detail::run_xi_criterion(cert, bodies, n, k);
    return cert;
}

/*
 * Canonical-trivial rule: same containment run on bodies computed for mD;
 * a success certifies that (m + m_of_d) * D separates k-jets at the marked
 * points.  m_of_d is the caller's base-point-freeness threshold for D and
 * must come with its own evidence (recorded by the caller as assumptions
 * when not derived internally).
 */
inline Certificate certify_canonical_free(const std::vector<BodyRecord>& bodies_of_mD,
                                          std::int64_t m, std::int64_t m_of_d,
                                          int n, int k,
                                          const std::string& divisor_name = "") {
    if (m < 1 || m_of_d < 0)
        throw std::invalid_argument("certify_canonical_free: need m >= 1, m_of_d >= 0");
    Certificate cert;
    cert.rule = "canonical-free";
    cert.m = m;
    cert.m_of_d = m_of_d;
    cert.divisor = divisor_name.empty()
                       ? "(" + std::to_string(m + m_of_d) + ")*D"
                       : divisor_name;
    cert.conclusion = kConcludeSeparates;
    detail::run_xi_criterion(cert, bodies_of_mD, n, k);
    return cert;
}

/*
 * Upgrade a pointwise certificate over exactly k+1 marked points to a
 * jet-ampleness statement.  Without further input the conclusion is
 * supported on that point list; the unconditional form additionally needs
 * the caller to assert (and describe) why the pointwise bound holds at
 * every point configuration, e.g. a uniform Seshadri-type lower bound.
 */
inline Certificate certify_jet_ample(const Certificate& pointwise, int k,
                                     bool all_points_covered = false,
                                     const std::string& coverage_assumption = "") {
    if (pointwise.rule != "adjoint" && pointwise.rule != "canonical-free")
        throw std::invalid_argument("certify_jet_ample: expected a pointwise rule certificate");
    if (pointwise.jet_order != k)
        throw std::invalid_argument("certify_jet_ample: jet order mismatch");
    if (static_cast<int>(pointwise.points.size()) != k + 1)
        throw std::invalid_argument("certify_jet_ample: need exactly k+1 marked points");
    if (all_points_covered && coverage_assumption.empty())
        throw std::invalid_argument("certify_jet_ample: unconditional form needs a stated assumption");

    Certificate cert = pointwise;
    cert.rule = "jet-ample";
    if (!pointwise.certified()) {
        cert.conclusion = kConcludeNone;
        return cert;
    }
    if (all_points_covered) {
        cert.conclusion = kConcludeAmple;
        bool recorded = false;
        for (const auto& a : cert.assumptions)
            recorded = recorded || a == coverage_assumption;
        if (!recorded)
            cert.assumptions.push_back(coverage_assumption);
    } else {
        cert.conclusion = kConcludeAmpleOnZ;
    }
    return cert;
}

/*
 * Rule for a degree-d cyclic cover f : Y -> X: the caller verifies one
 * downstairs hypothesis per twist q = 0 .. min(k, d-1) and supplies the
 * outcomes in that order as `checks[q]`; if all hold, the pulled-back
 * divisor is k-jet ample on Y.  The rule is one-directional: any failed
 * entry yields not-certified, never a disproof.  `dim` is left for the
 * caller to fill from the geometry behind the checks.
 */
inline Certificate cyclic_cover_rule(const std::vector<bool>& checks, int k, int d,
                                     const std::string& divisor_name = "f^*(A)") {
    if (k < 0 || d < 1)
        throw std::invalid_argument("cyclic_cover_rule: need k >= 0 and d >= 1");
    const int arity = std::min<int>(k, d - 1) + 1;
    if (static_cast<int>(checks.size()) != arity)
        throw std::invalid_argument("cyclic_cover_rule: expected " + std::to_string(arity) +
                                    " hypothesis checks");
    Certificate cert;
    cert.rule = "cyclic-cover";
    cert.divisor = divisor_name;
    cert.jet_order = k;
    cert.cover_degree = d;
    bool all = true;
    for (bool c : checks) {
        cert.cover_checks.push_back(c ? 1 : 0);
        all = all && c;
    }
    cert.conclusion = all ? kConcludeAmple : kConcludeNone;
    if (!all)
        cert.detail = "a jet-order hypothesis check failed";
    return cert;
}

/* ------------------------------------------------------------------ */
/* re-verification                                                    */
/* ------------------------------------------------------------------ */

/*
 * Re-derive a certificate's conclusion from its stored data.  Returns the
 * list of discrepancies; empty means the certificate checks out.  Bodies
 * are re-hulled so a tampered vertex or facet list is caught, xi values
 * and the threshold comparison are recomputed exactly, and the structural
 * side conditions of each rule are re-checked.
 */
inline std::vector<std::string> verify_certificate(const Certificate& cert) {
    std::vector<std::string> bad;
    auto complain = [&bad](const std::string& msg) { bad.push_back(msg); };

    if (cert.rule == "cyclic-cover") {
        const int arity = std::min<int>(cert.jet_order, cert.cover_degree - 1) + 1;
        if (static_cast<int>(cert.cover_checks.size()) != arity)
            complain("cover check list has wrong arity");
        bool all = !cert.cover_checks.empty();
        for (int c : cert.cover_checks)
            all = all && c == 1;
        const std::string expect = all ? kConcludeAmple : kConcludeNone;
        if (cert.conclusion != expect)
            complain("conclusion does not follow from the cover checks");
        return bad;
    }

    if (cert.rule != "adjoint" && cert.rule != "canonical-free" && cert.rule != "jet-ample") {
        complain("unknown rule '" + cert.rule + "'");
        return bad;
    }
    if (cert.bodies.empty()) {
        complain("certificate stores no bodies");
        return bad;
    }
    if (cert.threshold != Rational(cert.dim + cert.jet_order))
        complain("threshold is not dim + jet order");

    std::optional<Rational> min_xi;
    for (const auto& b : cert.bodies) {
        if (b.body.dim() != cert.dim) {
            complain("body " + b.label() + " has wrong dimension");
            continue;
        }
        Polytope rebuilt = Polytope::hull(b.body.dim(), b.body.vertices());
        if (rebuilt != b.body || rebuilt.facets() != b.body.facets()) {
            complain("body " + b.label() + " fails vertex/facet cross-check");
            continue;
        }
        if (!origin_membership(b.body)) {
            complain("body " + b.label() + " does not contain the origin");
            continue;
        }
        auto xi = xi_max(b.body);
        Rational val = xi ? *xi : Rational(0);
        bool found = false;
        for (const auto& [label, stored] : cert.xi_values)
            if (label == b.label()) {
                found = true;
                if (stored != val)
                    complain("stored xi for " + b.label() + " does not recompute");
            }
        if (!found)
            complain("no stored xi for body " + b.label());
        if (!min_xi || val < *min_xi)
            min_xi = val;
    }
    if (min_xi && cert.min_xi != *min_xi)
        complain("stored minimum xi does not recompute");

    const bool hypothesis = min_xi && *min_xi > cert.threshold;
    if (cert.certified()) {
        if (!hypothesis)
            complain("certified conclusion but the threshold is not strictly exceeded");
        if (min_xi && cert.epsilon_witness != *min_xi - cert.threshold)
            complain("epsilon witness does not recompute");
        // independent containment re-check at the exact threshold size
        auto probe = inverted_simplex(cert.dim, cert.threshold);
        for (const auto& b : cert.bodies)
            if (b.body.dim() == cert.dim && !contains(b.body, probe.body))
                complain("threshold simplex not contained in body " + b.label());
    } else if (hypothesis) {
        complain("hypothesis holds but conclusion says not-certified");
    }

    if (cert.rule == "jet-ample") {
        if (static_cast<int>(cert.points.size()) != cert.jet_order + 1)
            complain("jet-ample rule needs exactly k+1 marked points");
        if (cert.conclusion == kConcludeAmple && cert.assumptions.empty())
            complain("unconditional jet-ampleness without a recorded coverage assumption");
    }
    if (cert.rule == "canonical-free" && cert.certified() && (!cert.m || !cert.m_of_d))
        complain("canonical-free rule certified without m and m(D)");
    return bad;
}

}  // namespace okkit

#endif
