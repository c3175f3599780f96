#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace okkit;
using th::rq;

namespace {

/* Independent check of xi_max: bisect on "does the inverted simplex of
 * this size fit", using doubles only to steer the exact containment test. */
double xi_by_bisection(const Polytope& p) {
    auto fits = [&p](double s) {
        return contains(p, inverted_simplex(p.dim(), Rational(s)).body);
    };
    double hi = 1.0 / 1024.0;
    while (fits(hi) && hi < 1e9)
        hi *= 2;
    double lo = 0;
    for (int it = 0; it < 80; ++it) {
        double mid = (lo + hi) / 2;
        (fits(mid) ? lo : hi) = mid;
    }
    return lo;
}

BodyRecord record(std::string point, Polytope body, bool exact, int kmax) {
    BodyRecord b;
    b.point = std::move(point);
    b.frame = "01";
    b.body = std::move(body);
    b.exact = exact;
    b.kmax = kmax;
    b.source = "test fixture";
    return b;
}

}  // namespace

TEST_CASE("inverted simplices") {
    auto s2 = inverted_simplex(2, 3);
    CHECK(s2.xi == 3);
    CHECK(s2.body == Polytope::hull(2, {{0, 0}, {3, 0}, {3, 3}}));
    CHECK(volume(s2.body) == rq(9, 2));

    auto s1 = inverted_simplex(1, rq(5, 2));
    CHECK(s1.body == Polytope::hull(1, {{0}, {rq(5, 2)}}));

    auto s3 = inverted_simplex(3, 1);
    CHECK(s3.body == Polytope::hull(3, {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {1, 1, 1}}));
    CHECK(volume(s3.body) == rq(1, 6));

    CHECK(inverted_simplex(2, 0).body == Polytope::hull(2, {{0, 0}}));
    CHECK_THROWS_AS(inverted_simplex(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(inverted_simplex(2, -1), std::invalid_argument);
}

TEST_CASE("origin membership") {
    CHECK(origin_membership(th::box(2, 1)));
    CHECK_FALSE(origin_membership(translate(th::box(2, 1), {1, 1})));
    CHECK_FALSE(origin_membership(Polytope::empty(2)));
}

TEST_CASE("xi_max on inverted simplices is the size itself") {
    for (int n = 1; n <= 4; ++n) {
        for (const Rational& xi : {rq(1), rq(7, 3), rq(5, 2), rq(11)}) {
            auto inv = inverted_simplex(n, xi);
            auto got = xi_max(inv.body);
            REQUIRE(got.has_value());
            CHECK(*got == xi);
        }
    }
}

TEST_CASE("xi_max on assorted fixed bodies") {
    auto v = xi_max(Polytope::hull(2, {{0, 0}, {3, 0}, {3, 3}}));
    REQUIRE(v.has_value());
    CHECK(*v == 3);

    // only the facets crossed by the inverted-simplex directions matter
    Polytope mixed = Polytope::hull(2, {{0, -1}, {1, -1}, {1, 1}, {0, 1}});
    auto m = xi_max(mixed);
    REQUIRE(m.has_value());
    CHECK(*m == 1);

    CHECK_THROWS_AS(xi_max(translate(th::box(2, 1), {5, 5})), std::domain_error);
}

TEST_CASE("xi_max matches bisection on random bodies", "[property]") {
    std::mt19937_64 rng(123);
    int done = 0;
    while (done < 30) {
        int n = 2 + static_cast<int>(rng() % 2);
        Polytope p = th::random_origin_polytope(rng, n, 6 + static_cast<int>(rng() % 5));
        auto exact = xi_max(p);
        REQUIRE(exact.has_value());
        double approx = xi_by_bisection(p);
        double ex = static_cast<double>(numerator(*exact)) /
                    static_cast<double>(denominator(*exact));
        CHECK(std::abs(ex - approx) <= 1e-9 * std::max(1.0, std::abs(ex)));
        ++done;
    }
}

TEST_CASE("adjoint rule certifies strict threshold excess") {
    auto body = inverted_simplex(2, 5).body;
    auto cert = certify_adjoint({record("v0", body, true, 0)}, 2, 2, "K_X + D5");
    CHECK(cert.rule == "adjoint");
    CHECK(cert.conclusion == kConcludeSeparates);
    CHECK(cert.certified());
    CHECK(cert.threshold == 4);
    CHECK(cert.min_xi == 5);
    CHECK(cert.epsilon_witness == 1);
    CHECK(cert.points == std::vector<std::string>{"v0"});
    CHECK(cert.divisor == "K_X + D5");

    auto tight = certify_adjoint({record("v0", body, true, 0)}, 2, 3);
    CHECK(tight.conclusion == kConcludeNone);
    CHECK_FALSE(tight.certified());
    CHECK(tight.detail == "threshold not exceeded on exact bodies");
    CHECK(tight.epsilon_witness == 0);
}

TEST_CASE("inner-bound failures are reported as inconclusive") {
    auto body = inverted_simplex(2, rq(7, 2)).body;
    auto cert = certify_adjoint({record("v0", body, false, 6)}, 2, 2);
    CHECK(cert.conclusion == kConcludeNone);
    CHECK(cert.detail == "inconclusive at kmax=6 (inner bounds only)");

    // an inner bound that already clears the threshold still certifies
    auto ok = certify_adjoint({record("v0", body, false, 6)}, 2, 1);
    CHECK(ok.conclusion == kConcludeSeparates);
}

TEST_CASE("the weakest body controls the conclusion") {
    auto strong = record("a", inverted_simplex(2, 9).body, true, 0);
    auto weak = record("b", inverted_simplex(2, 4).body, true, 0);
    auto cert = certify_adjoint({strong, weak}, 2, 1);
    CHECK(cert.min_xi == 4);
    CHECK(cert.certified());
    REQUIRE(cert.xi_values.size() == 2);
    CHECK(cert.xi_values[0].second == 9);
    CHECK(cert.xi_values[1].second == 4);

    auto fail = certify_adjoint({strong, weak}, 2, 2);
    CHECK_FALSE(fail.certified());
}

TEST_CASE("canonical-free rule records the multiplier data") {
    auto body = inverted_simplex(2, 6).body;
    auto cert = certify_canonical_free({record("p", body, true, 0)}, 4, 3, 2, 1);
    CHECK(cert.rule == "canonical-free");
    CHECK(cert.m == 4);
    CHECK(cert.m_of_d == 3);
    CHECK(cert.divisor == "(7)*D");
    CHECK(cert.certified());
    CHECK_THROWS_AS(certify_canonical_free({record("p", body, true, 0)}, 0, 3, 2, 1),
                    std::invalid_argument);
}

TEST_CASE("jet-ample upgrade needs k+1 points") {
    auto b1 = record("x1", inverted_simplex(2, 9).body, true, 0);
    auto b2 = record("x2", inverted_simplex(2, 9).body, true, 0);
    auto pointwise = certify_adjoint({b1, b2}, 2, 1);
    REQUIRE(pointwise.certified());

    auto onz = certify_jet_ample(pointwise, 1);
    CHECK(onz.rule == "jet-ample");
    CHECK(onz.conclusion == kConcludeAmpleOnZ);
    CHECK(onz.points == std::vector<std::string>{"x1", "x2"});

    auto full = certify_jet_ample(pointwise, 1, true, "assumed: bodies cover every point");
    CHECK(full.conclusion == kConcludeAmple);
    int hits = 0;
    for (const auto& a : full.assumptions)
        if (a == "assumed: bodies cover every point")
            ++hits;
    CHECK(hits == 1);

    auto single = certify_adjoint({b1}, 2, 1);
    CHECK_THROWS_AS(certify_jet_ample(single, 1), std::invalid_argument);

    // a failed pointwise certificate keeps its non-conclusion through the
    // upgrade (small bodies: xi = 2 does not clear the threshold 3)
    auto s1 = record("x1", inverted_simplex(2, 2).body, true, 0);
    auto s2 = record("x2", inverted_simplex(2, 2).body, true, 0);
    auto failed = certify_adjoint({s1, s2}, 2, 1);
    REQUIRE(!failed.certified());
    auto kept = certify_jet_ample(failed, 1);
    CHECK(kept.conclusion == kConcludeNone);
}

TEST_CASE("cyclic cover rule counts its checks") {
    auto cert = cyclic_cover_rule({true, true}, 1, 2);
    CHECK(cert.rule == "cyclic-cover");
    CHECK(cert.conclusion == kConcludeAmple);
    CHECK(cert.cover_degree == 2);
    CHECK(cert.cover_checks == std::vector<int>{1, 1});

    auto partial = cyclic_cover_rule({true, false}, 1, 2);
    CHECK(partial.conclusion == kConcludeNone);

    // arity is min(k, d-1) + 1
    CHECK_THROWS_AS(cyclic_cover_rule({true}, 1, 2), std::invalid_argument);
    CHECK(cyclic_cover_rule({true}, 0, 5).conclusion == kConcludeAmple);
    CHECK(cyclic_cover_rule({true, true, true}, 5, 3).conclusion == kConcludeAmple);
}

TEST_CASE("verification accepts clean certificates") {
    auto body = inverted_simplex(2, 5).body;
    auto cert = certify_adjoint({record("v0", body, true, 0)}, 2, 2);
    CHECK(verify_certificate(cert).empty());

    auto none = certify_adjoint({record("v0", body, true, 0)}, 2, 3);
    CHECK(verify_certificate(none).empty());
}

TEST_CASE("verification flags tampering") {
    auto body = inverted_simplex(2, 5).body;
    auto cert = certify_adjoint({record("v0", body, true, 0)}, 2, 2);

    auto t1 = cert;
    t1.min_xi = 7;
    CHECK_FALSE(verify_certificate(t1).empty());

    auto t2 = cert;
    t2.xi_values[0].second = 6;
    CHECK_FALSE(verify_certificate(t2).empty());

    auto t3 = cert;
    t3.threshold = 6;   // claims certified yet xi no longer exceeds it
    CHECK_FALSE(verify_certificate(t3).empty());

    auto t4 = cert;
    t4.epsilon_witness = 2;
    CHECK_FALSE(verify_certificate(t4).empty());

    auto t5 = certify_adjoint({record("v0", body, true, 0)}, 2, 3);
    t5.conclusion = kConcludeSeparates;   // flip a failed run to certified
    CHECK_FALSE(verify_certificate(t5).empty());
}
