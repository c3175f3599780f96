#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace okkit;
using th::rq;

namespace {

BodyRecord record(std::string point, Polytope body) {
    BodyRecord b;
    b.point = std::move(point);
    b.frame = "01";
    b.body = std::move(body);
    b.exact = true;
    b.kmax = 0;
    b.source = "test fixture";
    return b;
}

}  // namespace

TEST_CASE("rational vectors in JSON") {
    RatVec v{rq(1, 2), -3, 0};
    Json j = ratvec_to_json(v);
    CHECK(j.dump() == R"(["1/2","-3","0"])");
    CHECK(ratvec_from_json(j) == v);
    CHECK(ratvec_from_json(Json::parse("[1,2]")) == RatVec{1, 2});
    CHECK_THROWS_AS(ratvec_from_json(Json::parse("[1.5]")), std::invalid_argument);
    CHECK_THROWS_AS(ratvec_from_json(Json::parse(R"({"x":1})")), std::invalid_argument);
}

TEST_CASE("polytope documents round-trip") {
    Polytope tri = th::simplex(2, 3);
    Json j = polytope_to_json(tri);
    CHECK(j.contains("facets"));
    Polytope back = polytope_from_json(j);
    CHECK(back == tri);
    CHECK(back.facets() == tri.facets());

    // vertices-only input is accepted
    Json bare;
    bare["dim"] = 2;
    bare["vertices"] = Json::parse("[[0,0],[1,0],[0,1]]");
    CHECK(polytope_from_json(bare) == th::simplex(2, 1));
}

TEST_CASE("polytope loading is strict") {
    CHECK_THROWS_AS(polytope_from_json(Json::parse(R"({"dim":2})")), std::invalid_argument);
    CHECK_THROWS_AS(polytope_from_json(Json::parse(R"({"vertices":[]})")),
                    std::invalid_argument);
    // vertex arity mismatch
    CHECK_THROWS_AS(polytope_from_json(Json::parse(R"({"dim":2,"vertices":[[1]]})")),
                    std::invalid_argument);
    // wrong schema tag
    CHECK_THROWS_AS(
        polytope_from_json(Json::parse(R"({"schema":"other/9","dim":1,"vertices":[[0]]})")),
        std::invalid_argument);
    // stored facets that contradict the vertices
    Json j = polytope_to_json(th::simplex(2, 1));
    j["facets"][0]["offset"] = "99";
    CHECK_THROWS_AS(polytope_from_json(j), std::invalid_argument);
}

TEST_CASE("section documents") {
    auto s = make_section({{2, 0}, {0, 1}});
    Json j = section_to_json(s);
    auto back = section_from_json(j);
    CHECK(back.terms == s.terms);
    CHECK_THROWS_AS(section_from_json(Json::parse(R"({"terms":[]})")),
                    std::invalid_argument);
}

TEST_CASE("toric documents") {
    auto td = th::square_divisor(2);
    Json j = toric_to_json(td);
    auto back = toric_from_json(j);
    CHECK(back.polytope() == td.polytope());
    REQUIRE(back.points().size() == 2);
    CHECK(back.points()[0].label == "p0");
    CHECK(back.points()[1].vertex == LatticePoint{2, 2});
    CHECK(back.points()[1].frame == std::vector<int>{0, 1});

    // labels and frames are optional on input
    Json bare = Json::parse(R"({
        "polytope": {"dim": 1, "vertices": [[0],[2]]},
        "points": [{"vertex": [0]}]
    })");
    auto minimal = toric_from_json(bare);
    CHECK(minimal.points()[0].label == "p0");
    CHECK(minimal.points()[0].frame == std::vector<int>{0});

    CHECK_THROWS_AS(toric_from_json(Json::parse(R"({"points":[]})")),
                    std::invalid_argument);
}

TEST_CASE("certificate documents round-trip bit for bit") {
    auto cert = certify_adjoint({record("v0", inverted_simplex(2, 5).body)}, 2, 2);
    Json j = certificate_to_json(cert);
    CHECK(j.at("schema") == kSchemaTag);
    CHECK(j.at("type") == "certificate");

    std::string once = j.dump(2);
    Certificate back = certificate_from_json(Json::parse(once));
    std::string twice = certificate_to_json(back).dump(2);
    CHECK(once == twice);
    CHECK(verify_certificate(back).empty());
    CHECK(back.conclusion == cert.conclusion);
    CHECK(back.min_xi == cert.min_xi);
    CHECK(back.bodies.size() == cert.bodies.size());
    CHECK(back.bodies[0].body == cert.bodies[0].body);
}

TEST_CASE("optional certificate fields serialize as null") {
    auto cert = certify_adjoint({record("v0", inverted_simplex(2, 5).body)}, 2, 1);
    Json j = certificate_to_json(cert);
    CHECK(j.at("m").is_null());
    CHECK(j.at("m_of_d").is_null());
    CHECK_FALSE(j.contains("cover_checks"));

    auto cover = cyclic_cover_rule({true, true}, 1, 2);
    Json jc = certificate_to_json(cover);
    CHECK(jc.at("cover_checks") == Json::parse("[1,1]"));
    CHECK(jc.at("cover_degree") == 2);
    auto back = certificate_from_json(jc);
    CHECK(back.cover_checks == std::vector<int>{1, 1});
    CHECK(verify_certificate(back).empty());
}

TEST_CASE("tampered certificate JSON is caught downstream") {
    auto cert = certify_adjoint({record("v0", inverted_simplex(2, 5).body)}, 2, 2);
    Json j = certificate_to_json(cert);
    j["min_xi"] = "9";
    auto back = certificate_from_json(j);
    CHECK_FALSE(verify_certificate(back).empty());
}

TEST_CASE("certificate loading is strict") {
    CHECK_THROWS_AS(certificate_from_json(Json::parse(R"({"type":"body"})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(certificate_from_json(Json::parse(R"({"schema":"okkit/2"})")),
                    std::invalid_argument);
}

TEST_CASE("surface certificates survive the JSON layer") {
    auto cert = double_cover_jet_certificate(3);
    std::string s1 = certificate_to_json(cert).dump(2);
    auto back = certificate_from_json(Json::parse(s1));
    CHECK(certificate_to_json(back).dump(2) == s1);
    CHECK(verify_certificate(back).empty());
    REQUIRE(back.m_of_d.has_value());
    CHECK(*back.m_of_d == 6);
}

TEST_CASE("document wrapper puts the schema first") {
    Json payload;
    payload["point"] = "p0";
    std::string out = dump_document("body", payload);
    CHECK(out.rfind("{\n  \"schema\": \"okkit/1\",\n  \"type\": \"body\",", 0) == 0);
    CHECK(out.back() == '\n');
}
