/*
 * JSON (de)serialization for every document the tools read or write.
 *
 * All documents carry "schema": "okkit/1" at top level.  Field order is
 * fixed by construction (ordered_json + single insertion sequence per
 * type), so serializing the same value twice gives identical bytes --
 * certificates rely on this for reproducibility checks.  Rationals travel
 * as strings "p/q" (or "p" for integers) in lowest terms.
 *
 * Loading is strict: malformed structure, unknown schema values, or a
 * stored facet list that disagrees with the re-derived hull of the stored
 * vertices all raise std::invalid_argument.
 */

#ifndef OKKIT_JSON_IO_HPP
#define OKKIT_JSON_IO_HPP

#include "okkit/jetsep.hpp"
#include "okkit/polytope.hpp"
#include "okkit/rational.hpp"
#include "okkit/toric.hpp"
#include "okkit/valuation.hpp"

#include <json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace okkit {

using Json = nlohmann::ordered_json;

inline const char* kSchemaTag = "okkit/1";

inline void check_schema(const Json& j) {
    if (j.contains("schema") && j.at("schema") != kSchemaTag)
        throw std::invalid_argument("unsupported schema '" +
                                    j.at("schema").get<std::string>() + "'");
}

/* ------------------------------------------------------------------ */
/* polytopes                                                          */
/* ------------------------------------------------------------------ */

inline Json ratvec_to_json(const RatVec& v) {
    Json arr = Json::array();
    for (const auto& x : v)
        arr.push_back(format_rational(x));
    return arr;
}

inline RatVec ratvec_from_json(const Json& arr) {
    if (!arr.is_array())
        throw std::invalid_argument("expected an array of rationals");
    RatVec v;
    for (const auto& x : arr) {
        if (x.is_string())
            v.push_back(parse_rational(x.get<std::string>()));
        else if (x.is_number_integer())
            v.push_back(Rational(x.get<std::int64_t>()));
        else
            throw std::invalid_argument("rational entries must be strings or integers");
    }
    return v;
}

inline Json polytope_to_json(const Polytope& p) {
    Json j;
    j["dim"] = p.dim();
    Json verts = Json::array();
    for (const auto& v : p.vertices())
        verts.push_back(ratvec_to_json(v));
    j["vertices"] = verts;
    Json facets = Json::array();
    for (const auto& f : p.facets()) {
        Json fj;
        fj["normal"] = ratvec_to_json(f.normal);
        fj["offset"] = format_rational(f.offset);
        facets.push_back(fj);
    }
    j["facets"] = facets;
    return j;
}

inline Polytope polytope_from_json(const Json& j) {
    check_schema(j);
    if (!j.contains("dim") || !j.contains("vertices"))
        throw std::invalid_argument("polytope document needs 'dim' and 'vertices'");
    const int dim = j.at("dim").get<int>();
    std::vector<RatVec> verts;
    for (const auto& v : j.at("vertices")) {
        RatVec pt = ratvec_from_json(v);
        if (static_cast<int>(pt.size()) != dim)
            throw std::invalid_argument("vertex arity does not match 'dim'");
        verts.push_back(std::move(pt));
    }
    Polytope p = Polytope::hull(dim, std::move(verts));
    if (j.contains("facets")) {
        // stored facets are advisory on input; reject silently corrupted data
        std::vector<Halfspace> stored;
        for (const auto& f : j.at("facets"))
            stored.push_back(Halfspace{ratvec_from_json(f.at("normal")),
                                       parse_rational(f.at("offset").get<std::string>())});
        std::sort(stored.begin(), stored.end());
        if (stored != p.facets())
            throw std::invalid_argument("stored facets disagree with the hull of the vertices");
    }
    return p;
}

/* ------------------------------------------------------------------ */
/* monomial sections                                                  */
/* ------------------------------------------------------------------ */

inline Json section_to_json(const MonomialSection& s) {
    Json j;
    Json terms = Json::array();
    for (const auto& t : s.terms) {
        Json term = Json::array();
        for (auto e : t)
            term.push_back(e);
        terms.push_back(term);
    }
    j["terms"] = terms;
    return j;
}

inline MonomialSection section_from_json(const Json& j) {
    check_schema(j);
    if (!j.contains("terms"))
        throw std::invalid_argument("section document needs 'terms'");
    std::vector<Exponent> terms;
    for (const auto& t : j.at("terms")) {
        Exponent e;
        for (const auto& x : t)
            e.push_back(x.get<std::int64_t>());
        terms.push_back(std::move(e));
    }
    return make_section(std::move(terms));
}

/* ------------------------------------------------------------------ */
/* toric divisor data                                                 */
/* ------------------------------------------------------------------ */

inline Json toric_to_json(const ToricDivisorData& t) {
    Json j;
    j["polytope"] = polytope_to_json(t.polytope());
    Json pts = Json::array();
    for (const auto& p : t.points()) {
        Json pj;
        Json vj = Json::array();
        for (auto c : p.vertex)
            vj.push_back(c);
        pj["vertex"] = vj;
        Json fj = Json::array();
        for (auto c : p.frame)
            fj.push_back(c);
        pj["frame"] = fj;
        pj["label"] = p.label;
        pts.push_back(pj);
    }
    j["points"] = pts;
    return j;
}

inline ToricDivisorData toric_from_json(const Json& j) {
    check_schema(j);
    if (!j.contains("polytope") || !j.contains("points"))
        throw std::invalid_argument("toric document needs 'polytope' and 'points'");
    Polytope p = polytope_from_json(j.at("polytope"));
    std::vector<EvaluationPoint> pts;
    for (const auto& pj : j.at("points")) {
        EvaluationPoint ep;
        for (const auto& c : pj.at("vertex"))
            ep.vertex.push_back(c.get<std::int64_t>());
        if (pj.contains("frame"))
            for (const auto& c : pj.at("frame"))
                ep.frame.push_back(c.get<int>());
        if (pj.contains("label"))
            ep.label = pj.at("label").get<std::string>();
        pts.push_back(std::move(ep));
    }
    return ToricDivisorData(std::move(p), std::move(pts));
}

/* ------------------------------------------------------------------ */
/* certificates                                                       */
/* ------------------------------------------------------------------ */

inline Json certificate_to_json(const Certificate& c) {
    Json j;
    j["schema"] = kSchemaTag;
    j["type"] = "certificate";
    j["rule"] = c.rule;
    j["conclusion"] = c.conclusion;
    j["divisor"] = c.divisor;
    j["dim"] = c.dim;
    j["jet_order"] = c.jet_order;
    j["m"] = c.m ? Json(*c.m) : Json(nullptr);
    j["m_of_d"] = c.m_of_d ? Json(*c.m_of_d) : Json(nullptr);
    j["points"] = c.points;
    j["flags_checked"] = c.flags_checked;
    j["threshold"] = format_rational(c.threshold);
    j["min_xi"] = format_rational(c.min_xi);
    j["epsilon_witness"] = format_rational(c.epsilon_witness);
    Json xs = Json::array();
    for (const auto& [label, xi] : c.xi_values) {
        Json x;
        x["body"] = label;
        x["xi"] = format_rational(xi);
        xs.push_back(x);
    }
    j["xi_values"] = xs;
    Json bs = Json::array();
    for (const auto& b : c.bodies) {
        Json bj;
        bj["point"] = b.point;
        bj["frame"] = b.frame;
        bj["exact"] = b.exact;
        bj["kmax"] = b.kmax;
        bj["source"] = b.source;
        bj["polytope"] = polytope_to_json(b.body);
        bs.push_back(bj);
    }
    j["bodies"] = bs;
    j["assumptions"] = c.assumptions;
    j["detail"] = c.detail;
    if (c.rule == "cyclic-cover") {
        j["cover_checks"] = c.cover_checks;
        j["cover_degree"] = c.cover_degree;
    }
    return j;
}

inline Certificate certificate_from_json(const Json& j) {
    check_schema(j);
    if (!j.contains("type") || j.at("type") != "certificate")
        throw std::invalid_argument("not a certificate document");
    Certificate c;
    c.rule = j.at("rule").get<std::string>();
    c.conclusion = j.at("conclusion").get<std::string>();
    c.divisor = j.at("divisor").get<std::string>();
    c.dim = j.at("dim").get<int>();
    c.jet_order = j.at("jet_order").get<int>();
    if (!j.at("m").is_null())
        c.m = j.at("m").get<std::int64_t>();
    if (!j.at("m_of_d").is_null())
        c.m_of_d = j.at("m_of_d").get<std::int64_t>();
    c.points = j.at("points").get<std::vector<std::string>>();
    c.flags_checked = j.at("flags_checked").get<std::vector<std::string>>();
    c.threshold = parse_rational(j.at("threshold").get<std::string>());
    c.min_xi = parse_rational(j.at("min_xi").get<std::string>());
    c.epsilon_witness = parse_rational(j.at("epsilon_witness").get<std::string>());
    for (const auto& x : j.at("xi_values"))
        c.xi_values.emplace_back(x.at("body").get<std::string>(),
                                 parse_rational(x.at("xi").get<std::string>()));
    for (const auto& bj : j.at("bodies")) {
        BodyRecord b;
        b.point = bj.at("point").get<std::string>();
        b.frame = bj.at("frame").get<std::string>();
        b.exact = bj.at("exact").get<bool>();
        b.kmax = bj.at("kmax").get<int>();
        b.source = bj.at("source").get<std::string>();
        b.body = polytope_from_json(bj.at("polytope"));
        c.bodies.push_back(std::move(b));
    }
    c.assumptions = j.at("assumptions").get<std::vector<std::string>>();
    c.detail = j.at("detail").get<std::string>();
    if (c.rule == "cyclic-cover") {
        c.cover_checks = j.at("cover_checks").get<std::vector<int>>();
        c.cover_degree = j.at("cover_degree").get<int>();
    }
    return c;
}

/* Serialize a top-level document: schema tag first, then the payload. */
inline std::string dump_document(const char* doc_type, Json payload) {
    Json j;
    j["schema"] = kSchemaTag;
    j["type"] = doc_type;
    for (auto& [key, value] : payload.items())
        j[key] = value;
    return j.dump(2) + "\n";
}

}  // namespace okkit

#endif
