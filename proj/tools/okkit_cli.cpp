/*
 * okkit -- exact convex-body computations for jet-separation certificates.
 *
 * Subcommands
 *   body                invariant-flag or infinitesimal body of a toric divisor
 *   multipoint          competing bodies at several marked points
 *   certify             build a certificate (adjoint / canonical-free /
 *                       cyclic-cover / surface-example rules)
 *   surface-table       the abelian double-cover family table
 *   oracle              random-coefficient sampling check of a claimed body
 *   verify-certificate  re-check a stored certificate
 *
 * Exit codes: 0 success (including a "not-certified" conclusion),
 *             1 verification mismatch, 2 parse/validation error,
 *             3 enumeration cap exceeded.
 *
 * Outputs are deterministic for a fixed flag set and seed; the seed is
 * recorded in every JSON document.  `--output x.csv` writes 2-D vertex
 * rows (or table rows) as CSV; `--output x.json` writes the JSON
 * document; without `--output` the JSON goes to stdout.
 * The environment variable OKKIT_CAP overrides the lattice-point cap.
 */

#include "okkit/okkit.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace okkit;

namespace {

long long enumeration_cap() {
    if (const char* s = std::getenv("OKKIT_CAP")) {
        try {
            long long v = std::stoll(s);
            if (v > 0)
                return v;
        } catch (const std::exception&) {
            throw std::invalid_argument("OKKIT_CAP must be a positive integer");
        }
        throw std::invalid_argument("OKKIT_CAP must be a positive integer");
    }
    return kDefaultEnumerationCap;
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open input file '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("JSON parse error in '" + path + "': " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::invalid_argument("cannot open output file '" + path + "'");
    out << text;
}

bool wants_csv(const std::string& path) {
    return path.size() >= 4 && path.substr(path.size() - 4) == ".csv";
}

/* Rebuild a document with "seed" placed right after "schema"/"type". */
Json with_seed(const Json& doc, std::uint64_t seed) {
    Json out;
    for (auto& [key, value] : doc.items()) {
        out[key] = value;
        if (key == "type")
            out["seed"] = seed;
    }
    if (!out.contains("seed"))
        out["seed"] = seed;
    return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int point_index(const ToricDivisorData& t, const std::string& label) {
    if (label.empty())
        return 0;
    for (std::size_t i = 0; i < t.points().size(); ++i)
        if (t.points()[i].label == label)
            return static_cast<int>(i);
    throw std::invalid_argument("no marked point labeled '" + label + "'");
}

std::vector<std::vector<int>> parse_frames(const std::string& text, int n) {
    if (text.empty())
        return {};
    if (text == "all")
        return enumerate_frames(n);
    std::vector<std::vector<int>> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (static_cast<int>(tok.size()) != n)
            throw std::invalid_argument("frame '" + tok + "' must list " +
                                        std::to_string(n) + " coordinate digits");
        std::vector<int> perm;
        for (char c : tok) {
            if (c < '0' || c > '9')
                throw std::invalid_argument("frame '" + tok + "' must be digits");
            perm.push_back(c - '0');
        }
        out.push_back(std::move(perm));
    }
    return out;
}

std::pair<std::int64_t, std::int64_t> parse_ell_range(const std::string& text) {
    auto pos = text.find("..");
    try {
        if (pos == std::string::npos) {
            std::int64_t v = std::stoll(text);
            return {v, v};
        }
        return {std::stoll(text.substr(0, pos)), std::stoll(text.substr(pos + 2))};
    } catch (const std::exception&) {
        throw std::invalid_argument("bad --ell range '" + text + "' (want A or A..B)");
    }
}

ToricDivisorData with_frame(const ToricDivisorData& t, int pt, const std::vector<int>& perm) {
    auto pts = t.points();
    pts.at(pt).frame = perm;
    return ToricDivisorData(t.polytope(), std::move(pts));
}

std::string csv_vertices(const Polytope& p, const std::string& tag) {
    if (p.dim() != 2)
        throw std::invalid_argument("CSV vertex output is for 2-D bodies only");
    std::string out;
    for (const auto& v : p.vertices())
        out += tag + "," + format_rational(v[0]) + "," + format_rational(v[1]) + "\n";
    return out;
}

/* ------------------------------------------------------------------ */

struct CommonOpts {
    std::string input, output, point, frames;
    int kmax = 4;
    int k = 1;
    std::uint64_t seed = 0;
    bool infinitesimal = false;
    bool multipoint = false;
    std::string shrink = "0";
    std::string ties = "closure";
    int samples = 50;
};

int run_body(const CommonOpts& o) {
    ToricDivisorData td = toric_from_json(load_json(o.input));
    const long long cap = enumeration_cap();
    const int pi = point_index(td, o.point);
    auto frames = parse_frames(o.frames, td.dim());
    if (frames.empty())
        frames.push_back(td.points().at(pi).frame);

    Json doc;
    doc["schema"] = kSchemaTag;
    doc["type"] = "body";
    doc["seed"] = o.seed;
    doc["point"] = td.points().at(pi).label;
    doc["kind"] = o.infinitesimal ? "infinitesimal" : "invariant-flag";
    doc["kmax"] = o.infinitesimal ? o.kmax : 0;
    Json bodies = Json::array();
    std::string csv = "frame,x,y\n";
    for (const auto& fr : frames) {
        ToricDivisorData t2 = with_frame(td, pi, fr);
        Json b;
        b["frame"] = frame_label(fr);
        Polytope body = Polytope::empty(td.dim());
        if (o.infinitesimal) {
            auto inf = infinitesimal_body_fixed_point(t2, pi, o.kmax, cap);
            body = inf.body;
            b["exact"] = inf.exact;
            b["kmax"] = inf.kmax;
        } else {
            body = okounkov_body_invariant_flag(t2, pi);
            b["exact"] = true;
            b["kmax"] = 0;
        }
        b["volume"] = format_rational(volume(body));
        b["polytope"] = polytope_to_json(body);
        bodies.push_back(b);
        if (wants_csv(o.output))
            csv += csv_vertices(body, frame_label(fr));
    }
    doc["bodies"] = bodies;
    write_text(o.output, wants_csv(o.output) ? csv : dump(doc));
    std::cerr << "body: " << bodies.size() << " frame(s) at point '"
              << td.points().at(pi).label << "'\n";
    return 0;
}

int run_multipoint(const CommonOpts& o) {
    ToricDivisorData td = toric_from_json(load_json(o.input));
    const long long cap = enumeration_cap();
    const auto kind = o.infinitesimal ? MultipointValuation::Infinitesimal
                                      : MultipointValuation::Flag;
    TiePolicy ties;
    if (o.ties == "closure")
        ties = TiePolicy::Closure;
    else if (o.ties == "strict")
        ties = TiePolicy::Strict;
    else
        throw std::invalid_argument("--ties must be 'closure' or 'strict'");
    Rational shrink = parse_rational(o.shrink);
    auto mb = multipoint_bodies(td, o.kmax, kind, shrink, ties, cap);

    Json doc;
    doc["schema"] = kSchemaTag;
    doc["type"] = "multipoint";
    doc["seed"] = o.seed;
    doc["kind"] = o.infinitesimal ? "infinitesimal" : "flag";
    doc["tie_policy"] = (ties == TiePolicy::Closure ? "closure" : "strict");
    doc["shrink"] = format_rational(shrink);
    doc["kmax"] = mb.kmax;
    Json bodies = Json::array();
    Rational total = 0;
    std::string csv = "point,x,y\n";
    for (std::size_t i = 0; i < mb.bodies.size(); ++i) {
        Json b;
        b["point"] = mb.labels[i];
        Rational v = volume(mb.bodies[i]);
        total += v;
        b["volume"] = format_rational(v);
        b["polytope"] = polytope_to_json(mb.bodies[i]);
        bodies.push_back(b);
        if (wants_csv(o.output))
            csv += csv_vertices(mb.bodies[i], mb.labels[i]);
    }
    doc["bodies"] = bodies;
    doc["volume_total"] = format_rational(total);
    write_text(o.output, wants_csv(o.output) ? csv : dump(doc));
    std::cerr << "multipoint: " << mb.bodies.size() << " bodies, total volume "
              << format_rational(total) << "\n";
    return 0;
}

std::vector<BodyRecord> gather_bodies(const ToricDivisorData& td, const CommonOpts& o,
                                      long long cap) {
    std::vector<BodyRecord> recs;
    if (o.multipoint) {
        auto mb = multipoint_bodies(td, o.kmax, MultipointValuation::Infinitesimal,
                                    Rational(0), TiePolicy::Closure, cap);
        for (std::size_t i = 0; i < mb.bodies.size(); ++i) {
            BodyRecord b;
            b.point = mb.labels[i];
            b.frame = frame_label(td.points()[i].frame);
            b.body = mb.bodies[i];
            b.exact = false;  // finite-level inner hull
            b.kmax = mb.kmax;
            b.source = "multipoint infinitesimal body";
            recs.push_back(std::move(b));
        }
        return recs;
    }
    auto frames = parse_frames(o.frames, td.dim());
    for (std::size_t i = 0; i < td.points().size(); ++i) {
        if (!o.point.empty() && td.points()[i].label != o.point)
            continue;
        auto frame_set = frames.empty()
                             ? std::vector<std::vector<int>>{td.points()[i].frame}
                             : frames;
        for (const auto& fr : frame_set) {
            ToricDivisorData t2 = with_frame(td, static_cast<int>(i), fr);
            auto inf = infinitesimal_body_fixed_point(t2, static_cast<int>(i), o.kmax, cap);
            BodyRecord b;
            b.point = td.points()[i].label;
            b.frame = frame_label(fr);
            b.body = inf.body;
            b.exact = inf.exact;
            b.kmax = inf.kmax;
            b.source = "infinitesimal body at a fixed point";
            recs.push_back(std::move(b));
        }
    }
    return recs;
}

int run_certify(const CommonOpts& o, bool adjoint, bool canonical_free, bool cyclic,
                bool surface_example, bool jet_ample, std::int64_t m, std::int64_t m_of_d,
                int cover_degree, std::int64_t ell) {
    const int picked = int(adjoint) + int(canonical_free) + int(cyclic) + int(surface_example);
    if (picked != 1)
        throw std::invalid_argument(
            "pick exactly one rule: --adjoint, --canonical-free, --cyclic-cover, "
            "or --surface-example");

    Certificate cert;
    if (surface_example) {
        cert = double_cover_jet_certificate(ell, o.k);
    } else {
        ToricDivisorData td = toric_from_json(load_json(o.input));
        const long long cap = enumeration_cap();
        const int n = td.dim();
        auto recs = gather_bodies(td, o, cap);
        if (recs.empty())
            throw std::invalid_argument("no bodies selected (check the --point label)");
        if (adjoint) {
            cert = certify_adjoint(recs, n, o.k);
        } else if (canonical_free) {
            cert = certify_canonical_free(recs, m, m_of_d, n, o.k);
        } else {
            // cyclic cover: the adjoint check for q+1 copies of the divisor,
            // q = 0..min(k, degree-1); scaling the body scales xi.
            if (cover_degree < 1)
                throw std::invalid_argument("--cover-degree must be >= 1");
            std::vector<bool> checks;
            const int qmax = std::min(o.k, cover_degree - 1);
            for (int q = 0; q <= qmax; ++q) {
                bool ok = !recs.empty();
                for (const auto& r : recs) {
                    auto xi = xi_max(r.body);
                    Rational val = xi ? *xi * (q + 1) : Rational(0);
                    ok = ok && r.exact && xi && val > Rational(n + o.k);
                }
                checks.push_back(ok);
            }
            cert = cyclic_cover_rule(checks, o.k, cover_degree);
            cert.dim = n;
            cert.bodies = recs;
            for (const auto& r : recs) {
                cert.points.push_back(r.point);
                cert.flags_checked.push_back(r.label());
            }
        }
        if (jet_ample && !cyclic)
            cert = certify_jet_ample(cert, o.k);
    }

    Json doc = with_seed(certificate_to_json(cert), o.seed);
    write_text(o.output, dump(doc));
    std::cerr << "certify: rule=" << cert.rule << " conclusion=" << cert.conclusion;
    if (!cert.detail.empty())
        std::cerr << " (" << cert.detail << ")";
    std::cerr << "\n";
    return 0;
}

int run_surface_table(const CommonOpts& o, const std::string& ell_arg) {
    auto [lo, hi] = parse_ell_range(ell_arg);
    auto rows = surface_table(lo, hi);
    if (wants_csv(o.output) || o.output.empty()) {
        std::string csv = "ell,a_f1,a_f2,a_delta,a_squared,a_dot_h,n_ell,m_of_d,coefficient\n";
        for (const auto& r : rows) {
            csv += std::to_string(r.ell) + "," + std::to_string(r.a.a) + "," +
                   std::to_string(r.a.b) + "," + std::to_string(r.a.c) + "," +
                   std::to_string(r.a_squared) + "," + std::to_string(r.a_dot_h) + "," +
                   std::to_string(r.n_ell) + "," + std::to_string(r.m_of_d) + "," +
                   std::to_string(r.coefficient) + "\n";
        }
        write_text(o.output, csv);
    } else {
        Json doc;
        doc["schema"] = kSchemaTag;
        doc["type"] = "surface-table";
        doc["seed"] = o.seed;
        Json jrows = Json::array();
        for (const auto& r : rows) {
            Json j;
            j["ell"] = r.ell;
            j["a"] = {r.a.a, r.a.b, r.a.c};
            j["a_squared"] = r.a_squared;
            j["a_dot_h"] = r.a_dot_h;
            j["n_ell"] = r.n_ell;
            j["m_of_d"] = r.m_of_d;
            j["coefficient"] = r.coefficient;
            jrows.push_back(j);
        }
        doc["rows"] = jrows;
        write_text(o.output, dump(doc));
    }
    std::cerr << "surface-table: " << rows.size() << " rows\n";
    return 0;
}

int run_oracle(const CommonOpts& o) {
    ToricDivisorData td = toric_from_json(load_json(o.input));
    const long long cap = enumeration_cap();
    const int pi = point_index(td, o.point);
    Polytope body = Polytope::empty(td.dim());
    bool exact = true;
    if (o.infinitesimal) {
        auto inf = infinitesimal_body_fixed_point(td, pi, o.kmax, cap);
        body = inf.body;
        exact = inf.exact;
    } else {
        body = okounkov_body_invariant_flag(td, pi);
    }
    auto rep = sampling_oracle(td, pi, body, o.kmax, o.samples, o.seed,
                               o.infinitesimal, cap);

    Json doc;
    doc["schema"] = kSchemaTag;
    doc["type"] = "oracle-report";
    doc["seed"] = rep.seed;
    doc["point"] = td.points().at(pi).label;
    doc["kind"] = o.infinitesimal ? "infinitesimal" : "invariant-flag";
    doc["exact"] = exact;
    doc["kmax"] = rep.kmax;
    doc["samples_per_level"] = rep.samples_per_level;
    doc["sections_sampled"] = rep.sections_sampled;
    Json outs = Json::array();
    for (const auto& out : rep.outliers) {
        Json job;
        job["level"] = out.level;
        Json supp = Json::array();
        for (const auto& t : out.support) {
            Json term = Json::array();
            for (auto e : t)
                term.push_back(e);
            supp.push_back(term);
        }
        job["support"] = supp;
        Json val = Json::array();
        for (auto v : out.value)
            val.push_back(v);
        job["value"] = val;
        outs.push_back(job);
    }
    doc["outliers"] = outs;
    doc["body"] = polytope_to_json(body);
    write_text(o.output, dump(doc));
    std::cerr << "oracle: " << rep.sections_sampled << " sections sampled, "
              << rep.outliers.size() << " outlier(s)\n";
    return 0;
}

int run_verify(const CommonOpts& o) {
    Certificate cert = certificate_from_json(load_json(o.input));
    auto bad = verify_certificate(cert);
    if (bad.empty()) {
        std::cout << "certificate OK: rule=" << cert.rule
                  << " conclusion=" << cert.conclusion << "\n";
        return 0;
    }
    std::cout << bad.size() << " discrepanc" << (bad.size() == 1 ? "y" : "ies") << ":\n";
    for (const auto& b : bad)
        std::cout << "  - " << b << "\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"okkit: exact convex-body computations for jet-separation certificates"};
    app.require_subcommand(1);
    CommonOpts o;

    auto add_common = [&](CLI::App* sub, bool needs_input) {
        auto* in = sub->add_option("--input", o.input, "input JSON file");
        if (needs_input)
            in->required();
        sub->add_option("--output", o.output, "output file (.json or .csv)");
        sub->add_option("--seed", o.seed, "seed recorded in outputs");
    };

    auto* sb = app.add_subcommand("body", "body of a toric divisor at a marked point");
    add_common(sb, true);
    sb->add_option("--point", o.point, "marked point label (default: first)");
    sb->add_option("--frames", o.frames, "all | comma-separated digit permutations");
    sb->add_option("--kmax", o.kmax, "enumeration depth for the infinitesimal hull");
    sb->add_flag("--infinitesimal", o.infinitesimal, "infinitesimal body instead of flag body");

    auto* sm = app.add_subcommand("multipoint", "competing bodies at the marked points");
    add_common(sm, true);
    sm->add_option("--kmax", o.kmax, "enumeration depth");
    sm->add_flag("--infinitesimal", o.infinitesimal, "infinitesimal valuations");
    sm->add_option("--shrink", o.shrink, "twist amount t (rational, default 0)");
    sm->add_option("--ties", o.ties, "tie policy: closure (default) or strict");

    auto* sc = app.add_subcommand("certify", "build a certificate");
    bool adjoint = false, canonical_free = false, cyclic = false, surface_example = false;
    bool jet_ample = false;
    std::int64_t m = 1, m_of_d = 1, ell = 2;
    int cover_degree = 2;
    add_common(sc, false);
    sc->add_option("--k", o.k, "jet order (default 1)");
    sc->add_option("--kmax", o.kmax, "enumeration depth for bodies");
    sc->add_option("--point", o.point, "restrict to one marked point label");
    sc->add_option("--frames", o.frames, "all | comma-separated digit permutations");
    sc->add_flag("--adjoint", adjoint, "adjoint rule (canonical plus divisor)");
    sc->add_flag("--canonical-free", canonical_free, "canonical-free multiplier rule");
    sc->add_flag("--cyclic-cover", cyclic, "cyclic cover rule");
    sc->add_flag("--surface-example", surface_example, "abelian double-cover example");
    sc->add_flag("--jet-ample", jet_ample, "upgrade with k+1 marked points");
    sc->add_flag("--multipoint", o.multipoint, "use multipoint bodies");
    sc->add_flag("--infinitesimal", o.infinitesimal, "(implied for certify bodies)");
    sc->add_option("--m", m, "multiplier m (canonical-free rule)");
    sc->add_option("--m-of-d", m_of_d, "free-threshold m(D) (canonical-free rule)");
    sc->add_option("--cover-degree", cover_degree, "cover degree d (cyclic cover rule)");
    sc->add_option("--ell", ell, "family parameter (surface example)");

    auto* st = app.add_subcommand("surface-table", "double-cover family table");
    std::string ell_arg = "2..10";
    add_common(st, false);
    st->add_option("--ell", ell_arg, "range A..B (default 2..10)");

    auto* so = app.add_subcommand("oracle", "sampling cross-check of a claimed body");
    add_common(so, true);
    so->add_option("--point", o.point, "marked point label (default: first)");
    so->add_option("--kmax", o.kmax, "levels to sample");
    so->add_option("--samples", o.samples, "sections per level (default 50)");
    so->add_flag("--infinitesimal", o.infinitesimal, "check the infinitesimal body");

    auto* sv = app.add_subcommand("verify-certificate", "re-check a stored certificate");
    add_common(sv, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? 0 : 2;
    }

    try {
        if (sb->parsed())
            return run_body(o);
        if (sm->parsed())
            return run_multipoint(o);
        if (sc->parsed())
            return run_certify(o, adjoint, canonical_free, cyclic, surface_example,
                               jet_ample, m, m_of_d, cover_degree, ell);
        if (st->parsed())
            return run_surface_table(o, ell_arg);
        if (so->parsed())
            return run_oracle(o);
        if (sv->parsed())
            return run_verify(o);
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
