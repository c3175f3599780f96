#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace okkit;
namespace fs = std::filesystem;

namespace {

const std::string kCli = OKKIT_CLI_PATH;
const std::string kData = OKKIT_DATA_DIR;

fs::path scratch() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "okkit_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << text;
}

struct RunResult {
    int code = -1;
    std::string log;
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    fs::path logfile = scratch() / ("log" + std::to_string(counter++) + ".txt");
    std::string cmd = env_prefix + (env_prefix.empty() ? "" : " ") + kCli + " " + args +
                      " >" + logfile.string() + " 2>&1";
    int raw = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.log = slurp(logfile);
    return r;
}

Json load(const fs::path& p) { return Json::parse(slurp(p)); }

}  // namespace

TEST_CASE("cli: surface table CSV") {
    fs::path out = scratch() / "table.csv";
    auto r = run_cli("surface-table --ell 2..10 --output " + out.string());
    REQUIRE(r.code == 0);
    std::string csv = slurp(out);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "ell,a_f1,a_f2,a_delta,a_squared,a_dot_h,n_ell,m_of_d,coefficient");
    std::vector<std::string> m_col;
    while (std::getline(lines, line)) {
        std::stringstream ss(line);
        std::string cell;
        for (int i = 0; i < 8; ++i)
            std::getline(ss, cell, ',');
        m_col.push_back(cell);
    }
    CHECK(m_col == std::vector<std::string>{"3", "6", "11", "18", "27", "38", "51", "66", "83"});
}

TEST_CASE("cli: surface table JSON") {
    fs::path out = scratch() / "table.json";
    auto r = run_cli("surface-table --ell 2..3 --output " + out.string());
    REQUIRE(r.code == 0);
    Json doc = load(out);
    CHECK(doc.at("schema") == "okkit/1");
    CHECK(doc.at("type") == "surface-table");
    CHECK(doc.at("seed") == 0);
    REQUIRE(doc.at("rows").size() == 2);
    CHECK(doc.at("rows")[0].at("m_of_d") == 3);
    CHECK(doc.at("rows")[1].at("coefficient") == 10);
}

TEST_CASE("cli: infinitesimal body of the cubic plane divisor") {
    fs::path out = scratch() / "body.json";
    auto r = run_cli("body --input " + kData + "/plane_O3.json --point v0 --kmax 1 "
                     "--infinitesimal --output " + out.string());
    REQUIRE(r.code == 0);
    Json doc = load(out);
    CHECK(doc.at("type") == "body");
    CHECK(doc.at("point") == "v0");
    CHECK(doc.at("kind") == "infinitesimal");
    REQUIRE(doc.at("bodies").size() == 1);
    CHECK(doc.at("bodies")[0].at("exact") == true);
    Polytope body = polytope_from_json(doc.at("bodies")[0].at("polytope"));
    CHECK(body == Polytope::hull(2, {{0, 0}, {3, 0}, {3, 3}}));
    CHECK(doc.at("bodies")[0].at("volume") == "9/2");
}

TEST_CASE("cli: body CSV output and frame sweeps") {
    fs::path out = scratch() / "body.csv";
    auto r = run_cli("body --input " + kData + "/plane_O3.json --frames all --output " +
                     out.string());
    REQUIRE(r.code == 0);
    std::string csv = slurp(out);
    CHECK(csv.rfind("frame,x,y\n", 0) == 0);
    CHECK(csv.find("01,") != std::string::npos);
    CHECK(csv.find("10,") != std::string::npos);
}

TEST_CASE("cli: certify, verify, and catch tampering") {
    fs::path cert = scratch() / "cert.json";
    auto r = run_cli("certify --adjoint --input " + kData + "/plane_O5.json --k 2 "
                     "--kmax 2 --output " + cert.string());
    REQUIRE(r.code == 0);
    Json doc = load(cert);
    CHECK(doc.at("rule") == "adjoint");
    CHECK(doc.at("conclusion") == "separates-k-jets-at-points");
    CHECK(doc.at("min_xi") == "5");
    CHECK(doc.at("threshold") == "4");
    CHECK(doc.at("seed") == 0);

    auto v = run_cli("verify-certificate --input " + cert.string());
    CHECK(v.code == 0);
    CHECK(v.log.find("certificate OK") != std::string::npos);

    // bump the stored xi: parses fine, fails re-verification
    fs::path bad = scratch() / "cert_bad.json";
    std::string text = slurp(cert);
    auto pos = text.find("\"min_xi\": \"5\"");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 13, "\"min_xi\": \"9\"");
    spit(bad, text);
    auto vb = run_cli("verify-certificate --input " + bad.string());
    CHECK(vb.code == 1);
    CHECK(vb.log.find("does not recompute") != std::string::npos);
}

TEST_CASE("cli: not-certified is a clean exit") {
    fs::path cert = scratch() / "cert_none.json";
    auto r = run_cli("certify --adjoint --input " + kData + "/plane_O5.json --k 3 "
                     "--kmax 2 --output " + cert.string());
    REQUIRE(r.code == 0);
    Json doc = load(cert);
    CHECK(doc.at("conclusion") == "not-certified");
    CHECK(doc.at("detail") == "threshold not exceeded on exact bodies");
    auto v = run_cli("verify-certificate --input " + cert.string());
    CHECK(v.code == 0);
}

TEST_CASE("cli: multipoint bodies on the line") {
    fs::path out = scratch() / "mp.json";
    auto r = run_cli("multipoint --input " + kData + "/line_O2.json --kmax 8 --output " +
                     out.string());
    REQUIRE(r.code == 0);
    Json doc = load(out);
    CHECK(doc.at("tie_policy") == "closure");
    CHECK(doc.at("volume_total") == "2");
    REQUIRE(doc.at("bodies").size() == 2);
    CHECK(doc.at("bodies")[0].at("point") == "0");
    CHECK(doc.at("bodies")[0].at("volume") == "1");
    CHECK(doc.at("bodies")[1].at("volume") == "1");
}

TEST_CASE("cli: multipoint jet-ample certificate on the big square") {
    fs::path cert = scratch() / "cert_z.json";
    auto r = run_cli("certify --adjoint --jet-ample --multipoint --input " + kData +
                     "/square_O4.json --k 1 --kmax 6 --output " + cert.string());
    REQUIRE(r.code == 0);
    Json doc = load(cert);
    CHECK(doc.at("rule") == "jet-ample");
    CHECK(doc.at("conclusion") == "k-jet-ample-supported-on-Z");
    CHECK(doc.at("min_xi") == "4");
    auto v = run_cli("verify-certificate --input " + cert.string());
    CHECK(v.code == 0);
}

TEST_CASE("cli: surface example certificate") {
    fs::path cert = scratch() / "cert_surface.json";
    auto r = run_cli("certify --surface-example --ell 2 --k 1 --output " + cert.string());
    REQUIRE(r.code == 0);
    Json doc = load(cert);
    CHECK(doc.at("conclusion") == "k-jet-ample");
    CHECK(doc.at("divisor") == "(7)*f^*(A_2)");
    auto v = run_cli("verify-certificate --input " + cert.string());
    CHECK(v.code == 0);
}

TEST_CASE("cli: cyclic cover rule from toric data") {
    fs::path cert = scratch() / "cert_cover.json";
    auto r = run_cli("certify --cyclic-cover --input " + kData + "/plane_O5.json --k 1 "
                     "--cover-degree 2 --kmax 2 --output " + cert.string());
    REQUIRE(r.code == 0);
    Json doc = load(cert);
    CHECK(doc.at("rule") == "cyclic-cover");
    CHECK(doc.at("conclusion") == "k-jet-ample");
    CHECK(doc.at("cover_checks") == Json::parse("[1,1]"));
    auto v = run_cli("verify-certificate --input " + cert.string());
    CHECK(v.code == 0);
}

TEST_CASE("cli: sampling oracle report") {
    fs::path out = scratch() / "oracle.json";
    auto r = run_cli("oracle --input " + kData + "/plane_O3.json --point v0 --kmax 4 "
                     "--samples 20 --seed 13 --infinitesimal --output " + out.string());
    REQUIRE(r.code == 0);
    Json doc = load(out);
    CHECK(doc.at("type") == "oracle-report");
    CHECK(doc.at("seed") == 13);
    CHECK(doc.at("sections_sampled") == 80);
    CHECK(doc.at("outliers").empty());
}

TEST_CASE("cli: deterministic outputs under a fixed seed") {
    fs::path a = scratch() / "det_a.json", b = scratch() / "det_b.json";
    std::string args = "oracle --input " + kData + "/plane_O3.json --kmax 3 --samples 15 "
                       "--seed 99 --infinitesimal --output ";
    REQUIRE(run_cli(args + a.string()).code == 0);
    REQUIRE(run_cli(args + b.string()).code == 0);
    CHECK(slurp(a) == slurp(b));

    fs::path c = scratch() / "det_c.json", d = scratch() / "det_d.json";
    std::string cargs = "certify --adjoint --input " + kData + "/square_O2.json --k 0 "
                        "--kmax 3 --output ";
    REQUIRE(run_cli(cargs + c.string()).code == 0);
    REQUIRE(run_cli(cargs + d.string()).code == 0);
    CHECK(slurp(c) == slurp(d));
}

TEST_CASE("cli: parse failures exit with status 2") {
    CHECK(run_cli("body --input /nonexistent.json").code == 2);
    fs::path junk = scratch() / "junk.json";
    spit(junk, "{not json");
    CHECK(run_cli("body --input " + junk.string()).code == 2);
    CHECK(run_cli("body --input " + kData + "/plane_O3.json --point nosuch").code == 2);
    CHECK(run_cli("verify-certificate --input " + kData + "/plane_O3.json").code == 2);
    CHECK(run_cli("certify --input " + kData + "/plane_O3.json").code == 2);
    CHECK(run_cli("definitely-not-a-subcommand").code == 2);
}

TEST_CASE("cli: the enumeration cap exits with status 3") {
    auto r = run_cli("body --input " + kData + "/plane_O3.json --kmax 3 --infinitesimal",
                     "OKKIT_CAP=5");
    CHECK(r.code == 3);
    CHECK(r.log.find("cap") != std::string::npos);
}
