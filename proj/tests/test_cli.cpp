#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtor/io.hpp"
#include "qtor/models.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <sys/wait.h>
#include <vector>

using nlohmann::json;

// ---- driving the installed binary -------------------------------------------

struct RunResult {
    int exit_code = -1;
    std::string out;
};

static RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(QTOR_BIN) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int rc = pclose(p);
    REQUIRE(WIFEXITED(rc));
    return {WEXITSTATUS(rc), out};
}

static std::string model(const std::string& name) {
    return std::string(QTOR_MODELS_DIR) + "/" + name;
}

static std::string data(const std::string& name) {
    return std::string(QTOR_DATA_DIR) + "/" + name;
}

static json structured(const RunResult& r) {
    CAPTURE(r.out);
    json j = json::parse(r.out, nullptr, false);
    REQUIRE_FALSE(j.is_discarded());
    return j;
}

/* graded block keeps only nonzero degrees; expand back to a dense rank vector */
static std::vector<long> graded_ranks(const json& rep, size_t len) {
    std::vector<long> v(len, 0);
    for (const auto& d : rep.at("graded"))
        v.at(d.at("degree").get<size_t>()) = d.at("free_rank").get<long>();
    return v;
}

static const char* kJayJson = "[[[0,0,0,0],[1,0,0,0]],[[-1,0,0,0],[0,0,0,0]]]";

// ---- validate -----------------------------------------------------------------

TEST_CASE("validate accepts every bundled model") {
    for (const char* name : {"hp1.model", "triangle.model", "disk.model", "s3xs1.model",
                             "twisted_circle.model", "cube.model"}) {
        CAPTURE(name);
        RunResult r = run_cli("validate " + model(name));
        CHECK(r.exit_code == 0);
        json j = structured(r);
        CHECK(j.at("status") == "ok");
        CHECK(j.at("validation").at("ok") == true);
        CHECK(j.at("digest").get<std::string>().size() == 16);
    }
}

TEST_CASE("validate pins lattice failures to the offending facet") {
    RunResult r = run_cli("validate " + data("bad_charvec.model"));
    CHECK(r.exit_code == 1);
    json j = structured(r);
    CHECK(j.at("status") == "invalid");
    bool saw_primitive = false;
    for (const auto& v : j.at("validation").at("violations"))
        if (v.at("code") == "charvec_primitive") saw_primitive = true;
    CHECK(saw_primitive);

    // primitive charvecs whose span at a vertex is an index-2 sublattice
    RunResult u = run_cli("validate " + data("nonunimodular.model"));
    CHECK(u.exit_code == 1);
    CHECK(u.out.find("elementary divisor 2") != std::string::npos);
    json ju = structured(u);
    bool saw_unimodularity = false;
    for (const auto& v : ju.at("validation").at("violations"))
        if (v.at("code") == "unimodularity") saw_unimodularity = true;
    CHECK(saw_unimodularity);
}

TEST_CASE("malformed documents yield a parse diagnostic, not a crash") {
    RunResult r = run_cli("validate " + data("malformed.model"));
    CHECK(r.exit_code == 1);
    json j = structured(r);
    CHECK(j.at("status") == "parse-error");
    CHECK(j.contains("error"));

    RunResult missing = run_cli("validate /nonexistent/path.model");
    CHECK(missing.exit_code == 1);
    CHECK(structured(missing).at("status") == "parse-error");
}

// ---- cohomology ------------------------------------------------------------------

TEST_CASE("cohomology of the bundled models") {
    RunResult hp1 = run_cli("cohomology " + model("hp1.model"));
    REQUIRE(hp1.exit_code == 0);
    json j = structured(hp1);
    CHECK(graded_ranks(j, 5) == std::vector<long>{1, 0, 0, 0, 1});
    CHECK(j.at("collapse").at("certified") == true);
    CHECK(j.at("h3").at("split_reported") == false);

    RunResult s3 = run_cli("cohomology " + model("s3xs1.model"));
    REQUIRE(s3.exit_code == 0);
    json k = structured(s3);
    CHECK(graded_ranks(k, 5) == std::vector<long>{1, 1, 0, 1, 1});
    CHECK(k.at("h3").at("fiber_part").at("pretty") == "Z");

    RunResult tw = run_cli("cohomology " + model("twisted_circle.model"));
    REQUIRE(tw.exit_code == 0);
    json t = structured(tw);
    CHECK(graded_ranks(t, 5) == std::vector<long>{1, 1, 0, 0, 0});
    bool z2_in_degree_4 = false;
    for (const auto& d : t.at("graded"))
        if (d.at("degree") == 4 && d.at("pretty") == "Z/2") z2_in_degree_4 = true;
    CHECK(z2_in_degree_4);
}

TEST_CASE("a nonzero euler class is refused with the failed hypothesis named") {
    RunResult r = run_cli("cohomology " + data("euler_nonzero.model"));
    CHECK(r.exit_code == 2);
    json j = structured(r);
    CHECK(j.at("status") == "unsupported");
    CHECK(j.at("error").get<std::string>().find("euler class") != std::string::npos);
}

TEST_CASE("structured reports are byte-deterministic apart from timing") {
    RunResult a = run_cli("cohomology " + model("s3xs1.model"));
    RunResult b = run_cli("cohomology " + model("s3xs1.model"));
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    json ja = structured(a), jb = structured(b);
    REQUIRE(ja.contains("timing"));
    ja.erase("timing");
    jb.erase("timing");
    CHECK(ja.dump() == jb.dump());
    CHECK(ja.at("digest") == jb.at("digest"));
}

TEST_CASE("--assume-pi4-zero only toggles how H^3 is reported") {
    RunResult plain = run_cli("cohomology " + model("s3xs1.model"));
    RunResult split = run_cli("--assume-pi4-zero cohomology " + model("s3xs1.model"));
    json jp = structured(plain), js = structured(split);
    CHECK(jp.at("h3").at("split_reported") == false);
    CHECK(js.at("h3").at("split_reported") == true);
    CHECK(jp.at("graded") == js.at("graded"));
}

// ---- euler -----------------------------------------------------------------------

TEST_CASE("euler counts vertex cells and cross-checks the graded ranks") {
    RunResult r = run_cli("euler " + model("triangle.model"));
    REQUIRE(r.exit_code == 0);
    json j = structured(r);
    CHECK(j.at("euler").at("chi") == 3);
    CHECK(j.at("euler").at("cross_checked") == true);
    CHECK(j.at("euler").at("match") == true);

    json s3 = structured(run_cli("euler " + model("s3xs1.model")));
    CHECK(s3.at("euler").at("chi") == 0);
    CHECK(s3.at("euler").at("match") == true);
}

// ---- pi1 --------------------------------------------------------------------------

TEST_CASE("pi1 presentations of the bundled bases") {
    json disk = structured(run_cli("pi1 " + model("disk.model")));
    CHECK(disk.at("pi1").at("trivial") == true);
    CHECK(disk.at("pi1").at("generators") == 0);
    CHECK(disk.at("pi1").at("abelianization").at("pretty") == "0");

    json s3 = structured(run_cli("pi1 " + model("s3xs1.model")));
    CHECK(s3.at("pi1").at("trivial") == false);
    CHECK(s3.at("pi1").at("generators") == 1);
    CHECK(s3.at("pi1").at("relators").empty());
    CHECK(s3.at("pi1").at("abelianization").at("pretty") == "Z");
}

// ---- ktheory ----------------------------------------------------------------------

TEST_CASE("ktheory over a polytope base") {
    RunResult r = run_cli("ktheory " + model("triangle.model"));
    REQUIRE(r.exit_code == 0);
    json j = structured(r);
    CHECK(j.at("kgroups").at("k0").at("free_rank") == 1);
    CHECK(j.at("kgroups").at("k0").at("torsion").empty());
    CHECK(j.at("kgroups").at("k1").at("free_rank") == 0);
    CHECK(j.at("warnings").empty());
}

TEST_CASE("ktheory needs a vertex unless the hypothesis is lifted") {
    RunResult refused = run_cli("ktheory " + model("s3xs1.model"));
    CHECK(refused.exit_code == 2);
    json jr = structured(refused);
    CHECK(jr.at("status") == "unsupported");
    CHECK(jr.at("error").get<std::string>().find("S^(0)") != std::string::npos);

    RunResult forced = run_cli("--allow-empty-s0 ktheory " + model("s3xs1.model"));
    REQUIRE(forced.exit_code == 0);
    json jf = structured(forced);
    CHECK(jf.at("kgroups").at("k0").at("free_rank") == 1);
    CHECK(jf.at("kgroups").at("k1").at("free_rank") == 1);
    CHECK_FALSE(jf.at("warnings").empty()); // the override is recorded

    RunResult strict = run_cli("--strict --allow-empty-s0 ktheory " + model("s3xs1.model"));
    CHECK(strict.exit_code == 2);
    CHECK(structured(strict).at("status") == "warnings-as-errors");
}

// ---- signature ----------------------------------------------------------------------

TEST_CASE("signature assembles the fan document") {
    RunResult r = run_cli("signature " + model("triangle_fan.model"));
    REQUIRE(r.exit_code == 0);
    json j = structured(r);
    CHECK(j.at("signature").at("sigma_m1") == 0);
    CHECK(j.at("signature").at("sigma_m2") == 1);
    CHECK(j.at("signature").at("sigma_total") == 1);
    REQUIRE(j.at("signature").at("components").size() == 1);
    CHECK(j.at("signature").at("components")[0].at("signature") == 1);
    CHECK_FALSE(j.at("warnings").empty()); // diagonal-convention note
}

TEST_CASE("signature rejects documents without the boundary sections") {
    RunResult r = run_cli("signature " + model("hp1.model"));
    CHECK(r.exit_code == 1);
    json j = structured(r);
    CHECK(j.at("status") == "invalid");
    CHECK(j.at("error").get<std::string>().find("trinions") != std::string::npos);
}

// ---- meyer ------------------------------------------------------------------------

TEST_CASE("meyer computes tau on inline matrices") {
    RunResult r = run_cli(std::string("meyer --c1='") + kJayJson + "' --c2='" + kJayJson + "'");
    REQUIRE(r.exit_code == 0);
    json j = structured(r);
    CHECK(j.at("meyer").at("c1_symplectic") == true);
    CHECK(j.at("meyer").at("dim") == 8);
    CHECK(j.at("meyer").at("tau") == 8);
    CHECK(j.at("meyer").at("asymmetry") == 0);

    // non-symplectic inputs still evaluate, but the report says the value is formal
    const char* stretch = "[[[2,0,0,0],[0,0,0,0]],[[0,0,0,0],[1,0,0,0]]]";
    RunResult f = run_cli(std::string("meyer --c1='") + stretch + "' --c2='" + kJayJson + "'");
    CHECK(f.exit_code == 0);
    json jf = structured(f);
    CHECK(jf.at("meyer").at("c1_symplectic") == false);
    CHECK_FALSE(jf.at("warnings").empty());
}

// ---- rendering and bookkeeping --------------------------------------------------------

TEST_CASE("table format renders a readable summary") {
    RunResult r = run_cli("--format=table cohomology " + model("hp1.model"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("qtor cohomology", 0) == 0); // starts with the headline
    CHECK(r.out.find("graded H^r(M)") != std::string::npos);
}

TEST_CASE("the replay seed is echoed into the report") {
    json j = structured(run_cli("--seed 7 validate " + model("hp1.model")));
    CHECK(j.at("seed") == 7);
}

// ---- the bundled model files stay in sync with the generators --------------------------

TEST_CASE("model files round-trip through the generators") {
    using qtor::IntMat;
    using qtor::Int;
    IntMat neg(1, 1);
    neg << Int(-1);
    std::vector<std::pair<std::string, qtor::OrbitComplex>> expected;
    expected.emplace_back("hp1.model", qtor::make_interval());
    expected.emplace_back("triangle.model", qtor::make_triangle());
    expected.emplace_back("disk.model", qtor::make_square());
    expected.emplace_back("s3xs1.model", qtor::make_circle(1, 1));
    expected.emplace_back("twisted_circle.model", qtor::make_circle(1, 2, &neg));
    expected.emplace_back("cube.model", qtor::make_cube());

    for (const auto& [name, gen] : expected) {
        CAPTURE(name);
        std::ifstream in(model(name));
        REQUIRE(in.good());
        json doc = json::parse(in);
        qtor::OrbitComplex parsed = qtor::parse_complex(doc);
        CHECK(qtor::complex_to_json(parsed) == qtor::complex_to_json(gen));
    }
}
