#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "qtor/errors.hpp"
#include "qtor/io.hpp"
#include "qtor/meyer.hpp"
#include "qtor/models.hpp"
#include "qtor/spectral.hpp"
#include "qtor/twisted.hpp"

using namespace qtor;

namespace {

struct Options {
    std::string format = "structured";
    std::optional<long> seed;
    bool strict = false;
    bool allow_empty_s0 = false;
    bool assume_pi4_zero = false;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open input file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

ordered_json base_report(const std::string& cmd, const std::string& path,
                         const std::string& raw, const Options& opt) {
    ordered_json rep;
    rep["tool"] = "qtor";
    rep["command"] = cmd;
    rep["input"] = path;
    rep["digest"] = digest_hex(raw);
    if (opt.seed) rep["seed"] = *opt.seed;
    rep["status"] = "ok";
    rep["warnings"] = ordered_json::array();
    return rep;
}

ordered_json validation_to_json(const ValidationReport& v) {
    ordered_json out;
    out["ok"] = v.ok();
    ordered_json items = ordered_json::array();
    for (const Violation& viol : v.violations) {
        ordered_json it;
        it["code"] = viol.code;
        it["message"] = viol.message;
        items.push_back(std::move(it));
    }
    out["violations"] = std::move(items);
    return out;
}

/* ---- table rendering ---------------------------------------------------- */

void print_kv(std::ostream& os, const std::string& k, const std::string& v) {
    os << "  " << k;
    for (size_t i = k.size(); i < 24; ++i) os << ' ';
    os << v << "\n";
}

std::string jstr(const ordered_json& j) {
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

void render_table(std::ostream& os, const ordered_json& rep) {
    os << "qtor " << jstr(rep.at("command")) << "  [" << jstr(rep.at("status")) << "]\n";
    print_kv(os, "input", jstr(rep.at("input")));
    print_kv(os, "digest", jstr(rep.at("digest")));
    if (rep.contains("validation"))
        print_kv(os, "valid", rep.at("validation").at("ok").get<bool>() ? "yes" : "no");
    if (rep.contains("validation") && !rep.at("validation").at("ok").get<bool>())
        for (const auto& v : rep.at("validation").at("violations"))
            os << "    violation [" << jstr(v.at("code")) << "] " << jstr(v.at("message")) << "\n";
    if (rep.contains("error")) print_kv(os, "error", jstr(rep.at("error")));

    if (rep.contains("euler")) {
        const auto& e = rep.at("euler");
        print_kv(os, "chi", e.at("chi").dump());
        if (e.at("cross_checked").get<bool>())
            print_kv(os, "chi (graded ranks)", e.at("chi_graded").dump());
    }
    if (rep.contains("e2")) {
        os << "  E2 page (nonzero entries):\n";
        for (const auto& ent : rep.at("e2"))
            os << "    (" << ent.at("p").dump() << "," << ent.at("q").dump() << ")  "
               << jstr(ent.at("group").at("pretty")) << "\n";
    }
    if (rep.contains("collapse")) {
        const auto& c = rep.at("collapse");
        print_kv(os, "collapse certified", c.at("certified").get<bool>() ? "yes" : "no");
    }
    if (rep.contains("graded")) {
        os << "  graded H^r(M):\n";
        for (const auto& deg : rep.at("graded"))
            os << "    r=" << deg.at("degree").dump() << "  " << jstr(deg.at("pretty")) << "\n";
    }
    if (rep.contains("h3")) {
        const auto& h = rep.at("h3");
        print_kv(os, "H3 note", jstr(h.at("note")));
    }
    if (rep.contains("kgroups")) {
        const auto& k = rep.at("kgroups");
        print_kv(os, "K^0", jstr(k.at("k0").at("pretty")));
        print_kv(os, "K^1", jstr(k.at("k1").at("pretty")));
    }
    if (rep.contains("pi1")) {
        const auto& p = rep.at("pi1");
        print_kv(os, "pi1", jstr(p.at("presentation")));
        print_kv(os, "abelianization", jstr(p.at("abelianization").at("pretty")));
        print_kv(os, "trivial", p.at("trivial").get<bool>() ? "yes" : "no");
    }
    if (rep.contains("signature")) {
        const auto& s = rep.at("signature");
        print_kv(os, "sigma(M1)", s.at("sigma_m1").dump());
        print_kv(os, "sigma(M2)", s.at("sigma_m2").dump());
        print_kv(os, "sigma(M)", s.at("sigma_total").dump());
    }
    if (rep.contains("meyer")) {
        const auto& m = rep.at("meyer");
        print_kv(os, "dim V", m.at("dim").dump());
        print_kv(os, "tau", m.at("tau").dump());
        print_kv(os, "asymmetry", jstr(m.at("asymmetry")));
    }
    if (rep.contains("warnings"))
        for (const auto& w : rep.at("warnings")) os << "  warning: " << jstr(w) << "\n";
}

/* ---- command bodies ------------------------------------------------------ */

ordered_json groups_block(const std::vector<GradedPiece>& pieces, long rank,
                          const std::vector<Int>& torsion) {
    ordered_json out;
    AbelianGroup total;
    total.free_rank = rank;
    total.torsion = torsion;
    out["pretty"] = total.to_string();
    out["free_rank"] = rank;
    ordered_json tor = ordered_json::array();
    for (const Int& t : torsion) tor.push_back((long)t.get_si());
    out["torsion"] = std::move(tor);
    ordered_json ps = ordered_json::array();
    for (const auto& p : pieces) {
        ordered_json jp;
        jp["p"] = p.p;
        jp["group"] = group_to_json(p.group);
        ps.push_back(std::move(jp));
    }
    out["pieces"] = std::move(ps);
    return out;
}

int with_validated(const nlohmann::json& doc, ordered_json& rep,
                   const std::function<void(const OrbitComplex&)>& body) {
    OrbitComplex x = parse_complex(doc);
    ValidationReport v = validate(x);
    rep["validation"] = validation_to_json(v);
    if (!v.ok()) {
        rep["status"] = "invalid";
        return 1;
    }
    body(x);
    return 0;
}

void fill_cohomology(const OrbitComplex& x, const Options& opt, ordered_json& rep) {
    E1Page e1 = build_E1(x);
    ordered_json je1 = ordered_json::array();
    for (const auto& row : e1.rows) {
        ordered_json jr;
        jr["q"] = 3 * row.k;
        jr["ranks"] = row.ranks;
        je1.push_back(std::move(jr));
    }
    rep["e1"] = std::move(je1);

    SpectralPage e2 = compute_E2(e1);
    ordered_json je2 = ordered_json::array();
    for (const auto& [pq, g] : e2.entries) {
        ordered_json ent;
        ent["p"] = pq.first;
        ent["q"] = pq.second;
        ent["group"] = group_to_json(g);
        je2.push_back(std::move(ent));
    }
    rep["e2"] = std::move(je2);

    CollapseResult cert = collapse_certificate(e2, e1.dimB);
    ordered_json jc;
    jc["certified"] = cert.certified;
    ordered_json threats = ordered_json::array();
    for (const auto& t : cert.threats) {
        ordered_json jt;
        jt["p"] = t.p;
        jt["q"] = t.q;
        jt["r"] = t.r;
        threats.push_back(std::move(jt));
    }
    jc["threats"] = std::move(threats);
    rep["collapse"] = std::move(jc);

    GradedCohomology g = graded_cohomology(x, opt.assume_pi4_zero); // throws when uncertified
    ordered_json jg = ordered_json::array();
    for (size_t r = 0; r < g.by_degree.size(); ++r) {
        AbelianGroup total;
        total.free_rank = g.free_ranks[r];
        for (const auto& piece : g.by_degree[r])
            for (const Int& t : piece.group.torsion) total.torsion.push_back(t);
        if (total.is_zero() && g.by_degree[r].empty()) continue;
        ordered_json deg;
        deg["degree"] = (long)r;
        deg["pretty"] = total.to_string();
        deg["free_rank"] = g.free_ranks[r];
        ordered_json ps = ordered_json::array();
        for (const auto& piece : g.by_degree[r]) {
            ordered_json jp;
            jp["p"] = piece.p;
            jp["q"] = piece.q;
            jp["group"] = group_to_json(piece.group);
            ps.push_back(std::move(jp));
        }
        deg["pieces"] = std::move(ps);
        jg.push_back(std::move(deg));
    }
    rep["graded"] = std::move(jg);

    ordered_json h3;
    h3["fiber_part"] = group_to_json(g.h3_fiber_part);
    h3["base_part"] = group_to_json(g.h3_base_part);
    h3["split_reported"] = g.h3_split_reported;
    h3["note"] = g.h3_split_reported
                     ? "H^3(M) reported as the direct sum fiber + base (pi_4(B) = 0 assumed)"
                     : "H^3(M) sits in 0 -> fiber part -> H^3(M) -> base part -> 0; "
                       "the extension is not resolved (associated graded only)";
    rep["h3"] = std::move(h3);
    rep["note"] = "graded pieces only: filtration extensions are not resolved";
}

int cmd_meyer(const std::string& c1s, const std::string& c2s, const Options& opt,
              ordered_json& rep) {
    QuatMatrix c1 = parse_quat_matrix(nlohmann::json::parse(c1s));
    QuatMatrix c2 = parse_quat_matrix(nlohmann::json::parse(c2s));
    ordered_json m;
    m["c1_symplectic"] = is_quaternionic_symplectic(c1);
    m["c2_symplectic"] = is_quaternionic_symplectic(c2);
    MeyerSpace sp = meyer_space(c1, c2);
    MeyerForm f = meyer_form(c1, c2);
    m["dim"] = (long)sp.basis.cols();
    m["form"] = rat_matrix_to_json(f.sym);
    m["asymmetry"] = rational_to_json(f.asymmetry);
    m["tau"] = tau_quat(c1, c2);
    if (!(m["c1_symplectic"].get<bool>() && m["c2_symplectic"].get<bool>()))
        rep["warnings"].push_back("input matrices are not symplectic; tau is formal");
    rep["meyer"] = std::move(m);
    (void)opt;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"invariants of manifolds with local quaternionic torus actions"};
    app.require_subcommand(1);

    Options opt;
    std::string input;
    std::string c1s, c2s;

    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"table", "structured"}));
    long seed_val = 0;
    auto* seed_opt = app.add_option("--seed", seed_val, "seed recorded for property-test replay");
    app.add_flag("--strict", opt.strict, "treat warnings as errors (exit 2)");
    app.add_flag("--allow-empty-s0", opt.allow_empty_s0,
                 "lift the nonempty-S^(0) hypothesis for the K-group identification");
    app.add_flag("--assume-pi4-zero", opt.assume_pi4_zero,
                 "report H^3 in split form (justified when pi_4 of the base vanishes)");

    auto* validate_c = app.add_subcommand("validate", "check a complex document");
    auto* cohomology_c = app.add_subcommand("cohomology", "E1/E2 pages and graded H^*(M)");
    auto* ktheory_c = app.add_subcommand("ktheory", "K^0/K^1 via the collapsed AHSS");
    auto* euler_c = app.add_subcommand("euler", "Euler characteristic (vertex count)");
    auto* pi1_c = app.add_subcommand("pi1", "fundamental group presentation");
    auto* signature_c = app.add_subcommand("signature", "signature assembly sigma(M1) + sigma(M2)");
    auto* meyer_c = app.add_subcommand("meyer", "tau on two inline quaternionic matrices");

    for (auto* c : {validate_c, cohomology_c, ktheory_c, euler_c, pi1_c, signature_c}) {
        c->add_option("input", input, "input document")->required();
        c->fallthrough();
    }
    meyer_c->add_option("--c1", c1s, "first matrix, nested-array JSON")->required();
    meyer_c->add_option("--c2", c2s, "second matrix, nested-array JSON")->required();
    meyer_c->fallthrough();

    CLI11_PARSE(app, argc, argv);
    if (*seed_opt) opt.seed = seed_val;

    const std::string cmd = app.get_subcommands().front()->get_name();
    auto t0 = std::chrono::steady_clock::now();

    std::string raw;
    ordered_json rep = base_report(cmd, cmd == "meyer" ? "(inline)" : input, "", opt);
    int status = 0;
    try {
        raw = cmd == "meyer" ? c1s + "\n" + c2s : slurp(input);
        rep["digest"] = digest_hex(raw);

        nlohmann::json doc;
        if (cmd != "meyer") {
            try {
                doc = nlohmann::json::parse(raw);
            } catch (const nlohmann::json::parse_error& e) {
                throw parse_error(e.what());
            }
        }

        if (cmd == "validate") {
            OrbitComplex x = parse_complex(doc);
            ValidationReport v = validate(x);
            rep["validation"] = validation_to_json(v);
            if (!v.ok()) {
                rep["status"] = "invalid";
                status = 1;
            }
        } else if (cmd == "cohomology") {
            status = with_validated(doc, rep,
                                    [&](const OrbitComplex& x) { fill_cohomology(x, opt, rep); });
        } else if (cmd == "ktheory") {
            status = with_validated(doc, rep, [&](const OrbitComplex& x) {
                KGroups k = ahss_kgroups(x, opt.allow_empty_s0);
                if (opt.allow_empty_s0 && euler_characteristic(x) == 0)
                    rep["warnings"].push_back(
                        "S^(0) is empty; the identification was forced by --allow-empty-s0");
                ordered_json jk;
                jk["k0"] = groups_block(k.k0, k.k0_rank, k.k0_torsion);
                jk["k1"] = groups_block(k.k1, k.k1_rank, k.k1_torsion);
                rep["kgroups"] = std::move(jk);
            });
        } else if (cmd == "euler") {
            status = with_validated(doc, rep, [&](const OrbitComplex& x) {
                EulerReport e = euler_report(x);
                ordered_json je;
                je["chi"] = e.chi;
                je["cross_checked"] = e.cross_checked;
                if (e.cross_checked) {
                    je["chi_graded"] = e.chi_graded;
                    je["match"] = e.match;
                    if (!e.match) rep["warnings"].push_back("graded ranks disagree with chi");
                } else {
                    rep["warnings"].push_back(
                        "alternating-rank cross-check skipped (collapse unavailable)");
                }
                rep["euler"] = std::move(je);
            });
        } else if (cmd == "pi1") {
            status = with_validated(doc, rep, [&](const OrbitComplex& x) {
                GroupPresentation g = tietze_reduce(pi1_presentation(x));
                ordered_json jp;
                jp["presentation"] = g.to_string();
                jp["generators"] = (long)g.generators;
                ordered_json rel = ordered_json::array();
                for (const auto& w : g.relators) rel.push_back(w);
                jp["relators"] = std::move(rel);
                jp["trivial"] = trivially_trivial(g);
                jp["abelianization"] = group_to_json(abelianization(g));
                rep["pi1"] = std::move(jp);
            });
        } else if (cmd == "signature") {
            SignatureSections s = parse_signature_sections(doc);
            if (!s.present)
                throw invalid_input("document carries neither 'trinions' nor 'boundary_fans'");
            SignatureAssembly a = total_signature(s.trinions, s.fans);
            ordered_json js;
            js["sigma_m1"] = a.sigma_m1;
            js["sigma_m2"] = a.sigma_m2;
            js["sigma_total"] = a.sigma_total;
            js["trinion_taus"] = a.trinion_taus;
            ordered_json comps = ordered_json::array();
            for (size_t i = 0; i < a.component_matrices.size(); ++i) {
                ordered_json jc;
                jc["matrix"] = rat_matrix_to_json(a.component_matrices[i].a);
                jc["signature"] = a.component_signatures[i];
                comps.push_back(std::move(jc));
            }
            js["components"] = std::move(comps);
            js["orientation_convention"] =
                "A_ii = -det(v_{i-1}, v_{i+1}); global sign follows this choice";
            for (const std::string& w : a.warnings) rep["warnings"].push_back(w);
            rep["signature"] = std::move(js);
        } else if (cmd == "meyer") {
            status = cmd_meyer(c1s, c2s, opt, rep);
        }
    } catch (const parse_error& e) {
        rep["status"] = "parse-error";
        rep["error"] = e.what();
        status = 1;
    } catch (const invalid_input& e) {
        rep["status"] = "invalid";
        rep["error"] = e.what();
        status = 1;
    } catch (const unsupported& e) {
        rep["status"] = "unsupported";
        rep["error"] = e.what();
        status = 2;
    } catch (const internal_error& e) {
        rep["status"] = "internal-error";
        rep["error"] = e.what();
        status = 3;
    }

    if (opt.strict && status == 0 && !rep["warnings"].empty()) {
        rep["status"] = "warnings-as-errors";
        status = 2;
    }

    auto t1 = std::chrono::steady_clock::now();
    ordered_json timing;
    timing["elapsed_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    rep["timing"] = std::move(timing); // excluded from determinism guarantees

    if (opt.format == "table")
        render_table(std::cout, rep);
    else
        std::cout << rep.dump(2) << "\n";
    if (status != 0 && rep.contains("error")) std::cerr << "qtor: " << jstr(rep["error"]) << "\n";
    return status;
}
