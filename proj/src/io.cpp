#include "qtor/io.hpp"
#include "qtor/errors.hpp"
#include <sstream>

namespace qtor {

uint64_t fnv1a64(std::string_view s) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string digest_hex(std::string_view s) {
    static const char* hex = "0123456789abcdef";
    uint64_t h = fnv1a64(s);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

using nlohmann::json;

[[noreturn]] static void bad(const std::string& path, const std::string& what) {
    throw parse_error(path + ": " + what);
}

static long get_int(const json& j, const std::string& path) {
    if (!j.is_number_integer() && !j.is_number_unsigned()) bad(path, "expected an integer");
    return j.get<long>();
}

static long field_int(const json& j, const char* key, const std::string& path) {
    if (!j.contains(key)) bad(path, std::string("missing field '") + key + "'");
    return get_int(j.at(key), path + "." + key);
}

Rational parse_rational_json(const json& j) {
    if (j.is_number_integer() || j.is_number_unsigned()) return Rational(j.get<long>());
    if (j.is_string()) return rational_from_string(j.get<std::string>());
    bad("rational", "expected an integer or an \"a/b\" string");
}

Quaternion parse_quaternion(const json& j) {
    if (!j.is_array() || j.size() != 4) bad("quaternion", "expected [re, i, j, k]");
    return Quaternion(parse_rational_json(j[0]), parse_rational_json(j[1]),
                      parse_rational_json(j[2]), parse_rational_json(j[3]));
}

QuatMatrix parse_quat_matrix(const json& j) {
    if (!j.is_array() || j.empty()) bad("matrix", "expected a nested array");
    long rows = (long)j.size();
    if (!j[0].is_array() || j[0].empty()) bad("matrix", "expected a nested array");
    long cols = (long)j[0].size();
    QuatMatrix m(rows, cols);
    for (long r = 0; r < rows; ++r) {
        if (!j[r].is_array() || (long)j[r].size() != cols) bad("matrix", "ragged rows");
        for (long c = 0; c < cols; ++c) m(r, c) = parse_quaternion(j[r][c]);
    }
    return m;
}

static IntVec parse_int_vec(const json& j, const std::string& path) {
    if (!j.is_array()) bad(path, "expected an integer array");
    IntVec v(j.size());
    for (size_t i = 0; i < j.size(); ++i)
        v(i) = Int(get_int(j[i], path + "[" + std::to_string(i) + "]"));
    return v;
}

static IntMat parse_int_mat(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) bad(path, "expected a nested integer array");
    long rows = (long)j.size();
    if (!j[0].is_array()) bad(path, "expected a nested integer array");
    long cols = (long)j[0].size();
    IntMat m(rows, cols);
    for (long r = 0; r < rows; ++r) {
        if (!j[r].is_array() || (long)j[r].size() != cols) bad(path, "ragged rows");
        for (long c = 0; c < cols; ++c)
            m(r, c) = Int(get_int(j[r][c], path + "[" + std::to_string(r) + "]"));
    }
    return m;
}

OrbitComplex parse_complex(const json& j) {
    if (!j.is_object()) bad("document", "expected an object");
    OrbitComplex x;
    if (!j.contains("torus_rank")) bad("document", "missing field 'torus_rank'");
    x.torus_rank = (int)get_int(j.at("torus_rank"), "torus_rank");
    if (j.contains("euler_class_zero")) {
        if (!j.at("euler_class_zero").is_boolean()) bad("euler_class_zero", "expected a boolean");
        x.euler_class_zero = j.at("euler_class_zero").get<bool>();
    }
    if (j.contains("orientation")) {
        if (!j.at("orientation").is_string()) bad("orientation", "expected a string");
        x.orientation = j.at("orientation").get<std::string>();
    }

    if (!j.contains("cells") || !j.at("cells").is_array()) bad("cells", "missing or not an array");
    size_t ci = 0;
    for (const json& jc : j.at("cells")) {
        std::string path = "cells[" + std::to_string(ci++) + "]";
        if (!jc.is_object()) bad(path, "expected an object");
        Cell c;
        c.id = field_int(jc, "id", path);
        c.dim = (int)field_int(jc, "dim", path);
        c.face = field_int(jc, "face", path);
        if (jc.contains("boundary")) {
            const json& jb = jc.at("boundary");
            if (!jb.is_array()) bad(path + ".boundary", "expected an array of pairs");
            for (size_t t = 0; t < jb.size(); ++t) {
                const json& p = jb[t];
                std::string pp = path + ".boundary[" + std::to_string(t) + "]";
                if (!p.is_array() || p.size() != 2) bad(pp, "expected [cell id, coefficient]");
                c.boundary.push_back({get_int(p[0], pp), (int)get_int(p[1], pp)});
            }
        }
        x.cells.push_back(std::move(c));
    }

    if (!j.contains("faces") || !j.at("faces").is_array()) bad("faces", "missing or not an array");
    size_t fi = 0;
    for (const json& jf : j.at("faces")) {
        std::string path = "faces[" + std::to_string(fi++) + "]";
        if (!jf.is_object()) bad(path, "expected an object");
        Face f;
        f.id = field_int(jf, "id", path);
        f.dim = (int)field_int(jf, "dim", path);
        if (jf.contains("facets")) {
            const json& js = jf.at("facets");
            if (!js.is_array()) bad(path + ".facets", "expected an id array");
            for (size_t t = 0; t < js.size(); ++t)
                f.facets.push_back(get_int(js[t], path + ".facets"));
        }
        x.faces.push_back(std::move(f));
    }

    if (j.contains("facets")) {
        if (!j.at("facets").is_array()) bad("facets", "expected an array");
        size_t ti = 0;
        for (const json& jt : j.at("facets")) {
            std::string path = "facets[" + std::to_string(ti++) + "]";
            if (!jt.is_object()) bad(path, "expected an object");
            Facet f;
            f.id = field_int(jt, "id", path);
            if (!jt.contains("charvec")) bad(path, "missing field 'charvec'");
            f.charvec = parse_int_vec(jt.at("charvec"), path + ".charvec");
            x.facets.push_back(std::move(f));
        }
    }

    if (j.contains("monodromy")) {
        const json& jm = j.at("monodromy");
        if (!jm.is_object()) bad("monodromy", "expected an object");
        x.monodromy.present = true;
        if (jm.contains("tree")) {
            if (!jm.at("tree").is_array()) bad("monodromy.tree", "expected an id array");
            for (const json& e : jm.at("tree"))
                x.monodromy.tree.push_back(get_int(e, "monodromy.tree"));
        }
        if (jm.contains("matrices")) {
            if (!jm.at("matrices").is_object()) bad("monodromy.matrices", "expected an object");
            for (auto it = jm.at("matrices").begin(); it != jm.at("matrices").end(); ++it) {
                long edge;
                try {
                    size_t used = 0;
                    edge = std::stol(it.key(), &used);
                    if (used != it.key().size()) throw std::invalid_argument("");
                } catch (const std::exception&) {
                    bad("monodromy.matrices", "key '" + it.key() + "' is not a 1-cell id");
                }
                x.monodromy.matrices[edge] =
                    parse_int_mat(it.value(), "monodromy.matrices." + it.key());
            }
        }
    }
    return x;
}

SignatureSections parse_signature_sections(const json& j) {
    SignatureSections s;
    if (!j.is_object()) bad("document", "expected an object");
    if (j.contains("trinions")) {
        s.present = true;
        const json& jt = j.at("trinions");
        if (!jt.is_array()) bad("trinions", "expected an array");
        size_t i = 0;
        for (const json& t : jt) {
            std::string path = "trinions[" + std::to_string(i++) + "]";
            if (!t.is_object() || !t.contains("c1") || !t.contains("c2") || !t.contains("c3"))
                bad(path, "expected an object with c1, c2, c3");
            Trinion tr{parse_quat_matrix(t.at("c1")), parse_quat_matrix(t.at("c2")),
                       parse_quat_matrix(t.at("c3"))};
            s.trinions.push_back(std::move(tr));
        }
    }
    if (j.contains("boundary_fans")) {
        s.present = true;
        const json& jf = j.at("boundary_fans");
        if (!jf.is_array()) bad("boundary_fans", "expected an array of fans");
        size_t i = 0;
        for (const json& fan : jf) {
            std::string path = "boundary_fans[" + std::to_string(i++) + "]";
            if (!fan.is_array()) bad(path, "expected an array of charvecs");
            std::vector<IntVec> vs;
            for (size_t t = 0; t < fan.size(); ++t)
                vs.push_back(parse_int_vec(fan[t], path + "[" + std::to_string(t) + "]"));
            s.fans.push_back(std::move(vs));
        }
    }
    return s;
}

static ordered_json int_to_json(const Int& v) {
    if (v.fits_slong_p()) return (long)v.get_si();
    return v.get_str();
}

ordered_json rational_to_json(const Rational& r) {
    if (is_integer(r)) return int_to_json(Int(r.get_num()));
    return to_string(r);
}

ordered_json int_matrix_to_json(const IntMat& m) {
    ordered_json rows = ordered_json::array();
    for (long r = 0; r < m.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (long c = 0; c < m.cols(); ++c) row.push_back(int_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json rat_matrix_to_json(const RatMat& m) {
    ordered_json rows = ordered_json::array();
    for (long r = 0; r < m.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (long c = 0; c < m.cols(); ++c) row.push_back(rational_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json group_to_json(const AbelianGroup& g) {
    ordered_json out;
    out["free_rank"] = g.free_rank;
    ordered_json tor = ordered_json::array();
    for (const Int& t : g.torsion) tor.push_back(int_to_json(t));
    out["torsion"] = std::move(tor);
    out["pretty"] = g.to_string();
    return out;
}

ordered_json complex_to_json(const OrbitComplex& x) {
    ordered_json out;
    out["torus_rank"] = x.torus_rank;
    out["euler_class_zero"] = x.euler_class_zero;
    ordered_json cells = ordered_json::array();
    for (const Cell& c : x.cells) {
        ordered_json jc;
        jc["id"] = c.id;
        jc["dim"] = c.dim;
        jc["face"] = c.face;
        ordered_json b = ordered_json::array();
        for (auto& [id, coeff] : c.boundary) b.push_back(ordered_json::array({id, coeff}));
        jc["boundary"] = std::move(b);
        cells.push_back(std::move(jc));
    }
    out["cells"] = std::move(cells);
    ordered_json faces = ordered_json::array();
    for (const Face& f : x.faces) {
        ordered_json jf;
        jf["id"] = f.id;
        jf["dim"] = f.dim;
        jf["facets"] = f.facets;
        faces.push_back(std::move(jf));
    }
    out["faces"] = std::move(faces);
    ordered_json facets = ordered_json::array();
    for (const Facet& f : x.facets) {
        ordered_json jf;
        jf["id"] = f.id;
        ordered_json cv = ordered_json::array();
        for (long i = 0; i < f.charvec.size(); ++i) cv.push_back(int_to_json(f.charvec(i)));
        jf["charvec"] = std::move(cv);
        facets.push_back(std::move(jf));
    }
    out["facets"] = std::move(facets);
    if (x.monodromy.present) {
        ordered_json jm;
        jm["tree"] = x.monodromy.tree;
        ordered_json mats = ordered_json::object();
        for (auto& [edge, m] : x.monodromy.matrices)
            mats[std::to_string(edge)] = int_matrix_to_json(m);
        jm["matrices"] = std::move(mats);
        out["monodromy"] = std::move(jm);
    }
    if (!x.orientation.empty()) out["orientation"] = x.orientation;
    return out;
}

} // namespace qtor
