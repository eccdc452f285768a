#pragma once
#include "qtor/orbit.hpp"
#include "qtor/meyer.hpp"
#include "qtor/snf.hpp"
#include <json.hpp>
#include <cstdint>
#include <string>

namespace qtor {

using ordered_json = nlohmann::ordered_json;

uint64_t fnv1a64(std::string_view s);
std::string digest_hex(std::string_view s);

Rational parse_rational_json(const nlohmann::json& j); // int or "a/b" string
Quaternion parse_quaternion(const nlohmann::json& j);  // [re, i, j, k]
QuatMatrix parse_quat_matrix(const nlohmann::json& j); // row-major nested arrays

/* throws parse_error with a field path on malformed documents */
OrbitComplex parse_complex(const nlohmann::json& j);

struct SignatureSections {
    bool present = false; // at least one of the two keys appeared
    std::vector<Trinion> trinions;
    std::vector<std::vector<IntVec>> fans;
};
SignatureSections parse_signature_sections(const nlohmann::json& j);

ordered_json complex_to_json(const OrbitComplex& x);

ordered_json group_to_json(const AbelianGroup& g);
ordered_json rational_to_json(const Rational& r);
ordered_json int_matrix_to_json(const IntMat& m);
ordered_json rat_matrix_to_json(const RatMat& m);

} // namespace qtor
