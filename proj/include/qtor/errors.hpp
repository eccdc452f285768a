#pragma once
#include <stdexcept>
#include <string>

namespace qtor {

/* exit-code taxonomy: parse/content problems are the caller's fault (exit 1),
   unsupported asks for something outside the untwisted/collapsed regime (exit 2),
   internal_error means an invariant we rely on broke (bug, never exit-coded). */

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& m) : std::runtime_error(m) {}
};

struct invalid_input : std::runtime_error {
    explicit invalid_input(const std::string& m) : std::runtime_error(m) {}
};

struct unsupported : std::runtime_error {
    explicit unsupported(const std::string& m) : std::runtime_error(m) {}
};

struct internal_error : std::logic_error {
    explicit internal_error(const std::string& m) : std::logic_error(m) {}
};

} // namespace qtor
