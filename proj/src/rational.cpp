#include "qtor/rational.hpp"
#include "qtor/errors.hpp"

namespace qtor {

Rational rational_from_string(const std::string& s) {
    if (s.empty()) throw parse_error("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Int v(s);
            return Rational(v);
        }
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw parse_error("zero denominator in '" + s + "'");
        Rational r(num, den);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw parse_error("bad rational literal '" + s + "'");
    }
}

} // namespace qtor
