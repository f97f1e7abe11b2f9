#include "lbx/rational.hpp"

#include <cstdlib>

#include "lbx/error.hpp"

namespace lbx {

std::string rat_to_string(const Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rat rat_from_string(const std::string& s) {
    if (s.empty()) fail("ParseError", "empty rational");
    std::size_t pos = 0;
    long long num = 0, den = 1;
    try {
        num = std::stoll(s, &pos);
    } catch (const std::exception&) {
        fail("ParseError", "bad rational '" + s + "'");
    }
    if (pos < s.size()) {
        if (s[pos] != '/') fail("ParseError", "bad rational '" + s + "'");
        std::size_t pos2 = 0;
        const std::string rest = s.substr(pos + 1);
        try {
            den = std::stoll(rest, &pos2);
        } catch (const std::exception&) {
            fail("ParseError", "bad rational '" + s + "'");
        }
        if (pos2 != rest.size()) fail("ParseError", "trailing junk in rational '" + s + "'");
    }
    if (den == 0) fail("ParseError", "zero denominator in '" + s + "'");
    return Rat(num, den);
}

} // namespace lbx
