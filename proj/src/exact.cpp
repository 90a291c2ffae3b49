#include "epn/exact.hpp"

namespace epn {

std::string ExactScalar::str() const {
    auto term = [](const Rational& c, const char* radical, bool& first) -> std::string {
        if (c == 0) return "";
        std::string out;
        if (!first && c > 0) out += "+";
        if (c == -1 && *radical) out += "-";
        else if (c != 1 || !*radical) out += to_string(c);
        if (*radical) {
            if (c != 1 && c != -1) out += "*";
            out += radical;
        }
        first = false;
        return out;
    };
    bool first = true;
    std::string s = term(q0_, "", first) + term(q2_, "sqrt2", first) +
                    term(q3_, "sqrt3", first) + term(q6_, "sqrt6", first);
    return s.empty() ? "0" : s;
}

std::optional<ExactScalar> exact_sqrt(const Integer& m) {
    if (m < 0) return std::nullopt;
    if (m == 0) return ExactScalar(0);
    Integer s = 1, d = m;
    for (Integer p = 2; p * p <= d; ++p) {
        while (d % (p * p) == 0) {
            d /= p * p;
            s *= p;
        }
    }
    Rational factor{s};
    if (d == 1) return ExactScalar(factor);
    if (d == 2) return ExactScalar(0, factor, 0, 0);
    if (d == 3) return ExactScalar(0, 0, factor, 0);
    if (d == 6) return ExactScalar(0, 0, 0, factor);
    return std::nullopt;
}

} // namespace epn
