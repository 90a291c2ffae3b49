#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace epn {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Formats as "p" or "p/q" with q > 0.
inline std::string to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

/// Accepts "p", "p/q" and plain decimal literals ("0.25", "-1.5e2").
inline std::optional<Rational> parse_rational(const std::string& text) {
    if (text.empty()) return std::nullopt;
    try {
        auto slash = text.find('/');
        if (slash != std::string::npos) {
            Integer p(text.substr(0, slash));
            Integer q(text.substr(slash + 1));
            if (q == 0) return std::nullopt;
            return Rational(p, q);
        }
        if (text.find('.') == std::string::npos &&
            text.find('e') == std::string::npos &&
            text.find('E') == std::string::npos) {
            return Rational(Integer(text));
        }
        // decimal literal: mantissa [. fraction] [e exp]
        std::string mant = text;
        long exp10 = 0;
        auto epos = mant.find_first_of("eE");
        if (epos != std::string::npos) {
            exp10 = std::stol(mant.substr(epos + 1));
            mant = mant.substr(0, epos);
        }
        auto dot = mant.find('.');
        if (dot != std::string::npos) {
            exp10 -= static_cast<long>(mant.size() - dot - 1);
            mant.erase(dot, 1);
        }
        if (mant.empty() || mant == "-" || mant == "+") return std::nullopt;
        // strip leading zeros (cpp_int would read "025" as octal)
        std::string sign;
        if (mant[0] == '-' || mant[0] == '+') {
            sign = mant[0] == '-' ? "-" : "";
            mant.erase(0, 1);
        }
        auto nz = mant.find_first_not_of('0');
        mant = nz == std::string::npos ? "0" : mant.substr(nz);
        if (mant.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
        Rational r{Integer(sign + mant)};
        for (long i = 0; i < exp10; ++i) r *= 10;
        for (long i = 0; i > exp10; --i) r /= 10;
        return r;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

} // namespace epn
