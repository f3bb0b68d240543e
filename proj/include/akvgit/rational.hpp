#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "error.hpp"

namespace akvgit {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;
using IntVec = std::vector<std::int64_t>;

// Accepts "p/q", "p" or "-p/q"; the value is normalized.
inline Rational parse_rational(std::string_view text) {
    auto bad = [&] { return Error(ErrorKind::invalid_input, "malformed rational \"" + std::string(text) + "\""); };
    auto parse_int = [&](std::string_view s) {
        if (s.empty()) throw bad();
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw bad();
        for (std::size_t j = i; j < s.size(); ++j)
            if (s[j] < '0' || s[j] > '9') throw bad();
        return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    BigInt num = parse_int(text.substr(0, slash));
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw bad();
    return Rational(num, den);
}

// Integers print without a denominator.
inline std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline Rational pow(const Rational& base, std::int64_t e) {
    Rational result = 1;
    Rational b = e < 0 ? Rational(1) / base : base;
    std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
    while (n) {
        if (n & 1) result *= b;
        b *= b;
        n >>= 1;
    }
    return result;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if (q * b != a && ((a > 0) == (b > 0))) q += 1;
    return q;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    if (a == 0 || b == 0) return 0;
    return abs(a / gcd(a, b) * b);
}

} // namespace akvgit
