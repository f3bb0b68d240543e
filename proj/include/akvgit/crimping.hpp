#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rational.hpp"

namespace akvgit {

// A_{2m} is even (unibranch), A_{2m+1} odd (two branches).
enum class Parity { even, odd };

inline const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

struct CrimpingVector {
    Parity parity = Parity::even;
    int m = 1;
    std::vector<Rational> entries;  // c_1 .. c_{m-1}

    bool monomial() const {
        for (const auto& c : entries)
            if (c != 0) return false;
        return true;
    }

    bool operator==(const CrimpingVector&) const = default;
};

inline void validate(const CrimpingVector& c) {
    if (c.m < 1) throw Error(ErrorKind::invalid_input, "crimping needs m >= 1");
    if (c.entries.size() != static_cast<std::size_t>(c.m - 1))
        throw Error(ErrorKind::invalid_input, "crimping vector must have m-1 entries");
}

inline CrimpingVector monomial_crimping(Parity parity, int m) {
    return {parity, m, std::vector<Rational>(static_cast<std::size_t>(m > 0 ? m - 1 : 0), Rational(0))};
}

// G_m weights on the crimping coordinates: 2l-1 for A_{2m}, l for A_{2m+1}.
inline IntVec crimping_weights(int m, Parity parity) {
    IntVec w;
    for (int l = 1; l <= m - 1; ++l) w.push_back(parity == Parity::even ? 2 * l - 1 : l);
    return w;
}

// Weights on the versal deformation of the monomial H-curve: H_{m,1} even, H_{m,2} odd.
inline IntVec h_weight_table(int m, Parity parity) {
    IntVec w;
    if (parity == Parity::even)
        for (int i = 0; i < 2 * m; ++i) w.push_back(-4 - 2 * i);
    else
        for (int i = 0; i < 2 * m + 1; ++i) w.push_back(-2 - i);
    return w;
}

namespace detail {

inline std::optional<BigInt> exact_root(const BigInt& x, std::int64_t n) {
    if (x < 0) {
        if (n % 2 == 0) return std::nullopt;
        auto r = exact_root(-x, n);
        if (!r) return std::nullopt;
        return BigInt(-*r);
    }
    BigInt lo = 0, hi = 1;
    while (boost::multiprecision::pow(hi, static_cast<unsigned>(n)) < x) hi *= 2;
    while (lo < hi) {
        BigInt mid = (lo + hi) / 2;
        if (boost::multiprecision::pow(mid, static_cast<unsigned>(n)) < x) lo = mid + 1;
        else hi = mid;
    }
    if (boost::multiprecision::pow(lo, static_cast<unsigned>(n)) != x) return std::nullopt;
    return lo;
}

// Bezout coefficients for gcd of a list.
inline std::int64_t gcd_with_coefficients(const IntVec& w, std::vector<std::int64_t>& coef) {
    coef.assign(w.size(), 0);
    if (w.empty()) return 0;
    std::int64_t g = w[0];
    coef[0] = 1;
    for (std::size_t i = 1; i < w.size(); ++i) {
        std::int64_t a = g, b = w[i], x0 = 1, x1 = 0, y0 = 0, y1 = 1;
        while (b != 0) {
            std::int64_t q = a / b;
            std::int64_t t = a - q * b;
            a = b;
            b = t;
            t = x0 - q * x1;
            x0 = x1;
            x1 = t;
            t = y0 - q * y1;
            y0 = y1;
            y1 = t;
        }
        for (std::size_t j = 0; j < i; ++j) coef[j] *= x0;
        coef[i] = y0;
        g = a;
    }
    return g;
}

struct OrbitData {
    bool consistent = false;
    std::int64_t g = 0;
    Rational rho;  // lambda^g
};

inline OrbitData orbit_data(const CrimpingVector& c, const CrimpingVector& d) {
    validate(c);
    validate(d);
    if (c.parity != d.parity || c.m != d.m)
        throw Error(ErrorKind::invalid_input, "crimping vectors of different type");
    auto w = crimping_weights(c.m, c.parity);
    IntVec ws;
    std::vector<Rational> ratios;
    for (std::size_t l = 0; l < w.size(); ++l) {
        if ((c.entries[l] == 0) != (d.entries[l] == 0)) return {};
        if (c.entries[l] == 0) continue;
        ws.push_back(w[l]);
        ratios.push_back(d.entries[l] / c.entries[l]);
    }
    if (ws.empty()) return {true, 1, Rational(1)};
    std::vector<std::int64_t> coef;
    std::int64_t g = gcd_with_coefficients(ws, coef);
    Rational rho = 1;
    for (std::size_t i = 0; i < ws.size(); ++i) rho *= pow(ratios[i], coef[i]);
    for (std::size_t i = 0; i < ws.size(); ++i)
        if (pow(rho, ws[i] / g) != ratios[i]) return {};
    return {true, g, rho};
}

} // namespace detail

// Rational lambda with d_l = lambda^{w_l} c_l for every l, if one exists.
inline std::optional<Rational> crimping_equivalent(const CrimpingVector& c, const CrimpingVector& d) {
    auto o = detail::orbit_data(c, d);
    if (!o.consistent) return std::nullopt;
    auto num = detail::exact_root(numerator(o.rho), o.g);
    auto den = detail::exact_root(denominator(o.rho), o.g);
    if (!num || !den) return std::nullopt;
    return Rational(*num, *den);
}

// Same orbit over an algebraically closed field; lambda may be irrational.
inline bool crimping_orbit_equal(const CrimpingVector& c, const CrimpingVector& d) {
    return detail::orbit_data(c, d).consistent;
}

inline CrimpingVector scale_crimping(const CrimpingVector& c, const Rational& lambda) {
    auto w = crimping_weights(c.m, c.parity);
    CrimpingVector out = c;
    for (std::size_t l = 0; l < w.size(); ++l) out.entries[l] *= pow(lambda, w[l]);
    return out;
}

// Polynomial in s modulo s^T.
struct TruncatedSeries {
    std::vector<Rational> coeffs;

    static TruncatedSeries monomial(int order, int exponent, Rational coeff = 1) {
        TruncatedSeries s{std::vector<Rational>(static_cast<std::size_t>(order), Rational(0))};
        if (exponent < order) s.coeffs[static_cast<std::size_t>(exponent)] = coeff;
        return s;
    }

    int order() const { return static_cast<int>(coeffs.size()); }

    bool is_zero() const {
        for (const auto& c : coeffs)
            if (c != 0) return false;
        return true;
    }

    TruncatedSeries operator*(const TruncatedSeries& o) const {
        TruncatedSeries r{std::vector<Rational>(coeffs.size(), Rational(0))};
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (coeffs[i] == 0) continue;
            for (std::size_t j = 0; i + j < coeffs.size(); ++j)
                if (o.coeffs[j] != 0) r.coeffs[i + j] += coeffs[i] * o.coeffs[j];
        }
        return r;
    }

    TruncatedSeries operator+(const TruncatedSeries& o) const {
        TruncatedSeries r = *this;
        for (std::size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i] += o.coeffs[i];
        return r;
    }

    bool operator==(const TruncatedSeries&) const = default;
};

// One series per branch: a single one for A_{2m}, a pair for A_{2m+1}.
using BranchSeries = std::vector<TruncatedSeries>;

inline int default_truncation(Parity parity, int m) { return parity == Parity::even ? 4 * m : 2 * m + 2; }

inline std::vector<BranchSeries> subalgebra_generators(const CrimpingVector& c, int truncation = 0) {
    validate(c);
    int T = truncation == 0 ? default_truncation(c.parity, c.m) : truncation;
    if (T < default_truncation(c.parity, c.m))
        throw Error(ErrorKind::invalid_input, "truncation order too small for the generator list");
    std::vector<BranchSeries> gens;
    if (c.parity == Parity::even) {
        auto base = TruncatedSeries::monomial(T, 1);
        for (int l = 1; l <= c.m - 1; ++l) base = base + TruncatedSeries::monomial(T, 2 * l, c.entries[l - 1]);
        gens.push_back({base * base});
        for (int e = 2 * c.m; e <= 4 * c.m - 1; ++e) gens.push_back({TruncatedSeries::monomial(T, e)});
    } else {
        auto first = TruncatedSeries::monomial(T, 1);
        for (int l = 1; l <= c.m - 1; ++l) first = first + TruncatedSeries::monomial(T, l + 1, c.entries[l - 1]);
        auto zero = TruncatedSeries::monomial(T, T);
        gens.push_back({first, TruncatedSeries::monomial(T, 1)});
        for (int e = c.m + 1; e <= 2 * c.m + 1; ++e) gens.push_back({TruncatedSeries::monomial(T, e), zero});
        for (int e = c.m + 1; e <= 2 * c.m + 1; ++e) gens.push_back({zero, TruncatedSeries::monomial(T, e)});
    }
    return gens;
}

namespace detail {

inline std::vector<Rational> flatten(const BranchSeries& f) {
    std::vector<Rational> v;
    for (const auto& s : f) v.insert(v.end(), s.coeffs.begin(), s.coeffs.end());
    return v;
}

inline BranchSeries multiply(const BranchSeries& a, const BranchSeries& b) {
    BranchSeries r;
    for (std::size_t i = 0; i < a.size(); ++i) r.push_back(a[i] * b[i]);
    return r;
}

inline bool is_zero(const BranchSeries& f) {
    for (const auto& s : f)
        if (!s.is_zero()) return false;
    return true;
}

// Row echelon basis keyed by pivot column.
class Echelon {
public:
    void insert(std::vector<Rational> v) {
        reduce(v);
        auto p = pivot_of(v);
        if (p == v.size()) return;
        Rational inv = 1 / v[p];
        for (auto& x : v) x *= inv;
        rows_.push_back({p, std::move(v)});
    }

    bool spans(std::vector<Rational> v) const {
        reduce(v);
        return pivot_of(v) == v.size();
    }

private:
    static std::size_t pivot_of(const std::vector<Rational>& v) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) return i;
        return v.size();
    }

    void reduce(std::vector<Rational>& v) const {
        for (const auto& [p, row] : rows_) {
            if (v[p] == 0) continue;
            Rational f = v[p];
            for (std::size_t i = 0; i < v.size(); ++i)
                if (row[i] != 0) v[i] -= f * row[i];
        }
    }

    std::vector<std::pair<std::size_t, std::vector<Rational>>> rows_;
};

} // namespace detail

// Membership in the span of 1 and all products of generators, modulo the shared truncation.
inline bool subalgebra_contains(const std::vector<BranchSeries>& gens, const BranchSeries& f) {
    if (detail::is_zero(f)) return true;
    BranchSeries one;
    for (const auto& s : f) one.push_back(TruncatedSeries::monomial(s.order(), 0));
    for (const auto& g : gens) {
        if (g.size() != f.size()) throw Error(ErrorKind::dimension_mismatch, "branch count differs");
        for (std::size_t b = 0; b < g.size(); ++b)
            if (g[b].order() != f[b].order()) throw Error(ErrorKind::dimension_mismatch, "truncation orders differ");
    }
    detail::Echelon span;
    std::function<void(const BranchSeries&, std::size_t)> grow = [&](const BranchSeries& p, std::size_t from) {
        span.insert(detail::flatten(p));
        for (std::size_t i = from; i < gens.size(); ++i) {
            auto q = detail::multiply(p, gens[i]);
            if (!detail::is_zero(q)) grow(q, i);
        }
    };
    grow(one, 0);
    return span.spans(detail::flatten(f));
}

// f(lambda s) on every branch.
inline BranchSeries rescale(const BranchSeries& f, const Rational& lambda) {
    BranchSeries r = f;
    for (auto& s : r)
        for (std::size_t i = 0; i < s.coeffs.size(); ++i) s.coeffs[i] *= pow(lambda, static_cast<std::int64_t>(i));
    return r;
}

// Entry c = lead * t^val over a DVR; no valuation means the entry is identically zero.
struct ValuedEntry {
    std::optional<std::int64_t> val;
    Rational lead;

    bool operator==(const ValuedEntry&) const = default;
};

struct ValuedCrimping {
    Parity parity = Parity::even;
    int m = 1;
    std::vector<ValuedEntry> entries;

    bool operator==(const ValuedCrimping&) const = default;
};

struct CrimpingLimit {
    std::int64_t b = 0;
    CrimpingVector limit;
};

inline void validate(const ValuedCrimping& v) {
    if (v.m < 1) throw Error(ErrorKind::invalid_input, "crimping needs m >= 1");
    if (v.entries.size() != static_cast<std::size_t>(v.m - 1))
        throw Error(ErrorKind::invalid_input, "valued crimping must have m-1 entries");
    for (const auto& e : v.entries)
        if (e.val && e.lead == 0) throw Error(ErrorKind::invalid_input, "leading coefficient of a finite entry is zero");
}

// Smallest b >= 0 with w_l b + b_l >= 0 for all l; the limit keeps the leading terms where equality holds.
inline CrimpingLimit limit_crimping(const ValuedCrimping& v) {
    validate(v);
    auto w = crimping_weights(v.m, v.parity);
    BigInt b = 0;
    for (std::size_t l = 0; l < w.size(); ++l) {
        if (!v.entries[l].val) continue;
        BigInt need = ceil_div(BigInt(-*v.entries[l].val), BigInt(w[l]));
        if (need > b) b = need;
    }
    CrimpingLimit out{b.convert_to<std::int64_t>(), monomial_crimping(v.parity, v.m)};
    for (std::size_t l = 0; l < w.size(); ++l) {
        const auto& e = v.entries[l];
        if (e.val && w[l] * out.b + *e.val == 0) out.limit.entries[l] = e.lead;
    }
    return out;
}

} // namespace akvgit
