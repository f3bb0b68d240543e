#pragma once

#include <cstddef>
#include <vector>

#include "rational.hpp"

namespace akvgit {

// coeffs . x >= bound
struct Constraint {
    IntVec coeffs;
    std::int64_t bound = 0;
};

struct LpResult {
    bool feasible = false;
    std::vector<Rational> point;
    // On infeasibility, indices of an infeasible subsystem (from the phase-1 duals).
    std::vector<std::size_t> conflict;
};

namespace detail {

// Phase-1 simplex on a dense tableau, Bland's rule. Free variables are split x = u - v.
class Phase1 {
public:
    Phase1(const std::vector<Constraint>& cs, std::size_t dim) : m_(cs.size()), d_(dim) {
        std::size_t arts = 0;
        for (const auto& c : cs)
            if (c.bound > 0) ++arts;
        slack0_ = 2 * d_;
        art0_ = slack0_ + m_;
        cols_ = art0_ + arts;
        tab_.assign(m_ * (cols_ + 1), Rational(0));
        basis_.resize(m_);
        origin_.resize(m_);
        obj_.assign(cols_ + 1, Rational(0));

        std::size_t next_art = art0_;
        for (std::size_t i = 0; i < m_; ++i) {
            const auto& c = cs[i];
            bool positive = c.bound > 0;
            std::int64_t sign = positive ? 1 : -1;
            for (std::size_t k = 0; k < d_; ++k) {
                at(i, k) = sign * c.coeffs[k];
                at(i, d_ + k) = -sign * c.coeffs[k];
            }
            at(i, slack0_ + i) = -sign;
            rhs(i) = sign * c.bound;
            if (positive) {
                at(i, next_art) = 1;
                basis_[i] = next_art;
                origin_[i] = next_art;
                ++next_art;
            } else {
                basis_[i] = slack0_ + i;
                origin_[i] = slack0_ + i;
            }
        }
        for (std::size_t j = 0; j < cols_; ++j) obj_[j] = j >= art0_ ? Rational(1) : Rational(0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < art0_) continue;
            for (std::size_t j = 0; j <= cols_; ++j) obj_[j] -= at(i, j);
        }
    }

    void solve() {
        for (;;) {
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < cols_; ++j)
                if (obj_[j] < 0) { enter = j; break; }
            if (enter == cols_) return;
            std::size_t leave = m_;
            Rational best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (at(i, enter) <= 0) continue;
                Rational ratio = rhs(i) / at(i, enter);
                if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            // Phase 1 is bounded below by zero, so an entering column always has a pivot row.
            pivot(leave, enter);
        }
    }

    bool feasible() const { return obj_[cols_] == 0; }

    std::vector<Rational> point() const {
        std::vector<Rational> x(d_, Rational(0));
        for (std::size_t i = 0; i < m_; ++i) {
            std::size_t b = basis_[i];
            if (b < d_) x[b] += rhs(i);
            else if (b < 2 * d_) x[b - d_] -= rhs(i);
        }
        return x;
    }

    std::vector<std::size_t> conflict() const {
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < m_; ++i) {
            std::size_t j = origin_[i];
            Rational y = j >= art0_ ? Rational(1) - obj_[j] : -obj_[j];
            if (y != 0) rows.push_back(i);
        }
        return rows;
    }

private:
    Rational& at(std::size_t i, std::size_t j) { return tab_[i * (cols_ + 1) + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return tab_[i * (cols_ + 1) + j]; }
    Rational& rhs(std::size_t i) { return at(i, cols_); }
    const Rational& rhs(std::size_t i) const { return at(i, cols_); }

    void pivot(std::size_t r, std::size_t c) {
        Rational p = at(r, c);
        for (std::size_t j = 0; j <= cols_; ++j) at(r, j) /= p;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r || at(i, c) == 0) continue;
            Rational f = at(i, c);
            for (std::size_t j = 0; j <= cols_; ++j)
                if (at(r, j) != 0) at(i, j) -= f * at(r, j);
        }
        if (obj_[c] != 0) {
            Rational f = obj_[c];
            for (std::size_t j = 0; j <= cols_; ++j)
                if (at(r, j) != 0) obj_[j] -= f * at(r, j);
        }
        basis_[r] = c;
    }

    std::size_t m_, d_, slack0_ = 0, art0_ = 0, cols_ = 0;
    std::vector<Rational> tab_;
    std::vector<Rational> obj_;
    std::vector<std::size_t> basis_;
    std::vector<std::size_t> origin_;
};

} // namespace detail

inline LpResult lp_feasible(const std::vector<Constraint>& constraints, std::size_t dim) {
    for (const auto& c : constraints)
        if (c.coeffs.size() != dim)
            throw Error(ErrorKind::dimension_mismatch, "constraint length differs from variable count");
    detail::Phase1 lp(constraints, dim);
    lp.solve();
    LpResult out;
    out.feasible = lp.feasible();
    if (out.feasible) out.point = lp.point();
    else out.conflict = lp.conflict();
    return out;
}

inline LpResult lp_feasible(const std::vector<Constraint>& constraints) {
    return lp_feasible(constraints, constraints.empty() ? 0 : constraints.front().coeffs.size());
}

} // namespace akvgit
