#include "cfdim/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cfdim/errors.hpp"

namespace cfdim {

PressureEquation::PressureEquation(long L, long M, const Rat& tau, std::size_t term_budget)
    : L_(L), M_(M), tau_(tau) {
    if (L < 2 || M < 2) throw std::invalid_argument("pressure equation requires L >= 2 and M >= 2");
    if (tau < 0) throw std::invalid_argument("pressure equation requires tau >= 0");
    if (std::pow(static_cast<double>(M), static_cast<double>(L)) >
        static_cast<double>(term_budget))
        throw BudgetError("M^L exceeds the pressure term budget");

    // Enumerate block continuants depth-first, reusing prefix recurrences.
    std::vector<Int> qs;
    qs.reserve(static_cast<std::size_t>(std::pow(static_cast<double>(M), static_cast<double>(L))));
    auto rec = [&](auto&& self, long depth, const Int& q_prev, const Int& q_cur) -> void {
        if (depth == L) {
            qs.push_back(q_cur);
            return;
        }
        for (long a = 1; a <= M; ++a) self(self, depth + 1, q_cur, a * q_cur + q_prev);
    };
    rec(rec, 0, Int(0), Int(1));

    std::sort(qs.begin(), qs.end());
    for (std::size_t i = 0; i < qs.size();) {
        std::size_t j = i;
        while (j < qs.size() && qs[j] == qs[i]) ++j;
        terms_.emplace_back(log(Real(qs[i])), static_cast<unsigned long>(j - i));
        i = j;
    }
}

Real PressureEquation::sum(const Real& s) const {
    if (s < 0) throw std::invalid_argument("pressure sum requires s >= 0");
    const Real exponent = -(Real(2) + Real(tau_)) * s;
    Real acc(0), carry(0);
    for (const auto& [logq, mult] : terms_) {
        const Real term = Real(mult) * exp(exponent * logq);
        // Kahan step
        const Real y = term - carry;
        const Real t = acc + y;
        carry = (t - acc) - y;
        acc = t;
    }
    return acc;
}

Real pressure_sum(long L, long M, const Rat& tau, const Real& s, std::size_t term_budget) {
    return PressureEquation(L, M, tau, term_budget).sum(s);
}

PressureSolution solve_S(long L, long M, const Rat& tau, double tol, std::size_t term_budget) {
    if (tol <= 0) throw std::invalid_argument("solver tolerance must be positive");
    const PressureEquation eq(L, M, tau, term_budget);

    PressureSolution sol;
    sol.L = L;
    sol.M = M;
    sol.tau = tau;

    const Real one(1), rtol(tol);
    long evals = 0;
    auto f = [&](const Real& s) {
        ++evals;
        return eq.sum(s);
    };

    if (f(Real(0)) <= one) throw std::domain_error("degenerate pressure equation: sum(0) <= 1");

    Real lo(0), hi(1);
    int expansions = 0;
    while (f(hi) > one) {
        lo = hi;
        hi *= 2;
        if (++expansions > 64) throw std::runtime_error("pressure bracket expansion failed");
    }

    for (int iter = 0; iter < 512; ++iter) {
        const Real mid = (lo + hi) / 2;
        const Real r = f(mid) - one;
        if (abs(r) <= rtol) {
            sol.S = mid;
            sol.residual = abs(r);
            sol.bracket_lo = lo;
            sol.bracket_hi = hi;
            sol.evaluations = evals;
            return sol;
        }
        if (r > 0)
            lo = mid;
        else
            hi = mid;
    }
    throw std::runtime_error("pressure bisection did not reach tolerance " + std::to_string(tol));
}

}  // namespace cfdim
