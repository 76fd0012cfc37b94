#pragma once
// Pressure equation: the root S of  sum over (a_1..a_L) in [1,M]^L of
// (q_L^{-(2+tau)})^S = 1. The sum is strictly decreasing in S, so bisection
// with an expanding upper bracket is certifiably correct.

#include <cstddef>
#include <utility>
#include <vector>

#include "cfdim/numeric.hpp"

namespace cfdim {

struct PressureSolution {
    long L = 0;
    long M = 0;
    Rat tau;
    Real S;
    Real bracket_lo, bracket_hi;  // straddle: sum(lo) > 1 > sum(hi)
    Real residual;                // |sum(S) - 1|
    long evaluations = 0;
};

// Distinct block continuants with multiplicities, reusable across S values.
class PressureEquation {
  public:
    static constexpr std::size_t kDefaultTermBudget = 2'000'000;

    PressureEquation(long L, long M, const Rat& tau,
                     std::size_t term_budget = kDefaultTermBudget);

    // Compensated sum of q^{-(2+tau) s} over all blocks; s >= 0.
    Real sum(const Real& s) const;

    long L() const { return L_; }
    long M() const { return M_; }
    const Rat& tau() const { return tau_; }
    std::size_t distinct_terms() const { return terms_.size(); }

  private:
    long L_, M_;
    Rat tau_;
    std::vector<std::pair<Real, unsigned long>> terms_;  // (log q, multiplicity)
};

Real pressure_sum(long L, long M, const Rat& tau, const Real& s,
                  std::size_t term_budget = PressureEquation::kDefaultTermBudget);

// Bisection to |sum(S) - 1| <= tol. Throws std::invalid_argument for L < 2
// or M < 2 and std::domain_error when no root exists.
PressureSolution solve_S(long L, long M, const Rat& tau, double tol = 1e-10,
                         std::size_t term_budget = PressureEquation::kDefaultTermBudget);

}  // namespace cfdim
