#pragma once
// Approximating-function algebra: the psi <-> Psi relation, lower order at
// infinity, finite-depth membership evidence for the product/quotient
// growth sets, inclusion audits and the series classifier with the
// dimension formula 2/(tau+2).

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cfdim/cf.hpp"
#include "cfdim/numeric.hpp"

namespace cfdim {

// Sufficient-condition multiplier relating the approximation set to the
// product-growth set: a_{n+1} > 3 C Psi(q_n) forces a K-witness through the
// two-sided convergent error bound. Kept as a named constant rather than
// asserting sharpness.
inline constexpr int kSufficientKMultiplier = 3;

// Univariate rational function with exact rational coefficients
// (constant term first).
struct RationalFunction {
    std::vector<Rat> num, den;
    Rat eval(const Rat& t) const;
    long degree_num() const;
    long degree_den() const;
};

enum class PsiFamily { Power, PowerLog, Tabulated, DerivedFromPsi };

// Approximating function descriptor. Families:
//   power:            Psi(t) = t^tau
//   power_log:        Psi(t) = t^tau * ln(1+t)^beta
//   tabulated:        step function through increasing sample points
//   derived_from_psi: Psi(t) = 1/(1 - t psi(t)) - 1 for a rational psi
struct PsiSpec {
    PsiFamily family = PsiFamily::Power;
    Rat tau = Rat(1);
    Rat beta = Rat(0);
    std::vector<std::pair<Rat, Rat>> table;  // (t, Psi(t)), t strictly increasing
    RationalFunction psi;
    bool monotone = true;

    Real eval(const Rat& t) const;
};

PsiSpec make_power_psi(const Rat& tau);
PsiSpec make_power_log_psi(const Rat& tau, const Rat& beta);
PsiSpec make_tabulated_psi(std::vector<std::pair<Rat, Rat>> table);

// Psi(t) = 1/(1 - t psi(t)) - 1, exact on rationals. Throws domain_error
// when t psi(t) >= 1 somewhere on [1, inf).
PsiSpec psi_to_Psi(const RationalFunction& psi);

// sign of (x - C * Psi(t)); exact for power, tabulated and derived families,
// high-precision numeric for power_log.
int cmp_int_vs_scaled_psi(const Int& x, const Rat& C, const PsiSpec& spec, const Int& t);

struct TauEstimate {
    bool exact = true;
    bool infinite = false;
    Rat value;             // exact lower order when `exact`
    double estimate = 0;   // numeric value, always filled for finite tau
    std::size_t window_lo = 0, window_hi = 0;  // table rows used (tabulated only)
};

// Lower order at infinity liminf log Psi(t)/log t. Exact for power,
// power_log and derived families; a regression estimate over the declared
// table window otherwise.
TauEstimate lower_order_tau(const PsiSpec& spec);

enum class DStatus { ImprovableEvidence, NonImprovableEvidence, Indeterminate };

const char* to_string(DStatus s);

struct EvidenceReport {
    std::size_t depth = 0;
    std::vector<std::size_t> G_witnesses;  // n with a_n a_{n+1} > C Psi(q_n)
    std::vector<std::size_t> K_witnesses;  // n with a_{n+1} > 3 C Psi(q_n)
    DStatus d_status = DStatus::Indeterminate;
    // Smallest n at or beyond the threshold whose product lands in the
    // (Psi/4, Psi] band the improvability lemma is silent on; 0 if none.
    std::size_t first_undetermined = 0;
};

// Finite-depth witness scan. `large_n_threshold` is the first index treated
// as "sufficiently large" for the improvable verdict; 0 selects depth/2.
EvidenceReport membership_evidence(const CFWord& word, const PsiSpec& spec, const Rat& C,
                                   std::size_t large_n_threshold = 0);

struct InclusionFinding {
    CFWord word;
    std::string message;
};

struct InclusionAuditReport {
    std::size_t words_checked = 0;
    std::vector<InclusionFinding> violations;
};

// Witness-set inclusion chain on a sample of words: K(3Psi) witnesses lie
// inside G(Psi) witnesses, any G(Psi) witness blocks the improvable verdict,
// and witnesses survive lowering C from 1 to 1/4.
InclusionAuditReport inclusion_audit(const std::vector<CFWord>& words, const PsiSpec& spec);

struct SeriesVerdict {
    Rat s;
    enum class Verdict { Converges, Diverges, Unknown } verdict = Verdict::Unknown;
    enum class Method { ExponentComparison, PartialSumHeuristic } method = Method::ExponentComparison;
    std::optional<Rat> critical_s;  // 2/(2+tau) when the family pins it down
};

const char* to_string(SeriesVerdict::Verdict v);

// Classification of sum_t t (1/(t^2 Psi(t)))^s for s in (0,1).
SeriesVerdict series_classify(const PsiSpec& spec, const Rat& s);

// 2/(tau+2); infinite tau maps to 0. Requires tau >= 0.
Rat dimension_formula_from_tau(const TauEstimate& tau);
Rat dimension_formula(const PsiSpec& spec);

}  // namespace cfdim
