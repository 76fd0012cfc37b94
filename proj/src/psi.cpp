#include "cfdim/psi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cfdim {

namespace {

Rat poly_eval(const std::vector<Rat>& coeffs, const Rat& t) {
    Rat acc(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
    return acc;
}

long poly_degree(const std::vector<Rat>& coeffs) {
    for (std::size_t i = coeffs.size(); i-- > 0;)
        if (coeffs[i] != 0) return static_cast<long>(i);
    return -1;
}

// D(t) - t*N(t), the denominator of Psi = tN/(D - tN).
std::vector<Rat> psi_gap_poly(const RationalFunction& f) {
    std::vector<Rat> e = f.den;
    e.resize(std::max(f.den.size(), f.num.size() + 1), Rat(0));
    for (std::size_t i = 0; i < f.num.size(); ++i) e[i + 1] -= f.num[i];
    return e;
}

double slope_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double d = n * sxx - sx * sx;
    if (d == 0) throw std::domain_error("slope_fit needs distinct abscissae");
    return (n * sxy - sx * sy) / d;
}

}  // namespace

Rat RationalFunction::eval(const Rat& t) const {
    const Rat d = poly_eval(den, t);
    if (d == 0) throw std::domain_error("rational function pole at t = " + rat_str(t));
    return poly_eval(num, t) / d;
}

long RationalFunction::degree_num() const { return poly_degree(num); }
long RationalFunction::degree_den() const { return poly_degree(den); }

const char* to_string(DStatus s) {
    switch (s) {
        case DStatus::ImprovableEvidence: return "improvable-evidence";
        case DStatus::NonImprovableEvidence: return "non-improvable-evidence";
        case DStatus::Indeterminate: return "indeterminate";
    }
    return "?";
}

const char* to_string(SeriesVerdict::Verdict v) {
    switch (v) {
        case SeriesVerdict::Verdict::Converges: return "converges";
        case SeriesVerdict::Verdict::Diverges: return "diverges";
        case SeriesVerdict::Verdict::Unknown: return "unknown";
    }
    return "?";
}

PsiSpec make_power_psi(const Rat& tau) {
    PsiSpec s;
    s.family = PsiFamily::Power;
    s.tau = tau;
    s.monotone = tau >= 0;
    return s;
}

PsiSpec make_power_log_psi(const Rat& tau, const Rat& beta) {
    PsiSpec s;
    s.family = PsiFamily::PowerLog;
    s.tau = tau;
    s.beta = beta;
    s.monotone = tau > 0 || (tau == 0 && beta >= 0);
    return s;
}

PsiSpec make_tabulated_psi(std::vector<std::pair<Rat, Rat>> table) {
    if (table.empty()) throw std::invalid_argument("tabulated spec needs sample points");
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i].second <= 0) throw std::invalid_argument("tabulated Psi values must be positive");
        if (i && table[i].first <= table[i - 1].first)
            throw std::invalid_argument("tabulated sample points must be strictly increasing");
    }
    PsiSpec s;
    s.family = PsiFamily::Tabulated;
    s.monotone = std::is_sorted(table.begin(), table.end(),
                                [](const auto& a, const auto& b) { return a.second < b.second; });
    s.table = std::move(table);
    return s;
}

PsiSpec psi_to_Psi(const RationalFunction& psi) {
    const std::vector<Rat> gap = psi_gap_poly(psi);
    if (poly_degree(gap) < 0) throw std::domain_error("t*psi(t) = 1 identically");
    PsiSpec s;
    s.family = PsiFamily::DerivedFromPsi;
    s.psi = psi;
    const TauEstimate tau = lower_order_tau(s);
    s.tau = tau.value;
    s.monotone = tau.value >= 0;
    // Positivity spot checks of 1 - t psi(t) on small integers; asymptotic
    // sign is covered by lower_order_tau's leading-coefficient check.
    for (long t = 1; t <= 16; ++t) {
        const Rat tv(t);
        if (poly_eval(psi.den, tv) == 0) continue;
        if (tv * psi.eval(tv) >= 1)
            throw std::domain_error("t*psi(t) >= 1 at t = " + std::to_string(t));
    }
    return s;
}

Real PsiSpec::eval(const Rat& t) const {
    if (t < 1) throw std::domain_error("Psi evaluated below 1");
    switch (family) {
        case PsiFamily::Power:
            return pow(Real(t), Real(tau));
        case PsiFamily::PowerLog:
            return pow(Real(t), Real(tau)) * pow(log(Real(1) + Real(t)), Real(beta));
        case PsiFamily::Tabulated: {
            if (t < table.front().first)
                throw std::domain_error("tabulated Psi queried before first sample");
            auto it = std::upper_bound(table.begin(), table.end(), t,
                                       [](const Rat& v, const auto& row) { return v < row.first; });
            return Real((it - 1)->second);
        }
        case PsiFamily::DerivedFromPsi: {
            const Rat tpsi = Rat(t) * psi.eval(t);
            if (tpsi >= 1) throw std::domain_error("t*psi(t) >= 1 at t = " + rat_str(t));
            return Real(Rat(1) / (Rat(1) - tpsi) - Rat(1));
        }
    }
    throw std::logic_error("unknown Psi family");
}

int cmp_int_vs_scaled_psi(const Int& x, const Rat& C, const PsiSpec& spec, const Int& t) {
    if (C <= 0) throw std::invalid_argument("scale C must be positive");
    switch (spec.family) {
        case PsiFamily::Power: {
            if (spec.tau >= 0) return cmp_int_vs_scaled_pow(x, C, t, spec.tau);
            // Negative exponent: x vs C t^(-u/v) <=> (x Cd)^v t^u vs Cn^v.
            const Rat pos_tau = -spec.tau;
            const auto u = numerator(pos_tau).convert_to<unsigned long>();
            const auto v = denominator(pos_tau).convert_to<unsigned long>();
            const Int lhs = ipow(x * denominator(C), v) * ipow(t, u);
            const Int rhs = ipow(numerator(C), v);
            return lhs.compare(rhs);
        }
        case PsiFamily::Tabulated:
        case PsiFamily::DerivedFromPsi: {
            Rat v;
            if (spec.family == PsiFamily::Tabulated) {
                if (Rat(t) < spec.table.front().first)
                    throw std::domain_error("tabulated Psi queried before first sample");
                auto it = std::upper_bound(spec.table.begin(), spec.table.end(), Rat(t),
                                           [](const Rat& a, const auto& row) { return a < row.first; });
                v = (it - 1)->second;
            } else {
                const Rat tpsi = Rat(t) * spec.psi.eval(Rat(t));
                if (tpsi >= 1) throw std::domain_error("t*psi(t) >= 1 at t = " + t.str());
                v = Rat(1) / (Rat(1) - tpsi) - Rat(1);
            }
            const Rat diff = Rat(x) - C * v;
            return diff == 0 ? 0 : (diff > 0 ? 1 : -1);
        }
        case PsiFamily::PowerLog: {
            const Real lhs(x);
            const Real rhs = Real(C) * spec.eval(Rat(t));
            if (lhs == rhs) return 0;
            return lhs > rhs ? 1 : -1;
        }
    }
    throw std::logic_error("unknown Psi family");
}

TauEstimate lower_order_tau(const PsiSpec& spec) {
    TauEstimate out;
    switch (spec.family) {
        case PsiFamily::Power:
        case PsiFamily::PowerLog:
            // The log factor drops out of liminf log Psi / log t.
            out.value = spec.tau;
            out.estimate = out.value.convert_to<double>();
            return out;
        case PsiFamily::DerivedFromPsi: {
            // Psi = tN/(D - tN): the lower order is the degree gap.
            const std::vector<Rat> gap = psi_gap_poly(spec.psi);
            const long dn = spec.psi.degree_num(), de = poly_degree(gap);
            if (dn < 0) throw std::domain_error("psi is identically zero");
            if (de < 0) throw std::domain_error("t*psi(t) = 1 identically");
            const Rat lead_ratio = spec.psi.num[static_cast<std::size_t>(dn)] /
                                   gap[static_cast<std::size_t>(de)];
            if (lead_ratio < 0)
                throw std::domain_error("derived Psi is eventually negative (t*psi(t) > 1)");
            out.value = Rat(1 + dn - de);
            out.estimate = out.value.convert_to<double>();
            return out;
        }
        case PsiFamily::Tabulated: {
            if (spec.table.size() < 3)
                throw std::domain_error("tabulated tau estimate needs at least 3 samples");
            // Regression over the tail half of the table.
            const std::size_t lo = spec.table.size() / 2 >= 1 ? spec.table.size() / 2 - 1 : 0;
            std::vector<double> x, y;
            for (std::size_t i = lo; i < spec.table.size(); ++i) {
                x.push_back(std::log(spec.table[i].first.convert_to<double>()));
                y.push_back(std::log(spec.table[i].second.convert_to<double>()));
            }
            out.exact = false;
            out.estimate = slope_fit(x, y);
            out.window_lo = lo;
            out.window_hi = spec.table.size() - 1;
            return out;
        }
    }
    throw std::logic_error("unknown Psi family");
}

EvidenceReport membership_evidence(const CFWord& word, const PsiSpec& spec, const Rat& C,
                                   std::size_t large_n_threshold) {
    if (word.size() < 2) throw std::invalid_argument("membership evidence needs a word of length >= 2");
    if (C <= 0) throw std::invalid_argument("scale C must be positive");

    EvidenceReport r;
    r.depth = word.size();
    const std::size_t threshold =
        large_n_threshold ? large_n_threshold : std::max<std::size_t>(1, word.size() / 2);
    const Rat threeC = Rat(kSufficientKMultiplier) * C;

    bool band_clean = true;  // products <= Psi/4 at and beyond the threshold
    bool some_exceeds = false;
    for (std::size_t n = 1; n + 1 <= word.size(); ++n) {
        const Int& qn = word.q(static_cast<long>(n));
        const Int product = word.a(n) * word.a(n + 1);
        if (cmp_int_vs_scaled_psi(product, C, spec, qn) > 0) r.G_witnesses.push_back(n);
        if (cmp_int_vs_scaled_psi(word.a(n + 1), threeC, spec, qn) > 0) r.K_witnesses.push_back(n);
        if (cmp_int_vs_scaled_psi(product, Rat(1), spec, qn) > 0) some_exceeds = true;
        if (n >= threshold && cmp_int_vs_scaled_psi(product, Rat(1, 4), spec, qn) > 0) {
            band_clean = false;
            if (r.first_undetermined == 0 &&
                cmp_int_vs_scaled_psi(product, Rat(1), spec, qn) <= 0)
                r.first_undetermined = n;
        }
    }
    if (some_exceeds)
        r.d_status = DStatus::NonImprovableEvidence;
    else if (band_clean && threshold + 1 <= word.size())
        r.d_status = DStatus::ImprovableEvidence;
    else
        r.d_status = DStatus::Indeterminate;
    return r;
}

InclusionAuditReport inclusion_audit(const std::vector<CFWord>& words, const PsiSpec& spec) {
    if (words.empty()) throw std::invalid_argument("inclusion audit needs a nonempty sample");
    InclusionAuditReport report;
    for (const CFWord& w : words) {
        if (w.size() < 2) continue;
        ++report.words_checked;
        const EvidenceReport at1 = membership_evidence(w, spec, Rat(1));
        const EvidenceReport at_quarter = membership_evidence(w, spec, Rat(1, 4));
        if (!std::includes(at1.G_witnesses.begin(), at1.G_witnesses.end(),
                           at1.K_witnesses.begin(), at1.K_witnesses.end()))
            report.violations.push_back({w, "K-witness index outside the G-witness set"});
        if (!at1.G_witnesses.empty() && at1.d_status == DStatus::ImprovableEvidence)
            report.violations.push_back({w, "G-witness present but improvable evidence reported"});
        if (!std::includes(at_quarter.G_witnesses.begin(), at_quarter.G_witnesses.end(),
                           at1.G_witnesses.begin(), at1.G_witnesses.end()))
            report.violations.push_back({w, "G-witness lost when lowering C from 1 to 1/4"});
    }
    return report;
}

SeriesVerdict series_classify(const PsiSpec& spec, const Rat& s) {
    if (s <= 0 || s >= 1) throw std::domain_error("series exponent must lie in (0,1)");
    SeriesVerdict v;
    v.s = s;
    switch (spec.family) {
        case PsiFamily::Power:
        case PsiFamily::PowerLog:
        case PsiFamily::DerivedFromPsi: {
            const TauEstimate tau = lower_order_tau(spec);
            const Rat critical = Rat(2) / (tau.value + 2);
            v.critical_s = critical;
            v.method = SeriesVerdict::Method::ExponentComparison;
            // Term exponent 1 - (2+tau)s; at the harmonic edge the log factor
            // decides for the power_log family, otherwise the edge diverges.
            if (s > critical)
                v.verdict = SeriesVerdict::Verdict::Converges;
            else if (s < critical)
                v.verdict = SeriesVerdict::Verdict::Diverges;
            else if (spec.family == PsiFamily::PowerLog && spec.beta * s > 1)
                v.verdict = SeriesVerdict::Verdict::Converges;
            else
                v.verdict = SeriesVerdict::Verdict::Diverges;
            return v;
        }
        case PsiFamily::Tabulated: {
            v.method = SeriesVerdict::Method::PartialSumHeuristic;
            if (spec.table.size() < 3) return v;  // unknown
            std::vector<double> x, y;
            const double sd = s.convert_to<double>();
            for (const auto& [t, psi_v] : spec.table) {
                const double td = t.convert_to<double>();
                const double term = td * std::pow(1.0 / (td * td * psi_v.convert_to<double>()), sd);
                x.push_back(std::log(td));
                y.push_back(std::log(term));
            }
            const double slope = slope_fit(x, y);
            const double margin = 0.1;
            if (slope < -1 - margin)
                v.verdict = SeriesVerdict::Verdict::Converges;
            else if (slope > -1 + margin)
                v.verdict = SeriesVerdict::Verdict::Diverges;
            return v;
        }
    }
    throw std::logic_error("unknown Psi family");
}

Rat dimension_formula_from_tau(const TauEstimate& tau) {
    if (tau.infinite) return Rat(0);
    if (tau.exact) {
        if (tau.value < 0) throw std::domain_error("dimension formula requires tau >= 0");
        return Rat(2) / (tau.value + 2);
    }
    if (tau.estimate < 0) throw std::domain_error("dimension formula requires tau >= 0");
    return Rat(2) / (Rat(tau.estimate) + 2);
}

Rat dimension_formula(const PsiSpec& spec) { return dimension_formula_from_tau(lower_order_tau(spec)); }

}  // namespace cfdim
