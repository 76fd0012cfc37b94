// Command-line laboratory for the continued-fraction Cantor-set machinery:
// exact expansions, pressure-equation roots, level dumps, measure trees,
// dimension estimators and geometry/measure audits with reproducible
// outputs. Exit codes: 0 success, 1 findings/warnings, 2 usage, 3 internal.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cfdim/audit.hpp"
#include "cfdim/cantor.hpp"
#include "cfdim/cf.hpp"
#include "cfdim/dimension.hpp"
#include "cfdim/errors.hpp"
#include "cfdim/measure.hpp"
#include "cfdim/numeric.hpp"
#include "cfdim/pressure.hpp"
#include "cfdim/psi.hpp"
#include "cfdim/serialization.hpp"

namespace {

using namespace cfdim;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kFindings = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;

std::string fmt_real(const Real& x, int digits = 15) {
    std::ostringstream os;
    os << std::setprecision(digits) << x;
    return os.str();
}

std::string fmt_double(double x, int digits = 12) {
    std::ostringstream os;
    os << std::setprecision(digits) << x;
    return os.str();
}

// ---------------------------------------------------------------------------
// Shared option bundles.

struct CommonOpts {
    std::string out_dir = ".";
    bool out_dir_explicit = false;
    unsigned precision_bits = 128;
    std::string config_path;
    json config;  // parsed --config payload (empty object when absent)

    void finalize() {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw std::invalid_argument("cannot open config file " + config_path);
            in >> config;
        } else {
            config = json::object();
        }
        if (config.contains("precision_bits") && precision_bits == 128)
            precision_bits = config["precision_bits"].get<unsigned>();
        if (!out_dir_explicit) {
            if (const char* env = std::getenv("CFDIM_OUT_DIR"))
                out_dir = env;
            else if (config.contains("out_dir"))
                out_dir = config["out_dir"].get<std::string>();
        }
        set_real_precision_bits(precision_bits);
    }

    std::ofstream open_output(const std::string& name) const {
        const std::filesystem::path p = std::filesystem::path(out_dir) / name;
        if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
        std::ofstream out(p);
        if (!out) throw std::runtime_error("cannot open output file " + p.string());
        return out;
    }
};

struct ScheduleOpts {
    long M = 0;
    long L = 0;
    std::string tau;
    std::string blocks;
    long window_count = 2;
    // general construction
    bool general = false;
    std::string Q_list;
    std::string delta, epsilon;
    std::string policy = "fixed";
    long base_quotient = 1;
};

std::vector<long> parse_long_list(const std::string& s) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stol(item));
    }
    return out;
}

void add_schedule_options(CLI::App* cmd, ScheduleOpts& opts, bool with_general = false) {
    cmd->add_option("--M", opts.M, "partial-quotient cap (>= 2)");
    cmd->add_option("--L", opts.L, "block length (>= 2)");
    cmd->add_option("--tau", opts.tau, "growth exponent tau (rational, e.g. 1 or 1/2)");
    cmd->add_option("--blocks", opts.blocks, "window block sizes m_1,m_2,... (default 2^k)");
    cmd->add_option("--window-count", opts.window_count, "number of default windows (with no --blocks)");
    if (with_general) {
        cmd->add_flag("--general", opts.general, "use the general (Q_k, delta, epsilon) construction");
        cmd->add_option("--Q", opts.Q_list, "comma-separated Q_k sequence");
        cmd->add_option("--delta", opts.delta, "delta (rational, >= 3 epsilon)");
        cmd->add_option("--epsilon", opts.epsilon, "epsilon (rational, > 0)");
        cmd->add_option("--policy", opts.policy, "base word policy: fixed | enumerated");
        cmd->add_option("--base-quotient", opts.base_quotient, "fixed-policy base quotient");
    }
}

CantorSchedule build_schedule(const ScheduleOpts& opts, const json& config) {
    if (opts.M == 0 && config.contains("schedule")) return schedule_from_json(config["schedule"]);
    if (opts.M == 0 || opts.L == 0 || opts.tau.empty())
        throw std::invalid_argument("schedule requires --M, --L and --tau (or a config file)");
    std::vector<long> blocks = opts.blocks.empty()
                                   ? default_window_blocks(static_cast<std::size_t>(opts.window_count))
                                   : parse_long_list(opts.blocks);
    return make_schedule(opts.M, opts.L, parse_rat(opts.tau), std::move(blocks));
}

GeneralSchedule build_general_schedule(const ScheduleOpts& opts, const json& config) {
    if (opts.Q_list.empty() && config.contains("schedule"))
        return general_schedule_from_json(config["schedule"]);
    if (opts.Q_list.empty() || opts.delta.empty() || opts.epsilon.empty() || opts.M == 0 ||
        opts.tau.empty())
        throw std::invalid_argument("general schedule requires --Q, --delta, --epsilon, --M, --tau");
    std::vector<Int> Q;
    std::stringstream ss(opts.Q_list);
    std::string item;
    while (std::getline(ss, item, ',')) Q.push_back(Int(item));
    return make_general_schedule(std::move(Q), parse_rat(opts.delta), parse_rat(opts.epsilon),
                                 opts.M, parse_rat(opts.tau),
                                 opts.policy == "enumerated" ? BaseWordPolicy::Enumerated
                                                             : BaseWordPolicy::Fixed,
                                 opts.base_quotient);
}

std::vector<long> parse_m_sweep(const std::string& s) {
    const auto dots = s.find("..");
    if (dots != std::string::npos) {
        const long lo = std::stol(s.substr(0, dots));
        const long hi = std::stol(s.substr(dots + 2));
        if (hi < lo) throw std::invalid_argument("empty M sweep " + s);
        std::vector<long> out;
        for (long m = lo; m <= hi; ++m) out.push_back(m);
        return out;
    }
    return parse_long_list(s);
}

PsiSpec build_psi(const std::string& family, const std::string& tau, const std::string& beta,
                  const std::string& psi_json_path, const json& config) {
    if (!psi_json_path.empty()) {
        std::ifstream in(psi_json_path);
        if (!in) throw std::invalid_argument("cannot open psi file " + psi_json_path);
        json j;
        in >> j;
        return psi_from_json(j);
    }
    if (family.empty() && config.contains("psi")) return psi_from_json(config["psi"]);
    if (family == "power") return make_power_psi(parse_rat(tau));
    if (family == "power_log") return make_power_log_psi(parse_rat(tau), parse_rat(beta));
    throw std::invalid_argument("specify --psi-json, a config psi entry, or --family power|power_log with --tau");
}

// ---------------------------------------------------------------------------
// cf

int run_cf(const std::string& x_str, const std::string& t_str, std::size_t max_depth) {
    const Rat x = parse_rat(x_str);
    const Expansion e = cf_expand(x, max_depth);
    std::cout << "x = " << rat_str(x) << "\n";
    std::cout << "expansion = " << e.word.str() << (e.truncated ? "  (truncated)" : "  (terminated)")
              << "\n";
    std::cout << "convergents (i, p_i, q_i):\n";
    for (long i = 0; i <= static_cast<long>(e.word.size()); ++i)
        std::cout << "  " << i << " " << e.word.p(i) << " " << e.word.q(i) << "\n";
    if (!e.truncated && e.word.size() >= 2) {
        std::cout << "cassels (n, theta_{n+1}, phi_n, lhs, rhs, residual):\n";
        for (std::size_t n = 1; n + 1 <= e.word.size(); ++n) {
            const CasselsReport r = cassels_check(x, n);
            std::cout << "  " << n << " " << rat_str(r.theta_next) << " " << rat_str(r.phi_n) << " "
                      << rat_str(r.lhs) << " " << rat_str(r.rhs) << " " << rat_str(r.residual)
                      << "\n";
        }
    }
    if (!t_str.empty()) {
        const Rat t = parse_rat(t_str);
        const auto [p, q] = dirichlet_solve(x, t);
        const Rat err = abs_rat(Rat(q) * x - Rat(p));
        std::cout << "dirichlet t = " << rat_str(t) << ": p = " << p << ", q = " << q
                  << ", |q x - p| = " << rat_str(err) << " <= " << rat_str(Rat(1) / t) << "\n";
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// pressure

int run_pressure(const CommonOpts& common, long L, const std::string& m_spec,
                 const std::string& tau_str, double tol, std::size_t budget,
                 const std::string& csv_name) {
    const Rat tau = parse_rat(tau_str);
    const std::vector<long> Ms = parse_m_sweep(m_spec);
    if (Ms.empty()) throw std::invalid_argument("empty M sweep");
    const Rat limit = Rat(2) / (2 + tau);

    std::ostringstream csv;
    csv << "L,M,tau,S,residual,evaluations,dist_to_limit\n";
    bool budget_exceeded = false;
    for (long M : Ms) {
        try {
            const PressureSolution sol = solve_S(L, M, tau, tol, budget);
            const Real dist = abs(sol.S - Real(limit));
            csv << L << "," << M << "," << rat_str(tau) << "," << fmt_real(sol.S) << ","
                << fmt_real(sol.residual, 3) << "," << sol.evaluations << "," << fmt_real(dist)
                << "\n";
        } catch (const BudgetError& e) {
            std::cerr << "warning: M = " << M << ": " << e.what() << " (sweep truncated)\n";
            budget_exceeded = true;
            break;
        }
    }
    std::cout << csv.str();
    if (!csv_name.empty()) common.open_output(csv_name) << csv.str();
    return budget_exceeded ? kFindings : kOk;
}

// ---------------------------------------------------------------------------
// cantor

template <class Schedule>
int dump_level(const CommonOpts& common, const Schedule& s, long level, std::size_t budget,
               bool exhaustive, const std::string& dump_name) {
    const LevelSet ls = enumerate_level(s, level, budget, exhaustive);
    std::cout << "level " << level << ": " << ls.entries.size() << " words"
              << (ls.complete ? "" : " (stream truncated at budget)") << "\n";
    if (!dump_name.empty()) {
        auto out = common.open_output(dump_name);
        out << "word,p_n,q_n,left,right,case_tag\n";
        const long n = level;
        for (const LevelEntry& e : ls.entries) {
            out << '"' << e.word.str() << '"' << "," << e.word.p(n) << "," << e.word.q(n) << ","
                << rat_str(e.hull.left) << "," << rat_str(e.hull.right) << ","
                << to_string(s.level_case(n)) << "\n";
        }
    }
    return kOk;
}

int run_cantor(const CommonOpts& common, const ScheduleOpts& sched_opts, long level,
               std::size_t budget, bool exhaustive, const std::string& dump_name,
               bool print_schedule, long sample_depth, long sample_count,
               std::optional<unsigned long> seed) {
    int rc = kOk;
    auto with_schedule = [&](const auto& s) {
        if (print_schedule) {
            if constexpr (std::is_same_v<std::decay_t<decltype(s)>, CantorSchedule>)
                std::cout << schedule_to_json(s).dump(2) << "\n";
            else
                std::cout << general_schedule_to_json(s).dump(2) << "\n";
        }
        if (level > 0) rc = dump_level(common, s, level, budget, exhaustive, dump_name);
        if (sample_depth > 0) {
            if (!seed) throw std::invalid_argument("--seed is required for sampling");
            for (long i = 0; i < sample_count; ++i) {
                const CFWord w = sample_point(s, sample_depth, *seed + static_cast<unsigned long>(i));
                std::cout << "sample " << i << ": " << w.str() << "\n";
            }
        }
    };
    if (sched_opts.general)
        with_schedule(build_general_schedule(sched_opts, common.config));
    else
        with_schedule(build_schedule(sched_opts, common.config));
    return rc;
}

// ---------------------------------------------------------------------------
// measure

const char* role_name(LevelRole r) {
    switch (r) {
        case LevelRole::BlockBoundary: return "block-boundary";
        case LevelRole::WindowMinus2: return "window-2";
        case LevelRole::WindowMinus1: return "window-1";
        case LevelRole::Window: return "window-0";
        case LevelRole::Intermediate: return "intermediate";
    }
    return "?";
}

int run_measure(const CommonOpts& common, const ScheduleOpts& sched_opts, long max_level,
                double tol, bool paper_divisor, const std::string& csv_name, double total_tol,
                double parent_tol) {
    const CantorSchedule s = build_schedule(sched_opts, common.config);
    const PressureSolution sol = solve_S(s.L, s.M, s.tau, tol);
    std::cout << "S(" << s.L << "," << s.M << "," << rat_str(s.tau) << ") = " << fmt_real(sol.S)
              << "  residual " << fmt_real(sol.residual, 3) << "\n";
    const MeasureTree tree = assign_measure(s, sol, max_level, paper_divisor);

    bool all_ok = true;
    std::cout << "level,count,mass_total,max_parent_gap,ok\n";
    for (long n = 1; n <= tree.max_level; ++n) {
        const NormalizationReport rep = normalization_audit(tree, n, total_tol, parent_tol);
        const auto [b, e] = tree.level_range(n);
        std::cout << n << "," << (e - b) << "," << fmt_real(rep.total) << ","
                  << fmt_real(rep.max_parent_gap, 3) << "," << (rep.ok() ? "yes" : "NO") << "\n";
        all_ok = all_ok && rep.ok();
    }
    if (!csv_name.empty()) {
        auto out = common.open_output(csv_name);
        out << "level,word,left,right,mass,role\n";
        for (std::size_t i = 1; i < tree.nodes.size(); ++i) {
            const MeasureNode& nd = tree.nodes[i];
            out << nd.level << "," << '"' << tree.word_of(i).str() << '"' << ","
                << rat_str(nd.j_left) << "," << rat_str(nd.j_right) << "," << fmt_real(nd.mass)
                << "," << role_name(nd.role) << "\n";
        }
    }
    return all_ok ? kOk : kFindings;
}

// ---------------------------------------------------------------------------
// dimension

int run_dimension(const CommonOpts& common, const ScheduleOpts& sched_opts, long tree_depth,
                  long box_depth, std::size_t centers, unsigned long seed, double tol,
                  std::size_t walk_budget, const std::string& csv_name,
                  const std::string& plot_prefix) {
    const CantorSchedule s = build_schedule(sched_opts, common.config);
    if (s.windows.empty()) throw std::invalid_argument("dimension runs need at least one window");
    if (tree_depth <= 0) tree_depth = s.windows.front();
    if (box_depth <= 0) box_depth = s.windows.front() + 2;

    const PressureSolution sol = solve_S(s.L, s.M, s.tau, tol);
    const Rat formula = Rat(2) / (2 + s.tau);
    const MeasureTree tree = assign_measure(s, sol, tree_depth);

    const HolderIntervalAudit intervals = holder_audit_intervals(tree, 1, tree.max_level);
    const HolderBallAudit balls = holder_audit_balls(tree, centers, seed);
    const DimensionEstimate mdp = mdp_lower_bound(balls);

    std::vector<BoxLevel> box_rows;
    for (long n = 1; n <= box_depth; ++n) box_rows.push_back(box_level(s, n, walk_budget));
    const DimensionEstimate box = box_count(box_rows);

    const double S_d = sol.S.convert_to<double>();
    std::ostringstream csv;
    csv << "quantity,value,detail\n";
    csv << "S," << fmt_real(sol.S) << ",pressure root (residual " << fmt_real(sol.residual, 3)
        << ")\n";
    csv << "formula," << fmt_double(formula.convert_to<double>()) << ",2/(2+tau) = "
        << rat_str(formula) << "\n";
    csv << "box_count," << fmt_double(box.value) << ",raw " << fmt_double(box.raw) << " residual "
        << fmt_double(box.residual) << "\n";
    csv << "mdp_fit," << fmt_double(mdp.value) << ",raw " << fmt_double(mdp.raw) << " residual "
        << fmt_double(mdp.residual) << "\n";
    csv << "interval_slope," << fmt_double(intervals.fitted_slope) << ",target "
        << fmt_double(intervals.exponent_target) << " (S - 10/L)\n";
    csv << "ball_slope," << fmt_double(balls.pooled_slope) << ",samples " << balls.sample_size
        << "\n";
    csv << "box_minus_S," << fmt_double(box.value - S_d) << ",\n";
    csv << "mdp_minus_S," << fmt_double(mdp.value - S_d) << ",\n";
    // Soft lower-bound consistency: reported, not asserted.
    std::vector<BoxLevel> tree_rows;
    for (long n = 1; n <= tree.max_level; ++n) tree_rows.push_back(box_level(s, n, walk_budget));
    const DimensionEstimate tree_box = box_count(tree_rows);
    csv << "mdp_vs_tree_box," << fmt_double(mdp.value - tree_box.value)
        << ",soft bound: mdp <= box + 0.1 on the tree levels ("
        << (mdp.value <= tree_box.value + 0.1 ? "holds" : "exceeded") << ")\n";
    std::cout << csv.str();
    if (!csv_name.empty()) common.open_output(csv_name) << csv.str();

    if (!plot_prefix.empty()) {
        {
            auto out = common.open_output(plot_prefix + "_box.dat");
            for (const BoxLevel& lv : box_rows)
                out << fmt_double(-std::log(lv.mean_length)) << " "
                    << fmt_double(std::log(lv.count.convert_to<double>())) << "\n";
        }
        {
            auto out = common.open_output(plot_prefix + "_intervals.dat");
            for (const auto& [x, y] : intervals.points)
                out << fmt_double(x) << " " << fmt_double(y) << "\n";
        }
        {
            auto out = common.open_output(plot_prefix + "_balls.dat");
            for (const auto& [x, y] : balls.points)
                out << fmt_double(x) << " " << fmt_double(y) << "\n";
        }
        // Per-level cover stats over the materialized tree.
        auto out = common.open_output(plot_prefix + "_levels.csv");
        out << "level,count,mean_length,mass_min,mass_max,mass_total\n";
        for (long n = 1; n <= tree.max_level; ++n) {
            const auto [b, e] = tree.level_range(n);
            long double len_sum = 0;
            Real total(0);
            Real lo = tree.nodes[b].mass, hi = tree.nodes[b].mass;
            for (std::size_t i = b; i < e; ++i) {
                len_sum += tree.nodes[i].j_length().convert_to<long double>();
                total += tree.nodes[i].mass;
                lo = std::min(lo, tree.nodes[i].mass);
                hi = std::max(hi, tree.nodes[i].mass);
            }
            out << n << "," << (e - b) << ","
                << fmt_double(static_cast<double>(len_sum / static_cast<long double>(e - b)))
                << "," << fmt_real(lo, 6) << "," << fmt_real(hi, 6) << "," << fmt_real(total)
                << "\n";
        }
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// audit

int run_audit(const CommonOpts& common, const ScheduleOpts& sched_opts, long depth,
              std::size_t level_budget, long measure_level, std::size_t samples,
              std::optional<unsigned long> seed, const std::string& psi_tau, double tol,
              bool inject_fault, const std::string& findings_name) {
    const CantorSchedule s = build_schedule(sched_opts, common.config);
    if (!seed) throw std::invalid_argument("--seed is required for the audit sample");

    std::vector<json> findings;
    auto add_finding = [&](json f) { findings.push_back(std::move(f)); };

    // Geometry: disjointness, nesting, length brackets, gap bounds.
    const GeometryAuditReport geo = audit_geometry(s, depth, level_budget, inject_fault);
    for (const GeometryFinding& f : geo.findings)
        add_finding(json{{"audit", "geometry"},
                         {"kind", f.kind},
                         {"level", f.level},
                         {"word", f.word},
                         {"detail", f.detail}});

    // Inclusion chain on sampled words.
    const PsiSpec psi = make_power_psi(psi_tau.empty() ? s.tau : parse_rat(psi_tau));
    std::vector<CFWord> words;
    for (std::size_t i = 0; i < samples; ++i)
        words.push_back(sample_point(s, depth, *seed + static_cast<unsigned long>(i)));
    const InclusionAuditReport inc = inclusion_audit(words, psi);
    for (const InclusionFinding& f : inc.violations)
        add_finding(json{{"audit", "inclusion"}, {"word", f.word.str()}, {"detail", f.message}});

    // Normalization on a measure tree.
    const PressureSolution sol = solve_S(s.L, s.M, s.tau, tol);
    const MeasureTree tree = assign_measure(s, sol, measure_level > 0 ? measure_level : depth);
    for (long n = 1; n <= tree.max_level; ++n) {
        const NormalizationReport rep = normalization_audit(tree, n);
        if (!rep.ok())
            add_finding(json{{"audit", "normalization"},
                             {"level", n},
                             {"total", fmt_real(rep.total)},
                             {"max_parent_gap", fmt_real(rep.max_parent_gap, 3)}});
    }

    // Hoelder interval slope.
    const HolderIntervalAudit holder = holder_audit_intervals(tree, 1, tree.max_level);
    if (!holder.meets_target)
        add_finding(json{{"audit", "holder"},
                         {"fitted_slope", holder.fitted_slope},
                         {"target", holder.exponent_target}});

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!findings_name.empty()) {
        file = common.open_output(findings_name);
        out = &file;
    }
    for (const json& f : findings) (*out) << f.dump() << "\n";
    std::cerr << "audit: " << findings.size() << " finding(s); geometry words checked "
              << geo.words_checked << "; inclusion words " << inc.words_checked << "\n";
    for (const auto& [tag, ratio] : geo.min_gap_ratio)
        std::cerr << "  min gap ratio case " << to_string(tag) << " = "
                  << fmt_double(ratio.convert_to<double>(), 6) << "\n";
    return findings.empty() ? kOk : kFindings;
}

// ---------------------------------------------------------------------------
// classify

int run_classify(const CommonOpts& common, const std::string& family, const std::string& tau,
                 const std::string& beta, const std::string& psi_json_path,
                 const std::string& s_list, const std::string& word_str, const std::string& C_str,
                 std::size_t threshold) {
    const PsiSpec spec = build_psi(family, tau, beta, psi_json_path, common.config);
    const TauEstimate t = lower_order_tau(spec);
    if (t.exact)
        std::cout << "tau = " << rat_str(t.value) << " (exact)\n";
    else
        std::cout << "tau ~ " << fmt_double(t.estimate, 6) << " (estimate, table rows "
                  << t.window_lo << ".." << t.window_hi << ")\n";
    const Rat dim = dimension_formula(spec);
    std::cout << "dimension formula 2/(tau+2) = " << rat_str(dim) << " ~ "
              << fmt_double(dim.convert_to<double>(), 10) << "\n";

    if (!s_list.empty()) {
        std::stringstream ss(s_list);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const SeriesVerdict v = series_classify(spec, parse_rat(item));
            std::cout << "series s = " << item << ": " << to_string(v.verdict);
            if (v.critical_s) std::cout << " (critical s = " << rat_str(*v.critical_s) << ")";
            std::cout << "\n";
        }
    }
    if (!word_str.empty()) {
        std::vector<Int> qs;
        for (long v : parse_long_list(word_str)) qs.push_back(Int(v));
        const CFWord w{std::move(qs)};
        const Rat C = C_str.empty() ? Rat(1) : parse_rat(C_str);
        const EvidenceReport ev = membership_evidence(w, spec, C, threshold);
        std::cout << "word " << w.str() << " (C = " << rat_str(C) << "):\n  G witnesses:";
        for (auto n : ev.G_witnesses) std::cout << " " << n;
        std::cout << "\n  K witnesses:";
        for (auto n : ev.K_witnesses) std::cout << " " << n;
        std::cout << "\n  D status: " << to_string(ev.d_status);
        if (ev.first_undetermined) std::cout << " (first undetermined n = " << ev.first_undetermined << ")";
        std::cout << "\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"continued-fraction Cantor-set laboratory"};
    app.require_subcommand(1);

    CommonOpts common;
    app.add_option("--out-dir", common.out_dir, "output directory (env CFDIM_OUT_DIR overrides the default)")
        ->each([&](const std::string&) { common.out_dir_explicit = true; });
    app.add_option("--precision-bits", common.precision_bits, "working precision for reals")
        ->check(CLI::Range(24u, 16384u));
    app.add_option("--config", common.config_path, "JSON config file");

    // cf
    auto* cf_cmd = app.add_subcommand("cf", "expand a rational and run the exact identities");
    std::string cf_x, cf_t;
    std::size_t cf_depth = 64;
    cf_cmd->add_option("x", cf_x, "rational in [0,1), e.g. 5/8")->required();
    cf_cmd->add_option("--dirichlet-t", cf_t, "report the convergent pair for this t > 1");
    cf_cmd->add_option("--max-depth", cf_depth, "expansion depth cap");

    // pressure
    auto* pr_cmd = app.add_subcommand("pressure", "solve the pressure equation over an M sweep");
    long pr_L = 0;
    std::string pr_M, pr_tau, pr_csv;
    double pr_tol = 1e-10;
    std::size_t pr_budget = PressureEquation::kDefaultTermBudget;
    pr_cmd->add_option("--L", pr_L, "block length (>= 2)")->required();
    pr_cmd->add_option("--M", pr_M, "cap sweep: 2, 2..20 or 2,5,9")->required();
    pr_cmd->add_option("--tau", pr_tau, "tau (rational)")->required();
    pr_cmd->add_option("--tol", pr_tol, "residual tolerance");
    pr_cmd->add_option("--budget", pr_budget, "term budget");
    pr_cmd->add_option("--csv", pr_csv, "also write the sweep to this CSV file");

    // cantor
    auto* ca_cmd = app.add_subcommand("cantor", "enumerate levels and sample points");
    ScheduleOpts ca_sched;
    add_schedule_options(ca_cmd, ca_sched, true);
    long ca_level = 0, ca_sample_depth = 0, ca_sample_count = 1;
    std::size_t ca_budget = 100000;
    bool ca_exhaustive = false, ca_print_schedule = false;
    std::string ca_dump;
    std::optional<unsigned long> ca_seed;
    ca_cmd->add_option("--level", ca_level, "level to enumerate");
    ca_cmd->add_option("--budget", ca_budget, "entry budget for enumeration");
    ca_cmd->add_flag("--exhaustive", ca_exhaustive, "error out instead of truncating at the budget");
    ca_cmd->add_option("--dump", ca_dump, "CSV dump file (word,p,q,left,right,case)");
    ca_cmd->add_flag("--print-schedule", ca_print_schedule, "print the schedule as JSON");
    ca_cmd->add_option("--sample-depth", ca_sample_depth, "draw random D_n words of this depth");
    ca_cmd->add_option("--samples", ca_sample_count, "number of sampled words");
    ca_cmd->add_option("--seed", ca_seed, "RNG seed (required for sampling)");

    // measure
    auto* me_cmd = app.add_subcommand("measure", "assign the mass distribution and audit it");
    ScheduleOpts me_sched;
    add_schedule_options(me_cmd, me_sched);
    long me_level = 0;
    double me_tol = 1e-14, me_total_tol = 1e-9, me_parent_tol = 1e-12;
    bool me_paper = false;
    std::string me_csv;
    me_cmd->add_option("--max-level", me_level, "deepest level to materialize")->required();
    me_cmd->add_option("--tol", me_tol, "pressure solver tolerance");
    me_cmd->add_flag("--paper-divisor", me_paper, "split window mass by q^tau/4 instead of the exact child count");
    me_cmd->add_option("--csv", me_csv, "node dump CSV file");
    me_cmd->add_option("--total-tol", me_total_tol, "level mass tolerance");
    me_cmd->add_option("--parent-tol", me_parent_tol, "parent consistency tolerance");

    // dimension
    auto* di_cmd = app.add_subcommand("dimension", "run the dimension estimators against the pressure root");
    ScheduleOpts di_sched;
    add_schedule_options(di_cmd, di_sched);
    long di_tree_depth = 0, di_box_depth = 0;
    std::size_t di_centers = 48, di_walk_budget = 30'000'000;
    unsigned long di_seed = 0;
    double di_tol = 1e-12;
    std::string di_csv, di_plot;
    di_cmd->add_option("--tree-depth", di_tree_depth, "measure-tree depth (default: first window)");
    di_cmd->add_option("--box-depth", di_box_depth, "deepest box-count level (default: first window + 2)");
    di_cmd->add_option("--centers", di_centers, "ball-audit centers");
    di_cmd->add_option("--seed", di_seed, "RNG seed")->required();
    di_cmd->add_option("--tol", di_tol, "pressure solver tolerance");
    di_cmd->add_option("--walk-budget", di_walk_budget, "box-count walk budget");
    di_cmd->add_option("--csv", di_csv, "summary CSV file");
    di_cmd->add_option("--plot-prefix", di_plot, "write plot-data files with this prefix");

    // audit
    auto* au_cmd = app.add_subcommand("audit", "run the geometry/inclusion/normalization/Hoelder audits");
    ScheduleOpts au_sched;
    add_schedule_options(au_cmd, au_sched);
    long au_depth = 6, au_measure_level = 0;
    std::size_t au_budget = 1'000'000, au_samples = 50;
    std::optional<unsigned long> au_seed;
    std::string au_psi_tau, au_findings;
    double au_tol = 1e-14;
    bool au_fault = false;
    au_cmd->add_option("--depth", au_depth, "geometry audit depth");
    au_cmd->add_option("--budget", au_budget, "per-level walk budget");
    au_cmd->add_option("--measure-level", au_measure_level, "normalization audit depth (default --depth)");
    au_cmd->add_option("--samples", au_samples, "inclusion-audit sample size");
    au_cmd->add_option("--seed", au_seed, "RNG seed (required)");
    au_cmd->add_option("--psi-tau", au_psi_tau, "power-family tau for the inclusion audit (default: schedule tau)");
    au_cmd->add_option("--tol", au_tol, "pressure solver tolerance");
    au_cmd->add_flag("--inject-gap-fault", au_fault, "test hook: flip one gap comparison");
    au_cmd->add_option("--findings", au_findings, "write JSON-lines findings to this file");

    // classify
    auto* cl_cmd = app.add_subcommand("classify", "series verdicts, dimension formula and membership evidence");
    std::string cl_family, cl_tau, cl_beta, cl_psi_json, cl_s, cl_word, cl_C;
    std::size_t cl_threshold = 0;
    cl_cmd->add_option("--family", cl_family, "power | power_log");
    cl_cmd->add_option("--tau", cl_tau, "tau (rational)");
    cl_cmd->add_option("--beta", cl_beta, "log exponent for power_log");
    cl_cmd->add_option("--psi-json", cl_psi_json, "PsiSpec JSON file");
    cl_cmd->add_option("--s", cl_s, "comma-separated series exponents in (0,1)");
    cl_cmd->add_option("--word", cl_word, "comma-separated partial quotients");
    cl_cmd->add_option("--C", cl_C, "witness scale C (default 1)");
    cl_cmd->add_option("--threshold", cl_threshold, "first index treated as sufficiently large");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        common.finalize();
        if (*cf_cmd) return run_cf(cf_x, cf_t, cf_depth);
        if (*pr_cmd) return run_pressure(common, pr_L, pr_M, pr_tau, pr_tol, pr_budget, pr_csv);
        if (*ca_cmd)
            return run_cantor(common, ca_sched, ca_level, ca_budget, ca_exhaustive, ca_dump,
                              ca_print_schedule, ca_sample_depth, ca_sample_count, ca_seed);
        if (*me_cmd)
            return run_measure(common, me_sched, me_level, me_tol, me_paper, me_csv, me_total_tol,
                               me_parent_tol);
        if (*di_cmd)
            return run_dimension(common, di_sched, di_tree_depth, di_box_depth, di_centers,
                                 di_seed, di_tol, di_walk_budget, di_csv, di_plot);
        if (*au_cmd)
            return run_audit(common, au_sched, au_depth, au_budget, au_measure_level, au_samples,
                             au_seed, au_psi_tau, au_tol, au_fault, au_findings);
        if (*cl_cmd)
            return run_classify(common, cl_family, cl_tau, cl_beta, cl_psi_json, cl_s, cl_word,
                                cl_C, cl_threshold);
        std::cerr << "error: no subcommand\n";
        return kUsage;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ScheduleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const NoSiblingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const TailUndefinedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}
