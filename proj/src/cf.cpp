#include "cfdim/cf.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cfdim/errors.hpp"

namespace cfdim {

CFWord::CFWord() {
    pq_.emplace_back(Int(1), Int(0));  // (p_{-1}, q_{-1})
    pq_.emplace_back(Int(0), Int(1));  // (p_0, q_0)
}

CFWord::CFWord(std::vector<Int> quotients) : CFWord() {
    for (auto& a : quotients) push_back(a);
}

CFWord::CFWord(std::initializer_list<long> quotients) : CFWord() {
    for (long a : quotients) push_back(Int(a));
}

void CFWord::push_back(const Int& a) {
    if (a < 1) throw std::invalid_argument("partial quotient must be >= 1");
    const auto& [p1, q1] = pq_[pq_.size() - 1];
    const auto& [p0, q0] = pq_[pq_.size() - 2];
    pq_.emplace_back(a * p1 + p0, a * q1 + q0);
    a_.push_back(a);
}

void CFWord::pop_back() {
    if (a_.empty()) throw std::out_of_range("pop_back on empty word");
    a_.pop_back();
    pq_.pop_back();
}

const Int& CFWord::a(std::size_t i) const {
    if (i < 1 || i > a_.size()) throw std::out_of_range("partial quotient index");
    return a_[i - 1];
}

const Int& CFWord::p(long i) const {
    if (i < -1 || i > static_cast<long>(a_.size())) throw std::out_of_range("convergent index");
    return pq_[static_cast<std::size_t>(i + 1)].first;
}

const Int& CFWord::q(long i) const {
    if (i < -1 || i > static_cast<long>(a_.size())) throw std::out_of_range("convergent index");
    return pq_[static_cast<std::size_t>(i + 1)].second;
}

Rat CFWord::value() const {
    const long n = static_cast<long>(size());
    return make_rat(p(n), q(n));
}

std::string CFWord::str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < a_.size(); ++i) {
        if (i) os << ',';
        os << a_[i];
    }
    os << ']';
    return os.str();
}

Expansion cf_expand(const Rat& x, std::size_t max_depth) {
    if (x < 0 || x >= 1) throw std::domain_error("cf_expand requires x in [0,1)");
    if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
    Expansion out;
    Int num = numerator(x), den = denominator(x);
    while (num != 0 && out.word.size() < max_depth) {
        Int a, rem;
        mpz_fdiv_qr(a.backend().data(), rem.backend().data(),
                    den.backend().data(), num.backend().data());
        out.word.push_back(a);
        den = num;
        num = rem;
    }
    out.truncated = (num != 0);
    return out;
}

CFWord cf_expand_full(const Rat& x) {
    auto e = cf_expand(x, static_cast<std::size_t>(-1));
    return e.word;
}

std::vector<std::pair<Int, Int>> convergents(const CFWord& word) {
    std::vector<std::pair<Int, Int>> out;
    out.reserve(word.size() + 1);
    for (long i = 0; i <= static_cast<long>(word.size()); ++i) out.push_back(word.convergent(i));
    return out;
}

Rat word_value(const CFWord& word) { return word.value(); }

Rat reversed_value(const CFWord& word, std::size_t n) {
    if (n < 1 || n > word.size()) throw std::out_of_range("reversed_value index");
    CFWord rev;
    for (std::size_t i = n; i >= 1; --i) rev.push_back(word.a(i));
    return rev.value();
}

CasselsReport cassels_check(const Rat& x, std::size_t n) {
    if (n < 1) throw std::invalid_argument("cassels_check requires n >= 1");
    const CFWord word = cf_expand_full(x);
    if (word.size() < n + 1)
        throw TailUndefinedError("expansion of length " + std::to_string(word.size()) +
                                 " has no tail at index " + std::to_string(n + 1));
    CFWord tail;
    for (std::size_t i = n + 1; i <= word.size(); ++i) tail.push_back(word.a(i));

    CasselsReport r;
    r.n = n;
    r.theta_next = tail.value();
    r.phi_n = reversed_value(word, n);
    r.lhs = Rat(1) / (Rat(1) + r.theta_next * r.phi_n);
    const long ln = static_cast<long>(n);
    r.rhs = Rat(word.q(ln)) * abs_rat(Rat(word.q(ln - 1)) * x - Rat(word.p(ln - 1)));
    r.residual = r.lhs - r.rhs;
    return r;
}

std::pair<Int, Int> dirichlet_solve(const Rat& x, const Rat& t) {
    if (t <= 1) throw std::domain_error("dirichlet_solve requires t > 1");
    Rat y = x - Rat(floor_rat(x));  // reduce to [0,1); p shifts back below
    const Int shift = floor_rat(x);
    const CFWord word = cf_expand_full(y);
    const long m = static_cast<long>(word.size());
    long n = m;
    for (long i = 0; i < m; ++i) {
        if (Rat(word.q(i + 1)) >= t) {
            n = i;
            break;
        }
    }
    return {word.p(n) + shift * word.q(n), word.q(n)};
}

PeriodicCFWord::PeriodicCFWord(std::vector<Int> preperiod, std::vector<Int> period)
    : pre_(std::move(preperiod)), per_(std::move(period)) {
    if (per_.empty()) throw std::invalid_argument("period must be nonempty");
    for (const auto& a : pre_)
        if (a < 1) throw std::invalid_argument("partial quotient must be >= 1");
    for (const auto& a : per_)
        if (a < 1) throw std::invalid_argument("partial quotient must be >= 1");
}

Expansion PeriodicCFWord::unfold(std::size_t depth) const {
    Expansion out;
    out.truncated = true;
    for (std::size_t i = 0; i < depth; ++i) {
        if (i < pre_.size())
            out.word.push_back(pre_[i]);
        else
            out.word.push_back(per_[(i - pre_.size()) % per_.size()]);
    }
    return out;
}

PeriodicCFWord::Surd PeriodicCFWord::tail_value(std::size_t n) const {
    // Purely periodic part, rotated so the tail starts at position n+1.
    const std::size_t P = pre_.size(), m = per_.size();
    const std::size_t rot = n >= P ? (n - P) % m : 0;
    CFWord cycle;
    for (std::size_t i = 0; i < m; ++i) cycle.push_back(per_[(rot + i) % m]);

    // y = [c_1..c_m, y] gives q_{m-1} y^2 + (q_m - p_{m-1}) y - p_m = 0.
    const long lm = static_cast<long>(m);
    Int A = cycle.q(lm - 1);
    Int B = cycle.q(lm) - cycle.p(lm - 1);
    Int C = -cycle.p(lm);

    if (n < P) {
        // Tail = [pre_{n+1}..pre_P, y]: compose the Moebius map of the
        // remaining preperiod with y and re-derive the quadratic.
        CFWord w;
        for (std::size_t i = n; i < P; ++i) w.push_back(pre_[i]);
        const long k = static_cast<long>(w.size());
        const Int pk = w.p(k), pk1 = w.p(k - 1), qk = w.q(k), qk1 = w.q(k - 1);
        Int A2 = A * qk * qk - B * qk * qk1 + C * qk1 * qk1;
        Int B2 = -2 * A * pk * qk + B * (pk * qk1 + qk * pk1) - 2 * C * pk1 * qk1;
        Int C2 = A * pk * pk - B * pk * pk1 + C * pk1 * pk1;
        A = A2;
        B = B2;
        C = C2;
    }
    if (A < 0) {
        A = -A;
        B = -B;
        C = -C;
    }
    Int g = gcd(gcd(abs(A), abs(B)), abs(C));
    if (g > 1) {
        A /= g;
        B /= g;
        C /= g;
    }

    const double a = A.convert_to<double>(), b = B.convert_to<double>(), c = C.convert_to<double>();
    const double disc = std::sqrt(b * b - 4 * a * c);
    double root = (-b + disc) / (2 * a);
    if (!(root > 0 && root < 1)) root = (-b - disc) / (2 * a);
    return {A, B, C, root};
}

}  // namespace cfdim
