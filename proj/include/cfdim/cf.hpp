#pragma once
// Exact continued-fraction arithmetic: expansion of rationals, convergents,
// finite word values, reversed-word values, the Cassels identity and the
// Dirichlet convergent selection. All values are exact.

#include <cstddef>
#include <utility>
#include <vector>

#include "cfdim/numeric.hpp"

namespace cfdim {

// A finite string of partial quotients (a_1, ..., a_n), a_i >= 1, with the
// convergent pairs (p_i, q_i) cached from the seeds
// (p_{-1}, q_{-1}) = (1, 0) and (p_0, q_0) = (0, 1).
class CFWord {
  public:
    CFWord();
    explicit CFWord(std::vector<Int> quotients);
    CFWord(std::initializer_list<long> quotients);

    void push_back(const Int& a);
    void pop_back();

    std::size_t size() const { return a_.size(); }
    bool empty() const { return a_.empty(); }

    // 1-based partial quotient a_i, 1 <= i <= size().
    const Int& a(std::size_t i) const;
    const std::vector<Int>& quotients() const { return a_; }

    // Convergent numerator/denominator, valid for -1 <= i <= size().
    const Int& p(long i) const;
    const Int& q(long i) const;
    std::pair<Int, Int> convergent(long i) const { return {p(i), q(i)}; }

    // Exact value p_n/q_n of the finite continued fraction; 0 for the
    // empty word.
    Rat value() const;

    bool operator==(const CFWord& other) const { return a_ == other.a_; }

    std::string str() const;  // "[1,1,2]"

  private:
    std::vector<Int> a_;
    // pq_[i+1] = (p_i, q_i); pq_[0] is the (1,0) seed.
    std::vector<std::pair<Int, Int>> pq_;
};

struct Expansion {
    CFWord word;
    bool truncated = false;  // set when max_depth cut the expansion short
};

// Continued-fraction expansion of x in [0,1). Terminating expansions are
// canonical: the final quotient is >= 2 (the empty word encodes 0).
Expansion cf_expand(const Rat& x, std::size_t max_depth);

// Expansion without a depth cap; always terminates for rationals.
CFWord cf_expand_full(const Rat& x);

// Convergent pairs (p_i, q_i) for i = 0..n; the leading entry is the
// (0, 1) seed, so the empty word yields exactly one pair.
std::vector<std::pair<Int, Int>> convergents(const CFWord& word);

// Exact value of the word; equals word.value().
Rat word_value(const CFWord& word);

// Value of the reversed prefix [a_n, a_{n-1}, ..., a_1]; classically equal
// to q_{n-1}/q_n. Requires 1 <= n <= word.size().
Rat reversed_value(const CFWord& word, std::size_t n);

struct CasselsReport {
    std::size_t n = 0;
    Rat theta_next;  // tail value [a_{n+1}, ..., a_m]
    Rat phi_n;       // reversed prefix value [a_n, ..., a_1]
    Rat lhs;         // (1 + theta*phi)^{-1}
    Rat rhs;         // q_n * |q_{n-1} x - p_{n-1}|
    Rat residual;    // lhs - rhs, exactly 0 for rational x
};

// Exact check of the identity (1 + theta_{n+1} phi_n)^{-1}
// = q_n |q_{n-1} x - p_{n-1}|. Throws TailUndefinedError when the
// expansion of x has length <= n.
CasselsReport cassels_check(const Rat& x, std::size_t n);

// The convergent pair (p, q) with q_n < t <= q_{n+1}; satisfies
// |q x - p| <= 1/t and 1 <= q < t. Requires t > 1.
std::pair<Int, Int> dirichlet_solve(const Rat& x, const Rat& t);

// Eventually periodic word (preperiod + repeating period): the exact
// representation of a quadratic irrational. unfold() produces finite
// truncations; tail_value() gives the exact tail as a quadratic surd.
class PeriodicCFWord {
  public:
    PeriodicCFWord(std::vector<Int> preperiod, std::vector<Int> period);

    // First `depth` quotients, flagged as truncated.
    Expansion unfold(std::size_t depth) const;

    // Exact tail value (a + b*sqrt(d))/c at position n (the value of
    // [a_{n+1}, a_{n+2}, ...]); represented by its minimal polynomial
    // coefficients A x^2 + B x + C = 0 together with the selected root.
    struct Surd {
        Int A, B, C;   // A x^2 + B x + C = 0, A > 0
        double approx; // the root in (0, 1)
    };
    Surd tail_value(std::size_t n) const;

    const std::vector<Int>& preperiod() const { return pre_; }
    const std::vector<Int>& period() const { return per_; }

  private:
    std::vector<Int> pre_, per_;
};

}  // namespace cfdim
