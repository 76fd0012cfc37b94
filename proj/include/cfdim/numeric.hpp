#pragma once
// Number substrate: exact integers and rationals on GMP, high-precision
// reals on MPFR. Everything downstream treats these as plain value types.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cfdim {

namespace mp = boost::multiprecision;

using Int  = mp::number<mp::gmp_int, mp::et_off>;
using Rat  = mp::number<mp::gmp_rational, mp::et_off>;
// Variable-precision real; precision is set process-wide in bits.
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

// ---------------------------------------------------------------------------
// Precision control. MPFR precision is tracked in bits; Boost's interface
// takes decimal digits, so we convert and keep the requested bit count.

inline unsigned& detail_precision_bits() {
    static unsigned bits = 128;
    return bits;
}

inline void set_real_precision_bits(unsigned bits) {
    if (bits < 24) throw std::invalid_argument("precision must be at least 24 bits");
    detail_precision_bits() = bits;
    const unsigned digits10 = static_cast<unsigned>(std::ceil(bits * 0.3010299957)) + 2;
    Real::default_precision(digits10);
}

inline unsigned real_precision_bits() { return detail_precision_bits(); }

// ---------------------------------------------------------------------------
// Small helpers over Int/Rat.

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    return Rat(num) / Rat(den);
}

inline Int floor_rat(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.backend().data(), mpq_numref(x.backend().data()),
               mpq_denref(x.backend().data()));
    return q;
}

inline Int ceil_rat(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.backend().data(), mpq_numref(x.backend().data()),
               mpq_denref(x.backend().data()));
    return q;
}

inline Int ipow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.backend().data(), base.backend().data(), e);
    return r;
}

// floor(x^(1/k)) for x >= 0, k >= 1.
inline Int iroot_floor(const Int& x, unsigned long k) {
    if (x < 0) throw std::domain_error("iroot_floor of negative value");
    Int r;
    mpz_root(r.backend().data(), x.backend().data(), k);
    return r;
}

inline Rat abs_rat(const Rat& x) { return x < 0 ? Rat(-x) : x; }

// ---------------------------------------------------------------------------
// Exact predicates and bounds for c * q^tau with rational c > 0, tau >= 0.
// All comparisons reduce to integer comparisons, so window arithmetic in the
// Cantor construction never rounds.

// sign of (a - c*q^tau): -1, 0, +1.
inline int cmp_int_vs_scaled_pow(const Int& a, const Rat& c, const Int& q, const Rat& tau) {
    if (a < 0) return -1;  // c*q^tau > 0 throughout
    const Int cn = numerator(c), cd = denominator(c);
    const Int tn = numerator(tau), td = denominator(tau);
    if (tn < 0) throw std::domain_error("negative exponent in scaled power");
    const auto u = tn.convert_to<unsigned long>();
    const auto v = td.convert_to<unsigned long>();
    // a >= c*q^(u/v)  <=>  (a*cd)^v >= cn^v * q^u
    const Int lhs = ipow(a * cd, v);
    const Int rhs = ipow(cn, v) * ipow(q, u);
    return lhs.compare(rhs);
}

// sign of (x - c*q^tau) for positive rationals x, c: reduces to an integer
// comparison through the v-th power.
inline int cmp_rat_vs_scaled_pow(const Rat& x, const Rat& c, const Int& q, const Rat& tau) {
    if (x <= 0 || c <= 0 || q <= 0) throw std::domain_error("cmp_rat_vs_scaled_pow domain");
    const Int tn = numerator(tau), td = denominator(tau);
    if (tn < 0) throw std::domain_error("negative exponent in scaled power");
    const auto u = tn.convert_to<unsigned long>();
    const auto v = td.convert_to<unsigned long>();
    const Int lhs = ipow(numerator(x) * denominator(c), v);
    const Int rhs = ipow(numerator(c) * denominator(x), v) * ipow(q, u);
    return lhs.compare(rhs);
}

// Largest integer a with a <= c*q^tau; negative result means the bound is < 0
// (cannot happen for positive inputs, returned as 0 guard).
inline Int floor_scaled_pow(const Rat& c, const Int& q, const Rat& tau) {
    const Int cn = numerator(c), cd = denominator(c);
    const Int tn = numerator(tau), td = denominator(tau);
    if (c <= 0 || q <= 0 || tn < 0) throw std::domain_error("floor_scaled_pow domain");
    const auto u = tn.convert_to<unsigned long>();
    const auto v = td.convert_to<unsigned long>();
    const Int target = ipow(cn, v) * ipow(q, u);  // (a*cd)^v <= target
    Int a = iroot_floor(target, v) / cd;
    while (cmp_int_vs_scaled_pow(a + 1, c, q, tau) <= 0) ++a;
    while (a > 0 && cmp_int_vs_scaled_pow(a, c, q, tau) > 0) --a;
    return a;
}

inline Int ceil_scaled_pow(const Rat& c, const Int& q, const Rat& tau) {
    Int f = floor_scaled_pow(c, q, tau);
    return cmp_int_vs_scaled_pow(f, c, q, tau) == 0 ? f : f + 1;
}

// Nearest integer to c*q^tau, half rounded up.
inline Int round_scaled_pow(const Rat& c, const Int& q, const Rat& tau) {
    Int f = floor_scaled_pow(c, q, tau);
    // c*q^tau >= f + 1/2  <=>  2c*q^tau >= 2f+1
    return cmp_int_vs_scaled_pow(2 * f + 1, 2 * c, q, tau) <= 0 ? f + 1 : f;
}

// ---------------------------------------------------------------------------
// Parsing: "p/q", plain integers, and decimal literals ("0.3" -> 3/10),
// all exact.

inline Rat parse_rat(std::string_view s) {
    auto fail = [&] { throw std::invalid_argument("cannot parse rational: '" + std::string(s) + "'"); };
    if (s.empty()) fail();
    const auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        const std::string num(s.substr(0, slash)), den(s.substr(slash + 1));
        if (num.empty() || den.empty()) fail();
        try {
            return make_rat(Int(num), Int(den));
        } catch (const std::runtime_error&) {
            fail();
        }
    }
    const auto dot = s.find('.');
    try {
        if (dot == std::string_view::npos) return Rat(Int(std::string(s)));
        std::string digits(s.substr(0, dot));
        const std::string frac(s.substr(dot + 1));
        if (frac.empty() && digits.empty()) fail();
        digits += frac;  // sign stays in the leading integral part
        if (digits == "-" || digits.empty()) fail();
        return make_rat(Int(digits), ipow(Int(10), frac.size()));
    } catch (const std::runtime_error&) {
        fail();
    }
    return Rat(0);  // unreachable
}

inline std::string rat_str(const Rat& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

// ---------------------------------------------------------------------------
// Seeded arbitrary-precision RNG (Mersenne twister state from GMP).

class GmpRng {
  public:
    explicit GmpRng(unsigned long seed) {
        gmp_randinit_mt(state_);
        gmp_randseed_ui(state_, seed);
    }
    ~GmpRng() { gmp_randclear(state_); }
    GmpRng(const GmpRng&) = delete;
    GmpRng& operator=(const GmpRng&) = delete;

    // Uniform draw from [lo, hi], both inclusive.
    Int uniform(const Int& lo, const Int& hi) {
        if (hi < lo) throw std::invalid_argument("empty range in GmpRng::uniform");
        Int span = hi - lo + 1, r;
        mpz_urandomm(r.backend().data(), state_, span.backend().data());
        return lo + r;
    }

  private:
    gmp_randstate_t state_;
};

}  // namespace cfdim
