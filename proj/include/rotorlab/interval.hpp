#ifndef ROTORLAB_INTERVAL_HPP
#define ROTORLAB_INTERVAL_HPP

#include "number.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rotorlab {

struct RInterval {
    Exact lo, hi;

    RInterval() = default;
    RInterval(Exact v) : lo(v), hi(std::move(v)) {}
    RInterval(Exact a, Exact b) : lo(std::move(a)), hi(std::move(b))
    {
        if (lo > hi) throw std::invalid_argument("RInterval: lo > hi");
    }

    bool contains(const Exact& x) const { return lo <= x && x <= hi; }
    bool contains(const RInterval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool contains_zero() const { return lo <= 0 && hi >= 0; }
    Exact width() const { return hi - lo; }

    friend bool operator==(const RInterval& a, const RInterval& b) { return a.lo == b.lo && a.hi == b.hi; }
};

inline std::string to_string(const RInterval& a) { return "[" + to_string(a.lo) + ", " + to_string(a.hi) + "]"; }

inline RInterval iv_add(const RInterval& a, const RInterval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

inline RInterval iv_neg(const RInterval& a) { return {-a.hi, -a.lo}; }

inline RInterval iv_sub(const RInterval& a, const RInterval& b) { return iv_add(a, iv_neg(b)); }

inline RInterval iv_mul(const RInterval& a, const RInterval& b)
{
    Exact p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

inline RInterval iv_inv(const RInterval& a)
{
    if (a.contains_zero())
        throw std::domain_error("iv_inv: interval " + to_string(a) + " contains zero (rule 3 requires ab > 0)");
    return {1 / a.hi, 1 / a.lo};
}

inline RInterval iv_div(const RInterval& a, const RInterval& b) { return iv_mul(a, iv_inv(b)); }

// [a,b]^n for n ≥ 0; an even power of an interval straddling zero has lower bound 0.
inline RInterval iv_pow(const RInterval& a, unsigned n)
{
    if (n == 0) return {Exact(1)};
    Exact x = pow_int(a.lo, n), y = pow_int(a.hi, n);
    if (n % 2 == 0 && a.lo < 0 && a.hi > 0) return {Exact(0), std::max(x, y)};
    return {std::min(x, y), std::max(x, y)};
}

inline RInterval iv_pow_neg(const RInterval& a, unsigned n)
{
    if (a.lo <= 0) throw std::domain_error("iv_pow_neg: interval " + to_string(a) + " is not positive");
    return iv_inv(iv_pow(a, n));
}

namespace detail {

inline Integer pow10(unsigned k) { return mp::pow(Integer(10), k); }

inline Exact pow10_exact(long e) { return e >= 0 ? Exact(pow10(static_cast<unsigned>(e))) : Exact(Integer(1), pow10(static_cast<unsigned>(-e))); }

// Largest e with 10^e ≤ x, for x > 0.
inline long decimal_exponent(const Exact& x)
{
    long e = static_cast<long>(numerator(x).str().size()) - static_cast<long>(denominator(x).str().size());
    while (pow10_exact(e) > x) --e;
    while (pow10_exact(e + 1) <= x) ++e;
    return e;
}

// Rounds x ≥ 0 to `digits` significant digits, down or up.
inline Exact round_magnitude(const Exact& x, int digits, bool up)
{
    if (x == 0) return x;
    long e = decimal_exponent(x);
    Exact unit = pow10_exact(e - digits + 1);
    Exact q = x / unit;
    Integer k = up ? ceil_of(q) : floor_of(q);
    return Exact(k) * unit;
}

} // namespace detail

inline Exact round_down(const Exact& x, int digits)
{
    return x >= 0 ? detail::round_magnitude(x, digits, false) : Exact(-detail::round_magnitude(-x, digits, true));
}

inline Exact round_up(const Exact& x, int digits) { return -round_down(-x, digits); }

// Outward rounding to rationals with power-of-ten denominators and `digits`
// significant digits; fractions come out reduced.
inline RInterval round_outward(const RInterval& a, int digits)
{
    if (digits < 1) throw std::invalid_argument("round_outward: digits must be >= 1");
    return {round_down(a.lo, digits), round_up(a.hi, digits)};
}

struct MonomialTerm {
    Exact coefficient;
    std::vector<int> exponents; // one per declared variable
};

// Domain restriction λ ≤ 10^{-k}, 2 ≤ m ≤ λ^{-1/k}: then λ^a m^b ≤ 10^{b−ka} whenever b ≤ k·a.
struct CutOff {
    size_t lambda_var = 0;
    size_t m_var = 1;
    int k = 4;
};

struct BoundOptions {
    int digits = 4;
    std::optional<CutOff> cutoff;
};

inline std::string describe(const MonomialTerm& t)
{
    std::string s = to_string(t.coefficient);
    for (size_t i = 0; i < t.exponents.size(); ++i) s += " x" + std::to_string(i) + "^" + std::to_string(t.exponents[i]);
    return s;
}

// Interval enclosure of Σ terms over a box, rounding outward after every operation.
inline RInterval bound_polynomial(const std::vector<MonomialTerm>& terms, const std::vector<RInterval>& box,
                                  const BoundOptions& opt = {})
{
    auto rnd = [&](const RInterval& a) { return round_outward(a, opt.digits); };
    RInterval total{Exact(0)};
    for (const auto& t : terms) {
        if (t.exponents.size() != box.size())
            throw std::invalid_argument("bound_polynomial: term has undeclared variables: " + describe(t));
        RInterval acc = rnd(RInterval{t.coefficient});
        bool joint = false;
        if (opt.cutoff) {
            const auto& c = *opt.cutoff;
            int a = t.exponents[c.lambda_var], b = t.exponents[c.m_var];
            if (b > 0) {
                if (b > c.k * a)
                    throw std::invalid_argument("bound_polynomial: term not bounded under the cut-off: " + describe(t));
                acc = rnd(iv_mul(acc, RInterval{Exact(0), detail::pow10_exact(b - c.k * a)}));
                joint = true;
            } else if (b < 0) {
                acc = rnd(iv_mul(acc, RInterval{Exact(0), Exact(Integer(1), mp::pow(Integer(2), static_cast<unsigned>(-b)))}));
            }
        }
        for (size_t i = 0; i < box.size(); ++i) {
            int e = t.exponents[i];
            if (e == 0) continue;
            if (opt.cutoff && (i == opt.cutoff->m_var || (joint && i == opt.cutoff->lambda_var))) continue;
            RInterval p = e > 0 ? iv_pow(box[i], static_cast<unsigned>(e)) : iv_pow_neg(box[i], static_cast<unsigned>(-e));
            acc = rnd(iv_mul(acc, rnd(p)));
        }
        total = rnd(iv_add(total, acc));
    }
    return total;
}

inline Exact evaluate(const std::vector<MonomialTerm>& terms, const std::vector<Exact>& point)
{
    Exact s(0);
    for (const auto& t : terms) {
        Exact v = t.coefficient;
        for (size_t i = 0; i < point.size(); ++i) {
            int e = t.exponents[i];
            if (e > 0) v *= pow_int(point[i], static_cast<unsigned>(e));
            else if (e < 0) v /= pow_int(point[i], static_cast<unsigned>(-e));
        }
        s += v;
    }
    return s;
}

// Derivative of a univariate polynomial given by coefficients c[k] of x^k.
inline std::vector<Exact> derivative(const std::vector<Exact>& c)
{
    std::vector<Exact> d;
    for (size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * Exact(static_cast<long>(k)));
    return d;
}

inline std::vector<MonomialTerm> univariate_terms(const std::vector<Exact>& c)
{
    std::vector<MonomialTerm> t;
    for (size_t k = 0; k < c.size(); ++k)
        if (c[k] != 0) t.push_back({c[k], {static_cast<int>(k)}});
    return t;
}

// Leading part of the out-atom area denominator, as a polynomial in x = m²θ².
inline std::vector<Exact> denominator_leading_poly()
{
    return {Exact(-1728000), Exact(3456000), make_exact(-11513088, 5), Exact(1433600), make_exact(2328576, 25),
            make_exact(384768768, 3125), make_exact(24096096064L, 1953125)};
}

struct MonotoneCertificate {
    RInterval derivative_bound; // enclosure of h′ on the interval
    Exact h_left, h_right;      // exact endpoint values
    bool increasing = false;    // derivative enclosure strictly positive
    bool negative = false;      // increasing and h(right) < 0
};

// Certifies that h is increasing on [0, x1] by bounding h′, and hence negative
// there when h(x1) < 0.
inline MonotoneCertificate certify_negative_increasing(const std::vector<Exact>& h, const Exact& x1, int digits = 4)
{
    MonotoneCertificate c;
    c.derivative_bound = bound_polynomial(univariate_terms(derivative(h)), {RInterval{Exact(0), x1}}, {digits, {}});
    auto terms = univariate_terms(h);
    c.h_left = evaluate(terms, {Exact(0)});
    c.h_right = evaluate(terms, {x1});
    c.increasing = c.derivative_bound.lo > 0;
    c.negative = c.increasing && c.h_right < 0;
    return c;
}

} // namespace rotorlab

#endif
