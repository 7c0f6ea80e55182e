#ifndef ROTORLAB_EXPANSIONS_HPP
#define ROTORLAB_EXPANSIONS_HPP

#include "areas.hpp"
#include "interval.hpp"

#include <functional>
#include <random>

namespace rotorlab {

// Z(m, n) with the in-atom index n treated as a real parameter.
inline RPoint z_continuous(const RealVertices& v, long m, const Real& n)
{
    RPoint u = v.P0(m);
    auto [c0, s0] = v.cs_at(n - 1);
    auto [c1, s1] = v.cs_at(n);
    RPoint q = v.q0_from(c0, s0);
    RPoint w = v.P1(m - 1) - u, z = v.q1_from(c1, s1) - q;
    Real k = cross(w, z), a = cross(u, w), b = cross(q, z);
    return {(-z.x * a + w.x * b) / k, (-z.y * a + w.y * b) / k};
}

// τ at which the two candidate disk areas coincide, n treated as continuous.
inline Real tau_mid(const RealVertices& v, long m)
{
    const Real& lam = v.lambda();
    auto b = n_bounds(v, m);
    auto f = [&](const Real& n) {
        auto [a0, a1] = disk_parts(z_continuous(v, m, n), lam);
        return a0 - a1;
    };
    Real lo(std::max<long>(1, b.lo - 1)), hi(std::min<long>(v.N() - 1, b.hi + 1));
    if (f(lo) * f(hi) > 0) throw std::runtime_error("tau_mid: no sign change over the admissible bracket");
    std::uintmax_t iters = 400;
    auto r = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<Real>(300), iters);
    return v.tau((r.first + r.second) / 2);
}

struct RemainderSpec {
    std::string name;
    RInterval published;
    long m_min = 2, m_max = 0; // m_max = 0: up to the cut-off λ^{-1/4}
    bool needs_n = false;      // sample n from the admissible bracket of m
    std::function<Real(const RealVertices&, long m, long n)> value;
};

struct RemainderSample {
    Real lambda;
    long m = 0, n = 0;
    Real value;
};

struct MembershipReport {
    std::string name;
    RInterval published;
    long tested = 0;
    Real min_seen, max_seen;
    bool pass = true;
    std::optional<RemainderSample> witness;
};

namespace detail {

inline Real tau_of_point(const RealVertices& v, const RPoint& p, bool on_gamma1) { return v.tau(v.n_of_x(p.x, on_gamma1)); }

inline Exact q(long p, long qq) { return make_exact(p, qq); }

} // namespace detail

// Published remainder intervals with the recipe that isolates each remainder.
inline std::vector<RemainderSpec> remainder_specs()
{
    using detail::q;
    std::vector<RemainderSpec> s;
    auto L = [](const RealVertices& v) -> const Real& { return v.lambda(); };

    s.push_back({"r0x", {q(-1697, 100000000), q(1507, 100000)}, 2, 0, false, [L](const RealVertices& v, long m, long) {
                     const Real& l = L(v);
                     Real mu(2 * m + 1);
                     Real lead = Real(m + 1) / mu + l;
                     return ((lead - v.P0(m).x) * mu - Real(m * (m + 1)) / 6 * l * l) / (l * l * l);
                 }});
    s.push_back({"r1x", {q(-8523, 1000000), q(1243, 100000)}, 2, 0, false, [L](const RealVertices& v, long m, long) {
                     const Real& l = L(v);
                     Real mu(2 * m - 1);
                     Real lead = Real(m) / mu + l;
                     return ((lead - v.P1(m).x) * mu - Real((m + 2) * (m + 3)) / 6 * l * l) / (l * l * l);
                 }});
    s.push_back({"r1y", {q(-5449, 1000000), q(1203, 50000)}, 2, 0, false, [L](const RealVertices& v, long m, long) {
                     const Real& l = L(v);
                     Real mu(2 * m - 1);
                     return ((v.P1(m).y - 1) * mu + l - Real(m * (m + 2)) / 3 * l * l * l) / (l * l * l * l);
                 }});
    s.push_back({"r2x", {q(-2051, 5000), q(4499, 10000)}, 2, 0, true, [L](const RealVertices& v, long, long n) {
                     const Real& l = L(v);
                     Real t = v.tau(Real(n));
                     Real e = (1 + t) / 2 + l / 8 * (3 - 2 * t - t * t) + l * l / 32 * (2 - 5 * t + 2 * t * t + t * t * t);
                     return (v.Q0(n).x - e) / (l * l * l);
                 }});
    s.push_back({"r3x", {q(-23, 20), q(389, 250)}, 2, 0, true, [L](const RealVertices& v, long, long n) {
                     const Real& l = L(v);
                     Real t = v.tau(Real(n));
                     Real e = (1 + t) / 2 + l / 8 * (7 - 2 * t - 5 * t * t) +
                              l * l / 32 * (-6 - 29 * t + 10 * t * t + 25 * t * t * t);
                     return (v.Q1(n).x - e) / (l * l * l);
                 }});
    s.push_back({"r3y", {q(519, 5000), q(539, 100)}, 2, 0, true, [L](const RealVertices& v, long, long n) {
                     const Real& l = L(v);
                     Real t = v.tau(Real(n));
                     Real e = 1 - t * l + l * l / 4 * (1 + 2 * t + 5 * t * t) -
                              l * l * l / 16 * (2 + 11 * t + 10 * t * t + 25 * t * t * t);
                     return (v.Q1(n).y - e) / (l * l * l * l);
                 }});
    s.push_back({"r0tau", {q(-4541, 1000), q(3087, 1000)}, 2, 0, false, [L](const RealVertices& v, long m, long) {
                     const Real& l = L(v);
                     Real iu = Real(1) / Real(2 * m + 1);
                     Real e = iu + l / 4 * (5 + 2 * iu + iu * iu) +
                              l * l / 48 * (24 + (57 - 16 * Real(m * (m + 1))) * iu + 12 * iu * iu + 3 * iu * iu * iu);
                     return (detail::tau_of_point(v, v.P0(m), false) - e) / (l * l * l);
                 }});
    s.push_back({"r1tau", {q(-633, 20), q(731, 50)}, 2, 0, false, [L](const RealVertices& v, long m, long) {
                     const Real& l = L(v);
                     Real iu = Real(1) / Real(2 * m - 1);
                     Real e = iu + l / 4 * (1 + 2 * iu + 5 * iu * iu) +
                              l * l / 48 *
                                  (24 + (129 - 16 * Real((m + 2) * (m + 3))) * iu + 60 * iu * iu + 75 * iu * iu * iu);
                     return (detail::tau_of_point(v, v.P1(m), true) - e) / (l * l * l);
                 }});
    s.push_back({"m_tau", {q(2, 5), q(1001, 1000)}, 3, 0, true,
                 [](const RealVertices& v, long m, long n) { return Real(m) * v.tau(Real(n)); }});
    s.push_back({"rZx", {q(-1033, 2000), q(2671, 5000)}, 3, 0, true, [L](const RealVertices& v, long m, long n) {
                     const Real& l = L(v);
                     Real t = v.tau(Real(n)), mm(m);
                     Real e = (1 + t) / 2 + l / 8 * (7 + (1 - 4 * mm) * t * t) +
                              l * l / 32 * (4 - (5 + 16 * mm) * t + (1 - 8 * mm + 16 * mm * mm) * t * t * t);
                     return (fixed_point_z(v, m, n).x - e) / (l * l * mp::sqrt(l));
                 }});
    s.push_back({"rZy", {q(-5563, 1000), q(7373, 1000)}, 3, 0, true, [L](const RealVertices& v, long m, long n) {
                     const Real& l = L(v);
                     Real t = v.tau(Real(n)), mm(m);
                     Real e = 1 + l / 4 * (1 - (2 * mm + 1) * t) + l * l / 16 * (1 + 2 * mm + (8 * mm * mm + 2 * mm - 1) * t * t) +
                              l * l * l / 192 *
                                  (-20 + 48 * mm - 16 * mm * mm + (23 + 6 * mm - 80 * mm * mm) * t -
                                   (3 - 18 * mm + 96 * mm * mm * mm) * t * t * t);
                     return (fixed_point_z(v, m, n).y - e) / (l * l * l * mp::sqrt(l));
                 }});
    auto area_remainder = [L](int which, long shift) {
        return [L, which, shift](const RealVertices& v, long m, long n) {
            const Real& l = L(v);
            Real t = v.tau(Real(n)), pi = pi_real();
            auto [a0, a1] = disk_parts(fixed_point_z(v, m, n), l);
            Real k = 1 - Real(2 * m + shift) * t;
            return (pi * (which == 0 ? a0 : a1) - pi / 16 * k * k * l * l) / (l * l * mp::sqrt(l));
        };
    };
    s.push_back({"rA0", {q(-6347, 100000), q(183, 6250)}, 3, 0, true, area_remainder(0, 1)});
    s.push_back({"rA1", {q(-7091, 100000), q(2857, 50000)}, 3, 0, true, area_remainder(1, -3)});
    s.push_back({"rA1-rA0", {q(-859, 50000), q(3761, 100000)}, 3, 0, true,
                 [f1 = area_remainder(1, -3), f0 = area_remainder(0, 1)](const RealVertices& v, long m, long n) {
                     return f1(v, m, n) - f0(v, m, n);
                 }});
    s.push_back({"rA0(m=2)", {q(-393, 2000), q(787, 20000)}, 2, 2, true, area_remainder(0, 1)});
    s.push_back({"rA1(m=2)", {q(-7859, 1000000), q(7859, 1000000)}, 2, 2, true, area_remainder(1, -3)});
    s.push_back({"rmid", {q(-2189, 100000), q(599, 25000)}, 3, 0, false, [L](const RealVertices& v, long m, long) {
                     return (tau_mid(v, m) - Real(1) / Real(2 * m - 1)) / mp::sqrt(L(v));
                 }});
    s.push_back({"rmid(m=2)", {q(-1003, 25000), q(601, 5000)}, 2, 2, false, [L](const RealVertices& v, long m, long) {
                     return (tau_mid(v, m) - Real(1) / Real(2 * m - 1)) / mp::sqrt(L(v));
                 }});
    s.push_back({"tau_mid", {Exact(0), q(2, 5)}, 2, 0, false,
                 [](const RealVertices& v, long m, long) { return tau_mid(v, m); }});
    return s;
}

inline const RemainderSpec& find_remainder_spec(const std::vector<RemainderSpec>& specs, const std::string& name)
{
    for (const auto& s : specs)
        if (s.name == name) return s;
    throw std::invalid_argument("unknown remainder spec: " + name);
}

// Samples λ log-uniformly in [lam_lo, lam_hi] (cut-off regime), m uniformly in
// the spec's range capped at ⌊λ^{-1/4}⌋, and n uniformly in the admissible bracket.
inline MembershipReport check_remainder_membership(const RemainderSpec& spec, long samples, std::uint64_t seed,
                                                   double lam_lo = 1e-8, double lam_hi = 1e-4)
{
    MembershipReport rep;
    rep.name = spec.name;
    rep.published = spec.published;
    Real lo = to_real(spec.published.lo), hi = to_real(spec.published.hi);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> expo(std::log10(lam_lo), std::log10(lam_hi));
    while (rep.tested < samples) {
        Real lam = mp::pow(Real(10), Real(expo(rng)));
        long cut = static_cast<long>(mp::floor(mp::pow(lam, Real(-0.25))));
        long m_hi = spec.m_max > 0 ? std::min(spec.m_max, cut) : cut;
        if (m_hi < spec.m_min) continue;
        long m = std::uniform_int_distribution<long>(spec.m_min, m_hi)(rng);
        RealVertices v(lam);
        long n = 0;
        if (spec.needs_n) {
            auto b = n_bounds(v, m);
            if (b.empty()) continue;
            n = std::uniform_int_distribution<long>(b.lo, b.hi)(rng);
        }
        Real val = spec.value(v, m, n);
        if (rep.tested == 0) rep.min_seen = rep.max_seen = val;
        rep.min_seen = std::min(rep.min_seen, val);
        rep.max_seen = std::max(rep.max_seen, val);
        ++rep.tested;
        if ((val < lo || val > hi) && rep.pass) {
            rep.pass = false;
            rep.witness = RemainderSample{lam, m, n, val};
        }
    }
    return rep;
}

} // namespace rotorlab

#endif
