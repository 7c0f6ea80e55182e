#ifndef ROTORLAB_VERTICES_HPP
#define ROTORLAB_VERTICES_HPP

#include "geometry.hpp"

#include <boost/math/tools/roots.hpp>

#include <cstdint>
#include <memory>
#include <mutex>
#include <type_traits>

namespace rotorlab {

inline Real theta_of(const Real& lam) { return mp::asin(lam / 2); }

inline Real lambda_plus() { return 2 * mp::cos(4 * pi_real() / 9); }

// Throws std::invalid_argument unless 0 < λ < λ₊ (the range with a well-formed triangle Λ).
inline void require_return_range(const Exact& lam)
{
    if (lam <= 0 || to_real(lam) >= lambda_plus())
        throw std::invalid_argument("lambda must lie in (0, 2cos(4pi/9)): got " + to_string(lam));
}

inline void require_map_range(const Exact& lam)
{
    if (lam <= -1 || to_real(lam) >= lambda_plus())
        throw std::invalid_argument("lambda must lie in (-1, 2cos(4pi/9)): got " + to_string(lam));
}

struct Counts {
    long N = 0, M = 0;
    bool non_generic = false;
};

// N = ⌊π/(8θ) − 1/4⌋, M = ⌊π/(4θ) − 1/2⌋.
inline Counts counts(const Real& lam)
{
    Real th = theta_of(lam), pi = pi_real();
    Real an = pi / (8 * th) - Real(1) / 4, am = pi / (4 * th) - Real(1) / 2;
    Counts c;
    c.N = static_cast<long>(mp::floor(an));
    c.M = static_cast<long>(mp::floor(am));
    Real eps("1e-30");
    auto near_int = [&](const Real& v) { return mp::abs(v - mp::round(v)) < eps; };
    c.non_generic = near_int(an) || near_int(am);
    return c;
}

inline Counts counts(const Exact& lam) { return counts(to_real(lam)); }

// Closed-form vertices of the regular atoms, for exact rational λ (Chebyshev
// recurrences) or high-precision real λ (trigonometric evaluation).
template <class T>
class Vertices {
public:
    static constexpr bool exact = std::is_same_v<T, Exact>;
    using P = Vec2<T>;

    explicit Vertices(const T& lam) : lam_(lam)
    {
        Real rl;
        if constexpr (exact) {
            require_return_range(lam);
            rl = to_real(lam);
            t_ = {T(1)};
            u_ = {T(0)};
        } else {
            if (lam <= 0) throw std::invalid_argument("lambda must be positive");
            rl = lam;
            theta_ = theta_of(lam);
            root_ = mp::sqrt(4 - lam * lam);
        }
        counts_ = counts(rl);
    }

    const T& lambda() const { return lam_; }
    long N() const { return counts_.N; }
    long M() const { return counts_.M; }
    bool non_generic() const { return counts_.non_generic; }

    // Precomputes Chebyshev values up to index k so later calls are read-only.
    void prepare(long k) const
    {
        if constexpr (exact) extend(k);
    }
    void prepare_all() const { prepare(std::max(4 * N() + 8, 2 * M() + 8)); }

    // tanθ / tan(kθ) for odd k ≥ 1, which equals (λ/2)·U_{k−1}(λ/2)/T_k(λ/2).
    T tan_ratio(long k) const
    {
        if (k < 1 || k % 2 == 0) throw std::invalid_argument("tan_ratio: k must be odd and positive");
        if constexpr (exact) {
            extend(k);
            return lam_ / 2 * u_[static_cast<size_t>(k)] / t_[static_cast<size_t>(k)];
        } else {
            return mp::tan(theta_) / mp::tan(k * theta_);
        }
    }

    // cos(4nθ) and √(4−λ²)·sin(4nθ).
    std::pair<T, T> cs(long n) const
    {
        if constexpr (exact) {
            extend(4 * n);
            size_t k = static_cast<size_t>(4 * n);
            return {t_[k], (lam_ * lam_ - 4) / 2 * u_[k]};
        } else {
            return cs_at(Real(n));
        }
    }

    // Continuous-index variant (real path only).
    std::pair<Real, Real> cs_at(const Real& n) const
    {
        static_assert(!exact, "continuous index requires the real path");
        Real phi = 4 * n * theta_;
        return {mp::cos(phi), root_ * mp::sin(phi)};
    }

    T g() const { return (1 + 2 * lam_ - lam_ * lam_ - pow3()) / (2 - lam_ * lam_); }
    T g_prime() const { return (1 - lam_ * lam_) / (2 - lam_ * lam_); }
    T g_second() const { return 1 / (1 + lam_ - lam_ * lam_); }

    P P0(long m) const
    {
        if (m < 1 || m > M()) throw std::out_of_range("P0: m outside [1, M]");
        return {(1 + 2 * lam_ + tan_ratio(2 * m + 1)) / 2, T(1)};
    }

    // P1(0) and P1(1) are the special endpoints on x = 1; m ≥ 2 uses the general formula.
    P P1(long m) const
    {
        const T& l = lam_;
        T l2 = l * l, l4 = l2 * l2;
        if (m == 0) return {T(1), (2 - l - l2) / (2 - 4 * l2 + l4)};
        if (m == 1) return {T(1), (2 - 2 * l - 4 * l2 + pow3() + l4) / (2 - 9 * l2 + 6 * l4 - l4 * l2)};
        if (m < 0 || m > M()) throw std::out_of_range("P1: m outside [0, M]");
        T t = tan_ratio(2 * m - 1);
        return {(1 + 2 * l - l2 + l4 + (1 - 3 * l2 + l4) * t) / 2, 1 + pow3() / 2 + l / 2 * (l2 - 2) * t};
    }

    P P_prime() const
    {
        const T& l = lam_;
        T l2 = l * l, l3 = l2 * l, l4 = l3 * l, l5 = l4 * l, l6 = l5 * l, l7 = l6 * l;
        return {1 - 2 * l2 + 6 * l3 + l4 - 5 * l5 + l7, 1 - l + 3 * l2 + l3 - 4 * l4 + l6};
    }

    P P_second() const
    {
        const T& l = lam_;
        T l2 = l * l, l3 = l2 * l, l4 = l3 * l;
        return {T(1), (1 - l - 3 * l2 + l3 + l4) / den6()};
    }

    P P_third() const
    {
        const T& l = lam_;
        T l2 = l * l, l3 = l2 * l, l4 = l3 * l, l5 = l4 * l, l6 = l5 * l, l7 = l6 * l, l8 = l7 * l, l9 = l8 * l,
          l10 = l9 * l;
        return {(1 - 6 * l2 - 3 * l3 + 11 * l4 + 4 * l5 - 12 * l6 - l7 + 6 * l8 - l10) / den6(),
                (1 - l - 4 * l2 + 3 * l3 + 4 * l4 - 7 * l5 - l6 + 5 * l7 - l9) / den6()};
    }

    P Q0(long n) const
    {
        if (n < 0 || n > N()) throw std::out_of_range("Q0: n outside [0, N]");
        auto [c, s] = cs(n);
        return q0_from(c, s);
    }

    P Q1(long n) const
    {
        if (n < 0 || n > N()) throw std::out_of_range("Q1: n outside [0, N]");
        auto [c, s] = cs(n);
        return q1_from(c, s);
    }

    P q0_from(const T& c, const T& s) const
    {
        const T& l = lam_;
        return {(2 - l - l * l - s + (2 + l) * c) / (-l * s + (4 - l * l) * c), T(1)};
    }

    P q1_from(const T& c, const T& s) const
    {
        const T& l = lam_;
        T l2 = l * l, l3 = l2 * l, l4 = l3 * l, l5 = l4 * l, l6 = l5 * l;
        T a = 2 - l - 7 * l2 + 3 * l3 + 5 * l4 - l5 - l6;
        T b = -1 - 2 * l - l2 + 2 * l3 + l4;
        T cc = 2 + l - 6 * l2 - 3 * l3 + 2 * l4 + l5;
        T d = -l * (5 - 5 * l2 + l4);
        T e = (4 - l2) * (1 - 3 * l2 + l4);
        T f = -l * (4 - 2 * l - 4 * l2 + l3 + l4);
        T gg = l * (-3 - l + 2 * l2 + l3);
        T h = 4 - 7 * l2 - 3 * l3 + 2 * l4 + l5;
        T den = d * s + e * c;
        return {(a + b * s + cc * c) / den, (f + gg * s + h * c) / den};
    }

    // τ(Q0(n)) = tan(π/4 − 2nθ) (real path).
    Real tau(const Real& n) const
    {
        static_assert(!exact, "tau requires the real path");
        return mp::tan(pi_real() / 4 - 2 * n * theta_);
    }

    const Real& theta() const
    {
        static_assert(!exact, "theta requires the real path");
        return theta_;
    }

    // Continuous n with Q0(n)_x = x (on_gamma1 = false) or Q1(n)_x = x (on_gamma1 = true).
    Real n_of_x(const Real& x, bool on_gamma1 = false) const
    {
        static_assert(!exact, "n_of_x requires the real path");
        auto f = [&](const Real& n) {
            auto [c, s] = cs_at(n);
            return (on_gamma1 ? q1_from(c, s) : q0_from(c, s)).x - x;
        };
        Real lo(0), hi(N());
        if (f(lo) < 0) return lo;
        if (f(hi) > 0) return hi;
        std::uintmax_t iters = 400;
        auto r = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<Real>(300), iters);
        return (r.first + r.second) / 2;
    }

private:
    T pow3() const { return lam_ * lam_ * lam_; }
    T den6() const
    {
        T l2 = lam_ * lam_;
        return 1 - 6 * l2 + 5 * l2 * l2 - l2 * l2 * l2;
    }

    // t_[k] = T_k(λ/2), u_[k] = U_{k−1}(λ/2).
    void extend(long k) const
    {
        if constexpr (exact) {
            std::lock_guard<std::mutex> lock(*mutex_);
            T x = lam_ / 2;
            if (t_.size() < 2) {
                t_.push_back(x);
                u_.push_back(T(1));
            }
            while (static_cast<long>(t_.size()) <= k) {
                size_t j = t_.size();
                t_.push_back(2 * x * t_[j - 1] - t_[j - 2]);
                u_.push_back(2 * x * u_[j - 1] - u_[j - 2]);
            }
        }
    }

    T lam_;
    Counts counts_;
    Real theta_, root_;
    mutable std::vector<T> t_, u_;
    std::shared_ptr<std::mutex> mutex_ = std::make_shared<std::mutex>();
};

using ExactVertices = Vertices<Exact>;
using RealVertices = Vertices<Real>;

// Λ = [(g,1),(1,1),(1,g″)]; only the edge on 5¹ is included.
inline Polygon lambda_domain(const ExactVertices& v)
{
    return make_polygon({{v.g(), Exact(1)}, {Exact(1), Exact(1)}, {Exact(1), v.g_second()}}, {false, false, true});
}

// Irregular domain Φ = [P′, P1(0), P″].
inline Polygon phi_domain(const ExactVertices& v)
{
    return make_polygon({v.P_prime(), v.P1(0), v.P_second()});
}

struct AtomRecord {
    enum class Kind { in, out, intersection } kind = Kind::in;
    long m = 0, n = 0;
    Polygon polygon;
    long transit_time = 0;
    CodeWord expected_code;
    // Index of the vertex where the involution's fixed segment starts; it ends
    // at the opposite vertex.
    size_t axis_vertex = 0;
    bool degenerate = false;
};

inline CodeWord in_code(long n) { return CodeWord(static_cast<size_t>(4 * (n - 1)), 1); }

inline CodeWord out_code(long m)
{
    CodeWord w{1, 1, 1};
    for (long k = 0; k < 2 * m - 1; ++k) {
        w.push_back(0);
        w.push_back(1);
    }
    w.push_back(1);
    w.push_back(1);
    return w;
}

template <class T>
std::vector<Vec2<T>> atom_in_vertices(const Vertices<T>& v, long n)
{
    return {v.Q0(n), v.Q0(n - 1), v.Q1(n - 1), v.Q1(n)};
}

template <class T>
std::vector<Vec2<T>> atom_out_vertices(const Vertices<T>& v, long m)
{
    if (m == 1) return {v.P0(1), {T(1), T(1)}, v.P1(0), v.P_prime()};
    if (m == 2) return {v.P0(2), v.P0(1), v.P_second(), v.P1(1), v.P_third(), v.P1(2)};
    return {v.P0(m), v.P0(m - 1), v.P1(m - 1), v.P1(m)};
}

inline AtomRecord atom_in(const ExactVertices& v, long n)
{
    if (n < 1 || n > v.N() - 1) throw std::out_of_range("atom_in: n outside [1, N-1]");
    AtomRecord a;
    a.kind = AtomRecord::Kind::in;
    a.n = n;
    a.polygon = make_polygon(atom_in_vertices(v, n), {false, false, true, true});
    a.transit_time = 4 * (n - 1);
    a.expected_code = in_code(n);
    a.axis_vertex = 1;
    a.degenerate = v.non_generic() && n == v.N() - 1;
    return a;
}

inline AtomRecord atom_out(const ExactVertices& v, long m)
{
    if (m < 1 || m > v.M()) throw std::out_of_range("atom_out: m outside [1, M]");
    AtomRecord a;
    a.kind = AtomRecord::Kind::out;
    a.m = m;
    std::vector<bool> flags;
    if (m == 1) flags = {false, false, false, false};
    else if (m == 2) flags = {false, true, false, false, true, false};
    else flags = {false, true, true, false};
    a.polygon = make_polygon(atom_out_vertices(v, m), flags);
    a.transit_time = 4 * m + 3;
    a.expected_code = out_code(m);
    a.axis_vertex = 0;
    a.degenerate = v.non_generic() && m == v.M();
    return a;
}

} // namespace rotorlab

#endif
