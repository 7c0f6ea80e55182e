#ifndef ROTORLAB_MAP_HPP
#define ROTORLAB_MAP_HPP

#include "number.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rotorlab {

using Symbol = int;
using CodeWord = std::vector<Symbol>;

inline bool in_omega(const Point& p) { return p.x >= 0 && p.x < 1 && p.y >= 0 && p.y < 1; }

inline void require_omega(const Point& p)
{
    if (!in_omega(p)) throw std::domain_error("point outside [0,1)^2: " + to_string(p));
}

inline Symbol iota(const Point& p, const Exact& lam)
{
    require_omega(p);
    return static_cast<Symbol>(-floor_of(lam * p.x - p.y));
}

inline std::pair<Point, Symbol> step(const Point& p, const Exact& lam)
{
    Symbol i = iota(p, lam);
    return {{lam * p.x - p.y + i, p.x}, i};
}

inline Point involution_G(const Point& p) { return {p.y, p.x}; }

inline Point involution_H(const Point& p, const Exact& lam) { return {frac(lam * p.y - p.x), p.y}; }

inline Point step_inverse(const Point& p, const Exact& lam)
{
    return involution_G(step(involution_G(p), lam).first);
}

struct OrbitRecord {
    std::vector<Point> points;
    CodeWord code;
    std::optional<long> period;
};

// t steps, t+1 points; period is the first k in [1,t] with points[k] == points[0].
inline OrbitRecord iterate(const Point& p, const Exact& lam, long t)
{
    if (t < 0) throw std::invalid_argument("iterate: negative step count");
    OrbitRecord r;
    r.points.reserve(static_cast<size_t>(t) + 1);
    r.code.reserve(static_cast<size_t>(t));
    r.points.push_back(p);
    for (long k = 0; k < t; ++k) {
        auto [q, s] = step(r.points.back(), lam);
        r.code.push_back(s);
        r.points.push_back(std::move(q));
        if (!r.period && r.points.back() == p) r.period = k + 1;
    }
    return r;
}

// Iterates until the first return to p or until cap steps have been taken.
inline OrbitRecord find_period(const Point& p, const Exact& lam, long cap)
{
    OrbitRecord r;
    r.points.push_back(p);
    Point q = p;
    for (long k = 0; k < cap; ++k) {
        auto [nq, s] = step(q, lam);
        r.code.push_back(s);
        q = std::move(nq);
        if (q == p) {
            r.period = k + 1;
            return r;
        }
        r.points.push_back(q);
    }
    return r;
}

inline Exact orbit_radius(const OrbitRecord& orbit)
{
    if (!orbit.period) throw std::invalid_argument("orbit_radius: orbit has no detected period");
    Exact r(1);
    for (long k = 0; k < *orbit.period; ++k) {
        const Exact& x = orbit.points[static_cast<size_t>(k)].x;
        r = std::min(r, std::min(x, Exact(1 - x)));
    }
    return r;
}

// Chebyshev polynomials T_k(x) and U_{k-1}(x) by the three-term recurrence.
// Negative k uses T_{-k} = T_k and U_{-k-1} = -U_{k-1}.
template <class T>
std::pair<T, T> chebyshev_TU(long k, const T& x)
{
    bool neg = k < 0;
    long n = neg ? -k : k;
    T t0(1), t1 = x, u0(0), u1(1); // T_0, T_1, U_{-1}, U_0
    if (n == 0) return {t0, u0};
    for (long j = 1; j < n; ++j) {
        T t2 = 2 * x * t1 - t0;
        T u2 = 2 * x * u1 - u0;
        t0 = std::move(t1);
        t1 = std::move(t2);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    return {t1, neg ? T(-u1) : u1};
}

template <class T>
struct Matrix2 {
    T a{1}, b{0}, c{0}, d{1};

    T det() const { return a * d - b * c; }
    Vec2<T> operator*(const Vec2<T>& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    friend Matrix2 operator*(const Matrix2& p, const Matrix2& q)
    {
        return {p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.d, p.c * q.a + p.d * q.c, p.c * q.b + p.d * q.d};
    }
    friend bool operator==(const Matrix2& p, const Matrix2& q)
    {
        return p.a == q.a && p.b == q.b && p.c == q.c && p.d == q.d;
    }
};

template <class T>
Matrix2<T> rotor_matrix(const T& lam) { return {lam, T(-1), T(1), T(0)}; }

// C^k = T_k(λ/2) I + (U_{k-1}(λ/2)/2) [[λ,-2],[2,-λ]].
template <class T>
Matrix2<T> matrix_power(long k, const T& lam)
{
    auto [t, u] = chebyshev_TU<T>(k, lam / 2);
    T h = lam * u / 2;
    return {t + h, T(-u), u, t - h};
}

// Affine map p -> matrix * p + translation.
struct BranchMap {
    Matrix2<Exact> matrix;
    Point translation;

    Point operator()(const Point& p) const { return matrix * p + translation; }

    // (*this) after other.
    BranchMap after(const BranchMap& other) const
    {
        return {matrix * other.matrix, matrix * other.translation + translation};
    }
    friend bool operator==(const BranchMap& p, const BranchMap& q)
    {
        return p.matrix == q.matrix && p.translation == q.translation;
    }
};

inline BranchMap branch(Symbol i, const Exact& lam) { return {rotor_matrix(lam), {Exact(i), Exact(0)}}; }

// F_(i0 ... ik-1) = F_(ik-1) o ... o F_(i0).
inline BranchMap branch_compose(const CodeWord& word, const Exact& lam)
{
    if (word.empty()) throw std::invalid_argument("branch_compose: empty word");
    BranchMap m = branch(word.front(), lam);
    for (size_t k = 1; k < word.size(); ++k) m = branch(word[k], lam).after(m);
    return m;
}

// Applies the branch word to a point one symbol at a time (cheaper than composing).
inline Point apply_word(const CodeWord& word, const Exact& lam, Point p)
{
    for (Symbol i : word) p = {lam * p.x - p.y + i, p.x};
    return p;
}

// Orbit of a rational point kept in unreduced integer coordinates (X/D, Y/D).
// One step costs a few big-integer multiplications by the small numerator and
// denominator of λ; no gcd is taken until normalize() is called.
class ScaledOrbit {
public:
    ScaledOrbit(const Point& p, const Exact& lam)
        : p_(numerator(lam)), q_(denominator(lam))
    {
        require_omega(p);
        Integer d = mp::lcm(denominator(p.x), denominator(p.y));
        x_ = numerator(p.x) * (d / denominator(p.x));
        y_ = numerator(p.y) * (d / denominator(p.y));
        d_ = d;
    }

    Symbol step()
    {
        Integer v = p_ * x_ - q_ * y_;
        Integer qd = q_ * d_;
        Integer i = -floor_div(v, qd);
        Integer nx = v + i * qd;
        y_ = q_ * x_;
        x_ = std::move(nx);
        d_ = std::move(qd);
        on_boundary_ = (x_ == 0);
        return static_cast<Symbol>(i);
    }

    void normalize()
    {
        Integer g = mp::gcd(mp::gcd(x_, y_), d_);
        if (g > 1) {
            x_ /= g;
            y_ /= g;
            d_ /= g;
        }
    }

    // True if the last step started on a discontinuity line (λx - y an integer).
    bool hit_discontinuity() const { return on_boundary_; }

    Point point() const { return {Exact(x_, d_), Exact(y_, d_)}; }

    bool equals(const Point& p) const
    {
        return x_ * denominator(p.x) == numerator(p.x) * d_ && y_ * denominator(p.y) == numerator(p.y) * d_;
    }

    // Sign of a*x + b*y + c for integer coefficients.
    int side(const Integer& a, const Integer& b, const Integer& c) const
    {
        Integer s = a * x_ + b * y_ + c * d_;
        return s > 0 ? 1 : (s < 0 ? -1 : 0);
    }

    const Integer& X() const { return x_; }
    const Integer& Y() const { return y_; }
    const Integer& D() const { return d_; }

private:
    Integer p_, q_;
    Integer x_, y_, d_;
    bool on_boundary_ = false;
};

} // namespace rotorlab

#endif
