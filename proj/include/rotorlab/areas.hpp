#ifndef ROTORLAB_AREAS_HPP
#define ROTORLAB_AREAS_HPP

#include "return_map.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace rotorlab {

// Rational parts (the factors multiplying π) of the two candidate disk areas:
// disks tangent to the top edge and disks tangent to the 5¹ line.
template <class T>
std::pair<T, T> disk_parts(const Vec2<T>& z, const T& lam)
{
    T f = 1 - lam * lam / 4;
    T l2 = lam * lam, l3 = l2 * lam, l4 = l3 * lam;
    T a0 = f * (z.y - 1) * (z.y - 1);
    T d = 1 - z.y + (1 - 2 * z.x) * lam - (1 - 3 * z.y) * l2 - (1 - z.x) * l3 - z.y * l4;
    return {a0, f * d * d};
}

struct DiskAreaRecord {
    long m = 0, n = 0, t = 0;
    Exact a0, a1;
    int chosen = 0; // 0 or 1: which candidate is the minimum
    Real area;

    const Exact& rational_part() const { return chosen == 0 ? a0 : a1; }
};

inline DiskAreaRecord disk_area(const ExactVertices& v, long m, long n)
{
    if (!admissible(v, m, n))
        throw std::invalid_argument("disk_area: (" + std::to_string(m) + "," + std::to_string(n) +
                                    ") is not admissible");
    DiskAreaRecord r;
    r.m = m;
    r.n = n;
    r.t = 4 * (m + n) - 1;
    auto [a0, a1] = disk_parts(fixed_point_z(v, m, n), v.lambda());
    r.a0 = a0;
    r.a1 = a1;
    r.chosen = a1 < a0 ? 1 : 0;
    r.area = pi_real() * to_real(r.rational_part());
    return r;
}

// Σ_n min(A0, A1)·(4(m+n)−1) over the admissible bracket. The rational parts are
// summed in T (exactly for rational λ) and π is applied once.
template <class T>
Real family_total_Am(const Vertices<T>& v, long m)
{
    auto b = n_bounds(v, m);
    T sum(0);
    for (long n = b.lo; n <= b.hi; ++n) {
        auto [a0, a1] = disk_parts(fixed_point_z(v, m, n), v.lambda());
        sum += std::min(a0, a1) * T(4 * (m + n) - 1);
    }
    if constexpr (std::is_same_v<T, Exact>) return pi_real() * to_real(sum);
    else return pi_real() * sum;
}

// (π/4)∫ ((2c−1)tanη − 1)²(π/4 − η) dη over [arccot(2a−1), arccot(2b−1)].
inline Real I_integral(long a, long b, long c, double tolerance = 1e-30, Real* error = nullptr)
{
    if (!(a > b && b >= 1 && c >= 1)) throw std::invalid_argument("I_integral: need a > b >= 1, c >= 1");
    Real pi = pi_real(), q = pi / 4;
    Real k = Real(2 * c - 1);
    auto f = [&](const Real& eta) {
        Real s = k * mp::tan(eta) - 1;
        return s * s * (q - eta);
    };
    Real lo = mp::atan(Real(1) / Real(2 * a - 1)), hi = mp::atan(Real(1) / Real(2 * b - 1));
    Real err;
    Real val = boost::math::quadrature::gauss_kronrod<Real, 31>::integrate(f, lo, hi, 30, Real(tolerance), &err);
    if (error) *error = err * q;
    return q * val;
}

// λ→0 limit of A_m.
inline Real limit_Am(long m)
{
    if (m < 1) throw std::invalid_argument("limit_Am: m must be positive");
    if (m == 1) return I_integral(2, 1, 2);
    return I_integral(m + 1, m, m + 1) + I_integral(m, m - 1, m - 1);
}

inline Real limit_area_series(long m_max)
{
    Real s(0);
    for (long m = 1; m <= m_max; ++m) s += limit_Am(m);
    return s;
}

inline Real asymptotic_Am(long m)
{
    Real pi = pi_real(), mm(m);
    return pi * pi / (48 * mp::pow(mm, 4)) + pi * (pi - 1) / (24 * mp::pow(mm, 5));
}

// 𝒬-radius² of the main island: 𝒬(T0 − c) with T0 = ((1+λ)/2, 1) and c the fixed point.
template <class T>
T ellipse_radius_sq(const T& lam)
{
    return (1 - lam) * (1 - lam) * (2 + lam) / (4 * (2 - lam));
}

inline Real ellipse_area_main(const Real& lam) { return pi_real() * ellipse_radius_sq(lam); }

inline Real ellipse_area_main(const Exact& lam) { return pi_real() * to_real(ellipse_radius_sq(lam)); }

struct AreaLedger {
    Real lambda;
    Real A_square, A_ellipse, A_out_sum, A_in_sum, residual;
};

inline AreaLedger covering_report(const Real& lam)
{
    RealVertices v(lam);
    AreaLedger L;
    L.lambda = lam;
    L.A_square = metric_factor(lam);
    L.A_ellipse = ellipse_area_main(lam);
    L.A_out_sum = 0;
    for (long m = 1; m <= v.M(); ++m) L.A_out_sum += Real(4 * m + 3) * q_area_value(atom_out_vertices(v, m), lam);
    L.A_in_sum = 0;
    for (long n = 2; n <= v.N() - 1; ++n) L.A_in_sum += Real(4 * (n - 1)) * q_area_value(atom_in_vertices(v, n), lam);
    L.residual = L.A_square - L.A_ellipse - L.A_out_sum - L.A_in_sum;
    return L;
}

} // namespace rotorlab

#endif
