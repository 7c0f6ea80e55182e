#ifndef ROTORLAB_RETURN_MAP_HPP
#define ROTORLAB_RETURN_MAP_HPP

#include "vertices.hpp"

#include <functional>
#include <map>
#include <sstream>

namespace rotorlab {

// P0(m)_x < Q0(n−1)_x and (for m ≥ 3) P1(m−1)_x > Q1(n)_x.
template <class T>
bool admissible(const Vertices<T>& v, long m, long n)
{
    if (m < 1 || m > v.M() || n < 1 || n > v.N() - 1) return false;
    if (!(v.P0(m).x < v.Q0(n - 1).x)) return false;
    if (m <= 2) return true;
    return v.P1(m - 1).x > v.Q1(n).x;
}

struct NBracket {
    long lo = 1, hi = 0;

    bool empty() const { return lo > hi; }
    long size() const { return empty() ? 0 : hi - lo + 1; }
    bool contains(long n) const { return lo <= n && n <= hi; }
};

// Largest n in [1, N−1] with Q0(n−1)_x > P0(m)_x and smallest n with
// Q1(n)_x < P1(m−1)_x, both found by bisection on the monotone vertex sequences.
template <class T>
NBracket n_bounds(const Vertices<T>& v, long m)
{
    long top = v.N() - 1;
    NBracket b;
    if (top < 1 || m < 1 || m > v.M()) return b;
    T p0 = v.P0(m).x;
    // Q0(n−1)_x decreases with n.
    if (!(v.Q0(0).x > p0)) return b;
    long lo = 1, hi = top;
    if (v.Q0(top - 1).x > p0) lo = top;
    else
        while (hi - lo > 1) {
            long mid = (lo + hi) / 2;
            if (v.Q0(mid - 1).x > p0) lo = mid;
            else hi = mid;
        }
    b.hi = lo;
    if (m <= 2) {
        b.lo = 1;
        return b;
    }
    T p1 = v.P1(m - 1).x;
    // Q1(n)_x decreases with n.
    if (!(v.Q1(top).x < p1)) {
        b.lo = top + 1;
        return b;
    }
    if (v.Q1(1).x < p1) {
        b.lo = 1;
        return b;
    }
    lo = 1;
    hi = top;
    while (hi - lo > 1) {
        long mid = (lo + hi) / 2;
        if (v.Q1(mid).x < p1) hi = mid;
        else lo = mid;
    }
    b.lo = hi;
    return b;
}

inline CodeWord fixed_point_code(long m, long n)
{
    CodeWord w(static_cast<size_t>(4 * n - 1), 1);
    for (long k = 0; k < 2 * m - 1; ++k) {
        w.push_back(0);
        w.push_back(1);
    }
    w.push_back(1);
    w.push_back(1);
    return w;
}

// Intersection of the symmetry axes [P0(m), P1(m−1)] and [Q0(n−1), Q1(n)].
template <class T>
Vec2<T> fixed_point_z(const Vertices<T>& v, long m, long n)
{
    Vec2<T> u = v.P0(m), q = v.Q0(n - 1);
    Vec2<T> w = v.P1(m - 1) - u, z = v.Q1(n) - q;
    T k = cross(w, z), a = cross(u, w), b = cross(q, z);
    return {(-z.x * a + w.x * b) / k, (-z.y * a + w.y * b) / k};
}

struct FixedPointRecord {
    long m = 0, n = 0;
    Point z;
    long period = 0;
    CodeWord code;
    bool verified = false;
    std::optional<long> observed_period;
    CodeWord observed_code;
};

inline FixedPointRecord fixed_point_Z(const ExactVertices& v, long m, long n)
{
    if (!admissible(v, m, n))
        throw std::invalid_argument("fixed_point_Z: (" + std::to_string(m) + "," + std::to_string(n) +
                                    ") is not admissible");
    FixedPointRecord r;
    r.m = m;
    r.n = n;
    r.z = fixed_point_z(v, m, n);
    r.period = 4 * (m + n) - 1;
    r.code = fixed_point_code(m, n);
    return r;
}

// Iterates up to one step past the expected period and records the first return.
inline FixedPointRecord verify_fixed_point(FixedPointRecord rec, const Exact& lam)
{
    rec.observed_code.clear();
    rec.observed_period.reset();
    rec.verified = false;
    if (!in_omega(rec.z)) return rec;
    ScaledOrbit orb(rec.z, lam);
    for (long t = 1; t <= rec.period + 1; ++t) {
        rec.observed_code.push_back(orb.step());
        if (orb.equals(rec.z)) {
            rec.observed_period = t;
            break;
        }
    }
    rec.verified = rec.observed_period == rec.period && rec.observed_code == rec.code;
    return rec;
}

inline std::vector<FixedPointRecord> admissible_fixed_points(const ExactVertices& v, long m_max)
{
    std::vector<FixedPointRecord> out;
    for (long m = 1; m <= std::min(m_max, v.M()); ++m) {
        auto b = n_bounds(v, m);
        for (long n = b.lo; n <= b.hi; ++n) out.push_back(fixed_point_Z(v, m, n));
    }
    return out;
}

inline BranchMap identity_map() { return {Matrix2<Exact>{}, {Exact(0), Exact(0)}}; }

inline BranchMap g_branch() { return {{Exact(0), Exact(1), Exact(1), Exact(0)}, {Exact(0), Exact(0)}}; }

// Affine form of the induced involution on an atom: F_word∘G for out-atoms, G∘F_word for in-atoms.
inline BranchMap involution_branch(const AtomRecord& atom, const Exact& lam)
{
    BranchMap word = atom.expected_code.empty() ? identity_map() : branch_compose(atom.expected_code, lam);
    return atom.kind == AtomRecord::Kind::out ? word.after(g_branch()) : g_branch().after(word);
}

struct InvolutionReport {
    bool ok = true;
    std::vector<long> permutation; // image index of each vertex, −1 when not a vertex
    std::string failure;
};

// Checks that the involution permutes the vertices as the reflection in the
// symmetry axis, and (out-atoms) that intermediate images stay clear of Σ.
inline InvolutionReport verify_atom_involution(const AtomRecord& atom, const Exact& lam)
{
    InvolutionReport rep;
    const auto& vs = atom.polygon.vertices;
    size_t k = vs.size();
    BranchMap L = involution_branch(atom, lam);
    for (size_t i = 0; i < k; ++i) {
        Point img = L(vs[i]);
        long idx = -1;
        for (size_t j = 0; j < k; ++j)
            if (vs[j] == img) idx = static_cast<long>(j);
        rep.permutation.push_back(idx);
        size_t expect = (2 * atom.axis_vertex + k - i) % k;
        if (rep.ok && idx != static_cast<long>(expect)) {
            rep.ok = false;
            std::ostringstream os;
            os << "vertex " << i << " " << to_string(vs[i]) << " maps to " << to_string(img) << ", expected vertex "
               << expect;
            rep.failure = os.str();
        }
    }
    if (atom.kind == AtomRecord::Kind::out) {
        SectorSpec sigma = sigma_sector(lam);
        std::vector<Point> cur;
        for (const auto& p : vs) cur.push_back(involution_G(p));
        for (size_t t = 0; t + 1 < atom.expected_code.size(); ++t) {
            BranchMap b = branch(atom.expected_code[t], lam);
            for (auto& p : cur) p = b(p);
            if (polygon_meets_sector(make_polygon(cur), sigma)) {
                if (rep.ok) {
                    rep.ok = false;
                    rep.failure = "image after step " + std::to_string(t + 1) + " meets the sector";
                }
                break;
            }
        }
    }
    return rep;
}

// Applies the induced involution to a point by actual iteration of F; returns
// nullopt if the observed code differs from the atom's code.
inline std::optional<Point> apply_involution(const AtomRecord& atom, const Point& p, const Exact& lam)
{
    Point start = atom.kind == AtomRecord::Kind::out ? involution_G(p) : p;
    if (!in_omega(start)) return std::nullopt;
    ScaledOrbit orb(start, lam);
    for (Symbol s : atom.expected_code)
        if (orb.step() != s) return std::nullopt;
    Point q = orb.point();
    if (atom.kind == AtomRecord::Kind::in) q = involution_G(q);
    return q;
}

struct CodeCount {
    CodeWord code;
    long transit_time = 0;
    long count = 0;
};

struct ScanReport {
    std::vector<CodeCount> codes; // sorted by transit time, then code
    long samples = 0;
    long non_returning = 0;
    long discarded = 0; // orbits that hit a discontinuity line
};

struct ScanOptions {
    long grid = 64;          // dyadic points across the shorter bounding-box side
    long max_steps = 200;
    bool apply_G = false;    // start from G(z) instead of z
    bool stop_in_target = true;
    std::function<bool(const Point&)> filter; // optional extra sample predicate
};

inline std::string code_string(const CodeWord& w)
{
    std::string s;
    for (Symbol c : w) s += static_cast<char>('0' + c);
    return s;
}

// Samples dyadic points of the region and groups them by their code up to the
// first entry into the target polygon (or by their first max_steps symbols).
inline ScanReport scan_return_codes(const Polygon& region, const Polygon& target, const Exact& lam,
                                    const ScanOptions& opt)
{
    ScanReport rep;
    if (region.empty()) return rep;
    Exact x0 = region.vertices[0].x, x1 = x0, y0 = region.vertices[0].y, y1 = y0;
    for (const auto& p : region.vertices) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    Exact side = std::min(x1 - x0, y1 - y0);
    Exact h(1);
    while (h * opt.grid > side) h /= 2;
    std::map<std::pair<long, std::string>, CodeCount> groups;
    Integer i0 = ceil_of(x0 / h), i1 = floor_of(x1 / h), j0 = ceil_of(y0 / h), j1 = floor_of(y1 / h);
    for (Integer i = i0; i <= i1; ++i)
        for (Integer j = j0; j <= j1; ++j) {
            Point p{Exact(i) * h, Exact(j) * h};
            if (!contains(region, p, Boundary::open)) continue;
            if (opt.filter && !opt.filter(p)) continue;
            Point start = opt.apply_G ? involution_G(p) : p;
            if (!in_omega(start)) continue;
            ++rep.samples;
            ScaledOrbit orb(start, lam);
            CodeWord code;
            bool returned = false, hit = false;
            for (long t = 0; t < opt.max_steps; ++t) {
                code.push_back(orb.step());
                if (orb.hit_discontinuity()) {
                    hit = true;
                    break;
                }
                if (opt.stop_in_target && contains(target, orb.point(), Boundary::half_open)) {
                    returned = true;
                    break;
                }
            }
            if (hit) {
                ++rep.discarded;
                continue;
            }
            if (opt.stop_in_target && !returned) {
                ++rep.non_returning;
                continue;
            }
            auto key = std::make_pair(static_cast<long>(code.size()), code_string(code));
            auto& g = groups[key];
            g.code = code;
            g.transit_time = static_cast<long>(code.size());
            ++g.count;
        }
    for (auto& [k, g] : groups) rep.codes.push_back(std::move(g));
    return rep;
}

inline CodeWord repeat_word(const CodeWord& w, long times)
{
    CodeWord out;
    for (long k = 0; k < times; ++k) out.insert(out.end(), w.begin(), w.end());
    return out;
}

inline CodeWord concat(std::initializer_list<CodeWord> parts)
{
    CodeWord out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

// Code families of the irregular domain Φ.
inline CodeWord red_code(long m) { return concat({{1}, repeat_word({1, 1, 0}, 4 * m), {1, 1, 1}}); }

inline CodeWord blue_code(long m)
{
    return concat({{1}, repeat_word({1, 1, 0, 1, 1, 0, 1, 0, 1, 0}, 2 * m - 1), {1, 1, 0, 1, 1, 1}});
}

inline CodeWord green_code(long m)
{
    return concat({{1}, repeat_word({1, 1, 0}, 4 * m - 1), {1, 1, 0, 1, 1, 0, 1, 0, 1, 0},
                   repeat_word({1, 1, 0}, 4 * m), {1, 1, 1}});
}

struct CrossoverRecord {
    Real m_star, n_star;
    Real series_m, series_n;
};

inline Real crossover_series_m(const Real& lam)
{
    return (1 + lam / 3 + lam * lam / 120 + 31 * lam * lam * lam / 1008) / mp::sqrt(2 * lam);
}

inline Real crossover_series_n(const Real& lam)
{
    Real pi = pi_real(), s = mp::sqrt(lam), r2 = mp::sqrt(Real(2));
    return pi / (4 * lam) - 1 / mp::sqrt(2 * lam) - Real(3) / 4 - s / (3 * r2) - pi * lam / 96 -
           lam * s / (120 * r2);
}

// Solves (4m + 4n(P0(m)) + 3)·θ = π/2 for continuous m.
inline CrossoverRecord crossover(const Real& lam)
{
    RealVertices v(lam);
    const Real& th = v.theta();
    auto p0x = [&](const Real& m) { return (1 + 2 * lam + mp::tan(th) / mp::tan((2 * m + 1) * th)) / 2; };
    auto f = [&](const Real& m) { return (4 * m + 4 * v.n_of_x(p0x(m)) + 3) * th - pi_real() / 2; };
    Real lo(1), hi(std::max<long>(2, v.M()));
    if (f(lo) > 0 || f(hi) < 0) throw std::runtime_error("crossover: no sign change in [1, M]");
    std::uintmax_t iters = 400;
    auto r = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<Real>(250), iters);
    CrossoverRecord c;
    c.m_star = (r.first + r.second) / 2;
    c.n_star = v.n_of_x(p0x(c.m_star));
    c.series_m = crossover_series_m(lam);
    c.series_n = crossover_series_n(lam);
    return c;
}

} // namespace rotorlab

#endif
