#ifndef ROTORLAB_GEOMETRY_HPP
#define ROTORLAB_GEOMETRY_HPP

#include "map.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

namespace rotorlab {

template <class T>
T q_inner(const Vec2<T>& u, const Vec2<T>& v, const T& lam)
{
    return u.x * v.x + u.y * v.y - lam / 2 * (u.x * v.y + u.y * v.x);
}

template <class T>
T q_norm2(const Vec2<T>& u, const T& lam) { return q_inner(u, u, lam); }

// sqrt(1 - λ^2/4): converts Euclidean areas to Q-areas.
template <class T>
T metric_factor(const T& lam) { using std::sqrt; using mp::sqrt; return sqrt(T(1) - lam * lam / 4); }

inline Real metric_factor(const Exact& lam) { return metric_factor(to_real(lam)); }

template <class T>
T signed_area(const std::vector<Vec2<T>>& v)
{
    T s(0);
    for (size_t k = 0; k < v.size(); ++k) s += cross(v[k], v[(k + 1) % v.size()]);
    return s / 2;
}

template <class T>
T abs_value(const T& x) { return x < 0 ? T(-x) : x; }

// Q-area of a real polygon (no validation).
template <class T>
T q_area_value(const std::vector<Vec2<T>>& v, const T& lam)
{
    return abs_value(signed_area(v)) * metric_factor(lam);
}

struct Segment {
    Point first, second;
    bool first_included = true;
    bool second_included = false;

    friend bool operator==(const Segment& a, const Segment& b)
    {
        return a.first == b.first && a.second == b.second;
    }
};

struct Polygon {
    std::vector<Point> vertices;
    // Edge k runs from vertices[k] to vertices[k+1] (cyclically).
    std::vector<bool> edge_included;

    bool empty() const { return vertices.size() < 3; }
    size_t size() const { return vertices.size(); }
};

inline Polygon make_polygon(std::vector<Point> v, std::vector<bool> flags = {})
{
    if (flags.empty()) flags.assign(v.size(), false);
    return {std::move(v), std::move(flags)};
}

inline int sign_of(const Exact& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

inline int orientation(const Point& a, const Point& b, const Point& c) { return sign_of(cross(b - a, c - a)); }

inline bool on_closed_segment(const Point& p, const Point& a, const Point& b)
{
    if (orientation(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

struct SegmentHit {
    enum class Kind { none, point, overlap } kind = Kind::none;
    Point point;
    Segment overlap;
};

inline SegmentHit segment_intersection(const Segment& s, const Segment& t)
{
    const Point &a = s.first, &b = s.second, &c = t.first, &d = t.second;
    Point r = b - a, q = d - c;
    Exact den = cross(r, q);
    SegmentHit hit;
    if (den == 0) {
        if (cross(c - a, r) != 0) return hit;
        // Collinear: project on the dominant axis.
        auto key = [&](const Point& p) { return r.x != 0 ? p.x : p.y; };
        Point lo1 = key(a) <= key(b) ? a : b, hi1 = key(a) <= key(b) ? b : a;
        Point lo2 = key(c) <= key(d) ? c : d, hi2 = key(c) <= key(d) ? d : c;
        Point lo = key(lo1) >= key(lo2) ? lo1 : lo2;
        Point hi = key(hi1) <= key(hi2) ? hi1 : hi2;
        if (key(lo) > key(hi)) return hit;
        if (lo == hi) {
            hit.kind = SegmentHit::Kind::point;
            hit.point = lo;
        } else {
            hit.kind = SegmentHit::Kind::overlap;
            hit.overlap = {lo, hi, true, true};
        }
        return hit;
    }
    Exact u = cross(c - a, q) / den, v = cross(c - a, r) / den;
    if (u < 0 || u > 1 || v < 0 || v > 1) return hit;
    hit.kind = SegmentHit::Kind::point;
    hit.point = a + u * r;
    return hit;
}

// Intersection of the lines through (a,b) and (c,d); nullopt when parallel.
inline std::optional<Point> line_intersection(const Point& a, const Point& b, const Point& c, const Point& d)
{
    Point r = b - a, q = d - c;
    Exact den = cross(r, q);
    if (den == 0) return std::nullopt;
    return a + (cross(c - a, q) / den) * r;
}

inline bool segments_properly_cross(const Point& a, const Point& b, const Point& c, const Point& d)
{
    int o1 = orientation(a, b, c), o2 = orientation(a, b, d);
    int o3 = orientation(c, d, a), o4 = orientation(c, d, b);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    return false;
}

// Throws std::invalid_argument on repeated vertices, zero area or crossing edges.
inline void validate_simple(const Polygon& poly)
{
    const auto& v = poly.vertices;
    size_t n = v.size();
    if (n < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (v[i] == v[j]) throw std::invalid_argument("polygon has a repeated vertex " + to_string(v[i]));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            const Point &a = v[i], &b = v[(i + 1) % n], &c = v[j], &d = v[(j + 1) % n];
            if (segments_properly_cross(a, b, c, d) || on_closed_segment(c, a, b) || on_closed_segment(a, c, d))
                throw std::invalid_argument("polygon is self-intersecting");
        }
    if (signed_area(v) == 0) throw std::invalid_argument("polygon has zero area");
}

// Q-area as an exact Euclidean area times the symbolic factor sqrt(1 - λ²/4).
struct QArea {
    Exact shoelace;

    Real value(const Exact& lam) const { return to_real(shoelace) * metric_factor(lam); }
};

inline QArea q_area(const Polygon& poly, const Exact& lam)
{
    (void)lam;
    validate_simple(poly);
    return {abs_value(signed_area(poly.vertices))};
}

inline int polygon_orientation(const Polygon& poly) { return sign_of(signed_area(poly.vertices)); }

enum class Boundary { open, closed, half_open };

// Convex polygons only.
inline bool contains(const Polygon& poly, const Point& p, Boundary mode = Boundary::half_open)
{
    int o = polygon_orientation(poly);
    if (o == 0) return false;
    size_t n = poly.size();
    bool on_edge = false, edges_ok = true;
    for (size_t k = 0; k < n; ++k) {
        int s = orientation(poly.vertices[k], poly.vertices[(k + 1) % n], p) * o;
        if (s < 0) return false;
        if (s == 0) {
            on_edge = true;
            if (poly.edge_included.empty() || !poly.edge_included[k]) edges_ok = false;
        }
    }
    if (!on_edge) return true;
    switch (mode) {
    case Boundary::open: return false;
    case Boundary::closed: return true;
    case Boundary::half_open: return edges_ok;
    }
    return false;
}

inline bool collinear_with(const Point& a, const Point& b, const Point& c, const Point& d)
{
    return orientation(a, b, c) == 0 && orientation(a, b, d) == 0;
}

// Convex-convex intersection (Sutherland-Hodgman with exact predicates).
// Edge flags of the result are inherited from whichever input edge each output edge lies on.
inline Polygon polygon_clip(const Polygon& subject, const Polygon& clip)
{
    Polygon out;
    if (subject.empty() || clip.empty()) return out;
    int o = polygon_orientation(clip);
    std::vector<Point> cur = subject.vertices;
    size_t n = clip.size();
    for (size_t k = 0; k < n && !cur.empty(); ++k) {
        const Point &a = clip.vertices[k], &b = clip.vertices[(k + 1) % n];
        std::vector<Point> next;
        for (size_t i = 0; i < cur.size(); ++i) {
            const Point &p = cur[i], &q = cur[(i + 1) % cur.size()];
            int sp = orientation(a, b, p) * o, sq = orientation(a, b, q) * o;
            if (sp >= 0) next.push_back(p);
            if ((sp > 0 && sq < 0) || (sp < 0 && sq > 0)) next.push_back(*line_intersection(a, b, p, q));
        }
        cur = std::move(next);
    }
    // Drop duplicates and collinear middle vertices.
    std::vector<Point> clean;
    for (const auto& p : cur)
        if (clean.empty() || clean.back() != p) clean.push_back(p);
    while (clean.size() > 1 && clean.front() == clean.back()) clean.pop_back();
    bool changed = true;
    while (changed && clean.size() >= 3) {
        changed = false;
        for (size_t i = 0; i < clean.size(); ++i) {
            size_t m = clean.size();
            if (orientation(clean[(i + m - 1) % m], clean[i], clean[(i + 1) % m]) == 0) {
                clean.erase(clean.begin() + static_cast<long>(i));
                changed = true;
                break;
            }
        }
    }
    if (clean.size() < 3) return out;
    out.vertices = clean;
    out.edge_included.assign(clean.size(), false);
    auto flag_from = [&](const Polygon& src, const Point& a, const Point& b) -> std::optional<bool> {
        for (size_t k = 0; k < src.size(); ++k)
            if (collinear_with(src.vertices[k], src.vertices[(k + 1) % src.size()], a, b))
                return !src.edge_included.empty() && src.edge_included[k];
        return std::nullopt;
    };
    for (size_t k = 0; k < clean.size(); ++k) {
        const Point &a = clean[k], &b = clean[(k + 1) % clean.size()];
        if (auto f = flag_from(clip, a, b)) out.edge_included[k] = *f;
        else if (auto g = flag_from(subject, a, b)) out.edge_included[k] = *g;
    }
    return out;
}

// Affine-by-pieces map p -> matrix p + j·shift, with j = -floor(alpha x + beta y).
struct PiecewiseAffine {
    Exact alpha, beta;
    Matrix2<Exact> matrix;
    Point shift;
    bool orientation_reversing = false;

    Point apply(const Point& p, const Integer& j) const { return matrix * p + Exact(j) * shift; }
    Exact discriminant(const Point& p) const { return alpha * p.x + beta * p.y; }
};

inline PiecewiseAffine forward_map(const Exact& lam)
{
    return {lam, Exact(-1), rotor_matrix(lam), {Exact(1), Exact(0)}};
}

inline PiecewiseAffine inverse_map(const Exact& lam)
{
    return {Exact(-1), lam, {Exact(0), Exact(1), Exact(-1), lam}, {Exact(0), Exact(1)}};
}

inline PiecewiseAffine g_map()
{
    return {Exact(0), Exact(0), {Exact(0), Exact(1), Exact(1), Exact(0)}, {Exact(0), Exact(0)}, true};
}

inline PiecewiseAffine h_map(const Exact& lam)
{
    return {Exact(-1), lam, {Exact(-1), lam, Exact(0), Exact(1)}, {Exact(1), Exact(0)}, true};
}

namespace detail {

// Parameters s in (0,1) where f(a + s(b-a)) is an integer, f linear with values fa, fb.
inline void integer_crossings(const Exact& fa, const Exact& fb, std::vector<Exact>& out)
{
    if (fa == fb) return;
    Exact lo = std::min(fa, fb), hi = std::max(fa, fb);
    for (Integer k = floor_of(lo) + 1; Exact(k) < hi; ++k) out.push_back((Exact(k) - fa) / (fb - fa));
}

inline std::vector<Exact> split_params(std::vector<Exact> s)
{
    s.push_back(Exact(0));
    s.push_back(Exact(1));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

inline Point lerp(const Point& a, const Point& b, const Exact& s) { return a + s * (b - a); }

inline bool is_integer(const Exact& q) { return denominator(q) == 1; }

} // namespace detail

// Splits a lifted segment at the torus boundary lines and translates each piece
// into the closed unit square.
inline std::vector<Segment> omega_pieces(const Segment& seg)
{
    std::vector<Exact> cuts;
    detail::integer_crossings(seg.first.x, seg.second.x, cuts);
    detail::integer_crossings(seg.first.y, seg.second.y, cuts);
    auto s = detail::split_params(cuts);
    std::vector<Segment> out;
    for (size_t k = 0; k + 1 < s.size(); ++k) {
        Point a = detail::lerp(seg.first, seg.second, s[k]);
        Point b = detail::lerp(seg.first, seg.second, s[k + 1]);
        Point mid{(a.x + b.x) / 2, (a.y + b.y) / 2};
        Point t{Exact(-floor_of(mid.x)), Exact(-floor_of(mid.y))};
        out.push_back({a + t, b + t, k == 0 ? seg.first_included : true,
                       k + 2 == s.size() ? seg.second_included : false});
    }
    return out;
}

// Image of a lifted segment under a piecewise-affine torus map. The segment is cut
// wherever the branch index changes; image pieces glued across the torus boundary
// (same line, endpoints equal modulo Z²) are merged back into one lifted segment,
// placed so that the crossing happens on x = 0 (resp. y = 0).
inline std::vector<Segment> segment_map(const Segment& seg, const PiecewiseAffine& f)
{
    std::vector<Segment> pieces;
    auto base = omega_pieces(seg);
    for (const auto& b : base) {
        std::vector<Exact> cuts;
        detail::integer_crossings(f.discriminant(b.first), f.discriminant(b.second), cuts);
        auto s = detail::split_params(cuts);
        for (size_t k = 0; k + 1 < s.size(); ++k) {
            Point a = detail::lerp(b.first, b.second, s[k]);
            Point c = detail::lerp(b.first, b.second, s[k + 1]);
            Point mid{(a.x + c.x) / 2, (a.y + c.y) / 2};
            Integer j = -floor_of(f.discriminant(mid));
            pieces.push_back({f.apply(a, j), f.apply(c, j), k == 0 ? b.first_included : true,
                              k + 2 == s.size() ? b.second_included : false});
        }
    }
    std::vector<Segment> out;
    size_t i = 0;
    while (i < pieces.size()) {
        Segment cur = pieces[i];
        std::optional<Exact> jx, jy;
        size_t j = i + 1;
        for (; j < pieces.size(); ++j) {
            const Segment& nx = pieces[j];
            Point d = cur.second - nx.first;
            if (!detail::is_integer(d.x) || !detail::is_integer(d.y)) break;
            Point u = cur.second - cur.first, w = nx.second - nx.first;
            if (cross(u, w) != 0 || dot(u, w) <= 0) break;
            if (d.x != 0 && !jx) jx = cur.second.x;
            if (d.y != 0 && !jy) jy = cur.second.y;
            cur.second = nx.second + d;
            cur.second_included = nx.second_included;
        }
        Point t{jx ? Exact(-*jx) : Exact(0), jy ? Exact(-*jy) : Exact(0)};
        cur.first = cur.first + t;
        cur.second = cur.second + t;
        out.push_back(cur);
        i = j;
    }
    return out;
}

inline std::vector<Segment> segment_image(const Segment& seg, const Exact& lam)
{
    return segment_map(seg, forward_map(lam));
}

inline std::vector<Segment> segment_preimage(const Segment& seg, const Exact& lam)
{
    return segment_map(seg, inverse_map(lam));
}

inline Segment reversed(const Segment& s) { return {s.second, s.first, s.second_included, s.first_included}; }

// Image under an orientation-reversing involution, listed so the endpoint order
// matches the F-orbit orientation (endpoints are swapped).
inline std::vector<Segment> involution_image(const Segment& seg, const PiecewiseAffine& f)
{
    auto img = segment_map(seg, f);
    std::vector<Segment> out;
    for (auto it = img.rbegin(); it != img.rend(); ++it) out.push_back(reversed(*it));
    return out;
}

inline Segment generator_segment() { return {{Exact(0), Exact(0)}, {Exact(0), Exact(1)}, true, false}; }

struct LabeledSegment {
    long t;
    Segment segment;
};

// F^t(γ) for |t| <= depth. Backward images use G-symmetry: F^{-k}(γ) = G(F^{k+1}(γ)).
inline std::vector<LabeledSegment> discontinuity_set(const Exact& lam, long depth)
{
    if (depth < 0) throw std::invalid_argument("discontinuity_set: negative depth");
    std::vector<std::vector<Segment>> fwd{{generator_segment()}};
    for (long t = 1; t <= depth + 1; ++t) {
        std::vector<Segment> next;
        for (const auto& s : fwd.back()) {
            auto img = segment_image(s, lam);
            next.insert(next.end(), img.begin(), img.end());
        }
        fwd.push_back(std::move(next));
    }
    std::vector<LabeledSegment> out;
    for (long k = depth; k >= 1; --k)
        for (const auto& s : fwd[static_cast<size_t>(k + 1)])
            for (const auto& g : involution_image(s, g_map())) out.push_back({-k, g});
    for (long t = 0; t <= depth; ++t)
        for (const auto& s : fwd[static_cast<size_t>(t)]) out.push_back({t, s});
    return out;
}

// Canonical form of a segment family as a sorted list of unit-square pieces,
// with collinear contiguous pieces joined.
inline std::vector<Segment> canonical_pieces(const std::vector<Segment>& segs)
{
    std::vector<Segment> pieces;
    for (const auto& s : segs) {
        auto p = omega_pieces(s);
        pieces.insert(pieces.end(), p.begin(), p.end());
    }
    bool merged = true;
    while (merged) {
        merged = false;
        for (size_t i = 0; i < pieces.size() && !merged; ++i)
            for (size_t j = 0; j < pieces.size() && !merged; ++j) {
                if (i == j || pieces[i].second != pieces[j].first) continue;
                Point u = pieces[i].second - pieces[i].first, w = pieces[j].second - pieces[j].first;
                if (cross(u, w) != 0 || dot(u, w) <= 0) continue;
                pieces[i].second = pieces[j].second;
                pieces.erase(pieces.begin() + static_cast<long>(j));
                merged = true;
            }
    }
    std::sort(pieces.begin(), pieces.end(), [](const Segment& a, const Segment& b) {
        if (a.first != b.first) return lex_less(a.first, b.first);
        return lex_less(a.second, b.second);
    });
    return pieces;
}

inline Exact q_length2(const Segment& s, const Exact& lam) { return q_norm2(s.second - s.first, lam); }

// Region outside an ellipse Q(p - c) > r², beyond the chord AB, inside the tangent lines at A and B.
struct SectorSpec {
    Exact lam;
    Point center;
    Exact radius_sq;
    Point tangencyA, tangencyB;
};

inline bool sector_membership(const Point& p, const SectorSpec& s)
{
    Point d = p - s.center;
    if (q_norm2(d, s.lam) <= s.radius_sq) return false;
    int center_side = orientation(s.tangencyA, s.tangencyB, s.center);
    if (orientation(s.tangencyA, s.tangencyB, p) != -center_side) return false;
    for (const Point* t : {&s.tangencyA, &s.tangencyB})
        if (q_inner(d, *t - s.center, s.lam) >= s.radius_sq) return false;
    return true;
}

inline Point fixed_point(const Exact& lam) { return {1 / (2 - lam), 1 / (2 - lam)}; }

inline Point two_cycle_point(const Exact& lam) { return {2 / (4 - lam * lam), lam / (4 - lam * lam)}; }

// Σ: corner sector of the main island at (1,1), tangent to y = 1 at T0 = ((1+λ)/2, 1).
inline SectorSpec sigma_sector(const Exact& lam)
{
    Point c = fixed_point(lam);
    Point t0{(1 + lam) / 2, Exact(1)};
    return {lam, c, q_norm2(t0 - c, lam), t0, involution_G(t0)};
}

// Whether a convex polygon has interior points inside the sector.
inline bool polygon_meets_sector(const Polygon& poly, const SectorSpec& s)
{
    if (poly.empty()) return false;
    // Clip by the closed half-planes beyond the chord and inside both tangent lines.
    auto half_plane = [](const Point& a, const Point& b) {
        // Large triangle standing on the directed line a->b, on its left side.
        Point d = b - a;
        Exact big(1000);
        Point n{-d.y, d.x};
        return make_polygon({a - big * d, a + big * d, a + big * d + big * n, a - big * d + big * n});
    };
    Polygon cur = poly;
    int cs = orientation(s.tangencyA, s.tangencyB, s.center);
    // Left side of A->B is positive orientation; we want the side opposite to the center.
    cur = polygon_clip(cur, cs > 0 ? half_plane(s.tangencyB, s.tangencyA) : half_plane(s.tangencyA, s.tangencyB));
    for (const Point* t : {&s.tangencyA, &s.tangencyB}) {
        if (cur.empty()) return false;
        Point r = *t - s.center;
        // Tangent line through t with direction Q-orthogonal to r.
        Point dir{-(r.y - s.lam / 2 * r.x), r.x - s.lam / 2 * r.y};
        Point a = *t, b = *t + dir;
        cur = polygon_clip(cur, orientation(a, b, s.center) > 0 ? half_plane(a, b) : half_plane(b, a));
    }
    if (cur.empty()) return false;
    for (const auto& v : cur.vertices)
        if (q_norm2(v - s.center, s.lam) > s.radius_sq) return true;
    return false;
}

} // namespace rotorlab

#endif
