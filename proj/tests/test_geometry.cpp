#include <rotorlab/acceptance.hpp>
#include <rotorlab/geometry.hpp>
#include <rotorlab/vertices.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace rotorlab;

namespace {

const Exact kLam = make_exact(1, 64);

Point random_vector(std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> num(-500, 500), den(1, 300);
    return {make_exact(num(rng), den(rng)), make_exact(num(rng), den(rng))};
}

std::vector<Segment> forward_images(const Exact& lam, long t)
{
    std::vector<Segment> cur{generator_segment()};
    for (long k = 0; k < t; ++k) {
        std::vector<Segment> next;
        for (const auto& s : cur) {
            auto img = segment_image(s, lam);
            next.insert(next.end(), img.begin(), img.end());
        }
        cur = std::move(next);
    }
    return cur;
}

std::vector<Segment> backward_images(const Exact& lam, long t)
{
    std::vector<Segment> cur{generator_segment()};
    for (long k = 0; k < t; ++k) {
        std::vector<Segment> next;
        for (const auto& s : cur) {
            auto img = segment_preimage(s, lam);
            next.insert(next.end(), img.begin(), img.end());
        }
        cur = std::move(next);
    }
    return cur;
}

std::vector<Segment> apply_involution(const std::vector<Segment>& segs, const PiecewiseAffine& f)
{
    std::vector<Segment> out;
    for (const auto& s : segs) {
        auto img = involution_image(s, f);
        out.insert(out.end(), img.begin(), img.end());
    }
    return out;
}

std::vector<Point> sorted_vertices(const Polygon& p)
{
    auto v = p.vertices;
    std::sort(v.begin(), v.end(), lex_less);
    return v;
}

Real q_length(const std::vector<Segment>& segs, const Exact& lam)
{
    Real s(0);
    for (const auto& g : segs) s += mp::sqrt(to_real(q_length2(g, lam)));
    return s;
}

} // namespace

TEST(QForm, EuclideanAtZero)
{
    std::mt19937_64 rng(21);
    for (int i = 0; i < 100; ++i) {
        Point u = random_vector(rng);
        EXPECT_EQ(q_norm2(u, Exact(0)), u.x * u.x + u.y * u.y);
    }
}

TEST(QForm, InvariantUnderRotor)
{
    std::mt19937_64 rng(22);
    for (const Exact& lam : {kLam, make_exact(1, 3), make_exact(-1, 2)}) {
        auto C = rotor_matrix(lam);
        for (int i = 0; i < 300; ++i) {
            Point u = random_vector(rng), v = random_vector(rng);
            EXPECT_EQ(q_inner(C * u, C * v, lam), q_inner(u, v, lam));
        }
    }
}

TEST(QArea, UnitSquare)
{
    auto a = q_area(make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), kLam);
    EXPECT_EQ(a.shoelace, Exact(1));
    Real expect = mp::sqrt(1 - to_real(kLam) * to_real(kLam) / 4);
    EXPECT_LT(mp::abs(a.value(kLam) - expect), Real("1e-90"));
}

TEST(QArea, RejectsDegeneratePolygons)
{
    EXPECT_THROW(q_area(make_polygon({{0, 0}, {1, 0}, {1, 0}, {0, 1}}), kLam), std::invalid_argument);
    EXPECT_THROW(q_area(make_polygon({{0, 0}, {1, 1}, {2, 2}}), kLam), std::invalid_argument);
    EXPECT_THROW(q_area(make_polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), kLam), std::invalid_argument);
}

// Closed-form Q-area of the out-atoms, evaluated in high precision.
TEST(QArea, OutAtomsMatchTrigonometricProduct)
{
    ExactVertices v(kLam);
    Real l = to_real(kLam), th = mp::asin(l / 2);
    for (long m = 3; m <= 8; ++m) {
        Real closed = mp::pow(l, 4) * mp::cos((2 * m - 1) * th) /
                      (8 * mp::sin((2 * m - 3) * th) * mp::sin((2 * m - 1) * th) * mp::sin((2 * m + 1) * th));
        Real got = q_area(atom_out(v, m).polygon, kLam).value(kLam);
        EXPECT_LT(mp::abs(got / closed - 1), Real("1e-30")) << m;
    }
}

TEST(SegmentImage, FirstIterates)
{
    auto one = segment_image(generator_segment(), kLam);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].first, (Point{Exact(1), Exact(0)}));
    EXPECT_EQ(one[0].second, (Point{Exact(0), Exact(0)}));
    auto two = segment_image(one[0], kLam);
    ASSERT_EQ(two.size(), 1u);
    EXPECT_EQ(two[0].first, (Point{kLam, Exact(1)}));
    EXPECT_EQ(two[0].second, (Point{Exact(0), Exact(0)}));
}

TEST(SegmentImage, PreservesQLength)
{
    for (const Exact& lam : {kLam, make_exact(1, 10)}) {
        auto cur = forward_images(lam, 6);
        for (int k = 0; k < 4; ++k) {
            std::vector<Segment> next;
            for (const auto& s : cur) {
                auto img = segment_image(s, lam);
                next.insert(next.end(), img.begin(), img.end());
            }
            EXPECT_LT(mp::abs(q_length(next, lam) - q_length(cur, lam)), Real("1e-80"));
            cur = std::move(next);
        }
    }
}

TEST(SegmentImage, PreimageInvertsImage)
{
    for (long t = 1; t <= 7; ++t) {
        std::vector<Segment> back;
        for (const auto& s : forward_images(kLam, t)) {
            auto b = segment_preimage(s, kLam);
            back.insert(back.end(), b.begin(), b.end());
        }
        EXPECT_EQ(canonical_pieces(back), canonical_pieces(forward_images(kLam, t - 1))) << t;
    }
}

TEST(DiscontinuitySet, TableRowsAtTwoLambdas)
{
    for (const Exact& lam : {kLam, make_exact(1, 10)}) {
        auto segs = discontinuity_set(lam, 5);
        for (const auto& [t, want] : acceptance::table_one(lam)) {
            bool found = false;
            for (const auto& s : segs)
                found = found || (s.t == t && s.segment.first == want.first && s.segment.second == want.second);
            EXPECT_TRUE(found) << "t=" << t << " lambda " << to_string(lam);
        }
    }
}

TEST(DiscontinuitySet, DepthZeroIsGenerator)
{
    auto segs = discontinuity_set(kLam, 0);
    ASSERT_EQ(segs.size(), 1u);
    EXPECT_EQ(segs[0].t, 0);
    EXPECT_EQ(segs[0].segment, generator_segment());
}

// G(F^m γ) = F^{1−m} γ and H(F^m γ) = F^{2−m} γ, with backward images computed directly.
TEST(DiscontinuitySet, InvolutionSymmetry)
{
    for (const Exact& lam : {kLam, make_exact(1, 10)}) {
        for (long m = 1; m <= 6; ++m) {
            auto fm = forward_images(lam, m);
            EXPECT_EQ(canonical_pieces(apply_involution(fm, g_map())), canonical_pieces(backward_images(lam, m - 1)))
                << "G, m=" << m;
            auto expect_h = m >= 2 ? backward_images(lam, m - 2) : forward_images(lam, 2 - m);
            EXPECT_EQ(canonical_pieces(apply_involution(fm, h_map(lam))), canonical_pieces(expect_h)) << "H, m=" << m;
        }
    }
}

TEST(Sector, Membership)
{
    SectorSpec s = sigma_sector(kLam);
    Point t0{(1 + kLam) / 2, Exact(1)};
    Exact eps = make_exact(1, 4096);
    EXPECT_TRUE(sector_membership({make_exact(3, 4), make_exact(63, 64)}, s));
    EXPECT_TRUE(sector_membership({1 - eps, 1 - eps}, s));
    EXPECT_FALSE(sector_membership(fixed_point(kLam), s));
    EXPECT_FALSE(sector_membership(t0, s));
    EXPECT_FALSE(sector_membership(involution_G(t0), s));
    EXPECT_FALSE(sector_membership({make_exact(1, 10), make_exact(1, 10)}, s));
}

TEST(Sector, TangencyRadiusMatchesEllipse)
{
    for (const Exact& lam : {kLam, make_exact(1, 10), make_exact(1, 5)}) {
        SectorSpec s = sigma_sector(lam);
        EXPECT_EQ(s.radius_sq, (1 - lam) * (1 - lam) * (2 + lam) / (4 * (2 - lam)));
    }
}

TEST(Clip, SegmentIntersection)
{
    auto hit = segment_intersection({{0, 0}, {1, 1}}, {{0, 1}, {1, 0}});
    ASSERT_EQ(hit.kind, SegmentHit::Kind::point);
    EXPECT_EQ(hit.point, (Point{make_exact(1, 2), make_exact(1, 2)}));
    EXPECT_EQ(segment_intersection({{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}).kind, SegmentHit::Kind::none);
    auto ov = segment_intersection({{0, 0}, {2, 0}}, {{1, 0}, {3, 0}});
    ASSERT_EQ(ov.kind, SegmentHit::Kind::overlap);
    EXPECT_EQ(ov.overlap.first, (Point{Exact(1), Exact(0)}));
    EXPECT_EQ(ov.overlap.second, (Point{Exact(2), Exact(0)}));
}

TEST(Clip, DisjointIsEmpty)
{
    auto a = make_polygon({{0, 0}, {1, 0}, {0, 1}});
    auto b = make_polygon({{2, 2}, {3, 2}, {2, 3}});
    EXPECT_TRUE(polygon_clip(a, b).empty());
}

TEST(Clip, Associative)
{
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> num(0, 40);
    auto random_triangle = [&] {
        for (;;) {
            auto p = make_polygon({{make_exact(num(rng), 40), make_exact(num(rng), 40)},
                                   {make_exact(num(rng), 40), make_exact(num(rng), 40)},
                                   {make_exact(num(rng), 40), make_exact(num(rng), 40)}});
            if (polygon_orientation(p) != 0) return p;
        }
    };
    for (int i = 0; i < 200; ++i) {
        auto a = random_triangle(), b = random_triangle(), c = random_triangle();
        auto left = polygon_clip(a, polygon_clip(b, c)), right = polygon_clip(polygon_clip(a, b), c);
        EXPECT_EQ(sorted_vertices(left), sorted_vertices(right));
    }
}

TEST(Clip, EdgeFlagsInherited)
{
    auto a = make_polygon({{0, 0}, {2, 0}, {2, 2}, {0, 2}}, {true, false, false, false});
    auto b = make_polygon({{1, -1}, {3, -1}, {3, 3}, {1, 3}});
    auto c = polygon_clip(a, b);
    ASSERT_EQ(c.size(), 4u);
    for (size_t k = 0; k < c.size(); ++k) {
        const Point &p = c.vertices[k], &q = c.vertices[(k + 1) % 4];
        EXPECT_EQ(c.edge_included[k], p.y == 0 && q.y == 0);
    }
}

TEST(Clip, AtomIntersectionContainsFixedPoint)
{
    ExactVertices v(kLam);
    auto cell = polygon_clip(atom_out(v, 3).polygon, atom_in(v, 34).polygon);
    ASSERT_FALSE(cell.empty());
    Point z = fixed_point_z(v, 3, 34);
    EXPECT_TRUE(contains(cell, z, Boundary::open));
}

TEST(Contains, HalfOpenFlags)
{
    auto tri = make_polygon({{0, 0}, {1, 0}, {0, 1}}, {true, false, false});
    EXPECT_TRUE(contains(tri, {make_exact(1, 2), Exact(0)}));
    EXPECT_FALSE(contains(tri, {Exact(0), make_exact(1, 2)}));
    EXPECT_TRUE(contains(tri, {Exact(0), make_exact(1, 2)}, Boundary::closed));
    EXPECT_FALSE(contains(tri, {make_exact(1, 2), Exact(0)}, Boundary::open));
    EXPECT_TRUE(contains(tri, {make_exact(1, 4), make_exact(1, 4)}, Boundary::open));
}
