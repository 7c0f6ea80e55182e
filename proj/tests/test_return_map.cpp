#include <rotorlab/acceptance.hpp>
#include <rotorlab/return_map.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace rotorlab;

namespace {

const Exact kLam = make_exact(1, 64);

} // namespace

TEST(Counts, AtOneOverSixtyFour)
{
    ExactVertices v(kLam);
    EXPECT_EQ(v.N(), 50);
    EXPECT_EQ(v.M(), 100);
    EXPECT_FALSE(v.non_generic());
}

TEST(Counts, RejectsLambdaOutsideRange)
{
    EXPECT_THROW(ExactVertices(Exact(0)), std::invalid_argument);
    EXPECT_THROW(ExactVertices(Exact(1)), std::invalid_argument);
}

TEST(Vertices, TopEdgeAndStartPoints)
{
    ExactVertices v(kLam);
    EXPECT_EQ(v.Q0(0), (Point{Exact(1), Exact(1)}));
    for (long m = 1; m <= 10; ++m) EXPECT_EQ(v.P0(m).y, Exact(1));
    EXPECT_EQ(v.P1(0).x, Exact(1));
    EXPECT_EQ(v.P1(1).x, Exact(1));
    EXPECT_EQ(v.Q1(0).x, Exact(1));
}

// Q1(n) lies on the line through (1, g″) and (λ, 1), the forward image of the top edge.
TEST(Vertices, InnerVerticesOnImageLine)
{
    ExactVertices v(kLam);
    Point a{Exact(1), v.g_second()}, b = v.Q1(1);
    for (long n = 2; n < v.N(); ++n) EXPECT_EQ(cross(v.Q1(n) - a, b - a), Exact(0)) << n;
}

TEST(Vertices, MonotoneSequences)
{
    ExactVertices v(kLam);
    for (long n = 1; n <= v.N(); ++n) {
        EXPECT_LT(v.Q0(n).x, v.Q0(n - 1).x);
        EXPECT_LT(v.Q1(n).x, v.Q1(n - 1).x);
    }
    for (long m = 2; m <= v.M(); ++m) {
        EXPECT_LT(v.P0(m).x, v.P0(m - 1).x);
        EXPECT_LT(v.P1(m).x, v.P1(m - 1).x);
    }
    // interleaving holds while 1/(4m²) dominates the λ² corrections
    for (long m = 2; m <= 20; ++m) {
        EXPECT_LT(v.P0(m).x, v.P1(m).x) << m;
        EXPECT_LT(v.P1(m).x, v.P0(m - 1).x) << m;
    }
}

TEST(Vertices, ExactAgreesWithRealPath)
{
    ExactVertices e(kLam);
    RealVertices r(to_real(kLam));
    for (long n : {1L, 7L, 30L, 49L}) {
        EXPECT_LT(mp::abs(to_real(e.Q0(n).x) - r.Q0(n).x), Real("1e-80"));
        EXPECT_LT(mp::abs(to_real(e.Q1(n).y) - r.Q1(n).y), Real("1e-80"));
    }
    for (long m : {2L, 3L, 50L, 100L}) EXPECT_LT(mp::abs(to_real(e.P1(m).x) - r.P1(m).x), Real("1e-80"));
}

TEST(Admissible, KnownPairs)
{
    ExactVertices v(kLam);
    EXPECT_TRUE(admissible(v, 3, 34));
    EXPECT_FALSE(admissible(v, 3, 1));
    EXPECT_FALSE(admissible(v, 0, 5));
    EXPECT_FALSE(admissible(v, 3, v.N()));
    EXPECT_THROW(fixed_point_Z(v, 3, 1), std::invalid_argument);
}

TEST(Admissible, BracketMatchesLinearScan)
{
    for (const Exact& lam : {kLam, make_exact(1, 10), make_exact(1, 100)}) {
        ExactVertices v(lam);
        for (long m = 1; m <= std::min<long>(v.M(), 40); ++m) {
            auto b = n_bounds(v, m);
            for (long n = 1; n < v.N(); ++n) EXPECT_EQ(b.contains(n), admissible(v, m, n)) << m << "," << n;
        }
    }
}

TEST(Admissible, BracketWidensAsLambdaShrinks)
{
    long prev = 0;
    for (long k : {6L, 8L, 10L}) {
        ExactVertices v(make_exact(1, 1L << k));
        long size = n_bounds(v, 3).size();
        EXPECT_GT(size, prev) << k;
        prev = size;
    }
}

TEST(FixedPoints, VerifiedBySimulation)
{
    ExactVertices v(kLam);
    auto all = admissible_fixed_points(v, 6);
    ASSERT_FALSE(all.empty());
    for (auto rec : all) {
        rec = verify_fixed_point(rec, kLam);
        EXPECT_TRUE(rec.verified) << rec.m << "," << rec.n;
    }
}

TEST(FixedPoints, InsideBothAtoms)
{
    ExactVertices v(kLam);
    for (long m = 1; m <= 6; ++m) {
        auto b = n_bounds(v, m);
        for (long n = b.lo; n <= b.hi; ++n) {
            Point z = fixed_point_z(v, m, n);
            EXPECT_TRUE(contains(atom_out(v, m).polygon, z, Boundary::open)) << m << "," << n;
            EXPECT_TRUE(contains(atom_in(v, n).polygon, z, Boundary::open)) << m << "," << n;
        }
    }
}

TEST(FixedPoints, CodeLayout)
{
    auto w = fixed_point_code(3, 34);
    EXPECT_EQ(w.size(), 147u);
    EXPECT_EQ(static_cast<long>(std::count(w.begin(), w.end(), Symbol(0))), 5);
}

TEST(Atoms, InAtomOneHasZeroTransit)
{
    ExactVertices v(kLam);
    auto a = atom_in(v, 1);
    EXPECT_EQ(a.transit_time, 0);
    EXPECT_TRUE(a.expected_code.empty());
    EXPECT_THROW(atom_in(v, v.N()), std::out_of_range);
    EXPECT_THROW(atom_out(v, v.M() + 1), std::out_of_range);
}

TEST(Atoms, VertexPermutationUnderInvolution)
{
    for (const Exact& lam : {kLam, make_exact(1, 10)}) {
        ExactVertices v(lam);
        for (long n = 1; n < std::min<long>(v.N(), 12); ++n) {
            auto rep = verify_atom_involution(atom_in(v, n), lam);
            EXPECT_TRUE(rep.ok) << "in " << n << ": " << rep.failure;
        }
        for (long m = 1; m <= std::min<long>(v.M(), 12); ++m) {
            auto rep = verify_atom_involution(atom_out(v, m), lam);
            EXPECT_TRUE(rep.ok) << "out " << m << ": " << rep.failure;
        }
    }
}

TEST(Atoms, InteriorPointsReturnWithAtomCode)
{
    ExactVertices v(kLam);
    std::mt19937_64 rng(31);
    for (long m = 1; m <= 5; ++m) {
        auto atom = atom_out(v, m);
        for (int i = 0; i < 20; ++i) {
            Point p = acceptance::interior_sample(atom.polygon, rng);
            auto q = apply_involution(atom, p, kLam);
            ASSERT_TRUE(q) << m;
            EXPECT_TRUE(contains(atom.polygon, *q, Boundary::closed)) << m;
            EXPECT_EQ(apply_involution(atom, *q, kLam), p) << m;
        }
    }
    for (long n = 2; n <= 6; ++n) {
        auto atom = atom_in(v, n);
        for (int i = 0; i < 20; ++i) {
            Point p = acceptance::interior_sample(atom.polygon, rng);
            auto q = apply_involution(atom, p, kLam);
            ASSERT_TRUE(q) << n;
            EXPECT_EQ(apply_involution(atom, *q, kLam), p) << n;
        }
    }
}

TEST(Scan, SectorCodesOutsideTarget)
{
    ExactVertices v(kLam);
    Point t0{(1 + kLam) / 2, Exact(1)};
    auto region = make_polygon({t0, {Exact(1), Exact(1)}, involution_G(t0)});
    SectorSpec sigma = sigma_sector(kLam);
    Polygon gl;
    for (const auto& p : lambda_domain(v).vertices) gl.vertices.push_back(involution_G(p));
    gl = make_polygon(gl.vertices);
    ScanOptions o;
    o.grid = 64;
    o.max_steps = 4;
    o.stop_in_target = false;
    o.filter = [&](const Point& p) { return sector_membership(p, sigma) && !contains(gl, p, Boundary::closed); };
    auto rep = scan_return_codes(region, lambda_domain(v), kLam, o);
    ASSERT_GT(rep.samples, 0);
    ASSERT_EQ(rep.codes.size(), 1u);
    EXPECT_EQ(code_string(rep.codes[0].code), "1111");
}

TEST(Crossover, SeriesAndMonotonicity)
{
    Real prev(0);
    for (long k : {6L, 8L, 10L, 12L}) {
        Real lam = Real(1) / Real(1L << k);
        auto c = crossover(lam);
        EXPECT_GT(c.m_star, prev);
        prev = c.m_star;
        EXPECT_LT(mp::abs(c.m_star / c.series_m - 1), Real(0.05)) << k;
        EXPECT_LT(mp::abs(c.n_star / c.series_n - 1), Real(0.05)) << k;
    }
}

TEST(Crossover, NearestIntegerAtOneOverSixtyFour)
{
    auto c = crossover(Real(1) / 64);
    EXPECT_GT(c.m_star, Real(5.5));
    EXPECT_LT(c.m_star, Real(6));
}

TEST(Codes, FamilyLengths)
{
    for (long m = 1; m <= 5; ++m) {
        EXPECT_EQ(static_cast<long>(red_code(m).size()), 12 * m + 4);
        EXPECT_EQ(static_cast<long>(blue_code(m).size()), 10 * (2 * m - 1) + 7);
        EXPECT_EQ(static_cast<long>(green_code(m).size()), 24 * m + 11);
    }
}
