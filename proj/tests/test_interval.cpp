#include <rotorlab/acceptance.hpp>
#include <rotorlab/interval.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace rotorlab;

namespace {

RInterval iv(long a, long b, long d = 1) { return {make_exact(a, d), make_exact(b, d)}; }

} // namespace

TEST(Arithmetic, Rules)
{
    EXPECT_EQ(iv_add(iv(1, 2), iv(-3, 5)), iv(-2, 7));
    EXPECT_EQ(iv_neg(iv(1, 2)), iv(-2, -1));
    EXPECT_EQ(iv_sub(iv(1, 2), iv(-3, 5)), iv(-4, 5));
    EXPECT_EQ(iv_mul(iv(-1, 2), iv(-3, 5)), iv(-6, 10));
    EXPECT_EQ(iv_mul(iv(-2, -1), iv(3, 5)), iv(-10, -3));
    EXPECT_EQ(iv_inv(iv(2, 4)), RInterval(make_exact(1, 4), make_exact(1, 2)));
    EXPECT_EQ(iv_inv(iv(-4, -2)), RInterval(make_exact(-1, 2), make_exact(-1, 4)));
    EXPECT_EQ(iv_div(iv(1, 2), iv(2, 4)), RInterval(make_exact(1, 4), Exact(1)));
}

TEST(Arithmetic, Powers)
{
    EXPECT_EQ(iv_pow(iv(-2, 3), 2), iv(0, 9));
    EXPECT_EQ(iv_pow(iv(-3, 2), 3), iv(-27, 8));
    EXPECT_EQ(iv_pow(iv(-3, -2), 2), iv(4, 9));
    EXPECT_EQ(iv_pow(iv(-3, 2), 0), iv(1, 1));
    EXPECT_EQ(iv_pow_neg(iv(2, 4), 2), RInterval(make_exact(1, 16), make_exact(1, 4)));
    EXPECT_THROW(iv_pow_neg(iv(-1, 4), 1), std::domain_error);
}

TEST(Arithmetic, InverseOfZeroStraddlingIntervalThrows)
{
    EXPECT_THROW(iv_inv(iv(-1, 1)), std::domain_error);
    EXPECT_THROW(iv_inv(iv(0, 1)), std::domain_error);
    EXPECT_THROW(iv_div(iv(1, 2), iv(-1, 0)), std::domain_error);
    EXPECT_THROW(RInterval(Exact(2), Exact(1)), std::invalid_argument);
}

TEST(Rounding, HalfPiToPi)
{
    Real pi = pi_real();
    RInterval r = round_outward({to_exact(pi / 2), to_exact(pi)}, 4);
    EXPECT_EQ(r.lo, make_exact(157, 100));
    EXPECT_EQ(r.hi, make_exact(3142, 1000));
}

TEST(Rounding, DirectionAndDigits)
{
    EXPECT_EQ(round_down(make_exact(12345, 1000), 3), make_exact(123, 10));
    EXPECT_EQ(round_up(make_exact(12345, 1000), 3), make_exact(124, 10));
    EXPECT_EQ(round_down(make_exact(-12345, 1000), 3), make_exact(-124, 10));
    EXPECT_EQ(round_up(make_exact(-12345, 1000), 3), make_exact(-123, 10));
    EXPECT_EQ(round_down(make_exact(1, 3), 2), make_exact(33, 100));
    EXPECT_EQ(round_up(make_exact(1, 3), 2), make_exact(34, 100));
    EXPECT_EQ(round_up(Exact(1000), 1), Exact(1000));
    EXPECT_EQ(round_down(Exact(0), 3), Exact(0));
    EXPECT_THROW(round_outward(iv(0, 1), 0), std::invalid_argument);
}

TEST(Rounding, AlwaysEnclosesAndTightensWithDigits)
{
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 99999);
    for (int i = 0; i < 2000; ++i) {
        Exact a = make_exact(num(rng), den(rng)), b = make_exact(num(rng), den(rng));
        if (b < a) std::swap(a, b);
        RInterval x{a, b};
        RInterval prev = round_outward(x, 1);
        EXPECT_TRUE(prev.contains(x));
        for (int d = 2; d <= 8; ++d) {
            RInterval r = round_outward(x, d);
            EXPECT_TRUE(r.contains(x));
            EXPECT_TRUE(prev.contains(r)) << d;
            prev = r;
        }
    }
}

TEST(Bound, FuzzSoundness)
{
    EXPECT_EQ(acceptance::interval_fuzz(3000, 99), 0);
}

TEST(Bound, RejectsUndeclaredVariables)
{
    std::vector<MonomialTerm> t{{Exact(1), {1, 2}}};
    EXPECT_THROW(bound_polynomial(t, {iv(0, 1)}), std::invalid_argument);
}

TEST(Bound, CutOffProduct)
{
    // λ²m² with λ ∈ [0, 10^-4] and m ≤ λ^{-1/4}: bounded by 10^{2-8} = λ₀^{3/2}.
    std::vector<MonomialTerm> t{{Exact(1), {2, 2}}};
    CutOff c;
    RInterval r = bound_polynomial(t, {RInterval{Exact(0), make_exact(1, 10000)}, iv(2, 10)}, {4, c});
    EXPECT_TRUE(RInterval(Exact(0), make_exact(1, 1000000)).contains(r));
    EXPECT_EQ(r.lo, Exact(0));
}

TEST(Bound, CutOffRejectsUnboundedTerm)
{
    std::vector<MonomialTerm> t{{Exact(1), {1, 5}}};
    EXPECT_THROW(bound_polynomial(t, {RInterval{Exact(0), make_exact(1, 10000)}, iv(2, 10)}, {4, CutOff{}}),
                 std::invalid_argument);
}

TEST(Bound, CutOffNegativeMPower)
{
    std::vector<MonomialTerm> t{{Exact(3), {1, -2}}};
    RInterval r = bound_polynomial(t, {RInterval{Exact(0), make_exact(1, 10000)}, iv(2, 10)}, {4, CutOff{}});
    EXPECT_TRUE(r.contains(Exact(0)));
    EXPECT_TRUE(r.contains(make_exact(3, 40000)));
}

TEST(Bound, UnivariateEnclosesSamples)
{
    std::vector<Exact> c{Exact(1), Exact(-3), make_exact(1, 2), Exact(2)};
    auto terms = univariate_terms(c);
    RInterval box = iv(-1, 2);
    RInterval r = bound_polynomial(terms, {box}, {6, {}});
    for (long k = 0; k <= 300; ++k) {
        Exact x = box.lo + make_exact(k, 300) * box.width();
        EXPECT_TRUE(r.contains(evaluate(terms, {x})));
    }
}

TEST(Derivative, Coefficients)
{
    EXPECT_EQ(derivative({Exact(5), Exact(1), Exact(3)}), (std::vector<Exact>{Exact(1), Exact(6)}));
    EXPECT_TRUE(derivative({Exact(5)}).empty());
}

TEST(Certificate, DenominatorLeadingPolynomial)
{
    auto h = denominator_leading_poly();
    auto cert = certify_negative_increasing(h, make_exact(6171, 10000));
    EXPECT_TRUE(cert.increasing);
    EXPECT_TRUE(cert.negative);
    EXPECT_EQ(cert.h_left, Exact(-1728000));
    EXPECT_LT(cert.h_right, Exact(0));
    // exact derivative samples lie in the enclosure
    auto dt = univariate_terms(derivative(h));
    for (long k = 0; k <= 100; ++k) EXPECT_TRUE(cert.derivative_bound.contains(evaluate(dt, {make_exact(6171 * k, 1000000)})));
}

TEST(Certificate, FailsWhenDerivativeChangesSign)
{
    auto cert = certify_negative_increasing({Exact(-1), Exact(0), Exact(-1)}, Exact(1));
    EXPECT_FALSE(cert.increasing);
    EXPECT_FALSE(cert.negative);
}

TEST(Remainders, SpecsAreWellFormed)
{
    auto specs = remainder_specs();
    for (const auto& name : acceptance::membership_names()) EXPECT_NO_THROW(find_remainder_spec(specs, name));
    EXPECT_THROW(find_remainder_spec(specs, "nope"), std::invalid_argument);
}

TEST(Remainders, MembershipOfPassingFamilies)
{
    auto specs = remainder_specs();
    for (const char* name : {"r0x", "r1x", "r2x", "rZx", "rA0", "rmid", "tau_mid"}) {
        auto rep = check_remainder_membership(find_remainder_spec(specs, name), 10, 5);
        EXPECT_TRUE(rep.pass) << name << " [" << rep.min_seen.str(6) << ", " << rep.max_seen.str(6) << "]";
        EXPECT_EQ(rep.tested, 10);
    }
}

// The m-dependent coefficient missing from the rZy interval makes it fail
// for moderate m; the check must report a witness.
TEST(Remainders, ReportsWitnessOnViolation)
{
    auto specs = remainder_specs();
    auto rep = check_remainder_membership(find_remainder_spec(specs, "rZy"), 30, 5);
    EXPECT_FALSE(rep.pass);
    ASSERT_TRUE(rep.witness);
    EXPECT_FALSE(rep.published.contains(to_exact(rep.witness->value)));
}
