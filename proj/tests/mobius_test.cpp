#include <gtest/gtest.h>

#include "support.hpp"

using namespace birkhoff;

TEST(Mobius, NatMonoid)
{
    const auto nat = std::make_shared<const NatFamily>();
    const Mobius mu(nat);
    EXPECT_EQ(mu("0"), 1);
    EXPECT_EQ(mu("1"), -1);
    for (int n = 2; n <= 10; ++n) {
        EXPECT_EQ(mu(std::to_string(n)), 0) << n;
    }
}

TEST(Mobius, DivisorPosetsMatchNumberTheory)
{
    for (long n : {12L, 30L, 60L}) {
        const auto fam = fixtures::category(divisor_poset(n), "divisors");
        const Mobius mu(fam);
        for (long a = 1; a <= n; ++a) {
            for (long b = a; b <= n; ++b) {
                if (n % a == 0 && n % b == 0 && b % a == 0) {
                    EXPECT_EQ(mu(interval_name(std::to_string(a), std::to_string(b))), oracle::mobius_number(b / a))
                        << a << " " << b;
                }
            }
        }
    }
    EXPECT_EQ(mobius(fixtures::category(divisor_poset(12), "d12"), "[1,12]"), 0);
    EXPECT_EQ(mobius(fixtures::category(divisor_poset(6), "d6"), "[1,6]"), 1);
}

TEST(Mobius, ChainsAndBooleanLattices)
{
    const auto chain = fixtures::category(chain_poset(6), "chain");
    const Mobius mu_chain(chain);
    for (int i = 0; i < 6; ++i) {
        for (int j = i; j < 6; ++j) {
            EXPECT_EQ(mu_chain(interval_name(std::to_string(i), std::to_string(j))), oracle::mobius_chain(i, j));
        }
    }
    const auto b3 = fixtures::category(boolean_lattice(3), "b3");
    const Mobius mu_b3(b3);
    EXPECT_EQ(mu_b3("[{},{1,2,3}]"), oracle::mobius_boolean(3));
    EXPECT_EQ(mu_b3("[{1},{1,2,3}]"), oracle::mobius_boolean(2));
    EXPECT_EQ(mu_b3("[{2},{2,3}]"), oracle::mobius_boolean(1));
    const auto b2 = fixtures::category(boolean_lattice(2), "b2");
    EXPECT_EQ(mobius_oracle(*b2, "[{},{1,2}]"), 1);
}

TEST(Mobius, ProductOfChainsMultiplies)
{
    const auto product = fixtures::category(chain_product(3, 2), "c3xc2");
    const MobiusOracle oracle(*product);
    const auto c3 = fixtures::category(chain_poset(3), "c3");
    const auto c2 = fixtures::category(chain_poset(2), "c2");
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 2; ++j) {
            const std::string top = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
            const Rational expected =
                mobius_oracle(*c3, interval_name("0", std::to_string(i))) * mobius_oracle(*c2, interval_name("0", std::to_string(j)));
            EXPECT_EQ(oracle(interval_name("(0,0)", top)), expected) << top;
        }
    }
}

TEST(Mobius, IdentitiesGoToOne)
{
    for (const auto &[name, fam] : fixtures::incidence()) {
        const Mobius mu(fam);
        for (const auto &x : fam->enumerate(0)) {
            EXPECT_EQ(mu(x), 1) << name << " " << x;
            EXPECT_EQ(mobius_oracle(*fam, x), 1) << name << " " << x;
        }
    }
}

TEST(Mobius, EngineAgreesWithOracleEverywhere)
{
    for (const auto &[name, fam] : fixtures::incidence()) {
        const Mobius mu(fam);
        const MobiusOracle oracle(*fam);
        for (const auto &x : fam->enumerate(10)) {
            EXPECT_EQ(mu(x), oracle(x)) << name << " " << x;
        }
    }
}

TEST(Mobius, InversionAndRenormalizedZeta)
{
    for (const auto &[name, fam] : fixtures::incidence()) {
        EXPECT_TRUE(inversion_check(fam, 10)) << name;
        const Mobius mu(fam);
        for (const auto &x : fam->enumerate(10)) {
            EXPECT_EQ(mu.renormalized_zeta()(x), LaurentSeries::constant(fam->counit(x))) << name << " " << x;
        }
    }
    EXPECT_TRUE(inversion_check(std::make_shared<const NatFamily>(), 10));
}

TEST(Mobius, ZetaIsACharacterOnProductFamilies)
{
    EXPECT_TRUE(is_character(zeta(std::make_shared<const BckFamily>()), 4));
}
