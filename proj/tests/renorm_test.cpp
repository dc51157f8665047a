#include <gtest/gtest.h>

#include "support.hpp"

using namespace birkhoff;

namespace {

LaurentSeries S(const char *literal)
{
    return parse_series(literal);
}

std::shared_ptr<const Family> bck()
{
    return std::make_shared<const BckFamily>();
}

std::shared_ptr<const Family> operadic()
{
    return std::make_shared<const OperadicFamily>();
}

Functional table_rule(std::shared_ptr<const Family> family, Functional::Extension ext, Functional::Table table,
                      RBTarget target = RBTarget::minimal_subtraction())
{
    return Functional::from_table(std::move(family), std::move(target), ext, std::move(table));
}

ErrorKind kind_of(const std::function<void()> &f)
{
    try {
        f();
    } catch (const Error &e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::ParseError;
}

} // namespace

TEST(Counit, Values)
{
    const auto fam = bck();
    const Functional e = counit_functional(fam, RBTarget::minimal_subtraction());
    EXPECT_EQ(e(""), S("1"));
    EXPECT_TRUE(e("(())").is_exact_zero());
}

TEST(Convolution, CounitIsTheUnit)
{
    const auto fam = bck();
    const Functional phi = random_character(fam, RBTarget::minimal_subtraction(), 4, 3, 8);
    const Functional e = counit_functional(fam, phi.target());
    for (const auto &x : fam->enumerate(4)) {
        EXPECT_EQ(convolve(e, phi, x), phi(x)) << x;
        EXPECT_EQ(convolve(phi, e, x), phi(x)) << x;
    }
}

TEST(Convolution, ZetaSquaredOnNat)
{
    const auto nat = std::make_shared<const NatFamily>();
    const Functional z = Functional::zeta(nat);
    for (int n = 0; n <= 10; ++n) {
        EXPECT_EQ(convolve(z, z, std::to_string(n)), LaurentSeries::constant(n + 1)) << n;
    }
}

TEST(ConvolutionInverse, OfTheCounitIsTheCounit)
{
    const auto fam = bck();
    const Functional e = counit_functional(fam, RBTarget::minimal_subtraction());
    const Functional inv = convolution_inverse(e);
    for (const auto &x : fam->enumerate(3)) {
        EXPECT_EQ(inv(x), e(x)) << x;
    }
}

TEST(ConvolutionInverse, IsATwoSidedInverse)
{
    const auto op = operadic();
    for (const Functional &phi : {random_linear_rule(bck(), RBTarget::minimal_subtraction(std::nullopt), 3, 9, std::nullopt),
                                  random_character(op, RBTarget::minimal_subtraction(std::nullopt), 3, 9, std::nullopt)}) {
        const auto fam = phi.family_ptr();
        const Functional inv = convolution_inverse(phi);
        const Functional e = counit_functional(fam, phi.target());
        for (const auto &x : fam->enumerate(3)) {
            EXPECT_EQ(convolve(phi, inv, x), e(x)) << x;
            EXPECT_EQ(convolve(inv, phi, x), e(x)) << x;
        }
    }
}

TEST(ConvolutionInverse, OfZetaIsMobius)
{
    const auto fam = fixtures::category(divisor_poset(30), "d30");
    const Functional inv = convolution_inverse(Functional::zeta(fam));
    const MobiusOracle oracle(*fam);
    for (const auto &x : fam->enumerate(5)) {
        EXPECT_EQ(inv(x).coeff(0), oracle(x)) << x;
    }
}

TEST(ConvolutionInverse, NeedsNormalization)
{
    const auto fam = operadic();
    const Functional phi = random_character(fam, RBTarget::minimal_subtraction(), 2, 1, 8, Rational(2));
    const Functional inv = convolution_inverse(phi);
    EXPECT_EQ(kind_of([&] { inv("(||)"); }), ErrorKind::NotNormalized);
}

TEST(Character, Detection)
{
    const auto fam = bck();
    EXPECT_TRUE(is_character(Functional::zeta(fam, RBTarget::minimal_subtraction()), 4));
    EXPECT_TRUE(is_character(random_character(fam, RBTarget::minimal_subtraction(), 4, 8, 8), 4));
    Functional::Table table{{"", S("1")}, {"()", S("t^-1")}, {"() ()", S("3")}, {"(())", S("1")}};
    EXPECT_FALSE(is_character(table_rule(fam, Functional::Extension::explicit_table, table), 2));
    EXPECT_EQ(kind_of([] {
                  is_character(Functional::zeta(std::make_shared<const NatFamily>()), 2);
              }),
              ErrorKind::NoProduct);
}

TEST(Rules, MissingValues)
{
    const auto fam = bck();
    const Functional linear = table_rule(fam, Functional::Extension::explicit_table, {{"", S("1")}});
    EXPECT_EQ(kind_of([&] { linear("()"); }), ErrorKind::MissingValue);
    const Functional character = table_rule(fam, Functional::Extension::character, {{"()", S("t^-1")}});
    EXPECT_EQ(character("() ()"), S("t^-2"));
    EXPECT_EQ(character(""), S("1"));
    EXPECT_EQ(kind_of([&] { character("(())"); }), ErrorKind::MissingValue);
}

TEST(Rules, TrivialTargetNeedsConstants)
{
    EXPECT_EQ(kind_of([] {
                  table_rule(bck(), Functional::Extension::character, {{"()", S("t")}}, RBTarget::trivial());
              }),
              ErrorKind::ParseError);
}

TEST(Calibration, GrouplikesGoToOne)
{
    const auto fam = operadic();
    const Functional phi = random_character(fam, RBTarget::minimal_subtraction(), 3, 4, 8, make_rational(-3, 2));
    const Functional cal = calibrate(phi);
    for (const auto &x : fam->enumerate(3)) {
        if (fam->degree(x) == 0) {
            EXPECT_EQ(cal(x), S("1")) << x;
        }
    }
}

TEST(Calibration, CancelsTheOutValue)
{
    // phi(T) = s * phi(out T) with phi(|) = 5.
    const auto fam = operadic();
    const Functional phi = table_rule(fam, Functional::Extension::character,
                                      {{"|", S("5")}, {"(|)", S("5t^-1 + 10")}, {"(||)", S("15")}});
    const Functional cal = calibrate(phi);
    EXPECT_EQ(cal("(|)"), S("t^-1 + 2"));
    EXPECT_EQ(cal("(||)"), S("3"));
    EXPECT_EQ(cal("(|) (|)"), S("t^-2 + 4t^-1 + 4"));
}

TEST(Calibration, IsTheIdentityOnNormalizedRules)
{
    const auto fam = operadic();
    const Functional phi = random_character(fam, RBTarget::minimal_subtraction(), 3, 12, 8);
    const Functional cal = calibrate(phi);
    for (const auto &x : fam->enumerate(3)) {
        EXPECT_EQ(cal(x), phi(x)) << x;
    }
}

TEST(Calibration, ZeroResidueValueIsADivisibilityFailure)
{
    const auto fam = operadic();
    const Functional phi =
        table_rule(fam, Functional::Extension::character, {{"|", S("0")}, {"(|)", S("t^-1")}});
    const Functional cal = calibrate(phi);
    EXPECT_EQ(kind_of([&] { cal("(|)"); }), ErrorKind::DivisibilityFailure);
}

TEST(Counterterm, DegreeOneAndGrouplikes)
{
    const auto fam = bck();
    const Functional phi = table_rule(fam, Functional::Extension::character, {{"()", S("t^-1 + 2 + t")}});
    const Functional minus = counterterm(phi);
    const Functional plus = renormalized(phi);
    EXPECT_EQ(minus(""), S("1"));
    EXPECT_EQ(minus("()"), S("-t^-1"));
    EXPECT_EQ(plus("()"), S("2 + t"));
}

TEST(Counterterm, TwoNodeTreeByHand)
{
    const auto fam = bck();
    const LaurentSeries a = S("t^-2 + 3t^-1 + 1");
    const LaurentSeries b = S("2t^-2 - t^-1 + 5 + t");
    const Functional phi =
        table_rule(fam, Functional::Extension::character, {{"()", a}, {"(())", b}}, RBTarget::minimal_subtraction(std::nullopt));
    const RBTarget &ms = phi.target();
    const LaurentSeries expected = -rb_project(b, ms) + rb_project(rb_project(a, ms) * a, ms);
    EXPECT_EQ(counterterm(phi)("(())"), expected);
}

TEST(Counterterm, SimplePoleRule)
{
    // phi(bullet) = 1/t: phi- = -1/t and phi+ = 0.
    const auto fam = bck();
    const Functional phi = table_rule(fam, Functional::Extension::character, {{"()", S("t^-1")}});
    const Renormalization run(phi);
    EXPECT_EQ(run.minus("()"), S("-t^-1"));
    EXPECT_TRUE(run.plus("()").is_exact_zero());
}

TEST(Counterterm, RangeLiesInPolePart)
{
    const auto fam = bck();
    const Functional phi = random_character(fam, RBTarget::minimal_subtraction(), 4, 21, 8);
    const Functional minus = counterterm(phi);
    for (const auto &x : fam->enumerate(4)) {
        if (fam->degree(x) > 0) {
            EXPECT_EQ(rb_project(minus(x), phi.target()), minus(x)) << x;
        }
    }
}

TEST(Renormalized, GrouplikeValueIsPhi)
{
    const auto fam = operadic();
    const Functional phi = random_character(fam, RBTarget::minimal_subtraction(), 2, 6, 8, Rational(7));
    const Functional plus = renormalized(phi);
    EXPECT_EQ(plus("| |"), S("49"));
}

TEST(Renormalized, NonConstantGrouplikeValuesAreRejected)
{
    const auto fam = operadic();
    const Functional phi =
        table_rule(fam, Functional::Extension::character, {{"|", S("1 + t")}, {"(|)", S("t^-1")}});
    const Functional plus = renormalized(phi);
    EXPECT_EQ(kind_of([&] { plus("(|)"); }), ErrorKind::NonConstantUnit);
}

TEST(Renormalized, WindowExhaustionIsReported)
{
    // Deep poles eat the truncation window: degree 6 at valuation -2 with O(t^8).
    const auto fam = bck();
    const Functional phi = table_rule(fam, Functional::Extension::character, {{"()", parse_series("t^-2", 8)}});
    const Functional plus = renormalized(phi);
    EXPECT_NO_THROW(plus("() () () ()"));
    EXPECT_EQ(kind_of([&] { plus("() () () () () ()"); }), ErrorKind::TruncationExhausted);
}

TEST(Renormalized, FiltrationViolationIsDetected)
{
    // A family whose coproduct has a term of degree >= deg x on the left.
    class Broken : public BckFamily
    {
    public:
        TensorSum coproduct(const BasisKey &x) const override
        {
            TensorSum d = BckFamily::coproduct(x);
            if (x == "()") {
                d.add("(())", "()", 1);
            }
            return d;
        }
    };
    const auto fam = std::make_shared<const Broken>();
    const Functional phi = table_rule(fam, Functional::Extension::character, {{"()", S("t^-1")}, {"(())", S("1")}});
    EXPECT_EQ(kind_of([&] { counterterm(phi)("()"); }), ErrorKind::InvalidFiltration);
}

TEST(Renormalized, PolePartResidualGuard)
{
    // Pole subtraction as a custom projector skips the constant-unit check;
    // phi(|) = 1 + 1/t does not commute with R and phi+ keeps a pole.
    const RBTarget poles = RBTarget::custom([](const LaurentSeries &a) { return pole_part(a); }, "poles", 8);
    const auto fam = operadic();
    const Functional::Table table{{"|", S("1 + t^-1")}, {"(|)", S("t^-1")}};
    const Functional plus = renormalized(table_rule(fam, Functional::Extension::character, table, poles));
    EXPECT_EQ(kind_of([&] { plus("(|)"); }), ErrorKind::PolePartResidual);
    const Functional guarded = renormalized(table_rule(fam, Functional::Extension::character, table));
    EXPECT_EQ(kind_of([&] { guarded("(|)"); }), ErrorKind::NonConstantUnit);
}

TEST(Birkhoff, ReconstructsRandomRules)
{
    for (const auto &fam : {bck(), operadic()}) {
        EXPECT_TRUE(birkhoff_check(random_character(fam, RBTarget::minimal_subtraction(std::nullopt), 3, 5, std::nullopt), 3));
    }
    // Linear tables need every coproduct factor listed, so stay on BCK.
    EXPECT_TRUE(birkhoff_check(random_linear_rule(bck(), RBTarget::minimal_subtraction(std::nullopt), 3, 5, std::nullopt), 3));
    EXPECT_TRUE(birkhoff_check(counit_functional(bck(), RBTarget::minimal_subtraction()), 3));
    const auto d12 = fixtures::category(divisor_poset(12), "d12");
    EXPECT_TRUE(birkhoff_check(Functional::zeta(d12), 3));
}

TEST(Birkhoff, CharacterPreservationOnAFewSeeds)
{
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Functional phi = random_character(operadic(), RBTarget::minimal_subtraction(), 3, seed, 8);
        const Renormalization run(phi);
        EXPECT_TRUE(is_character(run.minus, 3)) << seed;
        EXPECT_TRUE(is_character(run.plus, 3)) << seed;
    }
}

TEST(Absorption, GrouplikeFactorsAreInvisibleToTheCounterterm)
{
    const auto fam = operadic();
    const Functional phi = random_character(fam, RBTarget::minimal_subtraction(), 3, 31, 8, Rational(3));
    const Functional minus = counterterm(phi);
    for (const auto &y : fam->enumerate(2)) {
        for (const BasisKey g : {"|", "| |"}) {
            EXPECT_EQ(minus(fam->multiply(g, y)), minus(y)) << g << " * " << y;
        }
    }
}

TEST(IncidenceCoalgebra, IdempotentProjectorSuffices)
{
    // Keeps the t^-1 and t^-2 coefficients only; idempotent but not
    // Rota-Baxter. On a coalgebra phi+ still lands in its kernel.
    const RBTarget keep_low = RBTarget::custom(
        [](const LaurentSeries &a) {
            LaurentSeries::Terms keep;
            for (const auto &[e, c] : a.terms()) {
                if (e == -1 || e == -2) {
                    keep.emplace(e, c);
                }
            }
            return LaurentSeries(std::move(keep), std::nullopt);
        },
        "low-poles", 8);
    const RBTarget mixing = RBTarget::custom(
        [](const LaurentSeries &a) {
            // (a_{-1} + a_0) t^-1: idempotent, its kernel is a_{-1} = -a_0.
            return LaurentSeries::monomial(a.coeff(-1) + a.coeff(0), -1);
        },
        "mixing", 8);
    for (const RBTarget &target : {keep_low, mixing}) {
        for (const auto &[name, fam] : fixtures::incidence()) {
            const Functional phi = random_linear_rule(fam, target, 3, 17, 8);
            const Functional plus = renormalized(phi);
            for (const auto &x : fam->enumerate(3)) {
                if (fam->degree(x) > 0) {
                    EXPECT_TRUE(rb_project(plus(x), target).is_zero()) << name << " " << x;
                }
            }
        }
    }
    EXPECT_FALSE(rb_identity_check(S("1"), S("1"), mixing));
}
