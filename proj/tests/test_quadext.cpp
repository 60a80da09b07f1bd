#include <gtest/gtest.h>

#include <random>

#include "quct/quadext.hpp"

using namespace quct;

namespace {

QuadExt sqrt5() { return QuadExt::sqrt_prime_power(5, 1); }
QuadExt sqrt13() { return QuadExt::sqrt_prime_power(13, 1); }

QuadExt random_value(std::mt19937& rng) {
    static const long radicands[] = {1, 2, 3, 5, 6, 7, 10, 13, 15};
    std::uniform_int_distribution<int> nterms(1, 4);
    std::uniform_int_distribution<int> rad(0, 8);
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 9);
    QuadExt out;
    int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        Rat c = Rat(num(rng)) / den(rng);
        out += QuadExt::radical(Int(radicands[rad(rng)]), c == 0 ? Rat(1) : c);
    }
    return out;
}

}  // namespace

// ===========================================================================
// Multiplication and radicand normalization
// ===========================================================================

TEST(QuadExtTest, SqrtTimesItselfCollapses) {
    EXPECT_EQ(sqrt5() * sqrt5(), QuadExt(5L));
}

TEST(QuadExtTest, DifferenceOfSquares) {
    QuadExt lhs = (sqrt5() + QuadExt(1L)) * (sqrt5() - QuadExt(1L));
    EXPECT_EQ(lhs, QuadExt(4L));
}

TEST(QuadExtTest, CoprimeRadicandsMultiply) {
    EXPECT_EQ(sqrt5() * sqrt13(), QuadExt::radical(Int(65), Rat(1)));
}

TEST(QuadExtTest, SharedFactorExtractedOnMultiply) {
    // sqrt(6)*sqrt(10) = 2*sqrt(15)
    QuadExt lhs = QuadExt::radical(Int(6), Rat(1)) * QuadExt::radical(Int(10), Rat(1));
    EXPECT_EQ(lhs, QuadExt::radical(Int(15), Rat(2)));
}

TEST(QuadExtTest, SqrtOfPrimePower) {
    EXPECT_EQ(QuadExt::sqrt_prime_power(5, 1), QuadExt::radical(Int(5), Rat(1)));
    EXPECT_EQ(QuadExt::sqrt_prime_power(3, 2), QuadExt(3L));
    EXPECT_EQ(QuadExt::sqrt_prime_power(5, 3), QuadExt::radical(Int(5), Rat(5)));  // sqrt(125)
}

// ===========================================================================
// Approximation, signs, exact zero
// ===========================================================================

TEST(QuadExtTest, GoldenRatioConjugate) {
    QuadExt x = (sqrt5() - QuadExt(1L)) * Rat(1, 2);
    auto a = x.approx();
    EXPECT_NEAR(a.value, 0.6180339887, 1e-9);
    EXPECT_LT(a.bound, 1e-12);
    EXPECT_EQ(x.sign(), 1);
}

TEST(QuadExtTest, ExactZeroIsStructural) {
    QuadExt x = sqrt5() + QuadExt(2L);
    QuadExt z = x - x;
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z.sign(), 0);
    EXPECT_EQ(z.approx().value, 0.0);
    EXPECT_EQ(z.approx().bound, 0.0);
}

TEST(QuadExtTest, EnergyLikeValue) {
    QuadExt x = QuadExt(24L) + QuadExt::radical(Int(5), Rat(8));
    EXPECT_NEAR(x.approx_value(), 41.8885438, 1e-6);
}

TEST(QuadExtTest, SingleTermSignIsExact) {
    QuadExt x = QuadExt::radical(Int(7), Rat(-3) / 2);
    EXPECT_EQ(x.sign(), -1);
    EXPECT_EQ(x.abs(), QuadExt::radical(Int(7), Rat(3) / 2));
}

TEST(QuadExtTest, CompareDecidesCloseValues) {
    QuadExt a = sqrt5();                  // 2.2360...
    QuadExt b = QuadExt(9L) * Rat(1, 4);  // 2.25
    EXPECT_LT(a.compare(b), 0);
    EXPECT_GT(b.compare(a), 0);
    EXPECT_EQ(a.compare(a), 0);
}

TEST(QuadExtTest, UncertifiableSignRaisesPrecisionLoss) {
    // sqrt(2) minus a rational approximation good to ~1e-17: nonzero, but far
    // below what a double evaluation can certify.
    Rat close(Int("14142135623730950488"), Int("10000000000000000000"));
    close.canonicalize();
    QuadExt x = QuadExt::sqrt_prime_power(2, 1) - QuadExt(close);
    EXPECT_FALSE(x.is_zero());
    EXPECT_THROW(x.sign(), PrecisionLoss);
}

TEST(QuadExtTest, IntegerExtraction) {
    EXPECT_EQ((sqrt5() * sqrt5() * Rat(2)).as_integer(), Int(10));
    EXPECT_THROW(QuadExt(Rat(1) / 2).as_integer(), NonIntegerResult);
    EXPECT_THROW(sqrt5().as_integer(), NonIntegerResult);
}

// ===========================================================================
// Rendering
// ===========================================================================

TEST(QuadExtTest, Rendering) {
    EXPECT_EQ(QuadExt().str(), "0");
    EXPECT_EQ((QuadExt(24L) + QuadExt::radical(Int(5), Rat(8))).str(), "24 + 8*sqrt(5)");
    QuadExt x = QuadExt(Rat(-1) / 2) + QuadExt::radical(Int(5), Rat(3) / 2);
    EXPECT_EQ(x.str(), "-1/2 + 3/2*sqrt(5)");
    QuadExt y = QuadExt(Rat(1) / 2) - QuadExt::radical(Int(5), Rat(3) / 2);
    EXPECT_EQ(y.str(), "1/2 - 3/2*sqrt(5)");
}

// ===========================================================================
// Ring axioms and approximation consistency on random values
// ===========================================================================

TEST(QuadExtTest, RingAxiomsOnRandomTriples) {
    std::mt19937 rng(20240521);
    for (int i = 0; i < 300; ++i) {
        QuadExt a = random_value(rng), b = random_value(rng), c = random_value(rng);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_TRUE((a + (-a)).is_zero());
        EXPECT_EQ(a * QuadExt(1L), a);
    }
}

TEST(QuadExtTest, ApproxIsMultiplicativeWithinBounds) {
    std::mt19937 rng(987654);
    for (int i = 0; i < 200; ++i) {
        QuadExt a = random_value(rng), b = random_value(rng);
        auto pa = a.approx(), pb = b.approx(), pab = (a * b).approx();
        double tol = pab.bound + std::fabs(pa.value) * pb.bound + std::fabs(pb.value) * pa.bound + 1e-9;
        EXPECT_NEAR(pab.value, pa.value * pb.value, tol);
    }
}
