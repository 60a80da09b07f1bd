#include <gtest/gtest.h>

#include <map>

#include "quct/graph.hpp"
#include "quct/spectrum.hpp"
#include "quct/verify.hpp"

using namespace quct;

namespace {

QuadExt root(std::uint64_t p) { return QuadExt::sqrt_prime_power(p, 1); }
QuadExt half(const QuadExt& x) { return x * Rat(1, 2); }

Spectrum make(const std::map<QuadExt, std::uint64_t>& entries) { return Spectrum::from_multiset(entries); }

}  // namespace

// ===========================================================================
// Local spectra
// ===========================================================================

TEST(LocalSpectrumTest, Z5IsThePaleyPentagon) {
    Spectrum s = closed_spectrum(ProductRing::build("Z5"));
    Spectrum expected = make({
        {QuadExt(2L), 1},
        {half(root(5) - QuadExt(1L)), 2},
        {half(-root(5) - QuadExt(1L)), 2},
    });
    EXPECT_EQ(s, expected);
}

TEST(LocalSpectrumTest, Z9) {
    Spectrum s = closed_spectrum(ProductRing::build("Z9"));
    Spectrum expected = make({{QuadExt(6L), 1}, {QuadExt(-3L), 2}, {QuadExt(), 6}});
    EXPECT_EQ(s, expected);
}

TEST(LocalSpectrumTest, Z49) {
    Spectrum s = closed_spectrum(ProductRing::build("Z49"));
    Spectrum expected = make({{QuadExt(42L), 1}, {QuadExt(-7L), 6}, {QuadExt(), 42}});
    EXPECT_EQ(s, expected);
}

TEST(LocalSpectrumTest, Z25) {
    Spectrum s = closed_spectrum(ProductRing::build("Z25"));
    Spectrum expected = make({
        {QuadExt(10L), 1},
        {half(root(5) - QuadExt(1L)) * Rat(5), 2},
        {half(-root(5) - QuadExt(1L)) * Rat(5), 2},
        {QuadExt(), 20},
    });
    EXPECT_EQ(s, expected);
}

TEST(LocalSpectrumTest, F13) {
    Spectrum s = closed_spectrum(ProductRing::build("F13"));
    Spectrum expected = make({
        {QuadExt(6L), 1},
        {half(root(13) - QuadExt(1L)), 6},
        {half(-root(13) - QuadExt(1L)), 6},
    });
    EXPECT_EQ(s, expected);
}

TEST(LocalSpectrumTest, LoneThreeModFourFactor) {
    // F3 routes through the ONE_3MOD4 evaluator with an empty 1 (mod 4) part.
    Spectrum s = closed_spectrum(ProductRing::build("F3"));
    Spectrum expected = make({{QuadExt(2L), 1}, {QuadExt(-1L), 2}});
    EXPECT_EQ(s, expected);
}

TEST(LocalSpectrumTest, EvenResidueOrderRejected) {
    ProductRing f4 = ProductRing::build("F4");
    EXPECT_THROW(local_spectrum(f4.factors()[0]), EvenCharacteristicUnsupported);
}

// ===========================================================================
// lambda_{A,B}
// ===========================================================================

TEST(LambdaTest, SingleFactorValues) {
    ProductRing z5 = ProductRing::build("Z5");
    EXPECT_EQ(lambda_AB(z5, {}, {}), QuadExt(2L));
    EXPECT_EQ(lambda_AB(z5, {0}, {}), half(root(5) - QuadExt(1L)));
    EXPECT_EQ(lambda_AB(z5, {}, {0}), half(-root(5) - QuadExt(1L)));
}

TEST(LambdaTest, Errors) {
    ProductRing f55 = ProductRing::build("F5*F5");
    EXPECT_THROW(lambda_AB(f55, {0}, {0}), OverlappingSets);
    EXPECT_THROW(lambda_AB(f55, {2}, {}), IndexOutOfRange);
    EXPECT_THROW(lambda_AB(ProductRing::build("Z45"), {}, {}), WrongClassification);
}

// ===========================================================================
// Product spectra
// ===========================================================================

TEST(ProductSpectrumTest, F5xF5) {
    Spectrum s = closed_spectrum(ProductRing::build("F5*F5"));
    Spectrum expected = make({
        {QuadExt(4L), 1},
        {half(QuadExt(3L) + root(5)), 4},
        {root(5) - QuadExt(1L), 4},
        {half(QuadExt(3L) - root(5)), 4},
        {QuadExt(-1L), 8},
        {-QuadExt(1L) - root(5), 4},
    });
    EXPECT_EQ(s, expected);
}

TEST(ProductSpectrumTest, F3xF5) {
    Spectrum s = closed_spectrum(ProductRing::build("F3*F5"));
    Spectrum expected = make({
        {QuadExt(4L), 1},
        {root(5) - QuadExt(1L), 2},
        {half(QuadExt(1L) + root(5)), 4},
        {half(QuadExt(1L) - root(5)), 4},
        {QuadExt(-2L), 2},
        {-QuadExt(1L) - root(5), 2},
    });
    EXPECT_EQ(s, expected);
}

TEST(ProductSpectrumTest, Z45TopEigenvalueIsTheDegree) {
    ProductRing ring = ProductRing::build("Z45");
    Spectrum s = closed_spectrum(ring);
    EXPECT_EQ(s.top().value, QuadExt(12L));
    EXPECT_EQ(s.top().multiplicity, 1u);
    EXPECT_EQ(connection_set(ring).size(), 12u);
    EXPECT_EQ(s.total_multiplicity(), 45u);
}

TEST(ProductSpectrumTest, DispatcherRoutes) {
    EXPECT_EQ(closed_spectrum(ProductRing::build("Z13")), closed_spectrum(ProductRing::build("F13")));
    EXPECT_THROW(closed_spectrum(ProductRing::build("F3*F7")), UnsupportedRingClass);
    EXPECT_THROW(closed_spectrum(ProductRing::build("Z8")), UnsupportedRingClass);
    EXPECT_THROW(spectrum_all_1mod4(ProductRing::build("Z45")), WrongClassification);
    EXPECT_THROW(spectrum_one_3mod4(ProductRing::build("Z25")), WrongClassification);
}

TEST(ProductSpectrumTest, SingleFactorPathsAgree) {
    for (const char* text : {"Z25", "F13", "F25", "F5[x]/(x^2)"}) {
        ProductRing ring = ProductRing::build(text);
        EXPECT_EQ(spectrum_all_1mod4(ring), local_spectrum(ring.factors()[0])) << text;
    }
    for (const char* text : {"Z27", "F3[x]/(x^2)", "F7"}) {
        ProductRing ring = ProductRing::build(text);
        EXPECT_EQ(spectrum_one_3mod4(ring), local_spectrum(ring.factors()[0])) << text;
    }
}

// ===========================================================================
// Structural invariants and the tensor-spectrum lemma
// ===========================================================================

TEST(SpectrumInvariantsTest, SweepUpToOrder60) {
    for (const RingSpec& spec : enumerate_rings(60)) {
        ProductRing ring = ProductRing::build(spec);
        Spectrum s = closed_spectrum(ring);
        const std::uint64_t degree = connection_set(ring).size();

        EXPECT_EQ(s.total_multiplicity(), ring.order()) << spec.canonical();
        EXPECT_TRUE(s.moment(1).is_zero()) << spec.canonical();
        EXPECT_EQ(s.moment(2), QuadExt(Rat(static_cast<unsigned long>(ring.order() * degree))))
            << spec.canonical();
        EXPECT_EQ(s.top().value, QuadExt(Rat(static_cast<unsigned long>(degree)))) << spec.canonical();
        EXPECT_EQ(s.top().multiplicity, 1u) << spec.canonical();
    }
}

TEST(SpectrumInvariantsTest, TensorSpectrumLemma) {
    // The multiset product of the factor spectra must equal the closed spectrum.
    for (const char* text : {"F5*F13", "Z45", "F5*F5", "F3*F25"}) {
        ProductRing ring = ProductRing::build(text);
        std::map<QuadExt, std::uint64_t> product{{QuadExt(1L), 1}};
        for (const auto& local : ring.factors()) {
            std::map<QuadExt, std::uint64_t> next;
            const Spectrum factor_spectrum = local_spectrum(local);
            for (const auto& le : factor_spectrum.entries()) {
                for (const auto& [value, mult] : product) next[value * le.value] += mult * le.multiplicity;
            }
            product = std::move(next);
        }
        EXPECT_EQ(closed_spectrum(ring), Spectrum::from_multiset(product)) << text;
    }
}

TEST(SpectrumInvariantsTest, UnitCountMatchesEulerPhiForZn) {
    for (std::uint64_t n : {45u, 65u, 225u, 117u}) {
        ProductRing ring = ProductRing::build("Z" + std::to_string(n));
        std::uint64_t phi = 1;
        for (const auto& [p, e] : factorize(n)) phi *= checked_pow(p, e - 1) * (p - 1);
        EXPECT_EQ(ring.unit_count(), phi) << n;
        EXPECT_EQ(ring.units().size(), phi) << n;
    }
}

TEST(SpectrumInvariantsTest, ZeroMultiplicityMatchesTheDoubleSumForm) {
    // The evaluator uses |R| - q_0 * prod(q_i); the double-sum form states the
    // zero multiplicity as |R| minus a sum over all disjoint (A, B). Check both.
    for (const char* text : {"Z45", "F3*F5", "F3*F25", "Z9*F25"}) {
        ProductRing ring = ProductRing::build(text);
        const auto profile = ring.residue_profile();
        ASSERT_EQ(profile.tag, RingClass::One3Mod4) << text;

        std::vector<std::uint64_t> rest_q;
        for (std::size_t i = 0; i < profile.factors.size(); ++i) {
            if (static_cast<int>(i) != profile.r0_index) rest_q.push_back(profile.factors[i].residue_order);
        }
        const std::uint64_t q0 = profile.factors[static_cast<std::size_t>(profile.r0_index)].residue_order;

        // sum over ternary assignments of q0/2^{|A|+|B|} * prod_{k in A u B}(q_k - 1)
        std::uint64_t sum = 0;
        const std::size_t s = rest_q.size();
        std::vector<unsigned> assign(s, 0);
        while (true) {
            std::uint64_t term = q0;
            for (std::size_t i = 0; i < s; ++i) {
                if (assign[i] != 0) term *= (rest_q[i] - 1) / 2;
            }
            sum += term;
            std::size_t pos = 0;
            while (pos < s && assign[pos] == 2) assign[pos++] = 0;
            if (pos == s) break;
            ++assign[pos];
        }

        Spectrum spec = closed_spectrum(ring);
        std::uint64_t zero_mult = 0;
        for (const auto& e : spec.entries()) {
            if (e.value.is_zero()) zero_mult = e.multiplicity;
        }
        EXPECT_EQ(zero_mult, ring.order() - sum) << text;
    }
}
