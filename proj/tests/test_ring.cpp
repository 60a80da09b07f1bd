#include <gtest/gtest.h>

#include <map>
#include <vector>

#include "quct/ring.hpp"
#include "quct/verify.hpp"

using namespace quct;

// ===========================================================================
// Parsing and canonical form
// ===========================================================================

TEST(ParseTest, CrtFactorsZTokens) {
    RingSpec spec = parse_ring_spec("Z45");
    ASSERT_EQ(spec.factors.size(), 2u);
    EXPECT_EQ(spec.factors[0], (LocalRingSpec{LocalKind::ZmodPK, 3, 2}));  // Z9, q = 3
    EXPECT_EQ(spec.factors[1], (LocalRingSpec{LocalKind::ZmodPK, 5, 1}));  // Z5, q = 5
    EXPECT_EQ(spec.canonical(), "Z9*Z5");
}

TEST(ParseTest, NormalizesFactorOrder) {
    EXPECT_EQ(parse_ring_spec("F9*F5").canonical(), "F5*F9");
    EXPECT_EQ(parse_ring_spec("F13 * F3 * F5").canonical(), "F3*F5*F13");
    EXPECT_EQ(parse_ring_spec("F5*Z5").canonical(), "Z5*F5");  // same (q, order), kind breaks the tie
}

TEST(ParseTest, TruncatedPolynomialToken) {
    RingSpec spec = parse_ring_spec("F5[x]/(x^2)");
    ASSERT_EQ(spec.factors.size(), 1u);
    EXPECT_EQ(spec.factors[0], (LocalRingSpec{LocalKind::TruncatedPoly, 5, 2}));
    EXPECT_EQ(spec.canonical(), "F5[x]/(x^2)");
}

TEST(ParseTest, CanonicalFormRoundTrips) {
    for (const char* text : {"Z45", "F9*F5", "F5[x]/(x^2)*Z9", "Z225", "F3*F5*F5", "Z2*Z3"}) {
        RingSpec once = parse_ring_spec(text);
        RingSpec twice = parse_ring_spec(once.canonical());
        EXPECT_EQ(once, twice) << text;
        EXPECT_EQ(once.canonical(), twice.canonical()) << text;
    }
}

TEST(ParseTest, Errors) {
    EXPECT_THROW(parse_ring_spec("F6"), NotPrimePower);
    EXPECT_THROW(parse_ring_spec("F1"), NotPrimePower);
    EXPECT_THROW(parse_ring_spec("Z1"), ParseError);
    EXPECT_THROW(parse_ring_spec("Z0"), ParseError);
    EXPECT_THROW(parse_ring_spec(""), ParseError);
    EXPECT_THROW(parse_ring_spec("Z45*"), ParseError);
    EXPECT_THROW(parse_ring_spec("X5"), ParseError);
    EXPECT_THROW(parse_ring_spec("F9[x]/(x^2)"), ParseError);  // base must be prime
    EXPECT_THROW(parse_ring_spec("F6[x]/(x^2)"), NotPrimePower);
    EXPECT_THROW(parse_ring_spec("F5[x]/(x^0)"), ParseError);
    EXPECT_THROW(parse_ring_spec("Z200001"), SizeCapExceeded);
    EXPECT_THROW(parse_ring_spec("Z101", 100), SizeCapExceeded);
}

TEST(ParseTest, EvenRingsParse) {
    // Even residue orders are fine here; only closed-form operations reject them.
    EXPECT_EQ(parse_ring_spec("Z8").canonical(), "Z8");
    EXPECT_EQ(parse_ring_spec("F4").canonical(), "F4");
}

// ===========================================================================
// Local ring construction
// ===========================================================================

TEST(LocalRingTest, SizesOfZ25) {
    LocalRing r({LocalKind::ZmodPK, 5, 2});
    EXPECT_EQ(r.order(), 25u);
    EXPECT_EQ(r.ideal_order(), 5u);
    EXPECT_EQ(r.residue_order(), 5u);
}

TEST(LocalRingTest, GaloisFieldModulusIsDeterministicMinimal) {
    LocalRing f9({LocalKind::GaloisField, 3, 2});
    EXPECT_EQ(f9.modulus(), (std::vector<std::uint64_t>{1, 0, 1}));  // x^2 + 1
    EXPECT_EQ(f9.modulus_str(), "x^2 + 1");

    LocalRing f4({LocalKind::GaloisField, 2, 2});
    EXPECT_EQ(f4.modulus(), (std::vector<std::uint64_t>{1, 1, 1}));  // x^2 + x + 1

    LocalRing f27({LocalKind::GaloisField, 3, 3});
    EXPECT_EQ(f27.modulus(), (std::vector<std::uint64_t>{1, 0, 2, 1}));  // x^3 + 2x^2 + 1
}

TEST(LocalRingTest, TruncatedPolyIdeal) {
    LocalRing r({LocalKind::TruncatedPoly, 5, 2});
    EXPECT_EQ(r.order(), 25u);
    EXPECT_EQ(r.ideal_order(), 5u);
    EXPECT_EQ(r.residue_order(), 5u);
    // the ideal is exactly the multiples of x: elements with zero constant term
    for (std::uint64_t a = 0; a < 25; ++a) {
        EXPECT_EQ(r.in_ideal(a), a % 5 == 0) << a;
    }
    // x * x = x^2 = 0
    EXPECT_EQ(r.mul(5, 5), 0u);
}

// ===========================================================================
// Element arithmetic
// ===========================================================================

TEST(ArithmeticTest, ZmodAddition) {
    ProductRing z9 = ProductRing::build("Z9");
    EXPECT_EQ(z9.add(5, 7), 3u);
    EXPECT_EQ(z9.neg(0), 0u);
}

TEST(ArithmeticTest, GaloisFieldSquareOfX) {
    // In F9 = F3[x]/(x^2+1): x * x = -1 = 2. The element x has index 3.
    ProductRing f9 = ProductRing::build("F9");
    EXPECT_EQ(f9.mul(3, 3), 2u);
}

TEST(ArithmeticTest, ProductMatchesCrt) {
    // Z9*Z5 with index (a,b) -> 5a + b must realize integer arithmetic mod 45.
    ProductRing ring = ProductRing::build("Z45");
    auto to_index = [&](std::uint64_t x) { return (x % 9) * 5 + (x % 5); };
    for (std::uint64_t x = 0; x < 45; ++x) {
        for (std::uint64_t y = 0; y < 45; y += 7) {
            EXPECT_EQ(ring.add(to_index(x), to_index(y)), to_index((x + y) % 45));
            EXPECT_EQ(ring.mul(to_index(x), to_index(y)), to_index((x * y) % 45));
        }
        EXPECT_EQ(ring.neg(to_index(x)), to_index((45 - x) % 45));
    }
}

TEST(ArithmeticTest, IdentitiesAndRange) {
    ProductRing ring = ProductRing::build("F9*F5");
    for (std::uint64_t x = 0; x < ring.order(); ++x) {
        EXPECT_EQ(ring.add(x, ring.zero()), x);
        EXPECT_EQ(ring.mul(x, ring.one()), x);
        EXPECT_EQ(ring.add(x, ring.neg(x)), ring.zero());
    }
    EXPECT_THROW(ring.add(ring.order(), 0), IndexOutOfRange);
}

// ===========================================================================
// Units
// ===========================================================================

TEST(UnitsTest, CountsMatchTheUnitFormula) {
    EXPECT_EQ(ProductRing::build("Z45").units().size(), 24u);    // phi(45)
    EXPECT_EQ(ProductRing::build("F9*F5").units().size(), 32u);  // 8 * 4
}

TEST(UnitsTest, UnitsOfZ9) {
    EXPECT_EQ(ProductRing::build("Z9").units(), (std::vector<std::uint64_t>{1, 2, 4, 5, 7, 8}));
}

TEST(UnitsTest, EveryUnitHasAnInverse) {
    for (const char* text : {"Z45", "F9*F5", "F5[x]/(x^2)"}) {
        ProductRing ring = ProductRing::build(text);
        for (std::uint64_t u : ring.units()) {
            bool found = false;
            for (std::uint64_t v = 0; v < ring.order() && !found; ++v) {
                found = ring.mul(u, v) == ring.one();
            }
            EXPECT_TRUE(found) << text << " unit " << u;
        }
    }
}

TEST(UnitsTest, LocalUnitCountAndTwoToOneSquaring) {
    // exhaustive over every implemented local ring of odd residue order up to 300
    for (const RingSpec& spec : enumerate_rings(300)) {
        if (spec.factors.size() != 1) continue;
        ProductRing ring = ProductRing::build(spec);
        const auto& local = ring.factors()[0];
        auto units = ring.units();
        EXPECT_EQ(units.size(), local.order() - local.ideal_order()) << spec.canonical();
        for (std::uint64_t x = 0; x < ring.order(); ++x) {
            EXPECT_EQ(ring.is_unit(x), !local.in_ideal(x)) << spec.canonical();
        }

        std::map<std::uint64_t, int> hits;
        for (std::uint64_t u : units) ++hits[ring.mul(u, u)];
        EXPECT_EQ(hits.size(), units.size() / 2) << spec.canonical();
        for (const auto& [sq, count] : hits) {
            EXPECT_EQ(count, 2) << spec.canonical() << " square " << sq;
        }
    }
}

// ===========================================================================
// Residue profiles and additive coordinates
// ===========================================================================

TEST(ProfileTest, TagsAndPerFactorData) {
    auto profile = ProductRing::build("Z45").residue_profile();
    ASSERT_EQ(profile.factors.size(), 2u);
    EXPECT_EQ(profile.factors[0].order, 9u);
    EXPECT_EQ(profile.factors[0].ideal_order, 3u);
    EXPECT_EQ(profile.factors[0].residue_order, 3u);
    EXPECT_EQ(profile.factors[0].residue_mod4, 3u);
    EXPECT_EQ(profile.factors[1].order, 5u);
    EXPECT_EQ(profile.factors[1].ideal_order, 1u);
    EXPECT_EQ(profile.factors[1].residue_order, 5u);
    EXPECT_EQ(profile.factors[1].residue_mod4, 1u);
    EXPECT_EQ(profile.tag, RingClass::One3Mod4);
    EXPECT_EQ(profile.r0_index, 0);

    EXPECT_EQ(ProductRing::build("F5*F13").residue_profile().tag, RingClass::All1Mod4);
    EXPECT_EQ(ProductRing::build("F3*F7").residue_profile().tag, RingClass::Unsupported);
    EXPECT_EQ(ProductRing::build("Z8").residue_profile().tag, RingClass::Unsupported);
}

TEST(CoordinatesTest, Orders) {
    EXPECT_EQ(ProductRing::build("Z9").additive_coordinates().orders(), (std::vector<std::uint64_t>{9}));
    EXPECT_EQ(ProductRing::build("F9").additive_coordinates().orders(), (std::vector<std::uint64_t>{3, 3}));
    EXPECT_EQ(ProductRing::build("Z45").additive_coordinates().orders(), (std::vector<std::uint64_t>{9, 5}));
    EXPECT_EQ(ProductRing::build("F3[x]/(x^3)").additive_coordinates().orders(),
              (std::vector<std::uint64_t>{3, 3, 3}));
}

TEST(CoordinatesTest, EncodeIsAnAdditiveIsomorphism) {
    // full homomorphism check on all pairs for small rings
    for (const char* text : {"Z45", "F9*F5", "F3[x]/(x^2)*F5", "Z8", "F4"}) {
        ProductRing ring = ProductRing::build(text);
        AdditiveCoordinates coords = ring.additive_coordinates();
        const auto& orders = coords.orders();
        for (std::uint64_t x = 0; x < ring.order(); ++x) {
            for (std::uint64_t y = 0; y < ring.order(); ++y) {
                auto cx = coords.encode(x), cy = coords.encode(y);
                auto sum = coords.encode(ring.add(x, y));
                for (std::size_t j = 0; j < orders.size(); ++j) {
                    EXPECT_EQ(sum[j], (cx[j] + cy[j]) % orders[j]) << text;
                }
            }
        }
    }
    // decode-encode identity plus sampled pairs for every ring up to 300
    for (const RingSpec& spec : enumerate_rings(300, /*include_unsupported=*/true)) {
        ProductRing ring = ProductRing::build(spec);
        AdditiveCoordinates coords = ring.additive_coordinates();
        const auto& orders = coords.orders();
        for (std::uint64_t x = 0; x < ring.order(); ++x) {
            EXPECT_EQ(coords.decode(coords.encode(x)), x) << spec.canonical();
        }
        for (std::uint64_t x = 0; x < ring.order(); x += 7) {
            for (std::uint64_t y = 0; y < ring.order(); y += 11) {
                auto cx = coords.encode(x), cy = coords.encode(y);
                auto sum = coords.encode(ring.add(x, y));
                for (std::size_t j = 0; j < orders.size(); ++j) {
                    EXPECT_EQ(sum[j], (cx[j] + cy[j]) % orders[j]) << spec.canonical();
                }
            }
        }
    }
}
