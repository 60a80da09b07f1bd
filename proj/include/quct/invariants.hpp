#pragma once

/**
 * @file invariants.hpp
 * @brief Closed-form and spectrum-derived graph invariants: energy,
 *        hyperenergetic status, spectral moments, triangle counts and
 *        Ramanujan classification.
 *
 * Every threshold comparison (energy vs 2(n-1), lambda^2 vs 4(r-1)) is done
 * in exact arithmetic with certified signs; floats appear only in reports.
 * Both the computed predicate and the closed-form classifier are surfaced, so
 * any divergence between the two is visible rather than hidden.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quct/errors.hpp"
#include "quct/graph.hpp"
#include "quct/oracle.hpp"
#include "quct/quadext.hpp"
#include "quct/ring.hpp"
#include "quct/spectrum.hpp"

namespace quct {

namespace detail {

inline Int ipow(std::uint64_t base, unsigned e) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), Int(static_cast<unsigned long>(base)).get_mpz_t(), e);
    return out;
}

inline void require_supported(const ResidueProfile& profile, const std::string& ring_name) {
    if (profile.tag == RingClass::Unsupported) {
        throw UnsupportedRingClass(
            "no closed forms for ring " + ring_name +
            ": requires odd residue orders with at most one factor of residue order 3 (mod 4)");
    }
}

}  // namespace detail

/// Exact graph energy from the closed forms.
inline QuadExt energy_closed(const ProductRing& ring) {
    const auto profile = ring.residue_profile();
    detail::require_supported(profile, ring.canonical());

    QuadExt out(1L);
    Rat scale(1);
    int s = 0;
    for (std::size_t i = 0; i < ring.factors().size(); ++i) {
        const auto& f = ring.spec().factors[i];
        scale *= Rat(static_cast<unsigned long>(f.order() - f.ideal_order()));
        if (static_cast<int>(i) == profile.r0_index) continue;
        auto pe = prime_power(f.residue_order());
        out *= QuadExt::sqrt_prime_power(pe->first, pe->second) + QuadExt(1L);
        ++s;
    }
    // All 1 (mod 4): units/2^s * prod(sqrt(q_i)+1).
    // With an R_0 factor: twice that, i.e. 2^{s-1} in the denominator.
    scale /= Rat(Int(1) << s);
    if (profile.r0_index >= 0) scale *= 2;
    return out * scale;
}

/// sum of mult * |lambda| with each absolute value resolved by certified sign.
inline QuadExt energy_of_spectrum(const Spectrum& spec) {
    QuadExt out;
    for (const auto& e : spec.entries()) {
        out += e.value.abs() * Rat(static_cast<unsigned long>(e.multiplicity));
    }
    return out;
}

/// A computed predicate next to its closed-form classifier.
struct ClassifiedBool {
    bool computed;
    bool classifier;

    bool agree() const { return computed == classifier; }
};

/**
 * Hyperenergetic test: exact comparison of E(G) against 2(n-1), together
 * with the exception-list classifier. The two are reported side by side;
 * they are known to part ways exactly on single-factor rings of residue
 * order 9, where the energy equals 2(n-1) and the strict inequality fails.
 */
inline ClassifiedBool hyperenergetic(const ProductRing& ring) {
    const auto profile = ring.residue_profile();
    detail::require_supported(profile, ring.canonical());

    QuadExt threshold(Rat(2) * Rat(static_cast<unsigned long>(ring.order() - 1)));
    bool computed = (energy_closed(ring) - threshold).sign() > 0;

    std::vector<std::uint64_t> rest_q;
    for (std::size_t i = 0; i < ring.factors().size(); ++i) {
        if (static_cast<int>(i) != profile.r0_index) rest_q.push_back(ring.factors()[i].residue_order());
    }
    bool classifier = true;
    if (profile.r0_index < 0) {
        if (rest_q.size() == 1 && rest_q[0] == 5) classifier = false;
        if (rest_q.size() == 2 && rest_q[0] == 5 && rest_q[1] == 5) classifier = false;
    } else {
        const std::uint64_t q0 = ring.factors()[static_cast<std::size_t>(profile.r0_index)].residue_order();
        if (rest_q.empty()) classifier = false;  // E = 2(|R|-m) never exceeds 2(|R|-1)
        if (rest_q.size() == 1 && q0 == 3 && rest_q[0] == 5) classifier = false;
    }
    return {computed, classifier};
}

/**
 * k-th spectral moment, exact. Evaluated as the product of the per-factor
 * local closed forms (spectral moments are multiplicative over tensor
 * products, and every supported ring decomposes).
 */
inline Int moment_closed(const ProductRing& ring, unsigned k) {
    const auto profile = ring.residue_profile();
    detail::require_supported(profile, ring.canonical());
    if (k < 1) throw Error("moment_closed requires k >= 1");

    QuadExt product(1L);
    for (const auto& f : ring.spec().factors) {
        const std::uint64_t q = f.residue_order();
        const Int mk = detail::ipow(f.ideal_order(), k);
        if (q % 4 == 1) {
            auto pe = prime_power(q);
            QuadExt root = QuadExt::sqrt_prime_power(pe->first, pe->second);
            QuadExt sum = (root - QuadExt(1L)).pow(k) + (-root - QuadExt(1L)).pow(k);
            sum += QuadExt(Rat(2) * Rat(detail::ipow(q - 1, k - 1)));
            Rat scale = Rat(mk) * Rat(static_cast<unsigned long>(q - 1)) / Rat(Int(1) << (k + 1));
            product *= sum * scale;
        } else {
            Int inner = detail::ipow(q - 1, k - 1);
            inner += (k % 2 == 0) ? 1 : -1;
            product *= QuadExt(Rat(mk) * Rat(static_cast<unsigned long>(q - 1)) * Rat(inner));
        }
    }
    return product.as_integer();  // NonIntegerResult here would signal a bug
}

/// Exact triangle count from the closed form.
inline Int triangles_closed(const ProductRing& ring) {
    const auto profile = ring.residue_profile();
    detail::require_supported(profile, ring.canonical());

    Int numerator(1);
    Int denominator(6);
    for (std::size_t i = 0; i < ring.factors().size(); ++i) {
        const auto& f = ring.spec().factors[i];
        const Int m(static_cast<unsigned long>(f.ideal_order()));
        const Int order(static_cast<unsigned long>(f.order()));
        const Int units(static_cast<unsigned long>(f.order() - f.ideal_order()));
        const std::uint64_t q = f.residue_order();
        if (static_cast<int>(i) == profile.r0_index) {
            numerator *= m * order * units * Int(static_cast<unsigned long>(q - 2));
        } else {
            numerator *= m * order * units * (Int(static_cast<unsigned long>(q)) - 5);
            denominator *= 8;
        }
    }
    Int out, rem;
    mpz_tdiv_qr(out.get_mpz_t(), rem.get_mpz_t(), numerator.get_mpz_t(), denominator.get_mpz_t());
    if (rem != 0) throw NonIntegerResult("triangle formula not divisible for " + ring.canonical());
    return out;
}

/**
 * Ramanujan test on a spectrum: lambda(G), the largest absolute eigenvalue
 * other than +-r, must satisfy lambda^2 <= 4(r-1), compared exactly.
 * The top eigenvalue must be r with multiplicity 1 (connectedness).
 */
inline bool ramanujan_check(const Spectrum& spec, std::uint64_t degree) {
    const QuadExt r{Rat(static_cast<unsigned long>(degree))};
    if (spec.top().value != r) {
        throw Error("top eigenvalue does not equal the degree " + std::to_string(degree));
    }
    if (spec.top().multiplicity != 1) {
        throw Disconnected("top eigenvalue has multiplicity " + std::to_string(spec.top().multiplicity));
    }
    const QuadExt bound{Rat(4) * Rat(static_cast<unsigned long>(degree - 1))};
    for (const auto& e : spec.entries()) {
        if (e.value == r || e.value == -r) continue;
        if ((e.value * e.value - bound).sign() > 0) return false;
    }
    return true;
}

/**
 * Pure Ramanujan classifier; no spectrum is computed.
 * Local 3 (mod 4): |R_0| >= (m_0+2)^2/4. All 1 (mod 4): a field, or
 * F_5 x F_5. Mixed: F_3 x F_5, F_3 x F_9 or F_3 x F_13.
 */
inline bool ramanujan_classified(const ProductRing& ring) {
    const auto profile = ring.residue_profile();
    detail::require_supported(profile, ring.canonical());

    const auto& factors = ring.spec().factors;
    if (profile.r0_index >= 0) {
        const auto& r0 = factors[static_cast<std::size_t>(profile.r0_index)];
        if (factors.size() == 1) {
            const Int lhs = Int(static_cast<unsigned long>(r0.order())) * 4;
            const Int mp2 = Int(static_cast<unsigned long>(r0.ideal_order())) + 2;
            return lhs >= mp2 * mp2;
        }
        if (factors.size() != 2 || r0.ideal_order() != 1 || r0.residue_order() != 3) return false;
        const auto& other = factors[profile.r0_index == 0 ? 1 : 0];
        if (other.ideal_order() != 1) return false;
        const std::uint64_t q = other.residue_order();
        return q == 5 || q == 9 || q == 13;
    }
    for (const auto& f : factors) {
        if (f.ideal_order() != 1) return false;
    }
    if (factors.size() == 1) return true;
    return factors.size() == 2 && factors[0].residue_order() == 5 && factors[1].residue_order() == 5;
}

/// Per-ring invariant bundle; the agreement flags are filled by the oracle pass.
struct InvariantReport {
    std::string ring;
    std::uint64_t order = 0;
    std::string classification;
    std::uint64_t degree = 0;
    QuadExt energy;
    double energy_approx = 0.0;
    ClassifiedBool hyperenergetic{false, false};
    std::vector<Int> moments;  // s_1 .. s_kmax
    Int triangles;
    ClassifiedBool ramanujan{false, false};

    struct Sources {
        std::optional<MatchReport> character;
        std::optional<MatchReport> jacobi;
        std::optional<bool> moments_match;
        std::optional<bool> triangles_match;
        std::optional<bool> energy_match;
    } sources;

    std::optional<std::uint64_t> diameter;          // nullopt = not computed or infinite
    bool diameter_infinite = false;
    std::optional<bool> tensor_decomposable;
};

/**
 * Assembles the closed-form report for a supported ring; when `with_oracle`
 * is set, also builds the graph and fills the closed/oracle agreement flags,
 * diameter and tensor decomposability.
 */
inline InvariantReport invariant_report(const ProductRing& ring, unsigned k_max, bool with_oracle,
                                        double tol = 1e-8, std::uint64_t cap = kDefaultCap) {
    InvariantReport rep;
    rep.ring = ring.canonical();
    rep.order = ring.order();
    rep.classification = to_string(ring.residue_profile().tag);

    const Spectrum spec = closed_spectrum(ring);
    rep.degree = static_cast<std::uint64_t>(spec.top().value.as_integer().get_ui());
    rep.energy = energy_closed(ring);
    rep.energy_approx = rep.energy.approx_value();
    rep.hyperenergetic = hyperenergetic(ring);
    for (unsigned k = 1; k <= k_max; ++k) rep.moments.push_back(moment_closed(ring, k));
    rep.triangles = triangles_closed(ring);
    rep.ramanujan = {ramanujan_check(spec, rep.degree), ramanujan_classified(ring)};
    rep.tensor_decomposable = tensor_decomposes(ring);

    if (with_oracle) {
        rep.sources.character = match_spectra(spec, character_spectrum(ring, cap), tol);
        const Graph g = cayley_graph(ring, cap);
        rep.sources.jacobi = match_spectra(spec, jacobi_spectrum(g, cap), tol);
        const auto walks = walk_moments(g, k_max);
        bool ok = true;
        for (unsigned k = 1; k <= k_max; ++k) ok = ok && walks[k] == rep.moments[k - 1];
        rep.sources.moments_match = ok;
        rep.sources.triangles_match =
            Int(static_cast<unsigned long>(triangle_count_oracle(g))) == rep.triangles;
        rep.sources.energy_match = energy_of_spectrum(spec) == rep.energy;
        auto diam = diameter_bfs(g);
        rep.diameter_infinite = !diam.has_value();
        rep.diameter = diam;
    }
    return rep;
}

}  // namespace quct
