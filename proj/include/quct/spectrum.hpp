#pragma once

/**
 * @file spectrum.hpp
 * @brief Closed-form adjacency spectra of quadratic unitary Cayley graphs,
 *        evaluated exactly as multisets of multiquadratic numbers.
 *
 * Supported classifications:
 *   - a single local factor of odd residue order (Paley-type / complete
 *     multipartite spectra),
 *   - every factor of residue order 1 (mod 4)  (eigenvalues lambda_{A,B}),
 *   - exactly one factor of residue order 3 (mod 4) times such a product.
 *
 * Everything is exact: no floating point enters any closed form.
 */

#include <cstdint>
#include <map>
#include <vector>

#include "quct/errors.hpp"
#include "quct/quadext.hpp"
#include "quct/ring.hpp"

namespace quct {

struct SpectrumEntry {
    QuadExt value;
    std::uint64_t multiplicity;

    bool operator==(const SpectrumEntry& rhs) const {
        return value == rhs.value && multiplicity == rhs.multiplicity;
    }
};

/// Multiset of exact eigenvalues, distinct values sorted descending.
class Spectrum {
public:
    Spectrum() = default;

    /// Merges equal values and sorts descending by exact comparison.
    static Spectrum from_multiset(const std::map<QuadExt, std::uint64_t>& values) {
        Spectrum s;
        for (const auto& [v, m] : values) {
            if (m > 0) s.entries_.push_back({v, m});
        }
        std::sort(s.entries_.begin(), s.entries_.end(),
                  [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.value.compare(b.value) > 0; });
        return s;
    }

    const std::vector<SpectrumEntry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    const SpectrumEntry& top() const {
        if (entries_.empty()) throw Error("empty spectrum has no top eigenvalue");
        return entries_.front();
    }

    std::uint64_t total_multiplicity() const {
        std::uint64_t n = 0;
        for (const auto& e : entries_) n += e.multiplicity;
        return n;
    }

    /// sum of mult * value^k, exact.
    QuadExt moment(unsigned k) const {
        QuadExt out;
        for (const auto& e : entries_) {
            out += e.value.pow(k) * Rat(static_cast<unsigned long>(e.multiplicity));
        }
        return out;
    }

    /// Approximate values with multiplicity, descending; length = vertex count.
    std::vector<double> expanded_desc() const {
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(total_multiplicity()));
        for (const auto& e : entries_) {
            double v = e.value.approx_value();
            for (std::uint64_t i = 0; i < e.multiplicity; ++i) out.push_back(v);
        }
        return out;
    }

    bool operator==(const Spectrum& rhs) const { return entries_ == rhs.entries_; }

private:
    std::vector<SpectrumEntry> entries_;
};

namespace detail {

/**
 * lambda_{A,B} over a list of local factors, all of residue order 1 (mod 4):
 *
 *   (-1)^|B| * units / (2^s * prod_{i in A}(sqrt(q_i)+1) * prod_{j in B}(sqrt(q_j)-1))
 *
 * with denominators rationalized through conjugates, so the result stays in
 * exact multiquadratic form.
 */
inline QuadExt lambda_core(const std::vector<LocalRingSpec>& factors, std::uint64_t units,
                           const std::vector<std::size_t>& a_set, const std::vector<std::size_t>& b_set) {
    const std::size_t s = factors.size();
    Rat scale(static_cast<unsigned long>(units));
    scale /= Rat(Int(1) << s);
    QuadExt out{scale};
    for (std::size_t i : a_set) {
        auto pe = prime_power(factors[i].residue_order());
        // 1/(sqrt(q)+1) = (sqrt(q)-1)/(q-1)
        out *= QuadExt::sqrt_prime_power(pe->first, pe->second) - QuadExt(1L);
        out.scale(Rat(1, static_cast<unsigned long>(factors[i].residue_order() - 1)));
    }
    for (std::size_t j : b_set) {
        auto pe = prime_power(factors[j].residue_order());
        // 1/(sqrt(q)-1) = (sqrt(q)+1)/(q-1)
        out *= QuadExt::sqrt_prime_power(pe->first, pe->second) + QuadExt(1L);
        out.scale(Rat(1, static_cast<unsigned long>(factors[j].residue_order() - 1)));
    }
#ifdef QUCT_FAULT_LAMBDA_SIGN
    // Fault-injection build: drop the (-1)^|B| sign so verification must fail.
    return out;
#else
    return b_set.size() % 2 == 0 ? out : -out;
#endif
}

inline std::uint64_t local_unit_count(const LocalRingSpec& f) { return f.order() - f.ideal_order(); }

}  // namespace detail

/// Spectrum of the Cayley graph of a single local ring with odd residue order.
inline Spectrum local_spectrum(const LocalRing& local) {
    const std::uint64_t n = local.order();
    const std::uint64_t m = local.ideal_order();
    const std::uint64_t q = local.residue_order();
    if (q % 2 == 0) {
        throw EvenCharacteristicUnsupported("no closed-form spectrum for even residue order, ring " +
                                            local.spec().str());
    }
    std::map<QuadExt, std::uint64_t> vals;
    if (q % 4 == 1) {
        auto pe = prime_power(q);
        QuadExt root = QuadExt::sqrt_prime_power(pe->first, pe->second);
        Rat half_m = Rat(static_cast<unsigned long>(m)) / 2;
        vals[QuadExt(Rat(static_cast<unsigned long>(n - m)) / 2)] += 1;
        vals[(root - QuadExt(1L)) * half_m] += (q - 1) / 2;
        vals[(-root - QuadExt(1L)) * half_m] += (q - 1) / 2;
    } else {
        vals[QuadExt(Rat(static_cast<unsigned long>(n - m)))] += 1;
        vals[QuadExt(-Rat(static_cast<unsigned long>(m)))] += q - 1;
    }
    if (n > q) vals[QuadExt()] += n - q;
    return Spectrum::from_multiset(vals);
}

/**
 * The eigenvalue lambda_{A,B} of a ring whose factors all have residue order
 * 1 (mod 4). A and B are disjoint 0-based factor index sets.
 */
inline QuadExt lambda_AB(const ProductRing& ring, const std::vector<std::size_t>& a_set,
                         const std::vector<std::size_t>& b_set) {
    const auto profile = ring.residue_profile();
    if (profile.tag != RingClass::All1Mod4) {
        throw WrongClassification("lambda_{A,B} requires every residue order to be 1 (mod 4), ring " +
                                  ring.canonical());
    }
    std::vector<bool> used(ring.factors().size(), false);
    for (std::size_t i : a_set) {
        if (i >= used.size()) throw IndexOutOfRange("factor index out of range");
        used[i] = true;
    }
    for (std::size_t j : b_set) {
        if (j >= used.size()) throw IndexOutOfRange("factor index out of range");
        if (used[j]) throw OverlappingSets("index sets A and B must be disjoint");
    }
    return detail::lambda_core(ring.spec().factors, ring.unit_count(), a_set, b_set);
}

namespace detail {

/**
 * Accumulates the lambda_{A,B} family for the given 1 (mod 4) factors into
 * `vals`, with every eigenvalue first transformed by value_scale and its
 * multiplicity by mult_scale. Covers both eigenvalue families at once.
 */
inline void accumulate_lambda_family(const std::vector<LocalRingSpec>& factors, std::uint64_t units,
                                     const QuadExt& value_scale, std::uint64_t mult_scale,
                                     std::map<QuadExt, std::uint64_t>& vals) {
    const std::size_t s = factors.size();
    std::vector<unsigned> assign(s, 0);  // 0 = neither, 1 = A, 2 = B
    while (true) {
        std::vector<std::size_t> a_set, b_set;
        std::uint64_t mult = mult_scale;
        for (std::size_t i = 0; i < s; ++i) {
            if (assign[i] == 0) continue;
            (assign[i] == 1 ? a_set : b_set).push_back(i);
            mult *= (factors[i].residue_order() - 1) / 2;
        }
        vals[lambda_core(factors, units, a_set, b_set) * value_scale] += mult;

        std::size_t pos = 0;
        while (pos < s && assign[pos] == 2) assign[pos++] = 0;
        if (pos == s) break;
        ++assign[pos];
    }
}

}  // namespace detail

/// Spectrum when every factor has residue order 1 (mod 4).
inline Spectrum spectrum_all_1mod4(const ProductRing& ring) {
    const auto profile = ring.residue_profile();
    if (profile.tag != RingClass::All1Mod4) {
        throw WrongClassification("ring " + ring.canonical() + " is not of class ALL_1MOD4");
    }
    std::map<QuadExt, std::uint64_t> vals;
    detail::accumulate_lambda_family(ring.spec().factors, ring.unit_count(), QuadExt(1L), 1, vals);
    std::uint64_t q_prod = 1;
    for (const auto& f : ring.factors()) q_prod *= f.residue_order();
    if (ring.order() > q_prod) vals[QuadExt()] += ring.order() - q_prod;
    return Spectrum::from_multiset(vals);
}

/// Spectrum when exactly one factor R_0 has residue order 3 (mod 4).
inline Spectrum spectrum_one_3mod4(const ProductRing& ring) {
    const auto profile = ring.residue_profile();
    if (profile.tag != RingClass::One3Mod4) {
        throw WrongClassification("ring " + ring.canonical() + " is not of class ONE_3MOD4");
    }
    const auto& all = ring.spec().factors;
    const std::size_t r0 = static_cast<std::size_t>(profile.r0_index);
    if (all.size() == 1) return local_spectrum(ring.factors()[r0]);

    std::vector<LocalRingSpec> rest;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (i != r0) rest.push_back(all[i]);
    }
    std::uint64_t rest_units = 1, rest_q_prod = 1;
    for (const auto& f : rest) {
        rest_units *= detail::local_unit_count(f);
        rest_q_prod *= f.residue_order();
    }
    const std::uint64_t m0 = all[r0].ideal_order();
    const std::uint64_t q0 = all[r0].residue_order();
    const std::uint64_t r0_units = detail::local_unit_count(all[r0]);  // m0*(q0-1)

    std::map<QuadExt, std::uint64_t> vals;
    detail::accumulate_lambda_family(rest, rest_units,
                                     QuadExt(Rat(static_cast<unsigned long>(r0_units))), 1, vals);
    detail::accumulate_lambda_family(rest, rest_units,
                                     QuadExt(-Rat(static_cast<unsigned long>(m0))), q0 - 1, vals);
    const std::uint64_t nonzero = q0 * rest_q_prod;
    if (ring.order() > nonzero) vals[QuadExt()] += ring.order() - nonzero;
    return Spectrum::from_multiset(vals);
}

/// Dispatcher over the classification; throws UnsupportedRingClass otherwise.
inline Spectrum closed_spectrum(const ProductRing& ring) {
    switch (ring.residue_profile().tag) {
        case RingClass::All1Mod4:
            return spectrum_all_1mod4(ring);
        case RingClass::One3Mod4:
            return spectrum_one_3mod4(ring);
        case RingClass::Unsupported:
            break;
    }
    throw UnsupportedRingClass(
        "no closed-form spectrum for ring " + ring.canonical() +
        ": requires odd residue orders with at most one factor of residue order 3 (mod 4)");
}

}  // namespace quct
