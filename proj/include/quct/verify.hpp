#pragma once

/**
 * @file verify.hpp
 * @brief Exhaustive ring enumeration and the closed-vs-oracle invariant
 *        battery behind `quct verify`.
 */

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "quct/errors.hpp"
#include "quct/graph.hpp"
#include "quct/invariants.hpp"
#include "quct/oracle.hpp"
#include "quct/ring.hpp"
#include "quct/spectrum.hpp"

namespace quct {

/**
 * All canonical ring specs over the implemented local kinds with odd residue
 * order and order at most max_order. Z_p and F_p[x]/(x^1) duplicates of the
 * field F_p are canonicalized to the field form, so each isomorphism class
 * appears once. By default only rings with closed-form support are returned;
 * include_unsupported adds those with two or more residue orders 3 (mod 4).
 * Deterministic order: ascending (ring order, canonical string).
 */
inline std::vector<RingSpec> enumerate_rings(std::uint64_t max_order, bool include_unsupported = false) {
    std::vector<LocalRingSpec> inventory;
    for (std::uint64_t p = 3; p <= max_order; p += 2) {
        if (!is_prime(p)) continue;
        for (unsigned e = 1; checked_pow(p, e) != 0 && checked_pow(p, e) <= max_order; ++e) {
            inventory.push_back({LocalKind::GaloisField, p, e});
            if (e >= 2) {
                inventory.push_back({LocalKind::ZmodPK, p, e});
                inventory.push_back({LocalKind::TruncatedPoly, p, e});
            }
        }
    }
    std::sort(inventory.begin(), inventory.end(),
              [](const LocalRingSpec& a, const LocalRingSpec& b) { return a.sort_key() < b.sort_key(); });

    std::vector<RingSpec> out;
    std::vector<LocalRingSpec> current;
    auto classify = [](const std::vector<LocalRingSpec>& factors) {
        int bad = 0;
        for (const auto& f : factors) {
            if (f.residue_order() % 4 == 3) ++bad;
        }
        return bad;
    };
    // multisets via non-decreasing inventory index
    auto dfs = [&](auto&& self, std::size_t min_idx, std::uint64_t order_left) -> void {
        if (!current.empty()) {
            int bad = classify(current);
            if (bad <= 1 || include_unsupported) out.push_back(RingSpec{current});
        }
        for (std::size_t i = min_idx; i < inventory.size(); ++i) {
            std::uint64_t o = inventory[i].order();
            if (o > order_left) continue;
            current.push_back(inventory[i]);
            self(self, i, order_left / o);
            current.pop_back();
        }
    };
    dfs(dfs, 0, max_order);

    for (auto& spec : out) spec.normalize();
    std::sort(out.begin(), out.end(), [](const RingSpec& a, const RingSpec& b) {
        return std::make_pair(a.order(), a.canonical()) < std::make_pair(b.order(), b.canonical());
    });
    return out;
}

struct CheckResult {
    std::string invariant;
    std::string ring;
    bool pass;
    std::string detail;
};

namespace detail {

inline void add(std::vector<CheckResult>& out, const std::string& invariant, const std::string& ring,
                bool pass, const std::string& detail = {}) {
    out.push_back({invariant, ring, pass, detail});
}

inline bool numeric_close(const std::vector<double>& a, const std::vector<double>& b, double tol,
                          double& max_dev) {
    max_dev = 0.0;
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) max_dev = std::max(max_dev, std::fabs(a[i] - b[i]));
    return max_dev < tol;
}

}  // namespace detail

/**
 * Runs the full invariant battery on one ring and reports every check
 * outcome (it does not stop at the first failure). Closed-form checks are
 * skipped for rings without closed-form support; the oracle-agreement and
 * tensor-criterion checks run for every odd-residue-order ring.
 */
inline std::vector<CheckResult> verify_ring(const ProductRing& ring, unsigned k_max = 6, double tol = 1e-8,
                                            std::uint64_t cap = kDefaultCap) {
    std::vector<CheckResult> out;
    const std::string name = ring.canonical();
    const auto profile = ring.residue_profile();
    bool odd = true;
    for (const auto& f : profile.factors) odd = odd && f.residue_order % 2 == 1;

    const Graph g = cayley_graph(ring, cap);
    const NumericSpectrum character = character_spectrum(ring, cap);
    const NumericSpectrum jacobi = jacobi_spectrum(g, cap);

    double dev = 0.0;
    detail::add(out, "oracle-agreement", name, detail::numeric_close(character.values, jacobi.values, tol, dev),
                "character vs jacobi max dev " + std::to_string(dev));

    if (odd) {
        bool predicted = tensor_decomposes(ring);
        Graph folded = [&] {
            Graph acc = cayley_graph(ProductRing::build(RingSpec{{ring.spec().factors[0]}}, cap), cap);
            for (std::size_t i = 1; i < ring.spec().factors.size(); ++i) {
                acc = tensor_product(acc, cayley_graph(ProductRing::build(RingSpec{{ring.spec().factors[i]}}, cap), cap), cap);
            }
            return acc;
        }();
        bool equal = g == folded;
        detail::add(out, "tensor-criterion", name, equal == predicted,
                    predicted ? "expected edge-set equality with the factor tensor product"
                              : "expected edge sets to differ");
    }

    if (odd && ring.factors().size() == 1) {
        const auto& f = ring.spec().factors[0];
        auto pe = prime_power(f.residue_order());
        ProductRing residue = ProductRing::build(RingSpec{{{LocalKind::GaloisField, pe->first, pe->second}}}, cap);
        Graph tensor = tensor_product(cayley_graph(residue, cap),
                                      complete_pseudograph(f.ideal_order()), cap);
        NumericSpectrum tensor_spec = jacobi_spectrum(tensor, cap);
        detail::add(out, "local-cospectrality", name,
                    detail::numeric_close(character.values, tensor_spec.values, tol, dev),
                    "residue-field tensor model, max dev " + std::to_string(dev));
    }

    if (profile.tag == RingClass::Unsupported) return out;

    const Spectrum spec = closed_spectrum(ring);
    const std::uint64_t degree = *g.regular_degree();

    detail::add(out, "spectrum-cardinality", name, spec.total_multiplicity() == ring.order());
    detail::add(out, "spectrum-top", name,
                spec.top().value == QuadExt(Rat(static_cast<unsigned long>(degree))) &&
                    spec.top().multiplicity == 1,
                "top eigenvalue must equal the degree " + std::to_string(degree) + " with multiplicity 1");
    detail::add(out, "spectrum-trace-zero", name, spec.moment(1).is_zero());
    detail::add(out, "spectrum-moment2", name,
                spec.moment(2) == QuadExt(Rat(static_cast<unsigned long>(ring.order())) *
                                          Rat(static_cast<unsigned long>(degree))));

    MatchReport mc = match_spectra(spec, character, tol);
    detail::add(out, "spectrum-match-character", name, mc.pass, "max dev " + std::to_string(mc.max_dev));
    MatchReport mj = match_spectra(spec, jacobi, tol);
    detail::add(out, "spectrum-match-jacobi", name, mj.pass, "max dev " + std::to_string(mj.max_dev));

    const auto walks = walk_moments(g, k_max);
    bool moments_ok = true;
    std::string moment_detail;
    for (unsigned k = 1; k <= k_max; ++k) {
        Int closed = moment_closed(ring, k);
        if (closed != walks[k]) {
            moments_ok = false;
            moment_detail += "s_" + std::to_string(k) + ": closed " + closed.get_str() + " vs walks " +
                             walks[k].get_str() + "; ";
        }
    }
    detail::add(out, "moments-match", name, moments_ok, moment_detail);

    Int tri_closed = triangles_closed(ring);
    Int tri_oracle(static_cast<unsigned long>(triangle_count_oracle(g)));
    Int s3 = moment_closed(ring, 3);
    detail::add(out, "triangles-match", name, tri_closed == tri_oracle && s3 == tri_closed * 6,
                "closed " + tri_closed.get_str() + ", oracle " + tri_oracle.get_str());

    detail::add(out, "energy-match", name, energy_closed(ring) == energy_of_spectrum(spec));

    ClassifiedBool hyper = hyperenergetic(ring);
    bool q9_exception = ring.factors().size() == 1 && ring.factors()[0].residue_order() == 9;
    detail::add(out, "hyperenergetic-classifier", name, hyper.agree() != q9_exception,
                q9_exception ? "single factor of residue order 9: classifier disagreement is expected"
                             : (hyper.agree() ? "" : "computed and classifier disagree"));

    detail::add(out, "ramanujan-match", name, ramanujan_check(spec, degree) == ramanujan_classified(ring));

    return out;
}

/// Index-parallel map with a deterministic result slot per item.
template <typename F>
inline void parallel_for(std::size_t count, F&& fn, unsigned threads = 0) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace quct
