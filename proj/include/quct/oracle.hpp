#pragma once

/**
 * @file oracle.hpp
 * @brief Independent spectrum computations sharing no code with the closed
 *        forms: additive character sums, a from-scratch cyclic Jacobi
 *        eigensolver, and exact integer walk moments.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "quct/errors.hpp"
#include "quct/graph.hpp"
#include "quct/quadext.hpp"
#include "quct/ring.hpp"
#include "quct/spectrum.hpp"

namespace quct {

struct NumericSpectrum {
    enum class Method { Character, Jacobi };

    std::vector<double> values;  // descending, length = vertex count
    Method method;

    std::string method_name() const { return method == Method::Character ? "CHARACTER" : "JACOBI"; }
};

/**
 * Eigenvalues of the Cayley graph from additive characters: for a character
 * index vector a over the coordinate orders (d_j), the eigenvalue is
 * sum_{t in T_R} prod_j exp(2*pi*i * a_j t_j / d_j). T_R is symmetric, so
 * every eigenvalue is real; the imaginary residue is checked against 1e-9.
 */
inline NumericSpectrum character_spectrum(const ProductRing& ring, std::uint64_t cap = kDefaultCap) {
    if (ring.order() > cap) {
        throw SizeCapExceeded("character spectrum of order " + std::to_string(ring.order()) +
                              " exceeds the cap");
    }
    const AdditiveCoordinates coords = ring.additive_coordinates();
    const auto& orders = coords.orders();
    const std::size_t r = orders.size();

    std::vector<std::vector<std::uint64_t>> t_coords;
    for (std::uint64_t t : connection_set(ring)) t_coords.push_back(coords.encode(t));

    std::vector<std::vector<std::complex<double>>> roots(r);
    for (std::size_t j = 0; j < r; ++j) {
        roots[j].resize(orders[j]);
        for (std::uint64_t k = 0; k < orders[j]; ++k) {
            double angle = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(orders[j]);
            roots[j][k] = {std::cos(angle), std::sin(angle)};
        }
    }

    NumericSpectrum out;
    out.method = NumericSpectrum::Method::Character;
    out.values.reserve(static_cast<std::size_t>(ring.order()));
    std::vector<std::uint64_t> chi(r, 0);
    for (std::uint64_t count = 0; count < ring.order(); ++count) {
        std::complex<double> sum = 0.0;
        for (const auto& tc : t_coords) {
            std::complex<double> prod = 1.0;
            for (std::size_t j = 0; j < r; ++j) prod *= roots[j][(chi[j] * tc[j]) % orders[j]];
            sum += prod;
        }
        if (std::fabs(sum.imag()) >= 1e-9) {
            throw Error("character sum has non-real residue " + std::to_string(sum.imag()));
        }
        out.values.push_back(sum.real());

        std::size_t pos = r;
        while (pos-- > 0) {
            if (++chi[pos] < orders[pos]) break;
            chi[pos] = 0;
        }
    }
    std::sort(out.values.begin(), out.values.end(), std::greater<>());
    return out;
}

/**
 * Dense symmetric eigenvalues by cyclic Jacobi rotations, implemented from
 * scratch. Sweeps until the off-diagonal Frobenius norm drops below
 * 1e-10 * n; throws NoConvergence after 50 sweeps.
 */
inline NumericSpectrum jacobi_spectrum(const Graph& g, std::uint64_t cap = kDefaultCap) {
    const std::size_t n = static_cast<std::size_t>(g.size());
    if (g.size() > cap) throw SizeCapExceeded("matrix of order " + std::to_string(n) + " exceeds the cap");

    std::vector<double> a(n * n, 0.0);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            if (g.adjacent(u, v)) a[u * n + v] = 1.0;
        }
    }

    const double target = 1e-10 * static_cast<double>(n);
    constexpr int kMaxSweeps = 50;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off2 = 0.0, off_sum = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off2 += 2.0 * a[p * n + q] * a[p * n + q];
                off_sum += std::fabs(a[p * n + q]);
            }
        }
        if (std::sqrt(off2) < target) {
            NumericSpectrum out;
            out.method = NumericSpectrum::Method::Jacobi;
            out.values.resize(n);
            for (std::size_t i = 0; i < n; ++i) out.values[i] = a[i * n + i];
            std::sort(out.values.begin(), out.values.end(), std::greater<>());
            return out;
        }
        // Threshold the first sweeps; later flush elements that are negligible
        // against both diagonal entries to exact zero, otherwise round-off
        // keeps getting re-sprayed and the tail never terminates.
        const double tresh = sweep < 3 ? 0.2 * off_sum / (static_cast<double>(n) * n) : 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a[p * n + q];
                const double g = 100.0 * std::fabs(apq);
                if (sweep > 3 && std::fabs(a[p * n + p]) + g == std::fabs(a[p * n + p]) &&
                    std::fabs(a[q * n + q]) + g == std::fabs(a[q * n + q])) {
                    a[p * n + q] = a[q * n + p] = 0.0;
                    continue;
                }
                if (std::fabs(apq) <= tresh || apq == 0.0) continue;

                const double h = a[q * n + q] - a[p * n + p];
                double t;
                if (std::fabs(h) + g == std::fabs(h)) {
                    t = apq / h;
                } else {
                    double theta = h / (2.0 * apq);
                    t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                a[p * n + p] -= t * apq;
                a[q * n + q] += t * apq;
                a[p * n + q] = a[q * n + p] = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    double aip = a[i * n + p];
                    double aiq = a[i * n + q];
                    a[i * n + p] = a[p * n + i] = aip - s * (aiq + tau * aip);
                    a[i * n + q] = a[q * n + i] = aiq + s * (aip - tau * aiq);
                }
            }
        }
    }
    throw NoConvergence("Jacobi iteration did not converge within 50 sweeps");
}

/**
 * Exact closed-walk counts s_0..s_kmax (s_k = trace(A^k)) via integer
 * matrix-vector products from every start vertex; arbitrary precision
 * throughout, so no overflow for any k.
 */
inline std::vector<Int> walk_moments(const Graph& g, unsigned k_max) {
    const std::size_t n = static_cast<std::size_t>(g.size());
    const std::size_t words = g.words_per_row();
    std::vector<Int> moments(k_max + 1, Int(0));
    moments[0] = static_cast<unsigned long>(n);
    if (k_max == 0) return moments;

    const unsigned h = (k_max + 1) / 2;
    std::vector<std::vector<Int>> x(h + 1, std::vector<Int>(n));
    for (std::size_t v = 0; v < n; ++v) {
        for (auto& vec : x) std::fill(vec.begin(), vec.end(), Int(0));
        x[0][v] = 1;
        for (unsigned j = 1; j <= h; ++j) {
            for (std::size_t u = 0; u < n; ++u) {
                Int& acc = x[j][u];
                const std::uint64_t* ru = g.row(u);
                for (std::size_t w = 0; w < words; ++w) {
                    std::uint64_t bits = ru[w];
                    while (bits) {
                        std::size_t nb = w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits));
                        bits &= bits - 1;
                        acc += x[j - 1][nb];
                    }
                }
            }
        }
        for (unsigned k = 1; k <= k_max; ++k) {
            const auto& left = x[k / 2];
            const auto& right = x[k - k / 2];
            Int dot(0);
            for (std::size_t u = 0; u < n; ++u) {
                if (left[u] != 0 && right[u] != 0) dot += left[u] * right[u];
            }
            moments[k] += dot;
        }
    }
    return moments;
}

struct MatchReport {
    std::string method;
    double max_dev = 0.0;
    double tol = 0.0;
    bool pass = false;
};

/**
 * Positional comparison of a closed spectrum against a numeric one, both
 * expanded and sorted descending. Valid because the agreement tolerance sits
 * far below every eigenvalue gap at desk scale.
 */
inline MatchReport match_spectra(const Spectrum& closed, const NumericSpectrum& numeric, double tol) {
    if (closed.total_multiplicity() != numeric.values.size()) {
        throw CardinalityMismatch("closed spectrum has " + std::to_string(closed.total_multiplicity()) +
                                  " eigenvalues, numeric has " + std::to_string(numeric.values.size()));
    }
    std::vector<double> a = closed.expanded_desc();
    std::vector<double> b = numeric.values;
    std::sort(b.begin(), b.end(), std::greater<>());

    MatchReport report;
    report.method = numeric.method_name();
    report.tol = tol;
    for (std::size_t i = 0; i < a.size(); ++i) {
        report.max_dev = std::max(report.max_dev, std::fabs(a[i] - b[i]));
    }
    report.pass = report.max_dev < tol;
    return report;
}

}  // namespace quct
