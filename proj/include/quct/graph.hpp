#pragma once

/**
 * @file graph.hpp
 * @brief Loop-aware graphs with bitset adjacency rows, Cayley and tensor
 *        constructions, and combinatorial oracles (triangles, diameter).
 *
 * Vertex order is canonical everywhere: Cayley graphs use the ring's element
 * indices and tensor products use row-major pairs (left factor major), so
 * graph equality below means literal edge-set equality, not isomorphism.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quct/errors.hpp"
#include "quct/ring.hpp"

namespace quct {

class Graph {
public:
    explicit Graph(std::uint64_t n)
        : n_(n), words_(static_cast<std::size_t>((n + 63) / 64)), bits_(words_ * n, 0) {}

    std::uint64_t size() const { return n_; }

    void set_arc(std::uint64_t u, std::uint64_t v) {
        bits_[static_cast<std::size_t>(u) * words_ + v / 64] |= std::uint64_t(1) << (v % 64);
    }
    /// Symmetric insert; u == v adds a loop.
    void set_edge(std::uint64_t u, std::uint64_t v) {
        set_arc(u, v);
        set_arc(v, u);
    }

    bool adjacent(std::uint64_t u, std::uint64_t v) const {
        return (bits_[static_cast<std::size_t>(u) * words_ + v / 64] >> (v % 64)) & 1;
    }

    const std::uint64_t* row(std::uint64_t u) const { return &bits_[static_cast<std::size_t>(u) * words_]; }
    std::size_t words_per_row() const { return words_; }

    std::uint64_t degree(std::uint64_t u) const {
        std::uint64_t d = 0;
        const std::uint64_t* r = row(u);
        for (std::size_t w = 0; w < words_; ++w) d += static_cast<std::uint64_t>(__builtin_popcountll(r[w]));
        return d;
    }

    bool has_loops() const {
        for (std::uint64_t v = 0; v < n_; ++v) {
            if (adjacent(v, v)) return true;
        }
        return false;
    }

    /// Common degree when the graph is regular.
    std::optional<std::uint64_t> regular_degree() const {
        if (n_ == 0) return std::nullopt;
        std::uint64_t d = degree(0);
        for (std::uint64_t v = 1; v < n_; ++v) {
            if (degree(v) != d) return std::nullopt;
        }
        return d;
    }

    std::uint64_t edge_count() const {  // loops count once
        std::uint64_t total = 0, loops = 0;
        for (std::uint64_t v = 0; v < n_; ++v) {
            total += degree(v);
            if (adjacent(v, v)) ++loops;
        }
        return (total - loops) / 2 + loops;
    }

    /// Literal edge-set equality under the shared canonical vertex order.
    bool operator==(const Graph& rhs) const { return n_ == rhs.n_ && bits_ == rhs.bits_; }

    /// "u v" per line, u <= v, 0-based, deterministic.
    std::string edge_list_text() const {
        std::string out;
        for (std::uint64_t u = 0; u < n_; ++u) {
            for (std::uint64_t v = u; v < n_; ++v) {
                if (adjacent(u, v)) {
                    out += std::to_string(u) + " " + std::to_string(v) + "\n";
                }
            }
        }
        return out;
    }

    std::string dot_text() const {
        std::string out = "graph G {\n";
        for (std::uint64_t u = 0; u < n_; ++u) {
            for (std::uint64_t v = u; v < n_; ++v) {
                if (adjacent(u, v)) {
                    out += "  " + std::to_string(u) + " -- " + std::to_string(v) + ";\n";
                }
            }
        }
        out += "}\n";
        return out;
    }

private:
    std::uint64_t n_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

/// Q_R = { u^2 : u a unit }, as sorted element indices.
inline std::vector<std::uint64_t> quadratic_unit_squares(const ProductRing& ring) {
    std::vector<bool> seen(static_cast<std::size_t>(ring.order()), false);
    for (std::uint64_t u : ring.units()) seen[static_cast<std::size_t>(ring.mul(u, u))] = true;
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 0; x < ring.order(); ++x) {
        if (seen[static_cast<std::size_t>(x)]) out.push_back(x);
    }
    return out;
}

/// T_R = Q_R union -Q_R; symmetric and free of 0.
inline std::vector<std::uint64_t> connection_set(const ProductRing& ring) {
    std::vector<bool> seen(static_cast<std::size_t>(ring.order()), false);
    for (std::uint64_t q : quadratic_unit_squares(ring)) {
        seen[static_cast<std::size_t>(q)] = true;
        seen[static_cast<std::size_t>(ring.neg(q))] = true;
    }
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 0; x < ring.order(); ++x) {
        if (seen[static_cast<std::size_t>(x)]) out.push_back(x);
    }
    return out;
}

/// The quadratic unitary Cayley graph: x ~ y iff x - y lies in T_R.
inline Graph cayley_graph(const ProductRing& ring, std::uint64_t cap = kDefaultCap) {
    if (ring.order() > cap) {
        throw SizeCapExceeded("graph on " + std::to_string(ring.order()) + " vertices exceeds the cap");
    }
    Graph g(ring.order());
    const auto t_set = connection_set(ring);
    for (std::uint64_t x = 0; x < ring.order(); ++x) {
        for (std::uint64_t t : t_set) g.set_arc(x, ring.add(x, t));
    }
    return g;
}

/// -1 lies in Q_R exactly when the residue order is 1 (mod 4).
inline bool minus_one_is_square(const LocalRing& local) {
    if (local.residue_order() % 2 == 0) {
        throw EvenCharacteristicUnsupported("minus_one_is_square requires odd residue order, ring " +
                                            local.spec().str());
    }
    return local.residue_order() % 4 == 1;
}

/// K_n with a loop on every vertex (all-ones adjacency).
inline Graph complete_pseudograph(std::uint64_t n) {
    Graph g(n);
    for (std::uint64_t u = 0; u < n; ++u) {
        for (std::uint64_t v = u; v < n; ++v) g.set_edge(u, v);
    }
    return g;
}

/// Tensor product with row-major vertex pairs; loops permitted in either factor.
inline Graph tensor_product(const Graph& g, const Graph& h, std::uint64_t cap = kDefaultCap) {
    if (h.size() != 0 && g.size() > cap / h.size()) {
        throw SizeCapExceeded("tensor product exceeds the vertex cap");
    }
    Graph out(g.size() * h.size());
    for (std::uint64_t u = 0; u < g.size(); ++u) {
        for (std::uint64_t x = 0; x < g.size(); ++x) {
            if (!g.adjacent(u, x)) continue;
            for (std::uint64_t v = 0; v < h.size(); ++v) {
                for (std::uint64_t y = 0; y < h.size(); ++y) {
                    if (h.adjacent(v, y)) out.set_arc(u * h.size() + v, x * h.size() + y);
                }
            }
        }
    }
    return out;
}

/**
 * Whether the Cayley graph of the product ring equals the tensor product of
 * the factor Cayley graphs: true exactly when at most one factor fails to
 * have -1 among its unit squares.
 */
inline bool tensor_decomposes(const ProductRing& ring) {
    int bad = 0;
    for (const auto& f : ring.factors()) {
        if (!minus_one_is_square(f)) ++bad;
    }
    return bad <= 1;
}

/// Exact triangle count via bitset row intersections.
inline std::uint64_t triangle_count_oracle(const Graph& g) {
    if (g.has_loops()) throw LoopsPresent("triangle counting requires a loopless graph");
    std::uint64_t triple = 0;  // ordered-edge count of common neighbours
    const std::size_t words = g.words_per_row();
    for (std::uint64_t u = 0; u < g.size(); ++u) {
        for (std::uint64_t v = u + 1; v < g.size(); ++v) {
            if (!g.adjacent(u, v)) continue;
            const std::uint64_t* ru = g.row(u);
            const std::uint64_t* rv = g.row(v);
            for (std::size_t w = 0; w < words; ++w) {
                triple += static_cast<std::uint64_t>(__builtin_popcountll(ru[w] & rv[w]));
            }
        }
    }
    return triple / 3;
}

/// Exact diameter by all-sources BFS; nullopt when disconnected.
inline std::optional<std::uint64_t> diameter_bfs(const Graph& g) {
    const std::size_t words = g.words_per_row();
    std::uint64_t diameter = 0;
    std::vector<std::uint64_t> visited(words), frontier(words), next(words);
    for (std::uint64_t s = 0; s < g.size(); ++s) {
        std::fill(visited.begin(), visited.end(), 0);
        std::fill(frontier.begin(), frontier.end(), 0);
        visited[s / 64] = frontier[s / 64] = std::uint64_t(1) << (s % 64);
        std::uint64_t reached = 1, depth = 0;
        while (true) {
            std::fill(next.begin(), next.end(), 0);
            for (std::size_t w = 0; w < words; ++w) {
                std::uint64_t bits = frontier[w];
                while (bits) {
                    std::uint64_t v = w * 64 + static_cast<std::uint64_t>(__builtin_ctzll(bits));
                    bits &= bits - 1;
                    const std::uint64_t* rv = g.row(v);
                    for (std::size_t k = 0; k < words; ++k) next[k] |= rv[k];
                }
            }
            std::uint64_t grew = 0;
            for (std::size_t k = 0; k < words; ++k) {
                next[k] &= ~visited[k];
                visited[k] |= next[k];
                grew += static_cast<std::uint64_t>(__builtin_popcountll(next[k]));
            }
            if (grew == 0) break;
            reached += grew;
            ++depth;
            std::swap(frontier, next);
        }
        if (reached != g.size()) return std::nullopt;
        diameter = std::max(diameter, depth);
    }
    return diameter;
}

}  // namespace quct
