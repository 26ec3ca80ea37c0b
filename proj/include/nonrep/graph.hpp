#ifndef NONREP_GRAPH_HPP
#define NONREP_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "nonrep/error.hpp"

namespace nonrep {

using VertexId = int;

// A path is a sequence of distinct, consecutively adjacent vertices.
using Path = std::vector<VertexId>;

// Per-vertex colours; colour 0 means "uncoloured".
using Colouring = std::vector<int>;

// Simple undirected graph on vertices 0..n-1. Neighbour lists are kept
// sorted; the fixed vertex ordering used throughout is the id order.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adj_(static_cast<std::size_t>(n)) {
        if (n < 0) throw InputError("Graph: negative vertex count");
    }

    int vertex_count() const { return static_cast<int>(adj_.size()); }

    int edge_count() const {
        std::size_t twice = 0;
        for (const auto& nb : adj_) twice += nb.size();
        return static_cast<int>(twice / 2);
    }

    void add_edge(VertexId u, VertexId v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw InputError("Graph: loop edge");
        if (has_edge(u, v)) throw InputError("Graph: duplicate edge");
        insert_sorted(adj_[u], v);
        insert_sorted(adj_[v], u);
    }

    bool has_edge(VertexId u, VertexId v) const {
        check_vertex(u);
        check_vertex(v);
        const auto& nb = adj_[u];
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    const std::vector<VertexId>& neighbours(VertexId v) const {
        check_vertex(v);
        return adj_[v];
    }

    int degree(VertexId v) const { return static_cast<int>(neighbours(v).size()); }

    int max_degree() const {
        int d = 0;
        for (VertexId v = 0; v < vertex_count(); ++v) d = std::max(d, degree(v));
        return d;
    }

    std::vector<std::pair<VertexId, VertexId>> edges() const {
        std::vector<std::pair<VertexId, VertexId>> out;
        for (VertexId u = 0; u < vertex_count(); ++u)
            for (VertexId v : adj_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    void check_vertex(VertexId v) const {
        if (v < 0 || v >= vertex_count()) throw InputError("Graph: unknown vertex id");
    }

private:
    static void insert_sorted(std::vector<VertexId>& nb, VertexId v) {
        nb.insert(std::upper_bound(nb.begin(), nb.end(), v), v);
    }

    std::vector<std::vector<VertexId>> adj_;
};

// Per-vertex lists of distinct positive colours, stored sorted ascending.
// "The c-th colour of L(v)" always refers to this ascending order.
class ListAssignment {
public:
    ListAssignment() = default;
    explicit ListAssignment(std::vector<std::vector<int>> lists) : lists_(std::move(lists)) {
        for (auto& l : lists_) {
            if (l.empty()) throw InputError("ListAssignment: empty list");
            std::sort(l.begin(), l.end());
            if (std::adjacent_find(l.begin(), l.end()) != l.end())
                throw InputError("ListAssignment: repeated colour in a list");
            if (l.front() <= 0) throw InputError("ListAssignment: colours must be positive");
        }
    }

    // Identical size-k lists {1..k} on every vertex.
    static ListAssignment uniform(int n, int k) {
        if (k < 1) throw InputError("ListAssignment: list size must be >= 1");
        std::vector<int> base(static_cast<std::size_t>(k));
        std::iota(base.begin(), base.end(), 1);
        return ListAssignment(std::vector<std::vector<int>>(static_cast<std::size_t>(n), base));
    }

    int vertex_count() const { return static_cast<int>(lists_.size()); }

    const std::vector<int>& list(VertexId v) const { return lists_.at(static_cast<std::size_t>(v)); }

    // The common list size ell: the minimum over all vertices.
    int ell() const {
        if (lists_.empty()) throw InputError("ListAssignment: no lists");
        std::size_t m = lists_.front().size();
        for (const auto& l : lists_) m = std::min(m, l.size());
        return static_cast<int>(m);
    }

    int colour_at(VertexId v, int index1) const {
        const auto& l = list(v);
        if (index1 < 1 || index1 > static_cast<int>(l.size()))
            throw InputError("ListAssignment: colour index out of range");
        return l[static_cast<std::size_t>(index1 - 1)];
    }

    // 1-based position of `colour` in L(v), or 0 when absent.
    int index_of(VertexId v, int colour) const {
        const auto& l = list(v);
        auto it = std::lower_bound(l.begin(), l.end(), colour);
        if (it == l.end() || *it != colour) return 0;
        return static_cast<int>(it - l.begin()) + 1;
    }

    bool contains(VertexId v, int colour) const { return index_of(v, colour) != 0; }

private:
    std::vector<std::vector<int>> lists_;
};

// N(v) - excluded, sorted by the fixed ordering. 1-based positions in the
// returned sequence define indices of neighbours outside the excluded set.
inline std::vector<VertexId> ordered_neighbours(const Graph& g, VertexId v,
                                                const std::vector<VertexId>& excluded) {
    g.check_vertex(v);
    std::vector<char> ex(static_cast<std::size_t>(g.vertex_count()), 0);
    for (VertexId u : excluded) {
        g.check_vertex(u);
        ex[static_cast<std::size_t>(u)] = 1;
    }
    std::vector<VertexId> out;
    for (VertexId u : g.neighbours(v))
        if (!ex[static_cast<std::size_t>(u)]) out.push_back(u);
    return out;
}

inline bool is_path_of(const Graph& g, const Path& p) {
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        g.check_vertex(p[i]);
        if (seen[static_cast<std::size_t>(p[i])]) return false;
        seen[static_cast<std::size_t>(p[i])] = 1;
        if (i > 0 && !g.has_edge(p[i - 1], p[i])) return false;
    }
    return true;
}

inline bool same_path_upto_reversal(const Path& a, const Path& b) {
    if (a == b) return true;
    return std::equal(a.begin(), a.end(), b.rbegin(), b.rend());
}

// Lexicographically smaller of the two orientations.
inline Path canonical_orientation(Path p) {
    Path r(p.rbegin(), p.rend());
    return std::min(p, r);
}

// --- Standard small graphs used by the CLI and tests ---

inline Graph path_graph(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

inline Graph cycle_graph(int n) {
    if (n < 3) throw InputError("cycle_graph: need at least 3 vertices");
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    g.add_edge(n - 1, 0);
    return g;
}

inline Graph complete_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

// Centre is vertex 0, leaves 1..leaves.
inline Graph star_graph(int leaves) {
    Graph g(leaves + 1);
    for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
    return g;
}

inline Graph petersen_graph() {
    Graph g(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i, i + 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
    }
    return g;
}

// Deterministic helpers on a caller-owned generator. Raw 64-bit draws are
// reduced directly so the results do not depend on the standard library's
// distribution implementations.
inline std::uint64_t draw_u64(std::mt19937_64& rng) { return rng(); }

inline int draw_int(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(draw_u64(rng) % static_cast<std::uint64_t>(hi - lo + 1));
}

inline bool draw_percent(std::mt19937_64& rng, int percent) {
    return static_cast<int>(draw_u64(rng) % 100) < percent;
}

inline Graph random_graph(int n, int edge_percent, std::mt19937_64& rng) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (draw_percent(rng, edge_percent)) g.add_edge(i, j);
    return g;
}

// Random per-vertex lists: k distinct colours drawn from [1, pool].
inline ListAssignment random_lists(int n, int k, int pool, std::mt19937_64& rng) {
    if (pool < k) throw InputError("random_lists: pool smaller than list size");
    std::vector<std::vector<int>> lists(static_cast<std::size_t>(n));
    for (auto& l : lists) {
        std::vector<int> all(static_cast<std::size_t>(pool));
        std::iota(all.begin(), all.end(), 1);
        for (int i = 0; i < k; ++i) {
            int j = draw_int(rng, i, pool - 1);
            std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(j)]);
        }
        l.assign(all.begin(), all.begin() + k);
    }
    return ListAssignment(std::move(lists));
}

inline std::pair<Graph, std::vector<VertexId>> induced_subgraph(const Graph& g,
                                                                const std::vector<VertexId>& verts) {
    std::vector<VertexId> sorted = verts;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> pos(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < sorted.size(); ++i) pos[static_cast<std::size_t>(sorted[i])] = static_cast<int>(i);
    Graph sub(static_cast<int>(sorted.size()));
    for (VertexId u : sorted)
        for (VertexId v : g.neighbours(u))
            if (u < v && pos[static_cast<std::size_t>(v)] >= 0)
                sub.add_edge(pos[static_cast<std::size_t>(u)], pos[static_cast<std::size_t>(v)]);
    return {std::move(sub), std::move(sorted)};
}

} // namespace nonrep

#endif
