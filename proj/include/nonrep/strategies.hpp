#ifndef NONREP_STRATEGIES_HPP
#define NONREP_STRATEGIES_HPP

#include <cmath>
#include <deque>
#include <map>
#include <optional>

#include "nonrep/bounds.hpp"
#include "nonrep/engine.hpp"

namespace nonrep {

// ceil((1 + 1/(delta^{1/3}-1) + 1/delta^{1/3}) * delta^2). For perfect
// cubes the value is rational and the ceiling is taken exactly; otherwise
// it is irrational and long double precision settles the ceiling.
inline long list_size_for_degree(int delta) {
    if (delta < 2) throw InputError("list_size_for_degree: delta must be >= 2");
    long r = std::lround(std::cbrt(static_cast<double>(delta)));
    if (r * r * r == delta) {
        // delta^2 + delta^2/(r-1) + delta^2/r, exact
        long d2 = static_cast<long>(delta) * delta;
        long num = d2 * r * (r - 1) + d2 * r + d2 * (r - 1);
        long den = r * (r - 1);
        return (num + den - 1) / den;
    }
    long double cb = std::cbrtl(static_cast<long double>(delta));
    long double value = (1.0L + 1.0L / (cb - 1.0L) + 1.0L / cb) * delta * delta;
    return static_cast<long>(ceill(value));
}

// ceil(c log2(deg v + 1)), exact in integer arithmetic.
inline long ownership_radius(int degree, long c) {
    if (degree < 0 || c < 1) throw InputError("ownership_radius: bad arguments");
    return spread_demand(degree + 1, c);
}

// Minimum number of division vertices on edge vw for the 5-list strategy.
inline long required_subdivisions(const Graph& h, VertexId v, VertexId w, long c) {
    if (!h.has_edge(v, w)) throw InputError("required_subdivisions: not an edge");
    return ownership_radius(h.degree(v), c) + ownership_radius(h.degree(w), c) + 2;
}

// A subdivision of a base graph. Division vertices come first in the vertex
// ordering (ids 0..division_count-1, assigned along each edge path in edge
// order); the originals Q follow. Each edge path is oriented from its
// smaller-id base endpoint.
struct SubdividedGraph {
    Graph graph;
    Graph base;
    long constant_c = 1;
    int division_count = 0;
    std::vector<std::pair<VertexId, VertexId>> base_edges;   // sorted, defines the edge order
    std::vector<std::vector<VertexId>> edge_paths;           // division vertices per edge, oriented
    std::vector<int> division_edge;                          // per division vertex: its edge index
    std::vector<int> division_pos;                           // position along the oriented path
    std::vector<VertexId> owner;                             // per vertex: owning original in G, or -1
    std::vector<long> radius;                                // per base vertex: g(v)

    VertexId original_id(VertexId base_vertex) const { return division_count + base_vertex; }
    bool is_original(VertexId v) const { return v >= division_count; }
    int original_count() const { return base.vertex_count(); }
};

inline SubdividedGraph subdivide(const Graph& h, const std::vector<int>& counts, long c) {
    auto edges = h.edges();
    if (counts.size() != edges.size()) throw InputError("subdivide: one count per edge required");
    for (int m : counts)
        if (m < 1) throw InputError("subdivide: each edge needs at least one division vertex");

    SubdividedGraph sg;
    sg.base = h;
    sg.constant_c = c;
    sg.base_edges = edges;
    int divisions = 0;
    for (int m : counts) divisions += m;
    sg.division_count = divisions;
    sg.graph = Graph(divisions + h.vertex_count());
    sg.division_edge.assign(static_cast<std::size_t>(divisions), -1);
    sg.division_pos.assign(static_cast<std::size_t>(divisions), -1);

    int next = 0;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [u, w] = edges[e];  // u < w: orient from u
        std::vector<VertexId> path;
        for (int i = 0; i < counts[e]; ++i) {
            path.push_back(next);
            sg.division_edge[static_cast<std::size_t>(next)] = static_cast<int>(e);
            sg.division_pos[static_cast<std::size_t>(next)] = i;
            ++next;
        }
        sg.graph.add_edge(sg.original_id(u), path.front());
        for (std::size_t i = 0; i + 1 < path.size(); ++i) sg.graph.add_edge(path[i], path[i + 1]);
        sg.graph.add_edge(path.back(), sg.original_id(w));
        sg.edge_paths.push_back(std::move(path));
    }

    sg.radius.resize(static_cast<std::size_t>(h.vertex_count()));
    for (VertexId v = 0; v < h.vertex_count(); ++v)
        sg.radius[static_cast<std::size_t>(v)] = ownership_radius(h.degree(v), c);

    // M(v): vertices within distance g(v)+1 of the original v. A division
    // vertex reached by two regions is left unowned; with the required
    // subdivision counts the regions are pairwise disjoint.
    sg.owner.assign(static_cast<std::size_t>(sg.graph.vertex_count()), -1);
    std::vector<int> claims(static_cast<std::size_t>(sg.graph.vertex_count()), 0);
    for (VertexId v = 0; v < h.vertex_count(); ++v) {
        VertexId src = sg.original_id(v);
        std::deque<std::pair<VertexId, long>> queue{{src, 0}};
        std::vector<char> seen(static_cast<std::size_t>(sg.graph.vertex_count()), 0);
        seen[static_cast<std::size_t>(src)] = 1;
        while (!queue.empty()) {
            auto [x, d] = queue.front();
            queue.pop_front();
            if (!sg.is_original(x)) {
                ++claims[static_cast<std::size_t>(x)];
                sg.owner[static_cast<std::size_t>(x)] = src;
            }
            if (d == sg.radius[static_cast<std::size_t>(v)] + 1) continue;
            for (VertexId y : sg.graph.neighbours(x)) {
                if (seen[static_cast<std::size_t>(y)]) continue;
                seen[static_cast<std::size_t>(y)] = 1;
                queue.emplace_back(y, d + 1);
            }
        }
    }
    for (VertexId v = 0; v < sg.graph.vertex_count(); ++v)
        if (claims[static_cast<std::size_t>(v)] > 1) sg.owner[static_cast<std::size_t>(v)] = -1;
    return sg;
}

inline SubdividedGraph subdivide_uniform(const Graph& h, int count, long c) {
    return subdivide(h, std::vector<int>(h.edges().size(), count), c);
}

// Subdivision counts from the 5-list theorem formula.
inline SubdividedGraph subdivide_required(const Graph& h, long c) {
    std::vector<int> counts;
    for (auto [u, w] : h.edges()) counts.push_back(static_cast<int>(required_subdivisions(h, u, w, c)));
    return subdivide(h, counts, c);
}

// X (division vertices only) is nice when it is nonempty and every edge
// path minus X is connected or empty.
inline bool is_nice(const SubdividedGraph& sg, const std::vector<VertexId>& x) {
    std::vector<char> in_x(static_cast<std::size_t>(sg.graph.vertex_count()), 0);
    for (VertexId v : x) {
        sg.graph.check_vertex(v);
        if (sg.is_original(v)) throw InputError("is_nice: X must avoid the original vertices");
        in_x[static_cast<std::size_t>(v)] = 1;
    }
    if (x.empty()) return false;
    for (const auto& path : sg.edge_paths) {
        int first = -1, last = -1, count = 0;
        for (std::size_t i = 0; i < path.size(); ++i) {
            if (!in_x[static_cast<std::size_t>(path[i])]) {
                if (first < 0) first = static_cast<int>(i);
                last = static_cast<int>(i);
                ++count;
            }
        }
        if (count > 0 && last - first + 1 != count) return false;
    }
    return true;
}

// { y in X : X - {y} is nice or empty }. Nonempty for every nice X.
inline std::vector<VertexId> boundary(const SubdividedGraph& sg, const std::vector<VertexId>& x) {
    if (!is_nice(sg, x)) throw InputError("boundary: X is not nice");
    std::vector<char> in_x(static_cast<std::size_t>(sg.graph.vertex_count()), 0);
    for (VertexId v : x) in_x[static_cast<std::size_t>(v)] = 1;
    std::vector<VertexId> out;
    for (const auto& path : sg.edge_paths) {
        int first = -1, last = -1;
        bool any_x = false;
        for (std::size_t i = 0; i < path.size(); ++i) {
            if (in_x[static_cast<std::size_t>(path[i])]) any_x = true;
            else {
                if (first < 0) first = static_cast<int>(i);
                last = static_cast<int>(i);
            }
        }
        if (!any_x) continue;
        if (first < 0) {
            out.insert(out.end(), path.begin(), path.end());
        } else {
            if (first > 0) out.push_back(path[static_cast<std::size_t>(first - 1)]);
            if (last + 1 < static_cast<int>(path.size())) out.push_back(path[static_cast<std::size_t>(last + 1)]);
        }
    }
    std::sort(out.begin(), out.end());
    if (out.empty()) throw InvariantError("boundary: empty boundary of a nice set");
    return out;
}

// The bespoke priority: take the first edge meeting X; inside a fully
// uncoloured path pick its first vertex, otherwise the boundary vertex
// before the coloured stretch, falling back to the one after it.
inline PriorityFunction subdivision_priority(const SubdividedGraph& sg) {
    const SubdividedGraph* s = &sg;
    return {"subdivision", [s](const std::vector<VertexId>& xs) -> VertexId {
                if (xs.empty()) throw InputError("subdivision_priority: empty set");
                std::vector<char> in_x(static_cast<std::size_t>(s->graph.vertex_count()), 0);
                for (VertexId v : xs) in_x[static_cast<std::size_t>(v)] = 1;
                for (const auto& path : s->edge_paths) {
                    int first = -1, last = -1;
                    bool any_x = false;
                    for (std::size_t i = 0; i < path.size(); ++i) {
                        if (in_x[static_cast<std::size_t>(path[i])]) any_x = true;
                        else {
                            if (first < 0) first = static_cast<int>(i);
                            last = static_cast<int>(i);
                        }
                    }
                    if (!any_x) continue;
                    if (first < 0) return path.front();
                    if (first > 0 && in_x[static_cast<std::size_t>(path[static_cast<std::size_t>(first - 1)])])
                        return path[static_cast<std::size_t>(first - 1)];
                    if (last + 1 < static_cast<int>(path.size()) &&
                        in_x[static_cast<std::size_t>(path[static_cast<std::size_t>(last + 1)])])
                        return path[static_cast<std::size_t>(last + 1)];
                    throw InvariantError("subdivision_priority: working set is not nice");
                }
                throw InvariantError("subdivision_priority: X misses every edge path");
            }};
}

// Prune one colour from every division vertex list: the owner's colour when
// present, the largest colour otherwise.
inline ListAssignment adjust_lists(const SubdividedGraph& sg, const ListAssignment& lists,
                                   const Colouring& pre) {
    const int n = sg.graph.vertex_count();
    if (lists.vertex_count() != n || static_cast<int>(pre.size()) != n)
        throw InputError("adjust_lists: size mismatch");
    std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
    for (VertexId v = 0; v < n; ++v) {
        std::vector<int> l = lists.list(v);
        if (sg.is_original(v)) {
            if (pre[static_cast<std::size_t>(v)] == 0 || !lists.contains(v, pre[static_cast<std::size_t>(v)]))
                throw InputError("adjust_lists: originals must be precoloured from their lists");
        } else {
            if (pre[static_cast<std::size_t>(v)] != 0)
                throw InputError("adjust_lists: division vertices must start uncoloured");
            if (l.size() < 2) throw InputError("adjust_lists: lists must have at least two colours");
            VertexId own = sg.owner[static_cast<std::size_t>(v)];
            int drop = l.back();
            if (own >= 0) {
                int oc = pre[static_cast<std::size_t>(own)];
                if (std::find(l.begin(), l.end(), oc) != l.end()) drop = oc;
            }
            l.erase(std::find(l.begin(), l.end(), drop));
        }
        out[static_cast<std::size_t>(v)] = std::move(l);
    }
    return ListAssignment(std::move(out));
}

struct StrategyResult {
    Colouring colouring;
    RunResult run;
    int colours_used = 0;
};

namespace detail {

inline int count_colours(const Colouring& c) {
    std::vector<int> used;
    for (int x : c)
        if (x != 0) used.push_back(x);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    return static_cast<int>(used.size());
}

} // namespace detail

// List colouring for bounded maximum degree: lexicographic priority, no
// precolouring. Success is always verified against the oracle.
inline StrategyResult colour_bounded_degree(const Graph& g, const ListAssignment& lists,
                                            std::uint64_t seed, long max_steps) {
    if (g.vertex_count() == 0) return {{}, {}, 0};
    const int delta = g.max_degree();
    const long need = delta >= 2 ? list_size_for_degree(delta) : delta + 1;
    if (lists.ell() < need) throw InputError("colour_bounded_degree: lists smaller than the degree bound");
    auto res = run_random(g, lists, lexicographic_priority(), Colouring(static_cast<std::size_t>(g.vertex_count()), 0),
                          max_steps, seed);
    if (!res.success) throw ExhaustionError("colour_bounded_degree: step cap reached");
    if (!is_nonrepetitive(g, res.colouring).ok)
        throw InvariantError("colour_bounded_degree: verification failed");
    StrategyResult out{res.colouring, std::move(res), 0};
    out.colours_used = detail::count_colours(out.colouring);
    return out;
}

// Precolour the originals with their smallest list colour, prune the
// division lists, and run the engine under the subdivision priority.
inline StrategyResult colour_subdivision(const SubdividedGraph& sg, const ListAssignment& lists,
                                         std::uint64_t seed, long max_steps) {
    const int n = sg.graph.vertex_count();
    if (lists.vertex_count() != n) throw InputError("colour_subdivision: list assignment size mismatch");
    Colouring pre(static_cast<std::size_t>(n), 0);
    for (VertexId v = 0; v < sg.original_count(); ++v) {
        VertexId ov = sg.original_id(v);
        pre[static_cast<std::size_t>(ov)] = lists.list(ov).front();
    }
    ListAssignment adjusted = adjust_lists(sg, lists, pre);
    PriorityFunction f = subdivision_priority(sg);
    auto res = run_random(sg.graph, adjusted, f, pre, max_steps, seed);
    if (!res.success) throw ExhaustionError("colour_subdivision: step cap reached");
    if (!is_nonrepetitive(sg.graph, res.colouring).ok)
        throw InvariantError("colour_subdivision: verification failed");
    for (VertexId v = 0; v < n; ++v)
        if (!lists.contains(v, res.colouring[static_cast<std::size_t>(v)]))
            throw InvariantError("colour_subdivision: colour outside the original list");
    StrategyResult out{res.colouring, std::move(res), 0};
    out.colours_used = detail::count_colours(out.colouring);
    return out;
}

// The transformation turning a recorded code into a spread-candidate
// sequence: drop the -1, reverse the prefix before it, set the first walked
// entry to 1.
inline std::vector<int> spread_sequence_of_code(const PathCode& code) {
    code.validate();
    int p = code.turn_position();
    std::vector<int> s;
    for (int i = p - 1; i >= 2; --i) s.push_back(code.entries[static_cast<std::size_t>(i - 1)]);
    s.push_back(1);
    for (int i = p + 1; i <= code.length(); ++i) s.push_back(code.entries[static_cast<std::size_t>(i - 1)]);
    return s;
}

} // namespace nonrep

#endif
