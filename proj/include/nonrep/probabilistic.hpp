#ifndef NONREP_PROBABILISTIC_HPP
#define NONREP_PROBABILISTIC_HPP

#include <map>
#include <string>

#include "nonrep/bounds.hpp"
#include "nonrep/strategies.hpp"

namespace nonrep {

// Weighted local-lemma instance: event i has weight t_i and a profile
// counting its dependent events by weight. Condition (a), Pr(A_i) <= p^{t_i},
// is the caller's modelling obligation.
struct LLLInstance {
    Rat p;
    std::vector<long> weights;
    std::vector<std::map<long, long>> dependents;  // per event: weight -> count
};

struct LLLReport {
    bool holds = false;
    std::vector<Rat> slack;  // t_i - 2 sum (2p)^{t_j}
    Rat worst_slack;
};

// Condition (b): 2 sum_{A_j in D_i} (2p)^{t_j} <= t_i, exact rationals.
inline LLLReport lll_check(const LLLInstance& inst) {
    if (inst.p <= 0 || inst.p > Rat(1, 4)) throw InputError("lll_check: p must lie in (0, 1/4]");
    if (inst.weights.size() != inst.dependents.size()) throw InputError("lll_check: profile size mismatch");
    LLLReport rep;
    rep.holds = true;
    bool first = true;
    for (std::size_t i = 0; i < inst.weights.size(); ++i) {
        if (inst.weights[i] < 1) throw InputError("lll_check: weights must be >= 1");
        Rat sum = 0;
        for (auto [w, cnt] : inst.dependents[i]) {
            if (w < 1 || cnt < 0) throw InputError("lll_check: bad dependency profile");
            sum += Rat(cnt) * detail::rat_pow(2 * inst.p, static_cast<unsigned>(w));
        }
        Rat slack = Rat(inst.weights[i]) - 2 * sum;
        if (slack < 0) rep.holds = false;
        if (first || slack < rep.worst_slack) rep.worst_slack = slack;
        first = false;
        rep.slack.push_back(std::move(slack));
    }
    return rep;
}

// Closed-form preset checks; both hinge on sum_{t>=1} t c^t = c/(1-c)^2.
struct LLLPresetReport {
    std::string name;
    Rat bound_lo, bound_hi;  // exact rational enclosure of the series value
    Rat threshold;
    bool holds = false;

    double approx() const { return static_cast<double>(bound_hi); }
};

// 2 (200/99)^2 sum t ((2/21) 2^{1/100})^t < 0.958.
inline LLLPresetReport lll_preset_subdivision() {
    LLLPresetReport rep;
    rep.name = "subdivision";
    rep.threshold = Rat(958, 1000);
    auto root = detail::nth_root_bounds(Rat(2), 100);
    auto value = [](const Rat& c) {
        Rat factor = 2 * detail::rat_pow(Rat(200, 99), 2);
        return factor * c / detail::rat_pow(Rat(1) - c, 2);
    };
    rep.bound_lo = value(Rat(2, 21) * root.lo);
    rep.bound_hi = value(Rat(2, 21) * root.hi);
    rep.holds = rep.bound_hi < rep.threshold;
    return rep;
}

// 72 sum t 74^{-t} = 72 * 74 / 73^2 = 5328/5329 < 1, exactly.
inline LLLPresetReport lll_preset_caterpillar() {
    LLLPresetReport rep;
    rep.name = "caterpillar";
    rep.threshold = 1;
    Rat c(1, 74);
    rep.bound_lo = rep.bound_hi = 72 * c / detail::rat_pow(Rat(1) - c, 2);
    rep.holds = rep.bound_hi < rep.threshold;
    return rep;
}

// Division vertices per edge asked for by the 23-list theorem.
inline long lll_required_divisions(int delta) {
    if (delta < 1) throw InputError("lll_required_divisions: delta must be >= 1");
    return 3 + spread_demand(delta, 400);
}

struct RetryResult {
    Colouring colouring;
    int retries = 0;  // attempts before the accepted one
};

// Colour the originals with their smallest list colour, delete both endpoint
// colours from every division vertex's list, then sample division colours
// uniformly until the oracle accepts.
inline RetryResult lll_colour_subdivision(const SubdividedGraph& sg, const ListAssignment& lists,
                                          std::uint64_t seed, int max_retries, long min_divisions = -1) {
    const int n = sg.graph.vertex_count();
    if (lists.vertex_count() != n) throw InputError("lll_colour_subdivision: list size mismatch");
    if (min_divisions < 0) {
        int delta = sg.base.max_degree();
        min_divisions = delta >= 1 ? lll_required_divisions(delta) : 1;
    }
    for (const auto& path : sg.edge_paths)
        if (static_cast<long>(path.size()) < min_divisions)
            throw InputError("lll_colour_subdivision: an edge has fewer division vertices than required");

    Colouring base(static_cast<std::size_t>(n), 0);
    for (VertexId v = 0; v < sg.original_count(); ++v) {
        VertexId ov = sg.original_id(v);
        base[static_cast<std::size_t>(ov)] = lists.list(ov).front();
    }
    // prune the endpoint colours per edge
    std::vector<std::vector<int>> pruned(static_cast<std::size_t>(n));
    for (VertexId v = 0; v < n; ++v) pruned[static_cast<std::size_t>(v)] = lists.list(v);
    for (std::size_t e = 0; e < sg.base_edges.size(); ++e) {
        auto [u, w] = sg.base_edges[e];
        int cu = base[static_cast<std::size_t>(sg.original_id(u))];
        int cw = base[static_cast<std::size_t>(sg.original_id(w))];
        for (VertexId d : sg.edge_paths[e]) {
            auto& l = pruned[static_cast<std::size_t>(d)];
            l.erase(std::remove_if(l.begin(), l.end(), [&](int c) { return c == cu || c == cw; }), l.end());
            if (l.empty()) throw InputError("lll_colour_subdivision: a division list was emptied");
        }
    }

    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        Colouring c = base;
        for (VertexId v = 0; v < sg.division_count; ++v) {
            const auto& l = pruned[static_cast<std::size_t>(v)];
            c[static_cast<std::size_t>(v)] = l[draw_u64(rng) % l.size()];
        }
        if (is_nonrepetitive(sg.graph, c).ok) return {std::move(c), attempt};
    }
    throw ExhaustionError("lll_colour_subdivision: retry cap reached");
}

// Caterpillar structure: the spine is the induced path of internal vertices,
// extended by one leaf at each end when available.
struct Caterpillar {
    std::vector<VertexId> spine;
    std::vector<std::pair<VertexId, VertexId>> leaves;  // (leaf, spine attachment)
};

inline Caterpillar caterpillar_structure(const Graph& g) {
    const int n = g.vertex_count();
    if (n == 0) throw InputError("caterpillar_structure: empty graph");
    if (g.edge_count() != n - 1) throw InputError("caterpillar_structure: not a tree");
    // connectivity
    {
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::vector<VertexId> stack{0};
        seen[0] = 1;
        int count = 0;
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            ++count;
            for (VertexId w : g.neighbours(v))
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.push_back(w);
                }
        }
        if (count != n) throw InputError("caterpillar_structure: not a tree");
    }

    Caterpillar cat;
    if (n == 1) {
        cat.spine = {0};
        return cat;
    }
    std::vector<VertexId> internal;
    for (VertexId v = 0; v < n; ++v)
        if (g.degree(v) >= 2) internal.push_back(v);

    if (internal.empty()) {
        cat.spine = {0, 1};  // a single edge
        return cat;
    }

    // the internal vertices must induce a path
    std::vector<char> is_internal(static_cast<std::size_t>(n), 0);
    for (VertexId v : internal) is_internal[static_cast<std::size_t>(v)] = 1;
    std::vector<int> ideg(static_cast<std::size_t>(n), 0);
    for (VertexId v : internal)
        for (VertexId w : g.neighbours(v))
            if (is_internal[static_cast<std::size_t>(w)]) ++ideg[static_cast<std::size_t>(v)];
    VertexId start = -1;
    for (VertexId v : internal) {
        if (ideg[static_cast<std::size_t>(v)] > 2)
            throw InputError("caterpillar_structure: internal vertices do not form a path");
        if (ideg[static_cast<std::size_t>(v)] <= 1 && start < 0) start = v;
    }
    std::vector<VertexId> path;
    VertexId prev = -1, cur = start;
    while (cur >= 0) {
        path.push_back(cur);
        VertexId next = -1;
        for (VertexId w : g.neighbours(cur))
            if (is_internal[static_cast<std::size_t>(w)] && w != prev) next = w;
        prev = cur;
        cur = next;
    }
    if (path.size() != internal.size())
        throw InputError("caterpillar_structure: internal vertices do not form a path");

    // extend both ends by their smallest attached leaf
    auto leaf_of = [&](VertexId v, VertexId skip) -> VertexId {
        for (VertexId w : g.neighbours(v))
            if (!is_internal[static_cast<std::size_t>(w)] && w != skip) return w;
        return -1;
    };
    VertexId front_leaf = leaf_of(path.front(), -1);
    if (front_leaf >= 0) path.insert(path.begin(), front_leaf);
    VertexId back_leaf = leaf_of(path.back(), front_leaf);
    if (back_leaf >= 0) path.push_back(back_leaf);

    cat.spine = path;
    std::vector<char> on_spine(static_cast<std::size_t>(n), 0);
    for (VertexId v : cat.spine) on_spine[static_cast<std::size_t>(v)] = 1;
    for (VertexId v = 0; v < n; ++v) {
        if (on_spine[static_cast<std::size_t>(v)]) continue;
        if (g.degree(v) != 1) throw InputError("caterpillar_structure: off-spine vertex of degree > 1");
        cat.leaves.emplace_back(v, g.neighbours(v).front());
    }
    return cat;
}

// True when some contiguous spine run is repetitively or almost
// repetitively coloured.
inline bool spine_colouring_rejected(const std::vector<VertexId>& spine, const Colouring& c) {
    const int s = static_cast<int>(spine.size());
    for (int i = 0; i < s; ++i) {
        for (int j = i + 1; j < s; ++j) {
            Path sub(spine.begin() + i, spine.begin() + j + 1);
            if (sub.size() % 2 == 0 && is_repetitively_coloured(sub, c)) return true;
            if (sub.size() >= 3 && is_almost_repetitive(sub, c)) return true;
        }
    }
    return false;
}

// Sample spine colours until no run is repetitive or almost repetitive,
// then colour each leaf avoiding its neighbour w and w's spine neighbours.
inline RetryResult colour_caterpillar(const Graph& g, const ListAssignment& lists, std::uint64_t seed,
                                      int max_retries) {
    if (lists.vertex_count() != g.vertex_count()) throw InputError("colour_caterpillar: list size mismatch");
    Caterpillar cat = caterpillar_structure(g);
    std::vector<int> spine_pos(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < cat.spine.size(); ++i)
        spine_pos[static_cast<std::size_t>(cat.spine[i])] = static_cast<int>(i);

    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        Colouring c(static_cast<std::size_t>(g.vertex_count()), 0);
        for (VertexId v : cat.spine) {
            const auto& l = lists.list(v);
            c[static_cast<std::size_t>(v)] = l[draw_u64(rng) % l.size()];
        }
        if (spine_colouring_rejected(cat.spine, c)) continue;

        bool ok = true;
        for (auto [leaf, w] : cat.leaves) {
            int pos = spine_pos[static_cast<std::size_t>(w)];
            std::vector<int> avoid{c[static_cast<std::size_t>(w)]};
            if (pos > 0) avoid.push_back(c[static_cast<std::size_t>(cat.spine[static_cast<std::size_t>(pos - 1)])]);
            if (pos + 1 < static_cast<int>(cat.spine.size()))
                avoid.push_back(c[static_cast<std::size_t>(cat.spine[static_cast<std::size_t>(pos + 1)])]);
            int chosen = 0;
            for (int col : lists.list(leaf))
                if (std::find(avoid.begin(), avoid.end(), col) == avoid.end()) {
                    chosen = col;
                    break;
                }
            if (chosen == 0) {
                ok = false;
                break;
            }
            c[static_cast<std::size_t>(leaf)] = chosen;
        }
        if (!ok) continue;
        if (is_nonrepetitive(g, c).ok) return {std::move(c), attempt};
    }
    throw ExhaustionError("colour_caterpillar: retry cap reached");
}

// Random caterpillar: a spine path plus up to `max_leaves` pendant vertices
// per spine vertex.
inline Graph random_caterpillar(int spine_len, int max_leaves, std::uint64_t seed) {
    if (spine_len < 1) throw InputError("random_caterpillar: spine length must be >= 1");
    std::mt19937_64 rng(seed);
    std::vector<int> leaves(static_cast<std::size_t>(spine_len));
    int n = spine_len;
    for (auto& l : leaves) {
        l = draw_int(rng, 0, max_leaves);
        n += l;
    }
    Graph g(n);
    for (int i = 0; i + 1 < spine_len; ++i) g.add_edge(i, i + 1);
    int next = spine_len;
    for (int i = 0; i < spine_len; ++i)
        for (int j = 0; j < leaves[static_cast<std::size_t>(i)]; ++j) g.add_edge(i, next++);
    return g;
}

} // namespace nonrep

#endif
