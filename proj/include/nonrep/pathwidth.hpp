#ifndef NONREP_PATHWIDTH_HPP
#define NONREP_PATHWIDTH_HPP

#include <algorithm>
#include <climits>
#include <random>
#include <vector>

#include "nonrep/engine.hpp"
#include "nonrep/verify.hpp"

namespace nonrep {

// A sequence of bags; validity means every edge is covered by some bag and
// every vertex occupies a nonempty contiguous stretch of bags.
struct PathDecomposition {
    std::vector<std::vector<VertexId>> bags;
};

// Checks the decomposition axioms and returns the width.
inline int validate_pd(const Graph& g, const PathDecomposition& pd) {
    const int n = g.vertex_count();
    std::vector<int> first(static_cast<std::size_t>(n), -1), last(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<char>> member(pd.bags.size(), std::vector<char>(static_cast<std::size_t>(n), 0));
    int width = n == 0 ? 0 : -1;
    for (std::size_t b = 0; b < pd.bags.size(); ++b) {
        for (VertexId v : pd.bags[b]) {
            g.check_vertex(v);
            if (member[b][static_cast<std::size_t>(v)])
                throw ValidationError("path decomposition: repeated vertex inside a bag");
            member[b][static_cast<std::size_t>(v)] = 1;
            if (first[static_cast<std::size_t>(v)] < 0) first[static_cast<std::size_t>(v)] = static_cast<int>(b);
            last[static_cast<std::size_t>(v)] = static_cast<int>(b);
        }
        width = std::max(width, static_cast<int>(pd.bags[b].size()) - 1);
    }
    for (VertexId v = 0; v < n; ++v) {
        if (first[static_cast<std::size_t>(v)] < 0)
            throw ValidationError("path decomposition: vertex missing from every bag");
        for (int b = first[static_cast<std::size_t>(v)]; b <= last[static_cast<std::size_t>(v)]; ++b)
            if (!member[static_cast<std::size_t>(b)][static_cast<std::size_t>(v)])
                throw ValidationError("path decomposition: vertex occupancy is not contiguous");
    }
    for (auto [u, v] : g.edges()) {
        bool covered = false;
        for (std::size_t b = 0; b < pd.bags.size() && !covered; ++b)
            covered = member[b][static_cast<std::size_t>(u)] && member[b][static_cast<std::size_t>(v)];
        if (!covered) throw ValidationError("path decomposition: edge endpoints share no bag");
    }
    return std::max(width, 0);
}

// Greedy anchors X_1..X_m and the blocks strictly between them; H is the
// graph left after deleting the blocks and completing their neighbourhoods.
struct AttackDecomposition {
    std::vector<std::vector<VertexId>> anchors;  // the chosen bags, also H's layers
    std::vector<std::vector<VertexId>> blocks;
    std::vector<PathDecomposition> block_pds;    // width <= k-1 each
    Graph quotient;                              // H, on the host vertex ids (blocks isolated)
    std::vector<VertexId> quotient_vertices;     // union of the anchors
};

inline AttackDecomposition attack_decompose(const Graph& g, const PathDecomposition& pd_in) {
    const int k = validate_pd(g, pd_in);
    (void)k;
    PathDecomposition pd;
    for (const auto& b : pd_in.bags)
        if (!b.empty()) pd.bags.push_back(b);

    AttackDecomposition out;
    out.quotient = Graph(g.vertex_count());
    if (pd.bags.empty()) return out;

    const int n = g.vertex_count();
    std::vector<int> first(static_cast<std::size_t>(n), -1), last(static_cast<std::size_t>(n), -1);
    for (std::size_t b = 0; b < pd.bags.size(); ++b)
        for (VertexId v : pd.bags[b]) {
            if (first[static_cast<std::size_t>(v)] < 0) first[static_cast<std::size_t>(v)] = static_cast<int>(b);
            last[static_cast<std::size_t>(v)] = static_cast<int>(b);
        }

    // anchor bag indices: each the first bag disjoint from the previous anchor
    std::vector<int> anchor_idx{0};
    while (true) {
        int prev = anchor_idx.back();
        std::vector<char> in_prev(static_cast<std::size_t>(n), 0);
        for (VertexId v : pd.bags[static_cast<std::size_t>(prev)]) in_prev[static_cast<std::size_t>(v)] = 1;
        int found = -1;
        for (std::size_t b = static_cast<std::size_t>(prev) + 1; b < pd.bags.size(); ++b) {
            bool disjoint = true;
            for (VertexId v : pd.bags[b])
                if (in_prev[static_cast<std::size_t>(v)]) disjoint = false;
            if (disjoint) {
                found = static_cast<int>(b);
                break;
            }
        }
        if (found < 0) break;
        anchor_idx.push_back(found);
    }
    const int m = static_cast<int>(anchor_idx.size());

    std::vector<int> layer_of(static_cast<std::size_t>(n), -1);   // anchor layer
    std::vector<int> block_of(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < m; ++i) {
        std::vector<VertexId> a = pd.bags[static_cast<std::size_t>(anchor_idx[static_cast<std::size_t>(i)])];
        std::sort(a.begin(), a.end());
        for (VertexId v : a) layer_of[static_cast<std::size_t>(v)] = i;
        out.anchors.push_back(std::move(a));
    }
    for (int i = 0; i < m; ++i) {
        int lo = anchor_idx[static_cast<std::size_t>(i)];
        int hi = (i + 1 < m) ? anchor_idx[static_cast<std::size_t>(i + 1)] : static_cast<int>(pd.bags.size());
        std::vector<VertexId> block;
        for (VertexId v = 0; v < n; ++v)
            if (first[static_cast<std::size_t>(v)] > lo && last[static_cast<std::size_t>(v)] < hi &&
                layer_of[static_cast<std::size_t>(v)] < 0) {
                block.push_back(v);
                block_of[static_cast<std::size_t>(v)] = i;
            }
        PathDecomposition bpd;
        for (int b = lo + 1; b < hi; ++b) {
            std::vector<VertexId> bag;
            for (VertexId v : pd.bags[static_cast<std::size_t>(b)])
                if (block_of[static_cast<std::size_t>(v)] == i) bag.push_back(v);
            if (!bag.empty()) bpd.bags.push_back(std::move(bag));
        }
        out.blocks.push_back(std::move(block));
        out.block_pds.push_back(std::move(bpd));
    }

    for (VertexId v = 0; v < n; ++v)
        if (layer_of[static_cast<std::size_t>(v)] < 0 && block_of[static_cast<std::size_t>(v)] < 0)
            throw InvariantError("attack_decompose: vertex in neither an anchor nor a block");

    // H: the graph induced on the anchors plus a clique on each N(B_i)
    for (auto [u, v] : g.edges()) {
        int bu = block_of[static_cast<std::size_t>(u)], bv = block_of[static_cast<std::size_t>(v)];
        if (bu >= 0 && bv >= 0) {
            if (bu != bv) throw InvariantError("attack_decompose: edge between distinct blocks");
            continue;
        }
        if (bu < 0 && bv < 0) out.quotient.add_edge(u, v);
    }
    for (int i = 0; i < m; ++i) {
        std::vector<VertexId> nb;
        for (VertexId v : out.blocks[static_cast<std::size_t>(i)])
            for (VertexId w : g.neighbours(v))
                if (block_of[static_cast<std::size_t>(w)] < 0) nb.push_back(w);
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        for (VertexId w : nb) {
            int lw = layer_of[static_cast<std::size_t>(w)];
            if (lw != i && lw != i + 1)
                throw InvariantError("attack_decompose: block neighbourhood escapes its two anchors");
        }
        for (std::size_t a = 0; a < nb.size(); ++a)
            for (std::size_t b = a + 1; b < nb.size(); ++b)
                if (!out.quotient.has_edge(nb[a], nb[b])) out.quotient.add_edge(nb[a], nb[b]);
    }
    // the quotient's edges must respect the layer structure
    for (auto [u, v] : out.quotient.edges()) {
        int lu = layer_of[static_cast<std::size_t>(u)], lv = layer_of[static_cast<std::size_t>(v)];
        if (std::abs(lu - lv) > 1) throw InvariantError("attack_decompose: quotient edge skips a layer");
    }
    for (VertexId v = 0; v < n; ++v)
        if (layer_of[static_cast<std::size_t>(v)] >= 0) out.quotient_vertices.push_back(v);
    return out;
}

// Union of a colouring of H and per-block colourings on disjoint palettes.
inline Colouring blocks_combine(const Graph& g, const Colouring& colour_h,
                                const std::vector<Colouring>& colours_blocks) {
    const int n = g.vertex_count();
    if (static_cast<int>(colour_h.size()) != n) throw InputError("blocks_combine: size mismatch");
    std::vector<char> h_palette(1, 0);
    auto note = [](std::vector<char>& pal, int c) {
        if (c >= static_cast<int>(pal.size())) pal.resize(static_cast<std::size_t>(c) + 1, 0);
        pal[static_cast<std::size_t>(c)] = 1;
    };
    for (int c : colour_h)
        if (c != 0) note(h_palette, c);
    Colouring out = colour_h;
    std::vector<char> block_palette(1, 0);
    for (const auto& cb : colours_blocks) {
        if (static_cast<int>(cb.size()) != n) throw InputError("blocks_combine: size mismatch");
        for (VertexId v = 0; v < n; ++v) {
            int c = cb[static_cast<std::size_t>(v)];
            if (c == 0) continue;
            if (out[static_cast<std::size_t>(v)] != 0) throw InputError("blocks_combine: overlapping supports");
            if (c < static_cast<int>(h_palette.size()) && h_palette[static_cast<std::size_t>(c)])
                throw InputError("blocks_combine: palettes overlap");
            note(block_palette, c);
            out[static_cast<std::size_t>(v)] = c;
        }
    }
    return out;
}

// Nonrepetitively colours the blown-up path: layers become cliques, with
// complete joins between consecutive layers. A vertex gets (symbol, rank)
// where the rank is its position inside the layer and the per-layer symbol
// in [1,4] is found by backtracking; soundness is certified by the detector
// on the blown-up graph, so it transfers to every subgraph, h included.
inline Colouring colour_layered(const Graph& h, const std::vector<std::vector<VertexId>>& layers, int rank_cap) {
    const int n = h.vertex_count();
    Colouring out(static_cast<std::size_t>(n), 0);
    if (layers.empty()) return out;

    std::vector<VertexId> verts;
    std::vector<int> layer_of(static_cast<std::size_t>(n), -1);
    std::vector<int> rank_of(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < layers.size(); ++i) {
        std::vector<VertexId> sorted = layers[i];
        std::sort(sorted.begin(), sorted.end());
        if (static_cast<int>(sorted.size()) > rank_cap)
            throw InputError("colour_layered: layer larger than the rank cap");
        int rank = 0;
        for (VertexId v : sorted) {
            h.check_vertex(v);
            if (layer_of[static_cast<std::size_t>(v)] >= 0)
                throw InputError("colour_layered: layers overlap");
            layer_of[static_cast<std::size_t>(v)] = static_cast<int>(i);
            rank_of[static_cast<std::size_t>(v)] = ++rank;
            verts.push_back(v);
        }
    }
    for (auto [u, v] : h.edges()) {
        int lu = layer_of[static_cast<std::size_t>(u)], lv = layer_of[static_cast<std::size_t>(v)];
        if (lu < 0 || lv < 0) throw InputError("colour_layered: edge endpoint outside every layer");
        if (std::abs(lu - lv) > 1) throw InputError("colour_layered: edge skips a layer");
    }

    // the blown-up graph on local ids
    std::vector<int> local(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < verts.size(); ++i) local[static_cast<std::size_t>(verts[i])] = static_cast<int>(i);
    Graph product(static_cast<int>(verts.size()));
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
            int li = layer_of[static_cast<std::size_t>(verts[i])];
            int lj = layer_of[static_cast<std::size_t>(verts[j])];
            if (std::abs(li - lj) <= 1) product.add_edge(static_cast<int>(i), static_cast<int>(j));
        }

    const int m = static_cast<int>(layers.size());
    std::vector<int> symbol(static_cast<std::size_t>(m), 0);
    Colouring partial(verts.size(), 0);
    auto assign = [&](int layer, int sym) {
        for (VertexId v : layers[static_cast<std::size_t>(layer)])
            partial[static_cast<std::size_t>(local[static_cast<std::size_t>(v)])] =
                sym == 0 ? 0 : (sym - 1) * rank_cap + rank_of[static_cast<std::size_t>(v)];
    };
    auto search = [&](auto&& self, int layer) -> bool {
        if (layer == m) return true;
        for (int sym = 1; sym <= 4; ++sym) {
            symbol[static_cast<std::size_t>(layer)] = sym;
            assign(layer, sym);
            if (!find_repetitive_path(product, partial)) {
                if (self(self, layer + 1)) return true;
            }
        }
        symbol[static_cast<std::size_t>(layer)] = 0;
        assign(layer, 0);
        return false;
    };
    if (!search(search, 0))
        throw ConstructionError("colour_layered: no symbol sequence found within four symbols");

    for (std::size_t i = 0; i < verts.size(); ++i) out[static_cast<std::size_t>(verts[i])] = partial[i];
    return out;
}

namespace detail {

inline Colouring colour_pathwidth_rec(const Graph& g, const PathDecomposition& pd) {
    const int n = g.vertex_count();
    if (n == 0) return {};
    const int k = validate_pd(g, pd);
    if (g.edge_count() == 0) return Colouring(static_cast<std::size_t>(n), 1);

    auto ad = attack_decompose(g, pd);
    Colouring colour_h = colour_layered(ad.quotient, ad.anchors, k + 1);
    const int offset = 4 * (k + 1);

    std::vector<Colouring> block_colourings;
    for (std::size_t i = 0; i < ad.blocks.size(); ++i) {
        if (ad.blocks[i].empty()) continue;
        auto [sub, mapping] = induced_subgraph(g, ad.blocks[i]);
        PathDecomposition sub_pd;
        for (const auto& bag : ad.block_pds[i].bags) {
            std::vector<VertexId> local_bag;
            for (VertexId v : bag) {
                auto it = std::lower_bound(mapping.begin(), mapping.end(), v);
                local_bag.push_back(static_cast<VertexId>(it - mapping.begin()));
            }
            sub_pd.bags.push_back(std::move(local_bag));
        }
        if (validate_pd(sub, sub_pd) > std::max(k - 1, 0))
            throw InvariantError("colour_pathwidth: block decomposition too wide");
        Colouring local = colour_pathwidth_rec(sub, sub_pd);
        Colouring lifted(static_cast<std::size_t>(n), 0);
        for (std::size_t j = 0; j < mapping.size(); ++j)
            lifted[static_cast<std::size_t>(mapping[j])] = local[j] + offset;
        block_colourings.push_back(std::move(lifted));
    }
    return blocks_combine(g, colour_h, block_colourings);
}

} // namespace detail

struct PathwidthResult {
    Colouring colouring;
    int width = 0;
    int colours_used = 0;
};

// Nonrepetitive colouring with at most 2k^2 + 6k + 1 colours for width k.
inline PathwidthResult colour_pathwidth(const Graph& g, const PathDecomposition& pd) {
    PathwidthResult res;
    res.width = validate_pd(g, pd);
    res.colouring = detail::colour_pathwidth_rec(g, pd);
    std::vector<int> used = res.colouring;
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    res.colours_used = static_cast<int>(used.size()) - (g.vertex_count() > 0 && used.front() == 0 ? 1 : 0);
    const int k = res.width;
    if (res.colours_used > 2 * k * k + 6 * k + 1)
        throw InvariantError("colour_pathwidth: colour budget exceeded");
    return res;
}

// --- Star colouring through the interval supergraph ---

struct IntervalRep {
    // Per vertex: first and last bag index (0-based), inclusive.
    std::vector<std::pair<int, int>> intervals;
};

inline IntervalRep interval_rep(const Graph& g, const PathDecomposition& pd) {
    validate_pd(g, pd);
    IntervalRep rep;
    rep.intervals.assign(static_cast<std::size_t>(g.vertex_count()), {INT_MAX, -1});
    for (std::size_t b = 0; b < pd.bags.size(); ++b)
        for (VertexId v : pd.bags[b]) {
            auto& iv = rep.intervals[static_cast<std::size_t>(v)];
            iv.first = std::min(iv.first, static_cast<int>(b));
            iv.second = std::max(iv.second, static_cast<int>(b));
        }
    return rep;
}

// The interval supergraph: u ~ v when their bag intervals intersect.
inline Graph interval_supergraph(const IntervalRep& rep) {
    const int n = static_cast<int>(rep.intervals.size());
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            auto [a, b] = rep.intervals[static_cast<std::size_t>(u)];
            auto [c, d] = rep.intervals[static_cast<std::size_t>(v)];
            if (a <= d && c <= b) g.add_edge(u, v);
        }
    return g;
}

// Inclusion-minimal set of intervals covering every interval of `active`,
// greedy farthest-reach per connected stretch, returned in path order.
inline std::vector<VertexId> minimal_cover(const IntervalRep& rep, const std::vector<VertexId>& active) {
    struct Item {
        int lo, hi;
        VertexId v;
    };
    std::vector<Item> items;
    for (VertexId v : active) {
        auto [lo, hi] = rep.intervals[static_cast<std::size_t>(v)];
        items.push_back({lo, hi, v});
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        return std::tie(a.lo, a.hi, a.v) < std::tie(b.lo, b.hi, b.v);
    });
    std::vector<VertexId> out;
    std::size_t idx = 0;
    long covered_to = LLONG_MIN;
    while (idx < items.size()) {
        if (items[idx].hi <= covered_to) {
            ++idx;
            continue;
        }
        // Intervals are real segments: extending coverage needs overlap, so
        // the next pick must start inside the covered part (or open a new
        // stretch at the leftmost uncovered interval).
        long threshold = std::max(covered_to, static_cast<long>(items[idx].lo));
        std::size_t best = items.size();
        for (std::size_t j = idx; j < items.size() && items[j].lo <= threshold; ++j) {
            if (items[j].hi <= covered_to) continue;
            if (best == items.size() || items[j].hi > items[best].hi) best = j;
        }
        if (best == items.size()) throw InvariantError("minimal_cover: no candidate covers the gap");
        out.push_back(items[best].v);
        covered_to = items[best].hi;
    }
    return out;
}

struct StarResult {
    Colouring colouring;
    int width = 0;
    int colours_used = 0;
};

// Star colouring with at most 3k+1 colours: repeatedly colour a minimal
// interval cover 0,1,2 along its path with a fresh band, then drop it.
inline StarResult star_colour_pathwidth(const Graph& g, const PathDecomposition& pd) {
    StarResult res;
    res.width = validate_pd(g, pd);
    const int n = g.vertex_count();
    res.colouring.assign(static_cast<std::size_t>(n), 0);
    if (n == 0) return res;

    IntervalRep rep = interval_rep(g, pd);
    std::vector<VertexId> active;
    for (VertexId v = 0; v < n; ++v) active.push_back(v);

    int band = 0;
    while (true) {
        // max point load of the active intervals
        int load = 0;
        for (std::size_t b = 0; b < pd.bags.size(); ++b) {
            int here = 0;
            for (VertexId v : active) {
                auto [lo, hi] = rep.intervals[static_cast<std::size_t>(v)];
                if (lo <= static_cast<int>(b) && static_cast<int>(b) <= hi) ++here;
            }
            load = std::max(load, here);
        }
        if (load <= 1) break;
        auto cover = minimal_cover(rep, active);
        // restart the 0,1,2 pattern at every new stretch
        long reach = LLONG_MIN;
        int i = 0;
        for (VertexId x : cover) {
            auto [lo, hi] = rep.intervals[static_cast<std::size_t>(x)];
            if (lo > reach) i = 0;  // no intersection with the previous pick
            res.colouring[static_cast<std::size_t>(x)] = 3 * band + (i % 3) + 1;
            reach = std::max(reach, static_cast<long>(hi));
            ++i;
        }
        std::vector<VertexId> next;
        for (VertexId v : active)
            if (res.colouring[static_cast<std::size_t>(v)] == 0) next.push_back(v);
        active = std::move(next);
        ++band;
        if (band > res.width)
            throw InvariantError("star_colour_pathwidth: band budget exceeded");
    }
    for (VertexId v : active) res.colouring[static_cast<std::size_t>(v)] = 3 * band + 1;

    std::vector<int> used = res.colouring;
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    res.colours_used = static_cast<int>(used.size());
    if (res.colours_used > 3 * res.width + 1)
        throw InvariantError("star_colour_pathwidth: colour budget exceeded");
    return res;
}

// Random test instance: a bag walk of width <= k with edges sampled from
// co-bagged pairs.
inline std::pair<Graph, PathDecomposition> random_pathwidth_instance(int k, int n, int edge_percent,
                                                                     std::uint64_t seed) {
    if (k < 0 || n < 1) throw InputError("random_pathwidth_instance: bad parameters");
    std::mt19937_64 rng(seed);
    Graph g(n);
    PathDecomposition pd;
    std::vector<VertexId> active;
    int next = 0;
    while (next < n || !active.empty()) {
        while (static_cast<int>(active.size()) < k + 1 && next < n) {
            active.push_back(next++);
            if (!draw_percent(rng, 70)) break;
        }
        if (!active.empty()) {
            pd.bags.push_back(active);
            for (std::size_t i = 0; i < active.size(); ++i)
                for (std::size_t j = i + 1; j < active.size(); ++j)
                    if (!g.has_edge(active[i], active[j]) && draw_percent(rng, edge_percent))
                        g.add_edge(active[i], active[j]);
        }
        std::vector<VertexId> keep;
        bool dropped = false;
        for (VertexId v : active) {
            if (draw_percent(rng, 40)) dropped = true;
            else keep.push_back(v);
        }
        if (!dropped && !keep.empty()) keep.erase(keep.begin());
        active = std::move(keep);
    }
    return {std::move(g), std::move(pd)};
}

} // namespace nonrep

#endif
