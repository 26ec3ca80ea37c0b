#ifndef NONREP_CODEC_HPP
#define NONREP_CODEC_HPP

#include <cstdint>
#include <vector>

#include "nonrep/graph.hpp"

namespace nonrep {

// Integer sequence s(P, X, v) of even length 2k: neighbour indices for the
// two-leg walk from v, with a single -1 marking the turn at endpoint x.
struct PathCode {
    std::vector<int> entries;

    int length() const { return static_cast<int>(entries.size()); }
    int half_length() const { return length() / 2; }

    // Position (1-based) of the unique -1 entry.
    int turn_position() const {
        for (std::size_t i = 0; i < entries.size(); ++i)
            if (entries[i] == -1) return static_cast<int>(i) + 1;
        throw InvariantError("PathCode: missing -1 entry");
    }

    void validate() const {
        if (entries.empty() || entries.size() % 2 != 0)
            throw InvariantError("PathCode: length must be even and positive");
        int turns = 0;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (entries[i] == -1) {
                ++turns;
                if (i == 0) throw InvariantError("PathCode: -1 cannot be first");
            } else if (entries[i] < 1) {
                throw InvariantError("PathCode: entries must be >= 1 or -1");
            }
        }
        if (turns != 1) throw InvariantError("PathCode: exactly one -1 required");
    }

    bool operator==(const PathCode& o) const { return entries == o.entries; }
};

namespace detail {

// Neighbour indexing against an exclusion mask, over the fixed id order.
// `extra` is a single additional excluded vertex (or -1).
struct VecAdjacencyView {
    const Graph& g;
    const std::vector<char>& excluded;

    int index_of(VertexId u, VertexId target, VertexId extra) const {
        int idx = 0;
        for (VertexId w : g.neighbours(u)) {
            if (excluded[static_cast<std::size_t>(w)] || w == extra) continue;
            ++idx;
            if (w == target) return idx;
        }
        return 0;
    }

    VertexId nth(VertexId u, int k, VertexId extra) const {
        int idx = 0;
        for (VertexId w : g.neighbours(u)) {
            if (excluded[static_cast<std::size_t>(w)] || w == extra) continue;
            if (++idx == k) return w;
        }
        return -1;
    }
};

template <class View>
void encode_core(const View& view, const VertexId* p, int len, VertexId v, std::vector<int>& out) {
    // Orient so that v is strictly closer to the back endpoint; for even
    // paths the distances never tie. The reversal is index arithmetic, not
    // a copy.
    int pos = -1;
    for (int i = 0; i < len; ++i)
        if (p[i] == v) { pos = i; break; }
    if (pos < 0) throw InputError("encode_path: v not on the path");

    const bool flip = (len - 1 - pos > pos);
    if (flip) pos = len - 1 - pos;
    auto at = [&](int i) { return p[flip ? len - 1 - i : i]; };

    const int m = pos + 1;  // v = at(m-1); x = at(0); y = at(len-1)
    out.assign(static_cast<std::size_t>(len), 0);

    int s1 = view.index_of(at(m - 1), at(m - 2), -1);
    if (s1 == 0) throw InputError("encode_path: excluded set overlaps the path neighbourhood");
    out[0] = s1;
    for (int i = 2; i <= m - 1; ++i) {
        int s = view.index_of(at(m - i), at(m - i - 1), at(m - i + 1));
        if (s == 0) throw InputError("encode_path: excluded set overlaps the path neighbourhood");
        out[static_cast<std::size_t>(i - 1)] = s;
    }
    out[static_cast<std::size_t>(m - 1)] = -1;

    if (m < len) {
        int s = view.index_of(at(m - 1), at(m), at(m - 2));
        if (s == 0) throw InputError("encode_path: excluded set overlaps the path neighbourhood");
        out[static_cast<std::size_t>(m)] = s;
        for (int i = 2; i <= len - m; ++i) {
            int si = view.index_of(at(m + i - 2), at(m + i - 1), at(m + i - 3));
            if (si == 0) throw InputError("encode_path: excluded set overlaps the path neighbourhood");
            out[static_cast<std::size_t>(m + i - 1)] = si;
        }
    }
}

// Reconstruction from the code: fill u_{p-1}..u_1 backwards, then
// u_{p+1}..u_{2k} forwards. Returns false when the code is unrealisable.
template <class View>
bool decode_core(const View& view, const int* s, int len, VertexId v, std::vector<VertexId>& out) {
    int p = 0;
    for (int i = 0; i < len; ++i)
        if (s[i] == -1) { p = i + 1; break; }
    if (p < 2) return false;

    out.assign(static_cast<std::size_t>(len), -1);
    out[static_cast<std::size_t>(p - 1)] = v;

    VertexId u = view.nth(v, s[0], -1);
    if (u < 0) return false;
    out[static_cast<std::size_t>(p - 2)] = u;
    for (int i = p - 2; i >= 1; --i) {
        VertexId next = view.nth(out[static_cast<std::size_t>(i)], s[p - i - 1], out[static_cast<std::size_t>(i + 1)]);
        if (next < 0) return false;
        out[static_cast<std::size_t>(i - 1)] = next;
    }
    for (int j = p + 1; j <= len; ++j) {
        VertexId next = view.nth(out[static_cast<std::size_t>(j - 2)], s[j - 1], out[static_cast<std::size_t>(j - 3)]);
        if (next < 0) return false;
        out[static_cast<std::size_t>(j - 1)] = next;
    }
    // Genuine codes decode to simple paths; reject anything that does not.
    for (int i = 0; i < len; ++i)
        for (int j = i + 1; j < len; ++j)
            if (out[static_cast<std::size_t>(i)] == out[static_cast<std::size_t>(j)]) return false;
    return true;
}

} // namespace detail

inline std::vector<char> make_mask(const Graph& g, const std::vector<VertexId>& xs) {
    std::vector<char> m(static_cast<std::size_t>(g.vertex_count()), 0);
    for (VertexId u : xs) {
        g.check_vertex(u);
        m[static_cast<std::size_t>(u)] = 1;
    }
    return m;
}

inline PathCode encode_path(const Graph& g, const Path& p, const std::vector<VertexId>& x, VertexId v) {
    if (p.size() < 2 || p.size() % 2 != 0) throw InputError("encode_path: path order must be even and >= 2");
    if (!is_path_of(g, p)) throw InputError("encode_path: not a path of the graph");
    auto mask = make_mask(g, x);
    for (VertexId u : p)
        if (mask[static_cast<std::size_t>(u)]) throw InputError("encode_path: X intersects the path");
    PathCode code;
    detail::encode_core(detail::VecAdjacencyView{g, mask}, p.data(), static_cast<int>(p.size()), v, code.entries);
    code.validate();
    return code;
}

// Unique path P with encode_path(g, P, x, v) == s, reconstructed in
// x-to-y order. Throws DecodeError when s is not realisable for (g, x, v).
inline Path decode_path(const Graph& g, const PathCode& s, const std::vector<VertexId>& x, VertexId v) {
    s.validate();
    g.check_vertex(v);
    auto mask = make_mask(g, x);
    if (mask[static_cast<std::size_t>(v)]) throw InputError("decode_path: v must not be in X");
    Path out;
    if (!detail::decode_core(detail::VecAdjacencyView{g, mask}, s.entries.data(), s.length(), v, out))
        throw DecodeError("decode_path: code not realisable for the given graph, X and v");
    return out;
}

// Allocation-free codec over bitmask adjacency for graphs on at most 64
// vertices. Runs the same encode/decode cores as the public functions.
class FastCodec {
public:
    explicit FastCodec(const Graph& g) : g_(g) {
        if (g.vertex_count() > 64) throw InputError("FastCodec: at most 64 vertices");
        adj_.assign(static_cast<std::size_t>(g.vertex_count()), 0);
        for (auto [u, w] : g.edges()) {
            adj_[static_cast<std::size_t>(u)] |= (std::uint64_t{1} << w);
            adj_[static_cast<std::size_t>(w)] |= (std::uint64_t{1} << u);
        }
    }

    struct BitView {
        const std::uint64_t* adj;
        std::uint64_t excluded;

        int index_of(VertexId u, VertexId target, VertexId extra) const {
            std::uint64_t m = adj[u] & ~excluded;
            if (extra >= 0) m &= ~(std::uint64_t{1} << extra);
            if (!(m & (std::uint64_t{1} << target))) return 0;
            return 1 + __builtin_popcountll(m & ((std::uint64_t{1} << target) - 1));
        }

        VertexId nth(VertexId u, int k, VertexId extra) const {
            std::uint64_t m = adj[u] & ~excluded;
            if (extra >= 0) m &= ~(std::uint64_t{1} << extra);
            for (; m; m &= m - 1)
                if (--k == 0) return __builtin_ctzll(m);
            return -1;
        }
    };

    void encode(const VertexId* path, int len, std::uint64_t x_mask, VertexId v, std::vector<int>& out) const {
        detail::encode_core(BitView{adj_.data(), x_mask}, path, len, v, out);
    }

    bool decode(const int* code, int len, std::uint64_t x_mask, VertexId v, std::vector<VertexId>& out) const {
        return detail::decode_core(BitView{adj_.data(), x_mask}, code, len, v, out);
    }

private:
    const Graph& g_;
    std::vector<std::uint64_t> adj_;
};

} // namespace nonrep

#endif
