#ifndef NONREP_VERIFY_HPP
#define NONREP_VERIFY_HPP

#include <climits>
#include <optional>
#include <vector>

#include "nonrep/graph.hpp"

namespace nonrep {

// Visits every path of even order <= max_order exactly once up to reversal
// (a path is reported with its smaller endpoint id first). When `through`
// is set, only paths containing that vertex are reported.
template <class Visit>
void for_each_even_path(const Graph& g, int max_order, std::optional<VertexId> through, Visit&& visit) {
    if (max_order < 2 || max_order % 2 != 0) throw InputError("for_each_even_path: max_order must be even and >= 2");
    if (through) g.check_vertex(*through);
    const int n = g.vertex_count();
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    Path p;
    p.reserve(static_cast<std::size_t>(max_order));

    auto dfs = [&](auto&& self, VertexId last) -> void {
        if (static_cast<int>(p.size()) % 2 == 0 && p.front() < p.back()) {
            if (!through || std::find(p.begin(), p.end(), *through) != p.end()) visit(p);
        }
        if (static_cast<int>(p.size()) >= max_order) return;
        for (VertexId w : g.neighbours(last)) {
            if (used[static_cast<std::size_t>(w)]) continue;
            used[static_cast<std::size_t>(w)] = 1;
            p.push_back(w);
            self(self, w);
            p.pop_back();
            used[static_cast<std::size_t>(w)] = 0;
        }
    };

    for (VertexId s = 0; s < n; ++s) {
        used[static_cast<std::size_t>(s)] = 1;
        p.push_back(s);
        dfs(dfs, s);
        p.pop_back();
        used[static_cast<std::size_t>(s)] = 0;
    }
}

inline std::vector<Path> enumerate_even_paths(const Graph& g, int max_order,
                                              std::optional<VertexId> through = std::nullopt) {
    std::vector<Path> out;
    for_each_even_path(g, max_order, through, [&](const Path& p) { out.push_back(p); });
    return out;
}

// Even path v_1..v_2t is repetitively coloured when psi(v_i) = psi(v_{t+i})
// for all i. Uncoloured vertices (colour 0) never match anything.
inline bool is_repetitively_coloured(const Path& p, const Colouring& c) {
    if (p.size() % 2 != 0 || p.empty()) return false;
    const std::size_t t = p.size() / 2;
    for (std::size_t i = 0; i < t; ++i) {
        int a = c[static_cast<std::size_t>(p[i])];
        int b = c[static_cast<std::size_t>(p[t + i])];
        if (a == 0 || a != b) return false;
    }
    return true;
}

namespace detail {

// Search for repetitively coloured paths as lockstep walks: a repetitive
// path of order 2t is a pair of vertex-disjoint equally-coloured walks
// (a_1..a_t), (b_1..b_t) with b_1 adjacent to a_t. Colour matching is
// enforced at every extension, which prunes hard on typical colourings.
class RepetitionSearch {
public:
    RepetitionSearch(const Graph& g, const Colouring& c) : g_(g), c_(c) {
        used_.assign(static_cast<std::size_t>(g.vertex_count()), 0);
        int coloured = 0;
        for (int x : c) coloured += (x != 0);
        max_t_ = coloured / 2;
    }

    std::optional<Path> best_global() {
        const int n = g_.vertex_count();
        for (VertexId a = 0; a < n; ++a) {
            if (c_[static_cast<std::size_t>(a)] == 0) continue;
            for (VertexId b = 0; b < n; ++b) {
                if (b == a || c_[static_cast<std::size_t>(b)] != c_[static_cast<std::size_t>(a)]) continue;
                as_ = {a};
                bs_ = {b};
                used_[static_cast<std::size_t>(a)] = used_[static_cast<std::size_t>(b)] = 1;
                forward();
                used_[static_cast<std::size_t>(a)] = used_[static_cast<std::size_t>(b)] = 0;
            }
        }
        return take_best();
    }

    // Paths containing `anchor`; the anchor is placed in the first walk,
    // which loses no path because reversal swaps the two walks.
    std::optional<Path> best_through(VertexId anchor) {
        g_.check_vertex(anchor);
        if (c_[static_cast<std::size_t>(anchor)] == 0) return std::nullopt;
        const int n = g_.vertex_count();
        for (VertexId b = 0; b < n; ++b) {
            if (b == anchor || c_[static_cast<std::size_t>(b)] != c_[static_cast<std::size_t>(anchor)]) continue;
            as_ = {anchor};
            bs_ = {b};
            used_[static_cast<std::size_t>(anchor)] = used_[static_cast<std::size_t>(b)] = 1;
            backward();
            used_[static_cast<std::size_t>(anchor)] = used_[static_cast<std::size_t>(b)] = 0;
        }
        return take_best();
    }

private:
    // Grow columns before the anchor column; every backward state is also a
    // valid walk prefix, so forward extension runs at each depth.
    void backward() {
        forward();
        if (static_cast<int>(as_.size()) + 1 > best_t_ || static_cast<int>(as_.size()) >= max_t_) return;
        VertexId fa = as_.front(), fb = bs_.front();
        for (VertexId a2 : g_.neighbours(fa)) {
            if (used_[static_cast<std::size_t>(a2)] || c_[static_cast<std::size_t>(a2)] == 0) continue;
            for (VertexId b2 : g_.neighbours(fb)) {
                if (used_[static_cast<std::size_t>(b2)] || b2 == a2) continue;
                if (c_[static_cast<std::size_t>(b2)] != c_[static_cast<std::size_t>(a2)]) continue;
                as_.insert(as_.begin(), a2);
                bs_.insert(bs_.begin(), b2);
                used_[static_cast<std::size_t>(a2)] = used_[static_cast<std::size_t>(b2)] = 1;
                backward();
                used_[static_cast<std::size_t>(a2)] = used_[static_cast<std::size_t>(b2)] = 0;
                as_.erase(as_.begin());
                bs_.erase(bs_.begin());
            }
        }
    }

    void forward() {
        const int t = static_cast<int>(as_.size());
        if (t > best_t_) return;
        if (g_.has_edge(as_.back(), bs_.front())) record();
        if (t + 1 > best_t_ || t >= max_t_) return;
        VertexId la = as_.back(), lb = bs_.back();
        for (VertexId a2 : g_.neighbours(la)) {
            if (used_[static_cast<std::size_t>(a2)] || c_[static_cast<std::size_t>(a2)] == 0) continue;
            for (VertexId b2 : g_.neighbours(lb)) {
                if (used_[static_cast<std::size_t>(b2)] || b2 == a2) continue;
                if (c_[static_cast<std::size_t>(b2)] != c_[static_cast<std::size_t>(a2)]) continue;
                as_.push_back(a2);
                bs_.push_back(b2);
                used_[static_cast<std::size_t>(a2)] = used_[static_cast<std::size_t>(b2)] = 1;
                forward();
                used_[static_cast<std::size_t>(a2)] = used_[static_cast<std::size_t>(b2)] = 0;
                as_.pop_back();
                bs_.pop_back();
            }
        }
    }

    void record() {
        Path p;
        p.reserve(as_.size() * 2);
        p.insert(p.end(), as_.begin(), as_.end());
        p.insert(p.end(), bs_.begin(), bs_.end());
        Path canon = canonical_orientation(std::move(p));
        const int t = static_cast<int>(as_.size());
        if (t < best_t_ || (t == best_t_ && (!have_best_ || canon < best_))) {
            best_t_ = t;
            best_ = std::move(canon);
            have_best_ = true;
        }
    }

    std::optional<Path> take_best() {
        if (!have_best_) return std::nullopt;
        return best_;
    }

    const Graph& g_;
    const Colouring& c_;
    std::vector<char> used_;
    std::vector<VertexId> as_, bs_;
    Path best_;
    int best_t_ = INT_MAX;
    int max_t_ = 0;
    bool have_best_ = false;
};

} // namespace detail

// Canonical witness: shortest repetitively coloured path, ties broken by the
// lexicographically smallest vertex sequence over both orientations. Only
// paths with every vertex coloured (nonzero) qualify.
inline std::optional<Path> find_repetitive_path(const Graph& g, const Colouring& c,
                                                std::optional<VertexId> anchor = std::nullopt) {
    if (static_cast<int>(c.size()) != g.vertex_count())
        throw InputError("find_repetitive_path: colouring size mismatch");
    detail::RepetitionSearch s(g, c);
    return anchor ? s.best_through(*anchor) : s.best_global();
}

struct VerifyResult {
    bool ok = false;
    std::optional<Path> witness;
    explicit operator bool() const { return ok; }
};

inline VerifyResult is_nonrepetitive(const Graph& g, const Colouring& c) {
    if (static_cast<int>(c.size()) != g.vertex_count())
        throw InputError("is_nonrepetitive: colouring size mismatch");
    for (int x : c)
        if (x == 0) throw InputError("is_nonrepetitive: uncoloured vertex");
    auto w = find_repetitive_path(g, c);
    if (w) return {false, w};
    return {true, std::nullopt};
}

// Shifted-match repetition test for paths of order >= 3.
inline bool is_almost_repetitive(const Path& p, const Colouring& c) {
    if (p.size() < 3) throw InputError("is_almost_repetitive: path order must be >= 3");
    const std::size_t len = p.size();
    // order 2q: check i in [1, q-1]; order 2q+1: check i in [1, q].
    const std::size_t q = len / 2;
    const std::size_t imax = (len % 2 == 0) ? q - 1 : q;
    for (std::size_t i = 1; i <= imax; ++i)
        if (c[static_cast<std::size_t>(p[i - 1])] != c[static_cast<std::size_t>(p[q + i])]) return false;
    return true;
}

// Proper colouring with no path on four vertices in exactly two colours.
inline VerifyResult verify_star(const Graph& g, const Colouring& c) {
    if (static_cast<int>(c.size()) != g.vertex_count())
        throw InputError("verify_star: colouring size mismatch");
    for (int x : c)
        if (x == 0) throw InputError("verify_star: uncoloured vertex");
    for (auto [u, v] : g.edges())
        if (c[static_cast<std::size_t>(u)] == c[static_cast<std::size_t>(v)])
            return {false, Path{u, v}};
    for (auto [u, v] : g.edges()) {
        for (VertexId a : g.neighbours(u)) {
            if (a == v) continue;
            if (c[static_cast<std::size_t>(a)] != c[static_cast<std::size_t>(v)]) continue;
            for (VertexId b : g.neighbours(v)) {
                if (b == u || b == a) continue;
                // colours on (a,u,v,b): need exactly two, i.e. c(b)=c(u).
                if (c[static_cast<std::size_t>(b)] != c[static_cast<std::size_t>(u)]) continue;
                return {false, Path{a, u, v, b}};
            }
        }
    }
    return {true, std::nullopt};
}

} // namespace nonrep

#endif
