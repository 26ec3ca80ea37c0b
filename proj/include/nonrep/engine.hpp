#ifndef NONREP_ENGINE_HPP
#define NONREP_ENGINE_HPP

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "nonrep/codec.hpp"
#include "nonrep/graph.hpp"
#include "nonrep/verify.hpp"

namespace nonrep {

// Per-step log: either the code of the resampled path or nothing.
using Record = std::vector<std::optional<PathCode>>;

// The uncoloured working sets X_1..X_t at the start of each iteration.
using Trace = std::vector<std::vector<VertexId>>;

struct DyckWord {
    std::vector<int> bits;

    int length() const { return static_cast<int>(bits.size()); }

    bool valid() const {
        int zeros = 0, ones = 0;
        for (int b : bits) {
            if (b == 0) ++zeros;
            else if (b == 1) ++ones;
            else return false;
            if (ones > zeros) return false;
        }
        return zeros == ones;
    }

    std::string str() const {
        std::string s;
        s.reserve(bits.size());
        for (int b : bits) s.push_back(b ? '1' : '0');
        return s;
    }

    bool contains(const std::string& pattern) const { return str().find(pattern) != std::string::npos; }
};

// Deterministic choice of the next vertex to colour from a nonempty set,
// which is handed over sorted ascending.
struct PriorityFunction {
    std::string tag;
    std::function<VertexId(const std::vector<VertexId>&)> pick;
};

inline PriorityFunction lexicographic_priority() {
    return {"lex", [](const std::vector<VertexId>& xs) { return xs.front(); }};
}

struct RunResult {
    Colouring colouring;
    Record record;
    Trace trace;
    bool success = false;
    std::vector<int> inputs;  // the colour indices actually consumed
    int steps = 0;
};

namespace detail {

struct EngineState {
    const Graph& g;
    const ListAssignment& lists;
    const PriorityFunction& f;
    Colouring phi;
    std::vector<char> in_q;
    std::vector<char> in_x;
    int x_count = 0;

    EngineState(const Graph& graph, const ListAssignment& l, const PriorityFunction& fn, const Colouring& pre)
        : g(graph), lists(l), f(fn) {
        const int n = g.vertex_count();
        if (l.vertex_count() != n) throw InputError("engine: list assignment size mismatch");
        if (static_cast<int>(pre.size()) != n) throw InputError("engine: precolouring size mismatch");
        phi = pre;
        in_q.assign(static_cast<std::size_t>(n), 0);
        in_x.assign(static_cast<std::size_t>(n), 0);
        for (VertexId v = 0; v < n; ++v) {
            if (phi[static_cast<std::size_t>(v)] != 0) {
                if (!lists.contains(v, phi[static_cast<std::size_t>(v)]))
                    throw InputError("engine: precoloured vertex outside its list");
                in_q[static_cast<std::size_t>(v)] = 1;
            } else {
                in_x[static_cast<std::size_t>(v)] = 1;
                ++x_count;
            }
        }
    }

    std::vector<VertexId> x_sorted() const {
        std::vector<VertexId> xs;
        xs.reserve(static_cast<std::size_t>(x_count));
        for (VertexId v = 0; v < g.vertex_count(); ++v)
            if (in_x[static_cast<std::size_t>(v)]) xs.push_back(v);
        return xs;
    }

    // One iteration of the while-loop; returns the record entry.
    std::optional<PathCode> step(int colour_index, Trace* trace) {
        std::vector<VertexId> xs = x_sorted();
        if (trace) trace->push_back(xs);
        VertexId v = f.pick(xs);
        if (v < 0 || v >= g.vertex_count() || !in_x[static_cast<std::size_t>(v)])
            throw InvariantError("engine: priority function left X");
        phi[static_cast<std::size_t>(v)] = lists.colour_at(v, colour_index);

        auto witness = find_repetitive_path(g, phi, v);
        if (!witness) {
            in_x[static_cast<std::size_t>(v)] = 0;
            --x_count;
            return std::nullopt;
        }

        Path p = *witness;
        const std::size_t half = p.size() / 2;
        bool v_in_second = false;
        for (std::size_t i = half; i < p.size(); ++i)
            if (p[i] == v) v_in_second = true;
        if (!v_in_second) std::reverse(p.begin(), p.end());

        // Encode against X - {v}; the other path vertices are coloured and
        // therefore never in X.
        std::vector<VertexId> x_enc;
        x_enc.reserve(xs.size());
        for (VertexId u : xs)
            if (u != v) x_enc.push_back(u);
        PathCode code = encode_path(g, p, x_enc, v);
        if (code.turn_position() < code.half_length() + 1)
            throw InvariantError("engine: turn marker landed in the first half");

        for (std::size_t i = half; i < p.size(); ++i) {
            VertexId w = p[i];
            if (in_q[static_cast<std::size_t>(w)]) continue;
            phi[static_cast<std::size_t>(w)] = 0;
            if (!in_x[static_cast<std::size_t>(w)]) {
                in_x[static_cast<std::size_t>(w)] = 1;
                ++x_count;
            }
        }
        return code;
    }
};

} // namespace detail

// The resampling colouring loop on an explicit input vector. Succeeds when
// it stops with X empty; the returned colouring is then a nonrepetitive
// list colouring extending the precolouring.
inline RunResult run(const Graph& g, const ListAssignment& lists, const PriorityFunction& f,
                     const Colouring& pre, const std::vector<int>& inputs) {
    const int ell = lists.ell();
    for (int c : inputs)
        if (c < 1 || c > ell) throw InputError("run: input entry out of range");
    detail::EngineState st(g, lists, f, pre);
    RunResult res;
    for (int c : inputs) {
        if (st.x_count == 0) break;
        res.inputs.push_back(c);
        res.record.push_back(st.step(c, &res.trace));
        ++res.steps;
    }
    res.success = (st.x_count == 0);
    res.colouring = std::move(st.phi);
    return res;
}

// Las Vegas driver: draws colour indices uniformly from [1, ell] with the
// seeded generator and stops at success or after max_steps draws.
inline RunResult run_random(const Graph& g, const ListAssignment& lists, const PriorityFunction& f,
                            const Colouring& pre, long max_steps, std::uint64_t seed) {
    if (max_steps < 1) throw InputError("run_random: max_steps must be >= 1");
    const int ell = lists.ell();
    std::mt19937_64 rng(seed);
    detail::EngineState st(g, lists, f, pre);
    RunResult res;
    for (long i = 0; i < max_steps && st.x_count > 0; ++i) {
        int c = 1 + static_cast<int>(draw_u64(rng) % static_cast<std::uint64_t>(ell));
        res.inputs.push_back(c);
        res.record.push_back(st.step(c, &res.trace));
        ++res.steps;
    }
    res.success = (st.x_count == 0);
    res.colouring = std::move(st.phi);
    return res;
}

// D(R) = 0 1^{r_1} 0 1^{r_2} ... 0 1^{r_t} 1^z with r_i the half-length of
// R(i) and z = t - sum r_i, the number of vertices left coloured by any
// execution producing R.
inline DyckWord dyck_of_record(const Record& r) {
    const int t = static_cast<int>(r.size());
    if (t == 0) throw InputError("dyck_of_record: empty record");
    long sum = 0;
    DyckWord d;
    d.bits.reserve(static_cast<std::size_t>(2 * t));
    for (const auto& e : r) {
        d.bits.push_back(0);
        int ri = e ? e->half_length() : 0;
        sum += ri;
        for (int j = 0; j < ri; ++j) d.bits.push_back(1);
    }
    const long z = t - sum;
    if (z <= 0) throw InvariantError("dyck_of_record: half-lengths sum to at least t");
    for (long j = 0; j < z; ++j) d.bits.push_back(1);
    if (!d.valid()) throw InvariantError("dyck_of_record: prefix balance violated");
    return d;
}

// Replays the trace from the record alone; every input vector producing
// this record passes through exactly these sets.
inline Trace trace_of_record(const Graph& g, const PriorityFunction& f, const Colouring& pre, const Record& r) {
    std::vector<char> in_q(static_cast<std::size_t>(g.vertex_count()), 0);
    std::vector<VertexId> x;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (pre[static_cast<std::size_t>(v)] != 0) in_q[static_cast<std::size_t>(v)] = 1;
        else x.push_back(v);
    }
    Trace trace;
    trace.push_back(x);
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        if (x.empty()) throw DecodeError("trace_of_record: record outlives the run");
        VertexId v = f.pick(x);
        if (!r[i]) {
            x.erase(std::remove(x.begin(), x.end(), v), x.end());
            if (x.empty()) throw DecodeError("trace_of_record: record outlives the run");
        } else {
            std::vector<VertexId> x_dec;
            x_dec.reserve(x.size());
            for (VertexId u : x)
                if (u != v) x_dec.push_back(u);
            Path p = decode_path(g, *r[i], x_dec, v);
            const std::size_t half = p.size() / 2;
            for (std::size_t j = half; j < p.size(); ++j) {
                VertexId w = p[j];
                if (in_q[static_cast<std::size_t>(w)]) continue;
                if (std::find(x.begin(), x.end(), w) == x.end()) x.push_back(w);
            }
            std::sort(x.begin(), x.end());
        }
        trace.push_back(x);
    }
    return trace;
}

// The unique input vector whose execution yields (final, r), recovered by
// undoing steps from the last to the first.
inline std::vector<int> reconstruct_input(const Graph& g, const ListAssignment& lists, const PriorityFunction& f,
                                          const Colouring& pre, const Colouring& final_phi, const Record& r) {
    const int t = static_cast<int>(r.size());
    if (t == 0) return {};
    if (static_cast<int>(final_phi.size()) != g.vertex_count())
        throw InputError("reconstruct_input: colouring size mismatch");
    Trace trace = trace_of_record(g, f, pre, r);
    std::vector<char> in_q(static_cast<std::size_t>(g.vertex_count()), 0);
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (pre[static_cast<std::size_t>(v)] != 0) in_q[static_cast<std::size_t>(v)] = 1;

    Colouring phi = final_phi;
    std::vector<int> inputs(static_cast<std::size_t>(t), 0);
    for (int i = t - 1; i >= 0; --i) {
        const auto& xs = trace[static_cast<std::size_t>(i)];
        VertexId v = f.pick(xs);
        if (!r[static_cast<std::size_t>(i)]) {
            int colour = phi[static_cast<std::size_t>(v)];
            if (colour == 0) throw ReconstructionError("reconstruct_input: expected a coloured vertex");
            int idx = lists.index_of(v, colour);
            if (idx == 0) throw ReconstructionError("reconstruct_input: colour not on the vertex list");
            inputs[static_cast<std::size_t>(i)] = idx;
            phi[static_cast<std::size_t>(v)] = 0;
        } else {
            std::vector<VertexId> x_dec;
            x_dec.reserve(xs.size());
            for (VertexId u : xs)
                if (u != v) x_dec.push_back(u);
            Path p = decode_path(g, *r[static_cast<std::size_t>(i)], x_dec, v);
            const std::size_t k = p.size() / 2;
            std::size_t j = 0;
            for (std::size_t q = 0; q < k; ++q)
                if (p[k + q] == v) j = q + 1;
            if (j == 0) throw ReconstructionError("reconstruct_input: v missing from the second half");
            int colour = phi[static_cast<std::size_t>(p[j - 1])];
            if (colour == 0) throw ReconstructionError("reconstruct_input: mirror vertex uncoloured");
            int idx = lists.index_of(v, colour);
            if (idx == 0) throw ReconstructionError("reconstruct_input: colour not on the vertex list");
            inputs[static_cast<std::size_t>(i)] = idx;
            for (std::size_t q = 1; q <= k; ++q) {
                VertexId w = p[k + q - 1];
                if (in_q[static_cast<std::size_t>(w)]) {
                    if (phi[static_cast<std::size_t>(w)] != phi[static_cast<std::size_t>(p[q - 1])])
                        throw ReconstructionError("reconstruct_input: precoloured vertex breaks the repetition");
                    continue;
                }
                phi[static_cast<std::size_t>(w)] = (q == j) ? 0 : phi[static_cast<std::size_t>(p[q - 1])];
            }
        }
    }
    if (phi != pre) throw ReconstructionError("reconstruct_input: rewound state differs from the precolouring");
    return inputs;
}

} // namespace nonrep

#endif
