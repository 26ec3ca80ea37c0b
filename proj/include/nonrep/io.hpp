#ifndef NONREP_IO_HPP
#define NONREP_IO_HPP

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "nonrep/engine.hpp"
#include "nonrep/pathwidth.hpp"
#include "nonrep/strategies.hpp"

namespace nonrep {

using json = nlohmann::json;

// Graph text format: "n m" then one "u v" line per edge, 0-based ids.
inline void write_graph(std::ostream& os, const Graph& g) {
    os << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) os << u << ' ' << v << '\n';
}

inline Graph read_graph(std::istream& is) {
    int n = 0, m = 0;
    if (!(is >> n >> m)) throw InputError("graph file: missing header");
    Graph g(n);
    for (int i = 0; i < m; ++i) {
        int u = 0, v = 0;
        if (!(is >> u >> v)) throw InputError("graph file: truncated edge list");
        g.add_edge(u, v);
    }
    return g;
}

// Colourings and lists are JSON objects keyed by vertex id.
inline json colouring_to_json(const Colouring& c) {
    json out = json::object();
    for (std::size_t v = 0; v < c.size(); ++v) out[std::to_string(v)] = c[v];
    return out;
}

inline Colouring colouring_from_json(const json& j, int n) {
    Colouring c(static_cast<std::size_t>(n), 0);
    for (auto it = j.begin(); it != j.end(); ++it) {
        int v = std::stoi(it.key());
        if (v < 0 || v >= n) throw InputError("colouring file: unknown vertex id");
        c[static_cast<std::size_t>(v)] = it.value().get<int>();
    }
    return c;
}

inline json lists_to_json(const ListAssignment& l) {
    json out = json::object();
    for (int v = 0; v < l.vertex_count(); ++v) out[std::to_string(v)] = l.list(v);
    return out;
}

inline ListAssignment lists_from_json(const json& j, int n) {
    std::vector<std::vector<int>> lists(static_cast<std::size_t>(n));
    for (auto it = j.begin(); it != j.end(); ++it) {
        int v = std::stoi(it.key());
        if (v < 0 || v >= n) throw InputError("list file: unknown vertex id");
        lists[static_cast<std::size_t>(v)] = it.value().get<std::vector<int>>();
    }
    return ListAssignment(std::move(lists));
}

// Record dump: array of {step, code}, 1-based steps, null for empty entries.
inline json record_to_json(const Record& r) {
    json out = json::array();
    for (std::size_t i = 0; i < r.size(); ++i) {
        json entry;
        entry["step"] = i + 1;
        entry["code"] = r[i] ? json(r[i]->entries) : json(nullptr);
        out.push_back(std::move(entry));
    }
    return out;
}

inline Record record_from_json(const json& j) {
    Record r;
    r.resize(j.size());
    for (const auto& entry : j) {
        std::size_t step = entry.at("step").get<std::size_t>();
        if (step < 1 || step > r.size()) throw InputError("record file: step index out of range");
        if (entry.at("code").is_null()) continue;
        PathCode code{entry.at("code").get<std::vector<int>>()};
        code.validate();
        r[step - 1] = std::move(code);
    }
    return r;
}

inline json trace_to_json(const Trace& t) {
    json out = json::array();
    for (const auto& xs : t) out.push_back(xs);
    return out;
}

// Path decomposition: one bag per line, space-separated ids, file order is
// the path order. Blank lines are empty bags.
inline void write_pd(std::ostream& os, const PathDecomposition& pd) {
    for (const auto& bag : pd.bags) {
        for (std::size_t i = 0; i < bag.size(); ++i) os << (i ? " " : "") << bag[i];
        os << '\n';
    }
}

inline PathDecomposition read_pd(std::istream& is) {
    PathDecomposition pd;
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::vector<VertexId> bag;
        int v;
        while (ls >> v) bag.push_back(v);
        pd.bags.push_back(std::move(bag));
    }
    while (!pd.bags.empty() && pd.bags.back().empty()) pd.bags.pop_back();
    return pd;
}

inline std::vector<int> read_vector(std::istream& is) {
    std::vector<int> out;
    int v;
    while (is >> v) out.push_back(v);
    return out;
}

// Subdivision metadata: everything needed to rebuild the structure.
inline json subdivision_to_json(const SubdividedGraph& sg) {
    json base;
    base["n"] = sg.base.vertex_count();
    base["edges"] = json::array();
    for (auto [u, v] : sg.base_edges) base["edges"].push_back({u, v});
    json counts = json::array();
    json paths = json::object();
    for (std::size_t e = 0; e < sg.base_edges.size(); ++e) {
        counts.push_back(sg.edge_paths[e].size());
        auto [u, v] = sg.base_edges[e];
        paths[std::to_string(u) + "," + std::to_string(v)] = sg.edge_paths[e];
    }
    json out;
    out["base"] = std::move(base);
    out["constant_c"] = sg.constant_c;
    out["counts"] = std::move(counts);
    out["paths"] = std::move(paths);
    return out;
}

inline SubdividedGraph subdivision_from_json(const json& j) {
    const auto& jb = j.at("base");
    Graph h(jb.at("n").get<int>());
    for (const auto& e : jb.at("edges")) h.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    std::vector<int> counts = j.at("counts").get<std::vector<int>>();
    SubdividedGraph sg = subdivide(h, counts, j.at("constant_c").get<long>());
    // the id layout is deterministic; confirm the stored paths agree
    for (std::size_t e = 0; e < sg.base_edges.size(); ++e) {
        auto [u, v] = sg.base_edges[e];
        auto key = std::to_string(u) + "," + std::to_string(v);
        if (j.at("paths").at(key).get<std::vector<VertexId>>() != sg.edge_paths[e])
            throw InputError("subdivision metadata: stored paths do not match the rebuilt layout");
    }
    return sg;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path);
    out << content;
}

} // namespace nonrep

#endif
