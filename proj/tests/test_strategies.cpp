#include <catch2/catch_amalgamated.hpp>

#include "nonrep/strategies.hpp"
#include "support/oracle.hpp"

using namespace nonrep;

TEST_CASE("list size for bounded degree") {
    CHECK(list_size_for_degree(2) == 23);
    CHECK(list_size_for_degree(3) == 36);
    CHECK(list_size_for_degree(8) == 160);
    CHECK_THROWS_AS(list_size_for_degree(1), InputError);
}

TEST_CASE("required subdivisions") {
    Graph k2 = path_graph(2);
    CHECK(required_subdivisions(k2, 0, 1, 100000) == 200002);
    Graph star = star_graph(3);
    CHECK(required_subdivisions(star, 0, 1, 4) == 14);  // ceil(4 log 4) + ceil(4 log 2) + 2
    Graph k3 = complete_graph(3);
    CHECK(required_subdivisions(k3, 0, 1, 4) == 16);    // ceil(4 log 3) = 7 per endpoint
    Graph k4 = complete_graph(4);
    CHECK(required_subdivisions(k4, 0, 1, 4) == 18);    // ceil(4 log 4) = 8 per endpoint
    CHECK_THROWS_AS(required_subdivisions(k2, 0, 0, 4), InputError);
}

TEST_CASE("subdivide") {
    SECTION("K2 with three division vertices is a five-path") {
        auto sg = subdivide_uniform(path_graph(2), 3, 1);
        CHECK(sg.graph.vertex_count() == 5);
        CHECK(sg.division_count == 3);
        CHECK(sg.edge_paths == std::vector<std::vector<VertexId>>{{0, 1, 2}});
        CHECK(sg.graph.has_edge(3, 0));
        CHECK(sg.graph.has_edge(2, 4));
        CHECK(sg.graph.degree(0) == 2);
    }
    SECTION("K3 with two division vertices per edge") {
        auto sg = subdivide_uniform(complete_graph(3), 2, 1);
        CHECK(sg.graph.vertex_count() == 9);
    }
    SECTION("division vertices precede the originals in the ordering") {
        auto sg = subdivide_required(complete_graph(4), 3);
        for (VertexId v = 0; v < sg.graph.vertex_count(); ++v)
            CHECK(sg.is_original(v) == (v >= sg.division_count));
    }
    SECTION("ownership regions are disjoint at the required counts") {
        for (long c : {2L, 3L, 5L}) {
            auto sg = subdivide_required(complete_graph(4), c);
            // walk each edge path: the first g(u)+1 belong to u, the last
            // g(w)+1 to w, nothing is contested
            for (std::size_t e = 0; e < sg.base_edges.size(); ++e) {
                auto [u, w] = sg.base_edges[e];
                long gu = sg.radius[static_cast<std::size_t>(u)];
                long gw = sg.radius[static_cast<std::size_t>(w)];
                const auto& path = sg.edge_paths[e];
                for (std::size_t i = 0; i < path.size(); ++i) {
                    VertexId o = sg.owner[static_cast<std::size_t>(path[i])];
                    if (static_cast<long>(i) < gu + 1) CHECK(o == sg.original_id(u));
                    else if (static_cast<long>(i) >= static_cast<long>(path.size()) - gw - 1)
                        CHECK(o == sg.original_id(w));
                    else CHECK(o == -1);
                }
            }
        }
    }
    SECTION("sub-threshold counts leave contested vertices unowned") {
        auto sg = subdivide_uniform(path_graph(2), 3, 2);  // needs 6
        int unowned = 0;
        for (VertexId v = 0; v < sg.division_count; ++v) unowned += (sg.owner[static_cast<std::size_t>(v)] == -1);
        CHECK(unowned == 3);  // every division vertex sits in both regions
    }
    CHECK_THROWS_AS(subdivide_uniform(path_graph(2), 0, 1), InputError);
}

TEST_CASE("nice sets and boundaries") {
    auto sg = subdivide_uniform(path_graph(2), 3, 1);  // single path 0-1-2

    SECTION("all division vertices form a nice set") {
        CHECK(is_nice(sg, {0, 1, 2}));
    }
    SECTION("a lone interior complement vertex stays connected") {
        // P_vw - {0,2} is the single vertex 1
        CHECK(is_nice(sg, {0, 2}));
    }
    SECTION("one end is nice, a lone middle is not") {
        CHECK(is_nice(sg, {0}));
        CHECK(is_nice(sg, {2}));
        CHECK(!is_nice(sg, {1}));
    }
    SECTION("empty set is not nice") {
        CHECK(!is_nice(sg, {}));
    }
    SECTION("originals are rejected") {
        CHECK_THROWS_AS(is_nice(sg, {3}), InputError);
    }
    SECTION("boundary of the full path is everything") {
        CHECK(boundary(sg, {0, 1, 2}) == std::vector<VertexId>{0, 1, 2});
    }
    SECTION("boundary of a run touching the oriented start") {
        CHECK(boundary(sg, {0, 1}) == std::vector<VertexId>{1});
        CHECK(boundary(sg, {0}) == std::vector<VertexId>{0});
    }
    SECTION("the x-run ends adjacent to the coloured stretch are the boundary") {
        auto sg5 = subdivide_uniform(path_graph(2), 5, 1);
        CHECK(boundary(sg5, {0, 1, 4}) == std::vector<VertexId>{1, 4});
        // an uncoloured run strictly inside the path is not nice at all
        CHECK_THROWS_AS(boundary(sg5, {1, 2, 3}), InputError);
        CHECK_THROWS_AS(boundary(sg5, {1, 3}), InputError);
    }
}

TEST_CASE("subdivision priority") {
    auto sg = subdivide_uniform(complete_graph(3), 4, 1);
    auto f = subdivision_priority(sg);
    // edge order: (0,1), (0,2), (1,2); paths {0..3}, {4..7}, {8..11}

    SECTION("fully uncoloured first path: pick its first vertex") {
        std::vector<VertexId> all;
        for (VertexId v = 0; v < sg.division_count; ++v) all.push_back(v);
        CHECK(f.pick(all) == 0);
    }
    SECTION("run at the oriented start: pick the vertex before the coloured stretch") {
        CHECK(f.pick({0, 1, 4, 5, 6, 7, 8, 9, 10, 11}) == 1);
    }
    SECTION("run at the oriented end: fall back to the vertex after it") {
        CHECK(f.pick({2, 3, 4, 5, 6, 7, 8, 9, 10, 11}) == 2);
    }
    SECTION("skips edges whose path misses X") {
        CHECK(f.pick({4, 5}) == 5);
        CHECK(f.pick({8}) == 8);
    }
    SECTION("empty set is a contract violation") {
        CHECK_THROWS_AS(f.pick({}), InputError);
    }
}

TEST_CASE("list adjustment") {
    auto sg = subdivide_uniform(path_graph(2), 6, 2);  // radii 2, regions disjoint
    const int n = sg.graph.vertex_count();
    std::vector<std::vector<int>> raw(static_cast<std::size_t>(n), std::vector<int>{1, 2, 3, 4, 5});
    ListAssignment lists(std::move(raw));

    SECTION("owner colour is removed when present") {
        Colouring pre(static_cast<std::size_t>(n), 0);
        pre[static_cast<std::size_t>(sg.original_id(0))] = 3;
        pre[static_cast<std::size_t>(sg.original_id(1))] = 1;
        auto adj = adjust_lists(sg, lists, pre);
        CHECK(adj.list(0) == std::vector<int>{1, 2, 4, 5});  // owned by original 0
        CHECK(adj.list(5) == std::vector<int>{2, 3, 4, 5});  // owned by original 1
        for (VertexId v = 0; v < sg.division_count; ++v) CHECK(adj.list(v).size() == 4);
    }
    SECTION("unowned vertices drop the largest colour") {
        auto sg8 = subdivide_uniform(path_graph(2), 8, 2);
        const int n8 = sg8.graph.vertex_count();
        ListAssignment l8(std::vector<std::vector<int>>(static_cast<std::size_t>(n8), std::vector<int>{1, 2, 3, 4, 5}));
        Colouring pre(static_cast<std::size_t>(n8), 0);
        pre[static_cast<std::size_t>(sg8.original_id(0))] = 3;
        pre[static_cast<std::size_t>(sg8.original_id(1))] = 3;
        auto adj = adjust_lists(sg8, l8, pre);
        CHECK(sg8.owner[3] == -1);
        CHECK(adj.list(3) == std::vector<int>{1, 2, 3, 4});
    }
    SECTION("a precoloured owner colour outside the list falls back to drop-largest") {
        auto raw2 = std::vector<std::vector<int>>(static_cast<std::size_t>(n), std::vector<int>{1, 2, 3, 4, 5});
        raw2[0] = {1, 2, 4, 5, 6};  // 3 not present
        ListAssignment lists2(std::move(raw2));
        Colouring pre(static_cast<std::size_t>(n), 0);
        pre[static_cast<std::size_t>(sg.original_id(0))] = 3;
        pre[static_cast<std::size_t>(sg.original_id(1))] = 1;
        auto adj = adjust_lists(sg, lists2, pre);
        CHECK(adj.list(0) == std::vector<int>{1, 2, 4, 5});
    }
    SECTION("precolouring outside the list is rejected") {
        Colouring pre(static_cast<std::size_t>(n), 0);
        pre[static_cast<std::size_t>(sg.original_id(0))] = 9;
        pre[static_cast<std::size_t>(sg.original_id(1))] = 1;
        CHECK_THROWS_AS(adjust_lists(sg, lists, pre), InputError);
    }
    SECTION("no owned vertex keeps its owner's colour") {
        std::mt19937_64 rng(77);
        for (long c : {2L, 3L, 4L}) {
            auto sgr = subdivide_required(star_graph(3), c);
            auto rl = random_lists(sgr.graph.vertex_count(), 5, 9, rng);
            Colouring pre(static_cast<std::size_t>(sgr.graph.vertex_count()), 0);
            for (VertexId v = 0; v < sgr.original_count(); ++v)
                pre[static_cast<std::size_t>(sgr.original_id(v))] = rl.list(sgr.original_id(v)).front();
            auto adj = adjust_lists(sgr, rl, pre);
            for (VertexId v = 0; v < sgr.division_count; ++v) {
                VertexId own = sgr.owner[static_cast<std::size_t>(v)];
                if (own >= 0) CHECK(!adj.contains(v, pre[static_cast<std::size_t>(own)]));
                CHECK(adj.list(v).size() == 4);
            }
        }
    }
}

TEST_CASE("bounded degree strategy") {
    SECTION("cycle with 23-colour lists") {
        Graph g = cycle_graph(5);
        auto res = colour_bounded_degree(g, ListAssignment::uniform(5, 23), 1, 100000);
        CHECK(oracle::nonrepetitive(g, res.colouring));
        CHECK(res.colours_used <= 23);
    }
    SECTION("petersen graph with 36-colour lists") {
        Graph g = petersen_graph();
        auto res = colour_bounded_degree(g, ListAssignment::uniform(10, 36), 7, 100000);
        CHECK(oracle::nonrepetitive(g, res.colouring));
    }
    SECTION("edgeless graphs are trivial") {
        Graph g(4);
        auto res = colour_bounded_degree(g, ListAssignment::uniform(4, 1), 1, 10);
        CHECK(res.colouring == Colouring{1, 1, 1, 1});
    }
    SECTION("undersized lists are rejected") {
        CHECK_THROWS_AS(colour_bounded_degree(cycle_graph(5), ListAssignment::uniform(5, 22), 1, 10), InputError);
    }
    SECTION("random choosability instances") {
        std::mt19937_64 rng(55);
        Graph g = cycle_graph(7);
        auto lists = random_lists(7, 23, 46, rng);
        auto res = colour_bounded_degree(g, lists, 3, 100000);
        for (VertexId v = 0; v < 7; ++v) CHECK(lists.contains(v, res.colouring[static_cast<std::size_t>(v)]));
    }
}

namespace {

void check_subdivision_run(const SubdividedGraph& sg, const StrategyResult& res, const ListAssignment& lists) {
    CHECK(oracle::nonrepetitive(sg.graph, res.colouring));
    for (VertexId v = 0; v < sg.graph.vertex_count(); ++v)
        CHECK(lists.contains(v, res.colouring[static_cast<std::size_t>(v)]));
    // every trace set is nice
    for (const auto& xs : res.run.trace) CHECK(is_nice(sg, xs));
    // recorded codes transform into c-spread sequences
    for (const auto& entry : res.run.record) {
        if (!entry) continue;
        auto seq = spread_sequence_of_code(*entry);
        if (entry->length() <= sg.constant_c + 1) {
            for (int e : seq) CHECK(e == 1);
        } else {
            CHECK(is_c_spread(seq, sg.constant_c));
        }
    }
    // the certificate avoids the forbidden factor
    if (!res.run.record.empty()) {
        DyckWord d = dyck_of_record(res.run.record);
        CHECK(d.valid());
        CHECK(!d.contains(kForbiddenFactor));
    }
}

} // namespace

TEST_CASE("subdivision strategy") {
    SECTION("K2 subdivided six times with 5-lists") {
        auto sg = subdivide_uniform(path_graph(2), 6, 2);
        auto lists = ListAssignment::uniform(sg.graph.vertex_count(), 5);
        auto res = colour_subdivision(sg, lists, 11, 100000);
        check_subdivision_run(sg, res, lists);
    }
    SECTION("star K13 subdivided four times per edge") {
        auto sg = subdivide_uniform(star_graph(3), 4, 1);
        auto lists = ListAssignment::uniform(sg.graph.vertex_count(), 5);
        auto res = colour_subdivision(sg, lists, 5, 100000);
        check_subdivision_run(sg, res, lists);
    }
    SECTION("K4 at the required counts for c = 4") {
        auto sg = subdivide_required(complete_graph(4), 4);
        auto lists = ListAssignment::uniform(sg.graph.vertex_count(), 5);
        auto res = colour_subdivision(sg, lists, 23, 100000);
        check_subdivision_run(sg, res, lists);
    }
    SECTION("random 5-lists respect choosability") {
        std::mt19937_64 rng(6);
        auto sg = subdivide_required(complete_graph(3), 3);
        auto lists = random_lists(sg.graph.vertex_count(), 5, 12, rng);
        auto res = colour_subdivision(sg, lists, 9, 100000);
        check_subdivision_run(sg, res, lists);
    }
}

TEST_CASE("subdivision certificates replay and reconstruct") {
    // Lemma-style replay with a nonempty precoloured set and the bespoke
    // priority: the record alone rebuilds the trace, and (colouring, record)
    // rebuilds the exact input vector.
    for (std::uint64_t seed : {1, 7, 19, 42}) {
        auto sg = subdivide_required(star_graph(3), 3);
        auto lists = ListAssignment::uniform(sg.graph.vertex_count(), 5);
        auto res = colour_subdivision(sg, lists, seed, 100000);

        Colouring pre(static_cast<std::size_t>(sg.graph.vertex_count()), 0);
        for (VertexId v = 0; v < sg.original_count(); ++v)
            pre[static_cast<std::size_t>(sg.original_id(v))] = lists.list(sg.original_id(v)).front();
        ListAssignment adjusted = adjust_lists(sg, lists, pre);
        PriorityFunction f = subdivision_priority(sg);

        CHECK(trace_of_record(sg.graph, f, pre, res.run.record) == res.run.trace);
        auto back = reconstruct_input(sg.graph, adjusted, f, pre, res.colouring, res.run.record);
        CHECK(back == res.run.inputs);
    }
}

TEST_CASE("spread sequence transform") {
    PathCode code{{2, 1, -1, 3}};
    CHECK(spread_sequence_of_code(code) == std::vector<int>{1, 1, 3});
    PathCode tail{{1, 1, 1, -1}};
    CHECK(spread_sequence_of_code(tail) == std::vector<int>{1, 1, 1});
}
