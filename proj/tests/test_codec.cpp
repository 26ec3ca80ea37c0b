#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "nonrep/codec.hpp"
#include "nonrep/verify.hpp"

using namespace nonrep;

TEST_CASE("hand-traced encodings") {
    SECTION("single edge") {
        Graph g = path_graph(2);
        CHECK(encode_path(g, {0, 1}, {}, 1).entries == std::vector<int>{1, -1});
    }
    SECTION("P4 from the far endpoint") {
        Graph g = path_graph(4);
        CHECK(encode_path(g, {0, 1, 2, 3}, {}, 3).entries == std::vector<int>{1, 1, 1, -1});
    }
    SECTION("P4 from an interior vertex of the second half") {
        Graph g = path_graph(4);
        CHECK(encode_path(g, {0, 1, 2, 3}, {}, 2).entries == std::vector<int>{1, 1, -1, 1});
    }
    SECTION("orientation of the input path does not matter") {
        Graph g = path_graph(4);
        CHECK(encode_path(g, {3, 2, 1, 0}, {}, 2) == encode_path(g, {0, 1, 2, 3}, {}, 2));
    }
    SECTION("exclusions shift indices") {
        Graph g = star_graph(3);
        g.add_edge(1, 2);
        // path (3,0,1,2): from v=2 the walk passes 1 then 0 then 3.
        auto code = encode_path(g, {3, 0, 1, 2}, {}, 2);
        code.validate();
        CHECK(decode_path(g, code, {}, 2) == Path{3, 0, 1, 2});
    }
}

TEST_CASE("hand-traced decodings and errors") {
    Graph g2 = path_graph(2);
    CHECK(decode_path(g2, PathCode{{1, -1}}, {}, 1) == Path{0, 1});
    Graph g4 = path_graph(4);
    CHECK(decode_path(g4, PathCode{{1, 1, 1, -1}}, {}, 3) == Path{0, 1, 2, 3});
    CHECK_THROWS_AS(decode_path(g2, PathCode{{9, -1}}, {}, 1), DecodeError);
    CHECK_THROWS_AS(decode_path(g2, PathCode{{1, 1}}, {}, 1), InvariantError);
    CHECK_THROWS_AS(decode_path(g2, PathCode{{-1, 1}}, {}, 1), InvariantError);
    CHECK_THROWS_AS(encode_path(g4, {0, 1, 2, 3}, {2}, 3), InputError);
    CHECK_THROWS_AS(encode_path(g4, {0, 1, 2}, {}, 2), InputError);
}

namespace {

// Round trip and injectivity over every even path, every X, every v.
void check_graph_exhaustively(const Graph& g) {
    const int n = g.vertex_count();
    int cap = n - n % 2;
    if (cap < 2) return;
    auto paths = enumerate_even_paths(g, cap);
    // (X, v) -> set of codes seen, to confirm distinct paths get distinct codes.
    std::map<std::pair<std::vector<VertexId>, VertexId>, std::set<std::vector<int>>> codes;
    for (const auto& p : paths) {
        std::vector<VertexId> rest;
        for (VertexId u = 0; u < n; ++u)
            if (std::find(p.begin(), p.end(), u) == p.end()) rest.push_back(u);
        const int m = static_cast<int>(rest.size());
        for (int mask = 0; mask < (1 << m); ++mask) {
            std::vector<VertexId> x;
            for (int b = 0; b < m; ++b)
                if (mask & (1 << b)) x.push_back(rest[static_cast<std::size_t>(b)]);
            for (VertexId v : p) {
                PathCode code = encode_path(g, p, x, v);
                Path back = decode_path(g, code, x, v);
                REQUIRE(same_path_upto_reversal(back, p));
                CHECK(code.length() == static_cast<int>(p.size()));
                auto& bucket = codes[{x, v}];
                // Insertion must succeed: another path through v avoiding X
                // cannot share the code.
                CHECK(bucket.insert(code.entries).second);
            }
        }
    }
}

} // namespace

TEST_CASE("round trip and injectivity, exhaustive on small graphs") {
    for (int n = 2; n <= 5; ++n) {
        int edges = n * (n - 1) / 2;
        for (int mask = 0; mask < (1 << edges); ++mask) {
            Graph g(n);
            int bit = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j, ++bit)
                    if (mask & (1 << bit)) g.add_edge(i, j);
            check_graph_exhaustively(g);
        }
    }
}

TEST_CASE("round trip on random graphs") {
    std::mt19937_64 rng(5150);
    for (int it = 0; it < 12; ++it) {
        Graph g = random_graph(draw_int(rng, 6, 9), draw_int(rng, 25, 55), rng);
        check_graph_exhaustively(g);
    }
}

TEST_CASE("fast codec matches the public functions") {
    std::mt19937_64 rng(42);
    for (int it = 0; it < 25; ++it) {
        Graph g = random_graph(7, 45, rng);
        FastCodec fast(g);
        auto paths = enumerate_even_paths(g, 6);
        std::vector<int> buf;
        std::vector<VertexId> back;
        for (const auto& p : paths) {
            for (VertexId v : p) {
                PathCode slow = encode_path(g, p, {}, v);
                fast.encode(p.data(), static_cast<int>(p.size()), 0, v, buf);
                CHECK(buf == slow.entries);
                REQUIRE(fast.decode(buf.data(), static_cast<int>(buf.size()), 0, v, back));
                CHECK(same_path_upto_reversal(back, p));
            }
        }
    }
}

TEST_CASE("turn marker lies in the second half") {
    // The encoder orients v into the second half, so p >= k+1 always.
    std::mt19937_64 rng(77);
    for (int it = 0; it < 30; ++it) {
        Graph g = random_graph(7, 50, rng);
        for (const auto& p : enumerate_even_paths(g, 6)) {
            for (VertexId v : p) {
                PathCode c = encode_path(g, p, {}, v);
                CHECK(c.turn_position() >= c.half_length() + 1);
                CHECK(c.turn_position() <= c.length());
            }
        }
    }
}
