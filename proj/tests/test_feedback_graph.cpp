#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include "graphlearn/graphlearn.hpp"
#include "oracles.hpp"

using namespace graphlearn;
using Catch::Approx;

TEST_CASE("build_graph computes shortest-path distances") {
    const FeedbackGraph g = build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}}, false);
    CHECK(g.dist(0, 2) == Approx(2.0));
    CHECK(g.dist(2, 0) == Approx(2.0));
    CHECK(g.dist(1, 1) == 0.0);

    const FeedbackGraph cycle = make_cycle(4);
    CHECK(cycle.dist(0, 2) == Approx(2.0));
    CHECK(cycle.dist(0, 1) == Approx(1.0));
}

TEST_CASE("build_graph rejects bad input") {
    CHECK_THROWS_AS(build_graph(2, {}, false), DisconnectedGraphError);
    CHECK_THROWS_AS(build_graph(3, {{0, 1, 1.0}}, false), DisconnectedGraphError);
    CHECK_THROWS_AS(build_graph(2, {{0, 5, 1.0}}, false), InvalidEdgeError);
    CHECK_THROWS_AS(build_graph(2, {{0, 1, 0.0}}, false), InvalidEdgeError);
    CHECK_THROWS_AS(build_graph(2, {{0, 1, -2.0}}, false), InvalidEdgeError);
    CHECK_THROWS_AS(build_graph(2, {{0, 0, 1.0}}, false), InvalidEdgeError);
    CHECK_THROWS_AS(build_graph(2, {{0, 1, 1.0}, {1, 0, 2.0}}, false), InvalidEdgeError);
    // a directed path is not strongly connected
    CHECK_THROWS_AS(build_graph(2, {{0, 1, 1.0}}, true), DisconnectedGraphError);
    CHECK_NOTHROW(build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}}, true));
}

TEST_CASE("distances agree with Floyd-Warshall on random graphs") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + rng.next_index(11);
        const FeedbackGraph g = oracles::random_connected_graph(n, n, trial % 2 == 1, rng);
        const auto fw = oracles::floyd_warshall(n, g.edges(), false);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                CHECK(g.dist(i, j) == Approx(fw[i][j]).margin(1e-9));
            }
        }
    }
}

TEST_CASE("version_space matches the worked examples") {
    const FeedbackGraph path = make_path(4);
    CHECK(version_space(path, 1, 2) == std::vector<int>{2, 3});

    const FeedbackGraph star = make_star(4);
    CHECK(version_space(star, 0, 0) == std::vector<int>{0});  // self-feedback means "correct"

    const FeedbackGraph cycle = make_cycle(4);
    CHECK(version_space(cycle, 0, 1) == std::vector<int>{1, 2});

    CHECK_THROWS_AS(version_space(path, 0, 2), NotNeighborError);
    CHECK_THROWS_AS(version_space(path, 0, 9), NotNeighborError);
}

TEST_CASE("version_space equals explicit shortest-path enumeration") {
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 3 + rng.next_index(10);
        const FeedbackGraph g = oracles::random_connected_graph(n, n / 2, trial % 3 == 0, rng);
        const auto fw = oracles::floyd_warshall(n, g.edges(), false);
        const auto adj = oracles::adjacency_of(n, g.edges(), false);
        for (int q = 0; q < n; ++q) {
            for (int z : g.neighbors(q)) {
                const auto space = version_space(g, q, z);
                for (int v = 0; v < n; ++v) {
                    const bool expected = oracles::on_some_shortest_path(adj, fw, q, z, v);
                    const bool got = std::binary_search(space.begin(), space.end(), v);
                    INFO("n=" << n << " q=" << q << " z=" << z << " v=" << v);
                    CHECK(got == expected);
                }
            }
        }
    }
}

TEST_CASE("weighted_median matches the worked examples") {
    const FeedbackGraph path = make_path(3);
    CHECK(weighted_median(path, {1.0, 1.0, 1.0}) == 1);

    const FeedbackGraph longer = make_path(8);
    Likelihood concentrated(8, 0.0);
    concentrated[5] = 1.0;
    CHECK(weighted_median(longer, concentrated) == 5);

    const FeedbackGraph star = make_star(4);
    // brute-force cost comparison over all five candidates
    const Likelihood uniform(5, 0.2);
    int best = 0;
    double best_cost = median_cost(star, uniform, 0);
    for (int u = 1; u < 5; ++u) {
        if (median_cost(star, uniform, u) < best_cost) {
            best = u;
            best_cost = median_cost(star, uniform, u);
        }
    }
    CHECK(best == 0);
    CHECK(weighted_median(star, uniform) == 0);
}

TEST_CASE("weighted_median rejects invalid likelihoods") {
    const FeedbackGraph path = make_path(3);
    CHECK_THROWS_AS(weighted_median(path, {0.0, 0.0, 0.0}), Error);
    CHECK_THROWS_AS(weighted_median(path, {1.0, -0.5, 0.0}), Error);
    CHECK_THROWS_AS(weighted_median(path, {1.0, 1.0}), Error);
}

TEST_CASE("weighted_median is optimal and scale-invariant on random instances") {
    Rng rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + rng.next_index(29);
        const FeedbackGraph g = oracles::random_connected_graph(n, n, trial % 2 == 1, rng);
        const Likelihood like = oracles::random_likelihood(n, rng);
        const int median = weighted_median(g, like);
        const double median_value = median_cost(g, like, median);
        for (int u = 0; u < n; ++u) {
            CHECK(median_cost(g, like, u) >= median_value - 1e-9);
        }
        Likelihood scaled = like;
        const double factor = 0.001 + 1000.0 * rng.next_double();
        for (double& x : scaled) x *= factor;
        CHECK(weighted_median(g, scaled) == median);
    }
}

TEST_CASE("the median halves the likelihood of every version space") {
    Rng rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + rng.next_index(19);
        const FeedbackGraph g = oracles::random_connected_graph(n, n / 2, trial % 2 == 0, rng);
        const Likelihood like = oracles::random_likelihood(n, rng);
        const double total = likelihood_total(like);
        const int median = weighted_median(g, like);
        for (int z : g.neighbors(median)) {
            double surviving = 0.0;
            for (int v : version_space(g, median, z)) surviving += like[v];
            INFO("n=" << n << " median=" << median << " z=" << z);
            CHECK(surviving <= 0.5 * total + 1e-9);
        }
    }
}

TEST_CASE("m_neighborhood and diameter match the worked examples") {
    const FeedbackGraph path = make_path(4);
    CHECK(m_neighborhood(path, 0, 2) == std::vector<int>{1, 2});
    CHECK(m_neighborhood(path, 1, 1) == std::vector<int>{0, 2});

    const FeedbackGraph clique = make_clique(5);
    CHECK(m_neighborhood(clique, 2, 1) == std::vector<int>{0, 1, 3, 4});
    CHECK(diameter(clique) == Approx(1.0));

    CHECK(diameter(make_path(7)) == Approx(6.0));

    const FeedbackGraph cycle6 = make_cycle(6);
    const auto fw = oracles::floyd_warshall(6, cycle6.edges(), false);
    double brute = 0.0;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) brute = std::max(brute, fw[i][j]);
    CHECK(brute == Approx(3.0));
    CHECK(diameter(cycle6) == Approx(3.0));

    CHECK_THROWS_AS(m_neighborhood(path, 0, 0), Error);
}

TEST_CASE("edge-list files round-trip") {
    const FeedbackGraph g = make_cycle(5);
    std::stringstream buffer;
    write_edge_list(buffer, g);
    const FeedbackGraph parsed = read_edge_list(buffer);
    REQUIRE(parsed.vertex_count() == 5);
    CHECK(parsed.directed() == false);
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) CHECK(parsed.dist(i, j) == Approx(g.dist(i, j)));
    }
}

TEST_CASE("edge-list parser handles comments and rejects malformed input") {
    std::stringstream good("# a comment\nn 3 directed 0\n0 1 1.5\n# another\n1 2 0.5\n");
    const FeedbackGraph g = read_edge_list(good);
    CHECK(g.dist(0, 2) == Approx(2.0));

    std::stringstream missing_header("0 1 1.0\n");
    CHECK_THROWS_AS(read_edge_list(missing_header), InvalidEdgeError);

    std::stringstream bad_edge("n 2 directed 0\n0 one 1.0\n");
    CHECK_THROWS_AS(read_edge_list(bad_edge), InvalidEdgeError);

    std::stringstream empty("");
    CHECK_THROWS_AS(read_edge_list(empty), InvalidEdgeError);
}

TEST_CASE("quasi-star generator has the requested diameter") {
    for (int d = 4; d <= 8; d += 2) {
        const FeedbackGraph g = make_quasi_star(3, d);
        CHECK(g.vertex_count() == 1 + 3 * (d / 2));
        CHECK(diameter(g) == Approx(static_cast<double>(d)));
    }
    CHECK_THROWS_AS(make_quasi_star(3, 5), InvalidEdgeError);
    CHECK_THROWS_AS(make_quasi_star(1, 4), InvalidEdgeError);
}
