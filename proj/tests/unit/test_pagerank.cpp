#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <topicbench/core.hpp>
#include <topicbench/pagerank.hpp>
#include <topicbench/rng.hpp>

namespace tb = topicbench;

namespace {

double total(const std::map<tb::UserId, double>& scores) {
    double sum = 0.0;
    for (const auto& [user, score] : scores) sum += score;
    return sum;
}

}  // namespace

TEST_SUITE("pagerank") {

TEST_CASE("two users mentioning each other split the score evenly") {
    tb::InteractionGraph graph;
    graph.add_interaction("a", "b");
    graph.add_interaction("b", "a");
    const auto scores = tb::pagerank(graph);
    REQUIRE(scores.size() == 2);
    CHECK(scores.at("a") == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(scores.at("b") == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("a directed cycle is uniform at 1/n") {
    for (int n : {3, 5, 8}) {
        tb::InteractionGraph graph;
        for (int i = 0; i < n; ++i) {
            const std::string actor = "u" + std::to_string(i);
            const std::string target = "u" + std::to_string((i + 1) % n);
            graph.add_interaction(target, actor);
        }
        const auto scores = tb::pagerank(graph);
        REQUIRE(scores.size() == static_cast<std::size_t>(n));
        for (const auto& [user, score] : scores) {
            CHECK(score == doctest::Approx(1.0 / n).epsilon(1e-9));
        }
    }
}

TEST_CASE("chain a->b->c ranks the sink highest") {
    // Interactions: a mentions b, b mentions c. Walk direction actor->target.
    tb::InteractionGraph graph;
    graph.add_interaction("b", "a");
    graph.add_interaction("c", "b");
    const auto scores = tb::pagerank(graph);
    REQUIRE(scores.size() == 3);
    CHECK(total(scores) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(scores.at("c") > scores.at("b"));
    CHECK(scores.at("b") > scores.at("a"));
}

TEST_CASE("edge weights shift transition probability") {
    // b splits attention between a (weight 3) and c (weight 1).
    tb::InteractionGraph graph;
    graph.add_interaction("a", "b", 3);
    graph.add_interaction("c", "b", 1);
    const auto scores = tb::pagerank(graph);
    CHECK(scores.at("a") > scores.at("c"));
}

TEST_CASE("an isolated node gets only teleport mass") {
    tb::InteractionGraph graph;
    graph.add_interaction("a", "b");
    graph.add_interaction("b", "a");
    graph.add_node("loner");
    const auto scores = tb::pagerank(graph);
    REQUIRE(scores.size() == 3);
    CHECK(total(scores) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(scores.at("loner") < scores.at("a"));
    CHECK(scores.at("loner") > 0.0);
}

TEST_CASE("empty graph yields an empty score map") {
    const tb::InteractionGraph graph;
    CHECK(tb::pagerank(graph).empty());
}

TEST_CASE("scores are invariant under node relabeling") {
    tb::InteractionGraph original;
    original.add_interaction("n1", "n0");
    original.add_interaction("n2", "n1");
    original.add_interaction("n0", "n2", 2);
    original.add_interaction("n2", "n0");

    // Same shape with permuted labels: n0->z, n1->x, n2->y.
    tb::InteractionGraph relabeled;
    relabeled.add_interaction("x", "z");
    relabeled.add_interaction("y", "x");
    relabeled.add_interaction("z", "y", 2);
    relabeled.add_interaction("y", "z");

    const auto a = tb::pagerank(original);
    const auto b = tb::pagerank(relabeled);
    CHECK(a.at("n0") == doctest::Approx(b.at("z")).epsilon(1e-12));
    CHECK(a.at("n1") == doctest::Approx(b.at("x")).epsilon(1e-12));
    CHECK(a.at("n2") == doctest::Approx(b.at("y")).epsilon(1e-12));
}

TEST_CASE("random graphs: scores sum to one and match a dense oracle") {
    std::mt19937_64 gen(2024);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 8 + static_cast<int>(tb::uniform_below(gen, 8));
        tb::InteractionGraph graph;
        for (int i = 0; i < n; ++i) graph.add_node("u" + std::to_string(i));
        for (int e = 0; e < 2 * n; ++e) {
            const int actor = static_cast<int>(tb::uniform_below(gen, static_cast<std::uint64_t>(n)));
            const int target = static_cast<int>(tb::uniform_below(gen, static_cast<std::uint64_t>(n)));
            if (actor == target) continue;
            graph.add_interaction("u" + std::to_string(target), "u" + std::to_string(actor),
                                  1 + static_cast<std::int64_t>(tb::uniform_below(gen, 3)));
        }
        const auto scores = tb::pagerank(graph);
        REQUIRE(scores.size() == static_cast<std::size_t>(n));
        CHECK(std::abs(total(scores) - 1.0) <= 1e-9);

        // Dense power iteration oracle over the same transition structure.
        std::vector<std::string> users;
        for (const auto& [user, score] : scores) users.push_back(user);
        std::map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < users.size(); ++i) index[users[i]] = i;

        std::vector<std::vector<double>> transitions(users.size(),
                                                     std::vector<double>(users.size(), 0.0));
        std::vector<double> out_weight(users.size(), 0.0);
        for (const auto& [edge, weight] : graph.edges) {
            out_weight[index[edge.second]] += static_cast<double>(weight);
        }
        for (const auto& [edge, weight] : graph.edges) {
            const std::size_t actor = index[edge.second];
            const std::size_t target = index[edge.first];
            transitions[actor][target] = static_cast<double>(weight) / out_weight[actor];
        }

        const double damping = 0.85;
        const std::size_t size = users.size();
        std::vector<double> rank(size, 1.0 / static_cast<double>(size));
        for (int iter = 0; iter < 500; ++iter) {
            std::vector<double> next(size, 0.0);
            double dangling = 0.0;
            for (std::size_t i = 0; i < size; ++i) {
                if (out_weight[i] == 0.0) {
                    dangling += rank[i];
                    continue;
                }
                for (std::size_t j = 0; j < size; ++j) {
                    next[j] += damping * rank[i] * transitions[i][j];
                }
            }
            for (std::size_t j = 0; j < size; ++j) {
                next[j] += (1.0 - damping) / static_cast<double>(size) +
                           damping * dangling / static_cast<double>(size);
            }
            rank = std::move(next);
        }

        for (std::size_t i = 0; i < size; ++i) {
            CHECK(std::abs(scores.at(users[i]) - rank[i]) <= 1e-8);
        }
    }
}

}  // TEST_SUITE
