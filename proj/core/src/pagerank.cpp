#include "topicbench/pagerank.hpp"

#include <cmath>
#include <cstddef>
#include <unordered_map>
#include <vector>

#include "topicbench/errors.hpp"

namespace topicbench {

std::map<UserId, double> pagerank(const InteractionGraph& graph, const PagerankConfig& config) {
    if (config.damping < 0.0 || config.damping >= 1.0) {
        throw InputError("pagerank damping must be in [0, 1)");
    }
    const std::size_t n = graph.nodes.size();
    std::map<UserId, double> result;
    if (n == 0) return result;

    std::vector<const UserId*> ids;
    ids.reserve(n);
    std::unordered_map<std::string_view, std::size_t> index;
    for (const auto& u : graph.nodes) {
        index.emplace(u, ids.size());
        ids.push_back(&u);
    }

    // Outgoing links per actor: actor -> [(target, weight)].
    struct Link {
        std::size_t target;
        double weight;
    };
    std::vector<std::vector<Link>> links(n);
    std::vector<double> out_weight(n, 0.0);
    for (const auto& [key, w] : graph.edges) {
        auto ti = index.find(key.first);
        auto ai = index.find(key.second);
        if (ti == index.end() || ai == index.end()) {
            throw InvariantError("interaction edge endpoint missing from node set");
        }
        links[ai->second].push_back({ti->second, static_cast<double>(w)});
        out_weight[ai->second] += static_cast<double>(w);
    }

    const double d = config.damping;
    const double uniform = 1.0 / static_cast<double>(n);
    std::vector<double> rank(n, uniform);
    std::vector<double> next(n, 0.0);

    for (int iter = 0; iter < config.max_iterations; ++iter) {
        double dangling = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            if (out_weight[v] == 0.0) dangling += rank[v];
        }
        const double base = (1.0 - d) * uniform + d * dangling * uniform;
        std::fill(next.begin(), next.end(), base);
        for (std::size_t v = 0; v < n; ++v) {
            if (links[v].empty()) continue;
            const double share = d * rank[v] / out_weight[v];
            for (const Link& link : links[v]) {
                next[link.target] += share * link.weight;
            }
        }
        double delta = 0.0;
        for (std::size_t v = 0; v < n; ++v) delta += std::fabs(next[v] - rank[v]);
        rank.swap(next);
        if (delta < config.tolerance) break;
    }

    for (std::size_t v = 0; v < n; ++v) result[*ids[v]] = rank[v];
    return result;
}

}  // namespace topicbench
