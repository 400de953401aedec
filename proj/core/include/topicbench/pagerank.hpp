#pragma once

#include <map>

#include "topicbench/core.hpp"

namespace topicbench {

struct PagerankConfig {
    double damping = 0.85;
    double tolerance = 1e-9;  // L1 change between iterations
    int max_iterations = 200;
};

// Scores over all graph nodes, summing to 1. The walk follows interactions
// from actor to target with edge-weight-proportional transition probabilities;
// dangling mass is redistributed uniformly.
std::map<UserId, double> pagerank(const InteractionGraph& graph, const PagerankConfig& config = {});

}  // namespace topicbench
