#include "topicbench/rng.hpp"

#include "topicbench/errors.hpp"

namespace topicbench {

std::size_t weighted_pick(std::span<const double> weights, std::mt19937_64& gen) {
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw InputError("negative weight");
        total += w;
    }
    if (total <= 0.0) throw InputError("weights sum to zero");
    const double u = uniform_double(gen) * total;
    double cum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        cum += weights[i];
        if (u < cum) return i;
    }
    return weights.size() - 1;
}

}  // namespace topicbench
