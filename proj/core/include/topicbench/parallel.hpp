#pragma once

#include <cstddef>
#include <functional>

namespace topicbench {

// Runs fn(0..n-1) across `workers` threads with static chunking. workers <= 0
// means hardware concurrency. Callers must make fn(i) independent of
// scheduling (write only to slot i); then results match a sequential run.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

int default_worker_count();

}  // namespace topicbench
