#include "mvc/flow.hpp"

#include <algorithm>
#include <queue>

namespace mvc {

MaxFlow::MaxFlow(std::size_t vertices) : adjacency_(vertices), level_(vertices), cursor_(vertices) {}

void MaxFlow::add_edge(std::size_t from, std::size_t to, std::int64_t capacity) {
  adjacency_[from].push_back(edges_.size());
  edges_.push_back({to, capacity});
  adjacency_[to].push_back(edges_.size());
  edges_.push_back({from, 0});
}

bool MaxFlow::build_levels(std::size_t source, std::size_t sink) {
  std::fill(level_.begin(), level_.end(), -1);
  std::queue<std::size_t> queue;
  level_[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop();
    for (auto id : adjacency_[v]) {
      const auto& e = edges_[id];
      if (e.capacity > 0 && level_[e.to] < 0) {
        level_[e.to] = level_[v] + 1;
        queue.push(e.to);
      }
    }
  }
  return level_[sink] >= 0;
}

std::int64_t MaxFlow::push(std::size_t v, std::size_t sink, std::int64_t limit) {
  if (v == sink) return limit;
  for (auto& i = cursor_[v]; i < adjacency_[v].size(); ++i) {
    const auto id = adjacency_[v][i];
    auto& e = edges_[id];
    if (e.capacity <= 0 || level_[e.to] != level_[v] + 1) continue;
    const auto pushed = push(e.to, sink, std::min(limit, e.capacity));
    if (pushed > 0) {
      e.capacity -= pushed;
      edges_[id ^ 1].capacity += pushed;
      return pushed;
    }
  }
  return 0;
}

std::int64_t MaxFlow::run(std::size_t source, std::size_t sink) {
  std::int64_t total = 0;
  while (build_levels(source, sink)) {
    std::fill(cursor_.begin(), cursor_.end(), 0);
    while (auto pushed = push(source, sink, kInfinity)) total += pushed;
  }
  return total;
}

std::vector<bool> MaxFlow::source_side(std::size_t source) const {
  std::vector<bool> seen(adjacency_.size(), false);
  std::queue<std::size_t> queue;
  seen[source] = true;
  queue.push(source);
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop();
    for (auto id : adjacency_[v]) {
      const auto& e = edges_[id];
      if (e.capacity > 0 && !seen[e.to]) {
        seen[e.to] = true;
        queue.push(e.to);
      }
    }
  }
  return seen;
}

}  // namespace mvc
