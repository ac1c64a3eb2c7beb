#pragma once

#include <cstdint>
#include <vector>

namespace mvc {

/// Dinic max-flow on small dense-ish graphs. Used to minimise weighted row
/// coverage minus column count over column sets (a max-weight closure).
class MaxFlow {
 public:
  static constexpr std::int64_t kInfinity = std::int64_t{1} << 40;

  explicit MaxFlow(std::size_t vertices);

  void add_edge(std::size_t from, std::size_t to, std::int64_t capacity);
  std::int64_t run(std::size_t source, std::size_t sink);
  /// After run(): vertices reachable from the source in the residual graph.
  std::vector<bool> source_side(std::size_t source) const;

 private:
  struct Edge {
    std::size_t to;
    std::int64_t capacity;
  };

  bool build_levels(std::size_t source, std::size_t sink);
  std::int64_t push(std::size_t v, std::size_t sink, std::int64_t limit);

  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
};

}  // namespace mvc
