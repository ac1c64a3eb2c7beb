#pragma once

#include "mvc/constraint.hpp"
#include "mvc/pattern.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace testing {

inline std::string data_path(const std::string& name) { return std::string(MVC_TEST_DATA) + "/" + name; }

inline mvc::SamplingPattern example_pattern() { return mvc::load_pattern(data_path("worked_example.pat")); }

inline const mvc::RankTriple kExampleRanks{2, 1, 2};

// Reference bound computed from raw supports, without the library's helpers.
inline long naive_bound(const mvc::ConstraintMatrix& cm, const std::vector<std::size_t>& cols) {
  std::vector<int> in1(cm.n(), 0), in2(cm.n(), 0);
  for (auto j : cols) {
    const auto& c = cm.column(j);
    auto& mark = c.view == 1 ? in1 : in2;
    for (auto x : c.pivot_rows) mark[x] = 1;
    mark[c.extra_row] = 1;
  }
  long g1 = 0, g2 = 0, g = 0;
  for (std::size_t x = 0; x < cm.n(); ++x) {
    g1 += in1[x];
    g2 += in2[x];
    g += (in1[x] | in2[x]);
  }
  const auto& k = cm.ranks();
  auto pos = [](long v) { return v > 0 ? v : 0; };
  return static_cast<long>(k.r1p()) * pos(g1 - static_cast<long>(k.r1())) +
         static_cast<long>(k.r2p()) * pos(g2 - static_cast<long>(k.r2())) +
         static_cast<long>(k.rp()) * pos(g - static_cast<long>(k.rp()));
}

inline std::vector<std::size_t> pick(const std::vector<std::size_t>& cols, std::uint64_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (mask >> i & 1) out.push_back(cols[i]);
  }
  return out;
}

// Every nonempty subset of `cols` satisfies bound >= size.
inline bool naive_verify(const mvc::ConstraintMatrix& cm, const std::vector<std::size_t>& cols) {
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << cols.size()); ++mask) {
    const auto sub = pick(cols, mask);
    if (naive_bound(cm, sub) < static_cast<long>(sub.size())) return false;
  }
  return true;
}

inline bool naive_single_view(const mvc::ConstraintMatrix& cm, const std::vector<std::size_t>& cols,
                              std::size_t rank) {
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << cols.size()); ++mask) {
    std::vector<int> in(cm.n(), 0);
    const auto sub = pick(cols, mask);
    for (auto j : sub) {
      for (auto x : cm.column(j).pivot_rows) in[x] = 1;
      in[cm.column(j).extra_row] = 1;
    }
    const long g = std::count(in.begin(), in.end(), 1);
    if (g - static_cast<long>(rank) < static_cast<long>(sub.size())) return false;
  }
  return true;
}

}  // namespace testing
