#pragma once

// Brute-force counterparts shared by the unit tests and the acceptance run.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "pro2/series.hpp"
#include "pro2/wreath.hpp"

namespace pro2::testing {

inline int bfs_log_order(const GroupContext& ctx, const std::vector<Element>& gens) {
  if (gens.empty()) return 0;
  const auto n = bfs_closure(ctx, gens, std::uint64_t{1} << 18).count;
  int l = 0;
  while ((std::uint64_t{1} << l) < n) ++l;
  if ((std::uint64_t{1} << l) != n) throw std::logic_error("closure size is not a power of 2");
  return l;
}

inline std::vector<Element> gens_of(const Subgroup& s) { return {s.basis().begin(), s.basis().end()}; }

// lower 2-series factor ranks, written out by hand from the closed-form table
inline const std::map<int, std::vector<int>> kLowerTwoTable{
    {2, {2, 3, 3, 1, 1}},
    {3, {2, 3, 3, 2, 2, 1, 2, 1, 1}},
};

// (log2 |K P_i : P_i|, log2 |G : P_i|) with the index from the hand table and
// the orders from breadth-first closure.
inline std::pair<int, int> lower_two_ratio_oracle(const GroupContext& ctx, const Subgroup& p, int level,
                                                  const Subgroup& sub) {
  const auto& table = kLowerTwoTable.at(ctx.k());
  int den = 0;
  for (int j = 1; j < level; ++j) den += table.at(static_cast<std::size_t>(j - 1));
  auto both = gens_of(p);
  for (const auto& g : sub.basis()) both.push_back(g);
  return {bfs_log_order(ctx, both) - bfs_log_order(ctx, gens_of(p)), den};
}

// Largest level i such that the factor tables of a and b agree below i.
inline int agreeing_prefix(const SeriesTable& a, const SeriesTable& b) {
  int i = a.first_index;
  while (i <= a.last_index() && i <= b.last_index() &&
         a.factor_ranks[static_cast<std::size_t>(i - a.first_index)] ==
             b.factor_ranks[static_cast<std::size_t>(i - b.first_index)]) {
    ++i;
  }
  return i;
}

}  // namespace pro2::testing
