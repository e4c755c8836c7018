#pragma once

#include <boost/rational.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pro2/series.hpp"
#include "pro2/subgroup.hpp"

namespace pro2 {

using Rational = boost::rational<long long>;

/// Z, Zk = Z <x^(2^k)>, H, and the spectrum subgroups K(m, n), L(m, n).
struct NamedSubgroupSpec {
  enum class Name { Z, Zk, H, K, L };
  Name name = Name::Z;
  int m = 0;
  int n = 0;
};

/// "Z", "Zk", "H", "K(m,n)", "L(m,n)".  Throws std::invalid_argument.
NamedSubgroupSpec parse_named_subgroup(std::string_view text);
std::string to_string(const NamedSubgroupSpec& spec);

/// Throws PreconditionError unless 1 <= m <= 2^n and k >= n + 1 (for K and L).
Subgroup build_named(const GroupContext& ctx, const NamedSubgroupSpec& spec);

struct RatioPoint {
  SeriesKind kind;
  int k;
  int level;
  /// log2 |K S_i : S_i|
  int log_sub_index;
  /// log2 |G_k : S_i|
  int log_group_index;
  Rational value;
};

/// Throws UndefinedRatio when S_i = G_k.
RatioPoint hdim_ratio(const SeriesTable& series, const Subgroup& k_sub, int level);
RatioPoint hdim_ratio(const GroupContext& ctx, SeriesKind kind, const Subgroup& k_sub, int level,
                      std::uint64_t cap = default_enumeration_cap());

/// Ratios at every level of the series where the index is nontrivial.
std::vector<RatioPoint> spectrum_table(const SeriesTable& series, const Subgroup& k_sub);

/// Limit value of the ratio for the anchor subgroups Z and H, where known.
std::optional<Rational> limit_dimension(SeriesKind kind, NamedSubgroupSpec::Name name);

struct SpectrumReport {
  int m = 0;
  int n = 0;
  int k = 0;
  /// rank of (K ∩ Z) and the closed form min((2m-1) 2^(k-n-1) + 1, rank Z)
  int kz_rank = 0;
  int kz_rank_expected = 0;
  /// rank of Z (image of the central kernel, without x^(2^k))
  int z_rank = 0;
  /// D ∩ [1, 2^k): indices j with c_j in L P_(j+1)(G_k)
  std::vector<int> index_set;
  /// D ∩ [1, max(2m-1, 2^n)], expected to be {1, ..., 2m-1}
  std::vector<int> base_block;
  std::vector<int> base_block_expected;
  bool base_block_ok = false;
  /// j in D iff its residue in [1, 2^n] is, for j < 2^k
  bool periodic_ok = false;
  /// (level i, log2 |(K∩Z)(P_i∩Z) : P_i∩Z|, log2 |Z : P_i∩Z|)
  struct Level {
    int i;
    int num;
    int den;
    Rational value;
  };
  std::vector<Level> levels;
  /// min((2m-1)/2^n, 1)
  Rational target;
  /// 3/5 + m/(5 * 2^(n-1)), present when 2^(n-1) < m <= 2^n
  std::optional<Rational> spectrum_point;

  bool rank_ok() const { return kz_rank == kz_rank_expected; }
};

/// Requires k >= n + 1 and 1 <= m <= 2^n.
SpectrumReport spectrum_check(const GroupContext& ctx, int m, int n);

/// Residues {0, ±1, ..., ±(m-1)} mod 2^n.
std::vector<int> symmetric_residues(int m, int n);

}  // namespace pro2
