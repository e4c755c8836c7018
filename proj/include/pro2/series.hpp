#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pro2/subgroup.hpp"

namespace pro2 {

enum class SeriesKind {
  P,      // 2-power series G^(2^i), i >= 0
  I,      // iterated 2-power series I_0 = G, I_j = I_(j-1)^2
  L,      // lower 2-series P_1 = G, P_(i+1) = [P_i, G] P_i^2
  D,      // dimension subgroups (Jennings)
  F,      // Frattini series Phi_0 = G, Phi_(i+1) = Phi_i^2 [Phi_i, Phi_i]
  Gamma,  // lower central series
  R,      // images of R_i, i >= 1
  N,      // images of N_i = [R_i, F] R_i^2, N_0 = G
};

std::string_view series_name(SeriesKind kind);
/// Accepts the short names above plus "power", "iterated", "lower2",
/// "dimension", "frattini", "gamma"/"lcs".  Throws std::invalid_argument.
SeriesKind parse_series_kind(std::string_view name);
/// Index of the first term (0 for P, I, F, N; 1 otherwise).
int series_first_index(SeriesKind kind);

struct SeriesTable {
  SeriesKind kind;
  int k;
  int first_index;
  std::vector<Subgroup> terms;
  /// factor_ranks[j] = log2 |terms[j] : terms[j+1]|
  std::vector<int> factor_ranks;
  /// Per term: agreement with the closed-form description (nullopt where
  /// there is none to compare against).
  std::vector<std::optional<bool>> closed_form_match;

  int last_index() const { return first_index + static_cast<int>(terms.size()) - 1; }
  bool has_term(int i) const { return i >= first_index && i <= last_index(); }
  const Subgroup& term(int i) const;
  /// Number of nontrivial terms.
  int length() const;
  bool ends_trivial() const { return !terms.empty() && terms.back().is_trivial(); }
  bool descending() const;
  bool all_closed_forms_match() const;
};

SeriesTable lower_central_series(const GroupContext& ctx);
SeriesTable lower_2_series(const GroupContext& ctx);
SeriesTable dimension_series(const GroupContext& ctx, std::uint64_t cap = default_enumeration_cap());
SeriesTable frattini_series(const GroupContext& ctx);
SeriesTable power_series(const GroupContext& ctx, std::uint64_t cap = default_enumeration_cap());
SeriesTable iterated_power_series(const GroupContext& ctx, std::uint64_t cap = default_enumeration_cap());
/// R_1..R_k and N_0..N_k.
std::pair<SeriesTable, SeriesTable> rn_series(const GroupContext& ctx, std::uint64_t cap = default_enumeration_cap());

SeriesTable compute_series(const GroupContext& ctx, SeriesKind kind, std::uint64_t cap = default_enumeration_cap());

/// Z_k = <x^(2^k), y^2, [y_0, y_d] : 1 <= d <= 2^(k-1)>.
Subgroup z_k(const GroupContext& ctx);

/// gamma_m(G_k) ∩ Z_k for 2 <= m <= 2^k.
Subgroup gamma_cap_z(const GroupContext& ctx, int m);
/// Expected rank of gamma_m ∩ Z_k: ceil(2^(k-1) - m/2 + 1).
int gamma_cap_z_rank(int k, int m);

/// log2 of the i-th factor as given by the structure results for G_k;
/// nullopt when no closed form is stated (P, I, R, N).
std::optional<int> expected_factor_rank(SeriesKind kind, int k, int i);

/// Closed-form generators of individual terms.
/// <x^(2^(i-1))> gamma_i for the lower 2-series, i >= 3.
Subgroup lower_2_closed_form(const GroupContext& ctx, int i, const SeriesTable& gamma);
/// <x^(2^i), [y,x,...(2^i - 3)...,x,y]> gamma_(2^i) for the Frattini series, 2 <= i <= k.
Subgroup frattini_closed_form(const GroupContext& ctx, int i, const SeriesTable& gamma);
/// <x^(2^k), w, [w, x]>.
Subgroup top_power_closed_form(const GroupContext& ctx);

/// ceil(log2 i) for i >= 1.
int ceil_log2(int i);

}  // namespace pro2
