#include "pro2/spectra.hpp"

#include <algorithm>
#include <regex>
#include <set>
#include <stdexcept>

#include "pro2/errors.hpp"

namespace pro2 {

namespace {

Subgroup central_layer(const GroupContext& ctx) {
  std::vector<Element> gens{gen_ysq(ctx)};
  for (int d = 1; d <= ctx.nc(); ++d) gens.push_back(comm(gen_y(ctx), gen_y_conj(ctx, d)));
  return normal_closure(ctx, gens);
}

void check_mn(const GroupContext& ctx, const NamedSubgroupSpec& spec) {
  if (spec.m < 1 || spec.n < 0 || spec.n > 30 || spec.m > (1 << spec.n)) {
    throw PreconditionError("need 1 <= m <= 2^n, got m = " + std::to_string(spec.m) + ", n = " + std::to_string(spec.n));
  }
  if (ctx.k() < spec.n + 1) {
    throw PreconditionError("need k >= n + 1, got k = " + std::to_string(ctx.k()) + ", n = " + std::to_string(spec.n));
  }
}

std::vector<Element> y_conjugates_with_residues(const GroupContext& ctx, const std::vector<int>& residues, int n) {
  const int period = 1 << n;
  std::vector<Element> gens;
  for (int j = 0; j < ctx.ny(); ++j) {
    if (std::find(residues.begin(), residues.end(), j % period) != residues.end()) gens.push_back(gen_y_conj(ctx, j));
  }
  return gens;
}

}  // namespace

std::vector<int> symmetric_residues(int m, int n) {
  const int period = 1 << n;
  std::set<int> out;
  for (int t = 0; t < m; ++t) {
    out.insert(t % period);
    out.insert(((period - t) % period + period) % period);
  }
  return {out.begin(), out.end()};
}

NamedSubgroupSpec parse_named_subgroup(std::string_view text) {
  const std::string s(text);
  if (s == "Z") return {NamedSubgroupSpec::Name::Z, 0, 0};
  if (s == "Zk") return {NamedSubgroupSpec::Name::Zk, 0, 0};
  if (s == "H") return {NamedSubgroupSpec::Name::H, 0, 0};
  static const std::regex pattern(R"(\s*([KL])\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*)");
  std::smatch match;
  if (std::regex_match(s, match, pattern)) {
    const auto name = match[1] == "K" ? NamedSubgroupSpec::Name::K : NamedSubgroupSpec::Name::L;
    return {name, std::stoi(match[2]), std::stoi(match[3])};
  }
  throw std::invalid_argument("unknown subgroup '" + s + "' (expected Z, Zk, H, K(m,n) or L(m,n))");
}

std::string to_string(const NamedSubgroupSpec& spec) {
  switch (spec.name) {
    case NamedSubgroupSpec::Name::Z: return "Z";
    case NamedSubgroupSpec::Name::Zk: return "Zk";
    case NamedSubgroupSpec::Name::H: return "H";
    case NamedSubgroupSpec::Name::K: return "K(" + std::to_string(spec.m) + "," + std::to_string(spec.n) + ")";
    case NamedSubgroupSpec::Name::L: return "L(" + std::to_string(spec.m) + "," + std::to_string(spec.n) + ")";
  }
  return "?";
}

Subgroup build_named(const GroupContext& ctx, const NamedSubgroupSpec& spec) {
  switch (spec.name) {
    case NamedSubgroupSpec::Name::Z:
      return central_layer(ctx);
    case NamedSubgroupSpec::Name::Zk:
      return product_subgroup(central_layer(ctx), subgroup_closure(ctx, {pow(gen_x(ctx), ctx.ny())}));
    case NamedSubgroupSpec::Name::H:
      return product_subgroup(normal_closure(ctx, {gen_y(ctx)}), central_layer(ctx));
    case NamedSubgroupSpec::Name::K: {
      check_mn(ctx, spec);
      std::vector<int> residues;
      for (int t = 0; t < spec.m; ++t) residues.push_back(t);
      return subgroup_closure(ctx, y_conjugates_with_residues(ctx, residues, spec.n));
    }
    case NamedSubgroupSpec::Name::L: {
      check_mn(ctx, spec);
      const Subgroup base = subgroup_closure(ctx, y_conjugates_with_residues(ctx, symmetric_residues(spec.m, spec.n), spec.n));
      return product_subgroup(base, central_layer(ctx));
    }
  }
  throw std::invalid_argument("unknown named subgroup");
}

RatioPoint hdim_ratio(const SeriesTable& series, const Subgroup& k_sub, int level) {
  const Subgroup& s = series.term(level);
  const int den = s.context().log_order() - s.log_order();
  if (den == 0) {
    throw UndefinedRatio("series " + std::string(series_name(series.kind)) + " term " + std::to_string(level) +
                         " is the whole group");
  }
  const int num = product_subgroup(k_sub, s).log_order() - s.log_order();
  return {series.kind, series.k, level, num, den, Rational(num, den)};
}

RatioPoint hdim_ratio(const GroupContext& ctx, SeriesKind kind, const Subgroup& k_sub, int level, std::uint64_t cap) {
  return hdim_ratio(compute_series(ctx, kind, cap), k_sub, level);
}

std::vector<RatioPoint> spectrum_table(const SeriesTable& series, const Subgroup& k_sub) {
  std::vector<RatioPoint> out;
  const int top = series.terms.front().log_order();
  for (int i = series.first_index; i <= series.last_index(); ++i) {
    if (series.term(i).log_order() == top) continue;
    out.push_back(hdim_ratio(series, k_sub, i));
  }
  return out;
}

std::optional<Rational> limit_dimension(SeriesKind kind, NamedSubgroupSpec::Name name) {
  using N = NamedSubgroupSpec::Name;
  const bool z = name == N::Z || name == N::Zk;
  if (!z && name != N::H) return std::nullopt;
  switch (kind) {
    case SeriesKind::P:
    case SeriesKind::I:
    case SeriesKind::N:
    case SeriesKind::D:
    case SeriesKind::F:
      return z ? Rational(1, 3) : Rational(1);
    case SeriesKind::L:
      return z ? Rational(1, 5) : Rational(3, 5);
    default:
      return std::nullopt;
  }
}

SpectrumReport spectrum_check(const GroupContext& ctx, int m, int n) {
  const NamedSubgroupSpec kspec{NamedSubgroupSpec::Name::K, m, n};
  check_mn(ctx, kspec);
  SpectrumReport rep;
  rep.m = m;
  rep.n = n;
  rep.k = ctx.k();

  const Subgroup z = central_layer(ctx);
  const Subgroup k_sub = build_named(ctx, kspec);
  const Subgroup kz = intersection(k_sub, z);
  rep.kz_rank = kz.log_order();
  rep.z_rank = z.log_order();
  // once 2m - 1 > 2^n the residues cover everything and K contains Z
  rep.kz_rank_expected = std::min((2 * m - 1) * (1 << (ctx.k() - n - 1)) + 1, (1 << (ctx.k() - 1)) + 1);

  // D = { j : c_j in L P_(j+1) }, with c_j = [y, x, ..., x] (j-1 copies of x).
  const Subgroup l_sub = build_named(ctx, {NamedSubgroupSpec::Name::L, m, n});
  const SeriesTable lower2 = lower_2_series(ctx);
  auto lower2_term = [&](int i) -> const Subgroup& { return lower2.has_term(i) ? lower2.term(i) : lower2.terms.back(); };
  for (int j = 1; j < ctx.ny(); ++j) {
    if (product_subgroup(l_sub, lower2_term(j + 1)).contains(comm_yx(ctx, j))) rep.index_set.push_back(j);
  }
  const int period = 1 << n;
  const int window = std::max(2 * m - 1, period);
  for (int j : rep.index_set) {
    if (j <= window) rep.base_block.push_back(j);
  }
  for (int j = 1; j <= std::min(2 * m - 1, ctx.ny() - 1); ++j) rep.base_block_expected.push_back(j);
  rep.base_block_ok = rep.base_block == rep.base_block_expected;
  rep.periodic_ok = true;
  for (int j = 1; j < ctx.ny(); ++j) {
    const int r = ((j - 1) % period) + 1;
    const bool in_base = std::find(rep.index_set.begin(), rep.index_set.end(), r) != rep.index_set.end();
    const bool in_set = std::find(rep.index_set.begin(), rep.index_set.end(), j) != rep.index_set.end();
    if (in_base != in_set) rep.periodic_ok = false;
  }

  // (K∩Z)(P_i∩Z) : P_i∩Z against Z : P_i∩Z along the lower 2-series.
  for (int i = lower2.first_index; i <= lower2.last_index(); ++i) {
    const Subgroup pz = intersection(lower2.term(i), z);
    const int den = z.log_order() - pz.log_order();
    if (den == 0) continue;
    const int num = product_subgroup(kz, pz).log_order() - pz.log_order();
    rep.levels.push_back({i, num, den, Rational(num, den)});
  }
  rep.target = std::min(Rational(2 * m - 1, period), Rational(1));
  if (n >= 1 && (1 << (n - 1)) < m && m <= period) {
    rep.spectrum_point = Rational(3, 5) + Rational(m, 5LL * (1LL << (n - 1)));
  } else if (n == 0 && m == 1) {
    // 2^(n-1) = 1/2 < m = 1 <= 1
    rep.spectrum_point = Rational(3, 5) + Rational(2 * m, 5);
  }
  return rep;
}

}  // namespace pro2
