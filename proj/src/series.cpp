#include "pro2/series.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "pro2/errors.hpp"

namespace pro2 {

namespace {

// Terms are computed until the trivial subgroup appears; no series of G_k is
// longer than log|G_k| + a few repeated terms.
int term_limit(const GroupContext& ctx) { return 2 * ctx.log_order() + 4; }

SeriesTable make_table(SeriesKind kind, const GroupContext& ctx, std::vector<Subgroup> terms) {
  SeriesTable t{kind, ctx.k(), series_first_index(kind), std::move(terms), {}, {}};
  for (std::size_t j = 0; j + 1 < t.terms.size(); ++j) {
    t.factor_ranks.push_back(t.terms[j].log_order() - t.terms[j + 1].log_order());
  }
  t.closed_form_match.assign(t.terms.size(), std::nullopt);
  return t;
}

// Factor-rank agreement with the structure tables, for every term that has
// both a successor and a stated closed form.
void match_factor_table(SeriesTable& t) {
  for (std::size_t j = 0; j < t.factor_ranks.size(); ++j) {
    const int i = t.first_index + static_cast<int>(j);
    if (auto want = expected_factor_rank(t.kind, t.k, i)) {
      const bool ok = *want == t.factor_ranks[j];
      t.closed_form_match[j] = t.closed_form_match[j].value_or(true) && ok;
    }
  }
}

void record(SeriesTable& t, int i, bool ok) {
  auto& slot = t.closed_form_match[static_cast<std::size_t>(i - t.first_index)];
  slot = slot.value_or(true) && ok;
}

Element x_power(const GroupContext& ctx, long long e) { return pow(gen_x(ctx), e); }

}  // namespace

std::string_view series_name(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::P: return "P";
    case SeriesKind::I: return "I";
    case SeriesKind::L: return "L";
    case SeriesKind::D: return "D";
    case SeriesKind::F: return "F";
    case SeriesKind::Gamma: return "Gamma";
    case SeriesKind::R: return "R";
    case SeriesKind::N: return "N";
  }
  return "?";
}

SeriesKind parse_series_kind(std::string_view name) {
  static const std::map<std::string, SeriesKind, std::less<>> names = {
      {"P", SeriesKind::P},         {"power", SeriesKind::P},       {"I", SeriesKind::I},
      {"iterated", SeriesKind::I},  {"L", SeriesKind::L},           {"lower2", SeriesKind::L},
      {"lower-2", SeriesKind::L},   {"D", SeriesKind::D},           {"dimension", SeriesKind::D},
      {"F", SeriesKind::F},         {"frattini", SeriesKind::F},    {"Gamma", SeriesKind::Gamma},
      {"gamma", SeriesKind::Gamma}, {"lcs", SeriesKind::Gamma},     {"R", SeriesKind::R},
      {"N", SeriesKind::N},
  };
  if (auto it = names.find(name); it != names.end()) return it->second;
  throw std::invalid_argument("unknown series kind '" + std::string(name) + "'");
}

int series_first_index(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::P:
    case SeriesKind::I:
    case SeriesKind::F:
    case SeriesKind::N:
      return 0;
    default:
      return 1;
  }
}

const Subgroup& SeriesTable::term(int i) const {
  if (!has_term(i)) {
    throw std::out_of_range("series " + std::string(series_name(kind)) + " has no term " + std::to_string(i));
  }
  return terms[static_cast<std::size_t>(i - first_index)];
}

int SeriesTable::length() const {
  return static_cast<int>(std::count_if(terms.begin(), terms.end(), [](const Subgroup& s) { return !s.is_trivial(); }));
}

bool SeriesTable::descending() const {
  for (std::size_t j = 0; j + 1 < terms.size(); ++j) {
    if (!terms[j].contains(terms[j + 1])) return false;
  }
  return true;
}

bool SeriesTable::all_closed_forms_match() const {
  return std::all_of(closed_form_match.begin(), closed_form_match.end(),
                     [](const std::optional<bool>& m) { return m.value_or(true); });
}

int ceil_log2(int i) {
  if (i < 1) throw std::out_of_range("ceil_log2 needs i >= 1");
  int l = 0;
  while ((1 << l) < i) ++l;
  return l;
}

std::optional<int> expected_factor_rank(SeriesKind kind, int k, int i) {
  const int n = 1 << k;
  switch (kind) {
    case SeriesKind::Gamma:
      if (i == 1) return k + 3;
      if (i < 2 || i > n + 1) return std::nullopt;
      if (i % 2 == 0) return 1;
      return (i - 1) / 2 == n / 2 ? 1 : 2;
    case SeriesKind::L:
      if (i == 1) return 2;
      if (i == 2) return 3;
      if (i < 3 || i > n + 1) return std::nullopt;
      if (i == n + 1) return 1;
      if (i <= k + 1) return i % 2 == 0 ? 2 : 3;
      return i % 2 == 0 ? 1 : 2;
    case SeriesKind::D:
      if (i == 1) return 2;
      if (i == 2) return 3;
      if (i < 3 || i > n + 2) return std::nullopt;
      if (i == n + 1) return 0;
      if (i == n + 2) return 1;
      if ((i & (i - 1)) == 0) return 3;
      return i % 2 == 1 ? 1 : 2;
    case SeriesKind::F:
      if (i == 0) return 2;
      if (i == 1) return 4;
      if (i == k) return 4;
      if (i >= 2 && i < k) return (1 << i) + (1 << (i - 1)) + 1;
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

Subgroup z_k(const GroupContext& ctx) {
  std::vector<Element> gens{x_power(ctx, ctx.ny()), gen_ysq(ctx)};
  for (int d = 1; d <= ctx.nc(); ++d) gens.push_back(comm(gen_y(ctx), gen_y_conj(ctx, d)));
  return normal_closure(ctx, gens);
}

SeriesTable lower_central_series(const GroupContext& ctx) {
  const Subgroup g = whole_group(ctx);
  std::vector<Subgroup> terms{g};
  while (!terms.back().is_trivial() && static_cast<int>(terms.size()) < term_limit(ctx)) {
    terms.push_back(commutator_subgroup(terms.back(), g));
  }
  SeriesTable t = make_table(SeriesKind::Gamma, ctx, std::move(terms));
  match_factor_table(t);
  return t;
}

Subgroup lower_2_closed_form(const GroupContext& ctx, int i, const SeriesTable& gamma) {
  const Subgroup& gi = gamma.has_term(i) ? gamma.term(i) : gamma.terms.back();
  return product_subgroup(subgroup_closure(ctx, {x_power(ctx, 1LL << (i - 1))}), gi);
}

SeriesTable lower_2_series(const GroupContext& ctx) {
  const Subgroup g = whole_group(ctx);
  std::vector<Subgroup> terms{g};
  while (!terms.back().is_trivial() && static_cast<int>(terms.size()) < term_limit(ctx)) {
    const Subgroup& p = terms.back();
    terms.push_back(squares_over(p, commutator_subgroup(p, g)));
  }
  SeriesTable t = make_table(SeriesKind::L, ctx, std::move(terms));
  const SeriesTable gamma = lower_central_series(ctx);
  for (int i = 3; i <= t.last_index(); ++i) record(t, i, t.term(i) == lower_2_closed_form(ctx, i, gamma));
  match_factor_table(t);
  return t;
}

SeriesTable dimension_series(const GroupContext& ctx, std::uint64_t cap) {
  const Subgroup g = whole_group(ctx);
  const SeriesTable gamma = lower_central_series(ctx);
  auto gamma_term = [&](int i) -> const Subgroup& { return gamma.has_term(i) ? gamma.term(i) : gamma.terms.back(); };

  // D_i = D_ceil(i/2)^2 * prod_{0<j<i} [D_j, D_(i-j)]
  std::vector<Subgroup> terms{g};
  while (!terms.back().is_trivial() && static_cast<int>(terms.size()) < term_limit(ctx)) {
    const int i = static_cast<int>(terms.size()) + 1;
    const int half = (i + 1) / 2;
    // the j = half commutator already contains [D_half, D_half]
    ClosureBuilder cb(ctx, false);
    for (int j = 1; j <= i / 2; ++j) {
      cb.add_all(commutator_subgroup(terms[static_cast<std::size_t>(j - 1)], terms[static_cast<std::size_t>(i - j - 1)]).basis());
    }
    terms.push_back(squares_over(terms[static_cast<std::size_t>(half - 1)], std::move(cb).take()));
  }
  SeriesTable t = make_table(SeriesKind::D, ctx, std::move(terms));

  // Closed form G^(2^l(i)) gamma_ceil(i/2)^2 gamma_i.
  std::map<int, Subgroup> g_powers;
  std::map<int, Subgroup> gamma_squares;
  for (int i = 1; i <= t.last_index(); ++i) try {
    const int l = ceil_log2(i);
    auto gp = g_powers.find(l);
    if (gp == g_powers.end()) gp = g_powers.emplace(l, power_subgroup(g, 1LL << l, cap)).first;
    const int half = (i + 1) / 2;
    auto gs = gamma_squares.find(half);
    if (gs == gamma_squares.end()) gs = gamma_squares.emplace(half, power_subgroup(gamma_term(half), 2, cap)).first;
    record(t, i, t.term(i) == product_subgroup({gp->second, gs->second, gamma_term(i)}));
  } catch (const CapacityError&) {
    break;  // closed form left unchecked from here on
  }
  match_factor_table(t);
  return t;
}

Subgroup frattini_closed_form(const GroupContext& ctx, int i, const SeriesTable& gamma) {
  const int top = 1 << i;
  const Subgroup& gi = gamma.has_term(top) ? gamma.term(top) : gamma.terms.back();
  return product_subgroup(subgroup_closure(ctx, {x_power(ctx, top), comm_yxy(ctx, top - 1)}), gi);
}

SeriesTable frattini_series(const GroupContext& ctx) {
  std::vector<Subgroup> terms{whole_group(ctx)};
  while (!terms.back().is_trivial() && static_cast<int>(terms.size()) < term_limit(ctx)) {
    const Subgroup& f = terms.back();
    terms.push_back(squares_over(f, commutator_subgroup(f, f)));
  }
  SeriesTable t = make_table(SeriesKind::F, ctx, std::move(terms));
  const SeriesTable gamma = lower_central_series(ctx);
  for (int i = 2; i <= std::min(ctx.k(), t.last_index()); ++i) {
    record(t, i, t.term(i) == frattini_closed_form(ctx, i, gamma));
  }
  match_factor_table(t);
  return t;
}

Subgroup top_power_closed_form(const GroupContext& ctx) {
  const Element w = gen_w(ctx);
  return subgroup_closure(ctx, {x_power(ctx, ctx.ny()), w, comm(w, gen_x(ctx))});
}

namespace {

std::vector<Subgroup> power_terms(const GroupContext& ctx, std::uint64_t cap) {
  const Subgroup g = whole_group(ctx);
  std::vector<Subgroup> terms{g};
  for (long long q = 2; !terms.back().is_trivial(); q *= 2) terms.push_back(power_subgroup(g, q, cap));
  return terms;
}

std::vector<Subgroup> iterated_terms(const GroupContext& ctx, std::uint64_t cap) {
  std::vector<Subgroup> terms{whole_group(ctx)};
  while (!terms.back().is_trivial()) terms.push_back(power_subgroup(terms.back(), 2, cap));
  return terms;
}

}  // namespace

SeriesTable power_series(const GroupContext& ctx, std::uint64_t cap) {
  SeriesTable t = make_table(SeriesKind::P, ctx, power_terms(ctx, cap));
  const std::vector<Subgroup> iterated = iterated_terms(ctx, cap);
  for (int i = 0; i <= t.last_index(); ++i) {
    const auto j = static_cast<std::size_t>(i);
    record(t, i, j < iterated.size() && t.terms[j] == iterated[j]);
  }
  if (t.has_term(ctx.k())) record(t, ctx.k(), t.term(ctx.k()) == top_power_closed_form(ctx));
  return t;
}

SeriesTable iterated_power_series(const GroupContext& ctx, std::uint64_t cap) {
  SeriesTable t = make_table(SeriesKind::I, ctx, iterated_terms(ctx, cap));
  const std::vector<Subgroup> powers = power_terms(ctx, cap);
  for (int i = 0; i <= t.last_index(); ++i) {
    const auto j = static_cast<std::size_t>(i);
    record(t, i, j < powers.size() && t.terms[j] == powers[j]);
  }
  return t;
}

std::pair<SeriesTable, SeriesTable> rn_series(const GroupContext& ctx, std::uint64_t cap) {
  const Subgroup g = whole_group(ctx);
  std::vector<Subgroup> r_terms;
  std::vector<Subgroup> n_terms{g};
  for (int i = 1; i <= ctx.k(); ++i) {
    std::vector<Element> gens{x_power(ctx, 1LL << i), gen_ysq(ctx)};
    for (int j = 1; j <= (1 << (i - 1)); ++j) gens.push_back(comm(gen_y(ctx), gen_y_conj(ctx, j)));
    Subgroup r = normal_closure(ctx, gens);
    n_terms.push_back(squares_over(r, commutator_subgroup(r, g)));
    r_terms.push_back(std::move(r));
  }
  SeriesTable rt = make_table(SeriesKind::R, ctx, std::move(r_terms));
  SeriesTable nt = make_table(SeriesKind::N, ctx, std::move(n_terms));
  // N_i <= G^(2^i) with log2 |G^(2^i) : N_i| <= 4.
  const std::vector<Subgroup> powers = power_terms(ctx, cap);
  for (int i = 0; i <= nt.last_index(); ++i) {
    const Subgroup& p = powers[std::min(static_cast<std::size_t>(i), powers.size() - 1)];
    const Subgroup& ni = nt.term(i);
    record(nt, i, p.contains(ni) && p.log_order() - ni.log_order() <= 4);
  }
  return {std::move(rt), std::move(nt)};
}

SeriesTable compute_series(const GroupContext& ctx, SeriesKind kind, std::uint64_t cap) {
  switch (kind) {
    case SeriesKind::P: return power_series(ctx, cap);
    case SeriesKind::I: return iterated_power_series(ctx, cap);
    case SeriesKind::L: return lower_2_series(ctx);
    case SeriesKind::D: return dimension_series(ctx, cap);
    case SeriesKind::F: return frattini_series(ctx);
    case SeriesKind::Gamma: return lower_central_series(ctx);
    case SeriesKind::R: return rn_series(ctx, cap).first;
    case SeriesKind::N: return rn_series(ctx, cap).second;
  }
  throw std::invalid_argument("unknown series kind");
}

int gamma_cap_z_rank(int k, int m) {
  // ceil(2^(k-1) - m/2 + 1) = 2^(k-1) + 1 - floor(m/2)
  return (1 << (k - 1)) + 1 - m / 2;
}

Subgroup gamma_cap_z(const GroupContext& ctx, int m) {
  if (m < 2 || m > ctx.ny()) {
    throw std::out_of_range("gamma_cap_z: m = " + std::to_string(m) + " outside [2, " + std::to_string(ctx.ny()) + "]");
  }
  const SeriesTable gamma = lower_central_series(ctx);
  return intersection(gamma.term(m), z_k(ctx));
}

}  // namespace pro2
