#include <CLI11.hpp>
#include <cstdio>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pro2/errors.hpp"
#include "pro2/spectra.hpp"
#include "pro2/wreath.hpp"

using namespace pro2;
using nlohmann::ordered_json;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kCapacity = 3 };

constexpr std::uint64_t kMinCap = std::uint64_t{1} << 10;

struct Options {
  int k = 2;
  std::vector<int> ks;
  std::string kind = "L";
  std::string subgroup = "Z";
  std::optional<int> level;
  std::string format = "csv";
  bool large = false;
};

std::string ratio_str(const Rational& r) { return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator()); }

std::string csv_bool(const std::optional<bool>& b) { return b ? (*b ? "true" : "false") : ""; }

ordered_json json_bool(const std::optional<bool>& b) { return b ? ordered_json(*b) : ordered_json(nullptr); }

int run_series(const Options& o, std::uint64_t cap) {
  const GroupContext ctx(o.k);
  const SeriesTable t = compute_series(ctx, parse_series_kind(o.kind), cap);
  ordered_json rows = ordered_json::array();
  if (o.format == "csv") std::cout << "i,log2_order,factor_rank,closed_form_match\n";
  for (int i = t.first_index; i <= t.last_index(); ++i) {
    const std::size_t j = static_cast<std::size_t>(i - t.first_index);
    const bool has_factor = j < t.factor_ranks.size();
    // the trailing trivial term carries no factor
    if (!has_factor && t.term(i).is_trivial()) break;
    const auto match = t.closed_form_match[j];
    if (o.format == "csv") {
      std::cout << i << ',' << t.term(i).log_order() << ',' << (has_factor ? std::to_string(t.factor_ranks[j]) : "") << ','
                << csv_bool(match) << '\n';
    } else {
      rows.push_back({{"i", i},
                      {"log2_order", t.term(i).log_order()},
                      {"factor_rank", has_factor ? ordered_json(t.factor_ranks[j]) : ordered_json(nullptr)},
                      {"closed_form_match", json_bool(match)}});
    }
  }
  if (o.format == "json") {
    std::cout << ordered_json{{"k", o.k}, {"series", std::string(series_name(t.kind))}, {"rows", rows}}.dump(2) << '\n';
  }
  return kPass;
}

int run_hdim(const Options& o, std::uint64_t cap) {
  const GroupContext ctx(o.k);
  const SeriesKind kind = parse_series_kind(o.kind);
  const NamedSubgroupSpec spec = parse_named_subgroup(o.subgroup);
  const Subgroup sub = build_named(ctx, spec);
  const SeriesTable t = compute_series(ctx, kind, cap);
  std::vector<RatioPoint> points;
  if (o.level) {
    points.push_back(hdim_ratio(t, sub, *o.level));
  } else {
    points = spectrum_table(t, sub);
  }
  const std::string name(series_name(kind));
  if (o.format == "csv") {
    std::cout << "k,series,subgroup,i,log2_sub_index,log2_group_index,ratio_num,ratio_den,ratio\n";
    for (const auto& p : points) {
      std::cout << p.k << ',' << name << ',' << to_string(spec) << ',' << p.level << ',' << p.log_sub_index << ','
                << p.log_group_index << ',' << p.value.numerator() << ',' << p.value.denominator() << ','
                << ratio_str(p.value) << '\n';
    }
    return kPass;
  }
  ordered_json rows = ordered_json::array();
  for (const auto& p : points) {
    rows.push_back({{"i", p.level},
                    {"log2_sub_index", p.log_sub_index},
                    {"log2_group_index", p.log_group_index},
                    {"num", p.value.numerator()},
                    {"den", p.value.denominator()},
                    {"ratio", ratio_str(p.value)}});
  }
  std::cout << ordered_json{{"k", o.k}, {"series", name}, {"subgroup", to_string(spec)}, {"rows", rows}}.dump(2) << '\n';
  return kPass;
}

struct Reporter {
  int failed = 0;
  void line(int k, const std::string& name, bool ok, const std::string& detail = "") {
    failed += ok ? 0 : 1;
    std::cout << "k=" << k << ' ' << name << ": " << (ok ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << " (" << detail << ')';
    std::cout << '\n';
  }
  void skip(int k, const std::string& name, const std::string& why) {
    std::cout << "k=" << k << ' ' << name << ": SKIP (" << why << ")\n";
  }
};

const Subgroup& term_or_last(const SeriesTable& t, int i) { return t.has_term(i) ? t.term(i) : t.terms.back(); }

bool ranks_match(const SeriesTable& t) {
  for (int i = t.first_index; i < t.first_index + static_cast<int>(t.factor_ranks.size()); ++i) {
    const auto want = expected_factor_rank(t.kind, t.k, i);
    if (want && *want != t.factor_ranks[static_cast<std::size_t>(i - t.first_index)]) return false;
  }
  return true;
}

void verify_level(int k, std::uint64_t cap, Reporter& r) {
  const GroupContext ctx(k);
  const Element x = gen_x(ctx);
  const Element y = gen_y(ctx);
  const Element w = gen_w(ctx);
  const bool enumerable = k <= 3;
  const std::string too_big = "needs enumeration of G_" + std::to_string(k);

  r.line(k, "log order 2^k+2^(k-1)+k+2", subgroup_closure(ctx, {x, y}).log_order() == (1 << k) + (1 << (k - 1)) + k + 2);

  bool rel = true;
  for (const auto& q : relator_check(ctx)) rel = rel && q.ok();
  r.line(k, "defining relators hold, x^(2^k) nontrivial", rel);

  const Element half = gen_central(ctx, ctx.nc());
  r.line(k, "w has order 2 and [w,x] = [w,y] = [y_0,y_(2^(k-1))]",
         element_order(w) == 2 && comm(w, x) == half && comm(w, y) == half);
  r.line(k, "w = x^(-2^k) (xy)^(2^k)", mul(pow(x, -ctx.ny()), pow(mul(x, y), ctx.ny())) == w);

  const SeriesTable gamma = lower_central_series(ctx);
  r.line(k, "class 2^k+1 with the stated factors", gamma.length() == ctx.ny() + 1 && ranks_match(gamma));

  if (enumerable) {
    long long top = 1;
    for_each_element(gamma.term(2), [&](const Element& g) { top = std::max(top, element_order(g)); }, cap);
    r.line(k, "gamma_2 has exponent 4", top == 4);
  } else {
    r.line(k, "[y,x] has order 4", element_order(comm(y, x)) == 4);
  }

  bool nu = true;
  for (int m = 2; m <= ctx.ny(); ++m) nu = nu && gamma_cap_z(ctx, m).log_order() == gamma_cap_z_rank(k, m);
  r.line(k, "gamma_m ∩ Z_k has rank nu(m)", nu);

  const Subgroup h = normal_closure(ctx, {y});
  const Subgroup hh = commutator_subgroup(h, h);
  bool sq = true;
  for (int i = 1; i < ctx.ny(); ++i) {
    const Element s = pow(comm_left(y, x, i), 2);
    sq = sq && hh.contains(s) && term_or_last(gamma, 2 * i + 1).contains(s) &&
         term_or_last(gamma, 2 * i + 2).contains(mul(inv(s), comm_yxy(ctx, 2 * i + 1)));
  }
  r.line(k, "squared commutators", sq);

  bool cc = true;
  for (int i = 2; i <= ctx.ny(); ++i) {
    for (int j = 1; j < i; ++j) {
      const Element c = comm(comm_yx(ctx, i), comm_yx(ctx, j));
      cc = cc && term_or_last(gamma, i + j + 1).contains(mul(inv(c), comm_yxy(ctx, i + j)));
    }
  }
  r.line(k, "[c_i,c_j] = z_(i+j) mod gamma_(i+j+1)", cc);

  const SeriesTable l = lower_2_series(ctx);
  r.line(k, "lower 2-series: length 2^k+1, closed form, factors",
         l.length() == ctx.ny() + 1 && l.all_closed_forms_match() && ranks_match(l));

  const SeriesTable f = frattini_series(ctx);
  r.line(k, "Frattini series: length k+1, closed form, factors",
         f.length() == k + 1 && f.all_closed_forms_match() && ranks_match(f));

  const SeriesTable d = dimension_series(ctx, cap);
  bool d_closed = true;
  bool d_checked = true;
  for (const auto& m : d.closed_form_match) {
    d_closed = d_closed && m.value_or(true);
    d_checked = d_checked && m.has_value();
  }
  r.line(k, "dimension series: length 2^k+2, factors", d.length() == ctx.ny() + 2 && ranks_match(d));
  if (d_checked) {
    r.line(k, "dimension series: recursion = closed form", d_closed);
  } else {
    r.skip(k, "dimension series: recursion = closed form", too_big);
  }
  bool plus_one = true;
  for (int i = ctx.ny() / 2 + 1; i <= ctx.ny(); ++i) {
    plus_one = plus_one && d.term(i).log_order() == gamma.term(i).log_order() + (i == ctx.ny() ? 2 : 1);
  }
  r.line(k, "log|D_i| = log|gamma_i| + 1 (+2 at i = 2^k) for 2^(k-1) < i <= 2^k", plus_one);

  bool key = true;
  for (int n = 0; n < k; ++n) {
    for (int m = 1; m <= (1 << n); ++m) {
      const SpectrumReport q = spectrum_check(ctx, m, n);
      key = key && q.rank_ok() && q.base_block_ok && q.periodic_ok;
    }
  }
  r.line(k, "K ∩ Z ranks and index sets", key);

  bool coll = true;
  for (int q = 1; q <= k + 1; ++q) coll = coll && collection_identity_check(ctx, x, y, q).ok();
  r.line(k, "collection identities for (x, y)", coll);

  if (!enumerable) {
    for (const char* name : {"G^(2^k) = <x^(2^k), w, [w,x]>", "containment chain", "P = I up to level k", "N_i <= G^(2^i) with gap <= 4"}) {
      r.skip(k, name, too_big);
    }
    return;
  }
  const Subgroup g = whole_group(ctx);
  const Subgroup top = power_subgroup(g, 1LL << k, cap);
  r.line(k, "G^(2^k) = <x^(2^k), w, [w,x]>", top == top_power_closed_form(ctx) && top.log_order() == 3);

  bool chain = true;
  for (int j = 2; j <= k; ++j) {
    const int q = 1 << j;
    const Subgroup pj = power_subgroup(g, q, cap);
    chain = chain && product_subgroup(subgroup_closure(ctx, {pow(x, q), comm_yxy(ctx, q - 1)}), term_or_last(gamma, q)).contains(pj) &&
            product_subgroup(subgroup_closure(ctx, {pow(x, q)}), term_or_last(gamma, q - 1)).contains(pj);
  }
  r.line(k, "containment chain", chain);

  const SeriesTable p = power_series(ctx, cap);
  const SeriesTable it = iterated_power_series(ctx, cap);
  std::string where;
  for (int j = 0; j <= k; ++j) {
    if (!(term_or_last(p, j) == term_or_last(it, j))) where += (where.empty() ? "differs at " : ",") + std::to_string(j);
  }
  r.line(k, "P = I up to level k", where.empty(), where);

  const auto [rs, ns] = rn_series(ctx, cap);
  r.line(k, "N_i <= G^(2^i) with gap <= 4", ns.all_closed_forms_match());
}

int run_verify(const Options& o, std::uint64_t cap) {
  std::vector<int> ks = o.ks;
  if (ks.empty()) ks = {2, 3};
  for (int k : ks) {
    if (k >= 4 && !o.large) throw CLI::ValidationError("--k", "k >= 4 needs --large");
  }
  Reporter r;
  for (int k : ks) verify_level(k, cap, r);
  std::cout << r.failed << " failed\n";
  return r.failed == 0 ? kPass : kFail;
}

int run_oracle(const Options& o) {
  const GroupContext ctx(o.k);
  Reporter r;
  const std::vector<Element> gens{gen_x(ctx), gen_y(ctx)};
  const BfsResult all = bfs_closure(ctx, gens);
  r.line(o.k, "BFS closure of {x, y}", all.count == (std::uint64_t{1} << ctx.log_order()),
         std::to_string(all.count) + " elements");
  bool rel = true;
  for (const auto& q : relator_check(ctx)) {
    rel = rel && q.ok();
    if (!q.ok()) std::cerr << "relator " << q.name << " misbehaves\n";
  }
  r.line(o.k, "relators", rel);
  std::set<std::pair<std::uint32_t, std::uint64_t>> image;
  std::uint64_t kernel = 0;
  const Subgroup zk = z_k(ctx);
  bool in_zk = true;
  for (auto c : all.elements) {
    const Element g = Element::from_coords(ctx, c);
    const WreathElement w = project(g);
    image.insert({w.shift(), w.base()});
    if (w.is_identity()) {
      ++kernel;
      in_zk = in_zk && zk.contains(g);
    }
  }
  r.line(o.k, "projection image is W_k", image.size() == (std::uint64_t{1} << wreath_log_order(o.k)),
         std::to_string(image.size()) + " elements");
  r.line(o.k, "projection kernel is Z_k", in_zk && kernel == (std::uint64_t{1} << zk.log_order()),
         std::to_string(kernel) + " elements");
  return r.failed == 0 ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in the finite quotients G_k"};
  app.require_subcommand(1);
  Options o;
  std::optional<std::uint64_t> cap_flag;

  auto add_k = [&](CLI::App* c) { c->add_option("--k", o.k, "level k")->check(CLI::Range(kMinLevel, kMaxLevel)); };
  auto add_cap = [&](CLI::App* c) { c->add_option("--cap", cap_flag, "enumeration cap (default 2^22 or PRO2_CAP)"); };
  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* verify = app.add_subcommand("verify", "run the lemma suite");
  verify->add_option("--k", o.ks, "levels (default 2 and 3)")->check(CLI::Range(kMinLevel, kMaxLevel));
  verify->add_flag("--large", o.large, "allow k >= 4 (power-series checks are skipped)");
  add_cap(verify);

  auto* series = app.add_subcommand("series", "print a filtration series");
  add_k(series);
  series->add_option("--kind,--series", o.kind, "P, I, L, D, F, gamma, R or N");
  add_format(series);
  add_cap(series);

  auto* hdim = app.add_subcommand("hdim", "print index ratios of a subgroup along a series");
  add_k(hdim);
  hdim->add_option("--series,--kind", o.kind, "P, I, L, D, F, gamma, R or N");
  hdim->add_option("--subgroup", o.subgroup, "Z, Zk, H, K(m,n) or L(m,n)");
  hdim->add_option("--level", o.level, "single level (default: every level)");
  add_format(hdim);
  add_cap(hdim);

  auto* oracle = app.add_subcommand("oracle", "breadth-first, relator and projection checks");
  add_k(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    const std::uint64_t cap = cap_flag.value_or(default_enumeration_cap());
    if (cap < kMinCap) throw CLI::ValidationError("--cap", "cap must be at least 1024");
    if (*verify) return run_verify(o, cap);
    if (*series) return run_series(o, cap);
    if (*hdim) return run_hdim(o, cap);
    return run_oracle(o);
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << '\n';
    return kCapacity;
  } catch (const CLI::Error& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const UndefinedRatio& e) {
    std::cerr << "undefined: " << e.what() << '\n';
    return kUsage;
  }
}
