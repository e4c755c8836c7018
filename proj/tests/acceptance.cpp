// One PASS/FAIL line per acceptance criterion.  All comparisons are exact;
// the only tolerances are the runtime budgets and the N-gap bound below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "naive_collector.hpp"
#include "oracles.hpp"
#include "pro2/spectra.hpp"
#include "pro2/wreath.hpp"

using namespace pro2;
using namespace pro2::testing;

namespace {

constexpr double kOrderOracleSeconds = 10.0;
constexpr double kSuiteSeconds = 300.0;
constexpr int kNGapBound = 4;
constexpr int kAssociativityTriples = 100000;
constexpr int kTriangularityPairs = 20000;

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note << " [failed: " << what << "]";
    }
  }
};

Subgroup named(const GroupContext& ctx, const char* s) { return build_named(ctx, parse_named_subgroup(s)); }

std::string str(const Rational& r) {
  std::ostringstream o;
  o << r.numerator() << "/" << r.denominator();
  return o.str();
}

void order_oracle(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const GroupContext g2(2);
  const std::vector<Element> gens2{gen_x(g2), gen_y(g2)};
  const auto bfs = bfs_closure(g2, gens2).count;
  o.check(bfs == 1024, "k=2 BFS count " + std::to_string(bfs));
  o.check(bfs == (std::uint64_t{1} << ((1 << 2) + (1 << 1) + 2 + 2)), "k=2 order formula");
  const GroupContext g3(3);
  const std::vector<Element> gens3{gen_x(g3), gen_y(g3)};
  const auto bfs3 = bfs_closure(g3, gens3).count;
  o.check(g3.log_order() == 17, "k=3 normal-form count");
  o.check(subgroup_closure(g3, gens3).log_order() == 17, "k=3 closure order");
  o.check(bfs3 == (std::uint64_t{1} << 17), "k=3 BFS count");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.check(secs < kOrderOracleSeconds, "runtime");
  o.note << " k=2: " << bfs << " elements; k=3: 2^17 = " << bfs3;
}

void relators(Outcome& o) {
  int n = 0;
  for (int k = 2; k <= 4; ++k) {
    for (const auto& r : relator_check(GroupContext(k))) {
      o.check(r.ok(), "k=" + std::to_string(k) + " " + r.name);
      ++n;
    }
  }
  o.note << " " << n << " relator evaluations at k=2,3,4";
}

void projection(Outcome& o) {
  const GroupContext ctx(2);
  const std::vector<Element> gens{gen_x(ctx), gen_y(ctx)};
  const auto all = bfs_closure(ctx, gens);
  std::set<std::pair<std::uint32_t, std::uint64_t>> image;
  std::vector<Element> kernel;
  for (auto c : all.elements) {
    const Element g = Element::from_coords(ctx, c);
    const WreathElement w = project(g);
    image.insert({w.shift(), w.base()});
    if (w.is_identity()) kernel.push_back(g);
  }
  const Subgroup zk = z_k(ctx);
  bool same = kernel.size() == (std::size_t{1} << zk.log_order());
  for (const auto& g : kernel) same = same && zk.contains(g);
  o.check(kernel.size() == 16, "kernel order " + std::to_string(kernel.size()));
  o.check(same, "kernel = Z_k");
  o.check(image.size() == 64 && wreath_log_order(2) == 6, "|W_2|");
  o.note << " |ker| = " << kernel.size() << ", |image| = " << image.size();
}

void top_power(Outcome& o) {
  for (int k = 2; k <= 3; ++k) {
    const GroupContext ctx(k);
    const Subgroup p = power_subgroup(whole_group(ctx), 1LL << k);
    const Subgroup c = subgroup_closure(ctx, {pow(gen_x(ctx), 1LL << k), gen_w(ctx), comm(gen_w(ctx), gen_x(ctx))});
    const std::string tag = "k=" + std::to_string(k);
    o.check(p.contains(c) && c.contains(p), tag + " two-sided containment");
    o.check(p.log_order() == 3, tag + " order");
    o.check(is_elementary_abelian(p), tag + " elementary abelian");
  }
  o.note << " G^(2^k) = <x^(2^k), w, [w,x]> = C2^3 at k=2,3";
}

void factor_tables(Outcome& o) {
  const GroupContext g2(2);
  const GroupContext g3(3);
  const auto gamma2 = lower_central_series(g2);
  const auto gamma3 = lower_central_series(g3);
  const auto l2 = lower_2_series(g2);
  const auto l3 = lower_2_series(g3);
  const auto d2 = dimension_series(g2);
  const auto d3 = dimension_series(g3);
  const auto f2 = frattini_series(g2);
  const auto f3 = frattini_series(g3);
  using V = std::vector<int>;
  o.check(gamma2.factor_ranks == V{5, 1, 2, 1, 1}, "gamma k=2");
  o.check(gamma3.factor_ranks == V{6, 1, 2, 1, 2, 1, 2, 1, 1}, "gamma k=3");
  o.check(l2.factor_ranks == V{2, 3, 3, 1, 1} && l2.length() == 5, "L k=2");
  o.check(l3.factor_ranks == V{2, 3, 3, 2, 2, 1, 2, 1, 1} && l3.length() == 9, "L k=3");
  o.check(l2.all_closed_forms_match() && l3.all_closed_forms_match(), "L closed form");
  o.check(d2.factor_ranks == V{2, 3, 1, 3, 0, 1} && d2.length() == 6, "D k=2");
  o.check(d3.factor_ranks == V{2, 3, 1, 3, 1, 2, 1, 3, 0, 1} && d3.length() == 10, "D k=3");
  for (const auto* d : {&d2, &d3}) {
    for (const auto& m : d->closed_form_match) o.check(m == true, "D recursion = closed form");
  }
  o.check(f2.factor_ranks == V{2, 4, 4} && f2.length() == 3, "F k=2");
  o.check(f3.factor_ranks == V{2, 4, 7, 4} && f3.length() == 4, "F k=3");
  o.check(f2.all_closed_forms_match() && f3.all_closed_forms_match(), "F closed form");
  o.note << " gamma, L, D, F tables at k=2,3";
}

void ratio_values(Outcome& o) {
  for (int k = 2; k <= 3; ++k) {
    const GroupContext ctx(k);
    const std::string tag = "k=" + std::to_string(k);
    const Subgroup z = named(ctx, "Z");
    const Subgroup h = named(ctx, "H");

    const RatioPoint zp = hdim_ratio(compute_series(ctx, SeriesKind::P), z, k);
    const Rational want(1 << (k - 1), (1 << k) + (1 << (k - 1)) + k - 1);
    o.check(zp.value == want && want == Rational(2, 7), tag + " (Z,P) = " + str(zp.value));

    const SeriesTable f = frattini_series(ctx);
    for (const auto& r : spectrum_table(f, z)) {
      o.check(r.value == Rational(1, 3), tag + " (Z,F) level " + std::to_string(r.level) + " = " + str(r.value));
    }

    const SeriesTable d = dimension_series(ctx);
    const Rational hd = hdim_ratio(d, h, d.last_index()).value;
    const Rational hf = hdim_ratio(f, h, f.last_index()).value;
    o.check(hd == Rational(1), tag + " (H,D) top = " + str(hd));
    o.check(hf == Rational(1), tag + " (H,F) top = " + str(hf));

    const SeriesTable l = lower_2_series(ctx);
    int rows = 0;
    for (const char* name : {"Z", "H"}) {
      const Subgroup sub = named(ctx, name);
      for (const auto& r : spectrum_table(l, sub)) {
        const auto [num, den] = lower_two_ratio_oracle(ctx, l.term(r.level), r.level, sub);
        o.check(r.value == Rational(num, den), tag + " (" + name + ",L) level " + std::to_string(r.level));
        ++rows;
      }
    }
    o.note << " " << tag << ": (Z,P)=" << str(zp.value) << ", (Z,L)/(H,L) " << rows << " rows vs oracle;";
  }
}

void key_checks(Outcome& o) {
  const GroupContext ctx(3);
  const SpectrumReport r = spectrum_check(ctx, 1, 1);
  o.check(r.kz_rank == 3, "K∩Z rank " + std::to_string(r.kz_rank));
  o.check(r.z_rank == 5, "Z rank " + std::to_string(r.z_rank));
  const Rational fin = r.levels.empty() ? Rational(0) : r.levels.back().value;
  o.check(fin == Rational(3, 5), "finite ratio " + str(fin));
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}}) {
    const SpectrumReport q = spectrum_check(ctx, m, n);
    std::vector<int> want;
    for (int j = 1; j <= 2 * m - 1; ++j) want.push_back(j);
    o.check(q.base_block == want, "D_0 for (" + std::to_string(m) + "," + std::to_string(n) + ")");
  }
  o.note << " rank(K∩Z)=" << r.kz_rank << ", rank Z=" << r.z_rank << ", ratio " << str(fin);
}

void collection(Outcome& o) {
  const GroupContext ctx(3);
  for (int r = 1; r <= 3; ++r) {
    const CollectionCheck c = collection_identity_check(ctx, gen_x(ctx), gen_y(ctx), r);
    o.check(c.power_formula, "power identity r=" + std::to_string(r));
    o.check(c.commutator_formula, "commutator identity r=" + std::to_string(r));
  }
  o.note << " (a,b)=(x,y), r=1,2,3, k=3";
}

void properties(Outcome& o) {
  std::mt19937_64 rng(20240601);
  long failures = 0;
  for (int k = 2; k <= 4; ++k) {
    const GroupContext ctx(k);
    for (int t = 0; t < kAssociativityTriples; ++t) {
      const Element a = random_element(ctx, rng);
      const Element b = random_element(ctx, rng);
      const Element c = random_element(ctx, rng);
      failures += mul(mul(a, b), c) == mul(a, mul(b, c)) ? 0 : 1;
    }
  }
  o.check(failures == 0, "associativity (" + std::to_string(failures) + " failures)");

  long tri = 0;
  for (int k = 2; k <= 4; ++k) {
    const GroupContext ctx(k);
    const std::uint64_t all = (std::uint64_t{1} << ctx.log_order()) - 1;
    for (int t = 0; t < kTriangularityPairs; ++t) {
      const int d = static_cast<int>(rng() % static_cast<std::uint64_t>(ctx.log_order()));
      const std::uint64_t keep = all & ~((std::uint64_t{1} << d) - 1);
      const Element g = Element::from_coords(ctx, rng() & keep);
      const Element h = Element::from_coords(ctx, rng() & keep);
      const std::uint64_t p = coords(mul(g, h));
      const bool bit = ((p ^ coords(g) ^ coords(h)) >> d & 1U) == 0;
      tri += (bit && depth(mul(g, h)) >= d) ? 0 : 1;
    }
  }
  o.check(tri == 0, "triangularity");

  for (int k = 2; k <= 3; ++k) {
    const GroupContext ctx(k);
    const SeriesTable p = power_series(ctx);
    const SeriesTable i = iterated_power_series(ctx);
    for (int j = 0; j <= k; ++j) {
      const bool eq = p.has_term(j) && i.has_term(j) && p.term(j) == i.term(j);
      if (!eq) {
        o.check(false, "P = I at k=" + std::to_string(k) + " level " + std::to_string(j) + " (|G^(2^j)| = 2^" +
                           std::to_string(p.term(j).log_order()) + ", |I_j| = 2^" + std::to_string(i.term(j).log_order()) + ")");
      }
    }
  }

  {
    const GroupContext ctx(3);
    const auto [r, n] = rn_series(ctx);
    const SeriesTable p = power_series(ctx);
    for (int j = 0; j <= n.last_index(); ++j) {
      const Subgroup& pj = p.has_term(j) ? p.term(j) : p.terms.back();
      const bool ok = pj.contains(n.term(j)) && pj.log_order() - n.term(j).log_order() <= kNGapBound;
      o.check(ok, "N_" + std::to_string(j) + " <= G^(2^" + std::to_string(j) + ") with gap");
    }
  }

  int stable = 0;
  const GroupContext g2(2);
  const GroupContext g3(3);
  for (auto kind : {SeriesKind::P, SeriesKind::L, SeriesKind::D, SeriesKind::F}) {
    const SeriesTable s2 = compute_series(g2, kind);
    const SeriesTable s3 = compute_series(g3, kind);
    const int agree = agreeing_prefix(s2, s3);
    for (const char* name : {"Z", "H"}) {
      for (int i = s2.first_index + 1; i <= agree; ++i) {
        const Rational a = hdim_ratio(s2, named(g2, name), i).value;
        const Rational b = hdim_ratio(s3, named(g3, name), i).value;
        o.check(a == b, std::string("stability ") + std::string(series_name(kind)) + " " + name + " level " + std::to_string(i));
        ++stable;
      }
    }
  }
  o.note << " " << 3 * kAssociativityTriples << " triples, " << 3 * kTriangularityPairs << " triangularity pairs, " << stable
         << " stable ratios;";
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"order oracle", order_oracle},
      {"relator suite", relators},
      {"projection to the wreath product", projection},
      {"G_k^(2^k)", top_power},
      {"series factor tables", factor_tables},
      {"ratio values", ratio_values},
      {"K meets Z and the index set", key_checks},
      {"collection identities", collection},
      {"property suites", properties},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto s = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - s).count();
    failed += o.pass ? 0 : 1;
    std::printf("criterion %zu %s: %s (%.2fs)%s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL", secs, o.note.str().c_str());
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool fast = total < kSuiteSeconds;
  std::printf("total runtime %.2fs (budget %.0fs): %s\n", total, kSuiteSeconds, fast ? "PASS" : "FAIL");
  std::printf("%d of %zu criteria failed\n", failed + (fast ? 0 : 1), criteria.size());
  return failed == 0 && fast ? 0 : 1;
}
