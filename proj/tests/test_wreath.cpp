#include <random>
#include <set>

#include "doctest.h"
#include "naive_collector.hpp"
#include "pro2/errors.hpp"
#include "pro2/series.hpp"
#include "pro2/wreath.hpp"

using namespace pro2;
using pro2::testing::random_element;

namespace {

std::uint64_t wkey(const WreathElement& w) { return (std::uint64_t{w.shift()} << 40) | w.base(); }

}  // namespace

TEST_CASE("wreath law") {
  const WreathElement a(2, 1, 0);
  const WreathElement b(2, 0, 0b0001);
  // y^x = x^-1 y x moves the marked coordinate by one
  const WreathElement a_inv(2, 3, 0);
  CHECK(a_inv * b * a == WreathElement(2, 0, 0b0010));
  CHECK((a * a * a * a).is_identity());
  CHECK((b * b).is_identity());
  CHECK(wreath_log_order(2) == 6);
  CHECK_THROWS_AS(WreathElement(2, 4, 0), std::out_of_range);
  CHECK_THROWS_AS(WreathElement(2, 0, 0b10000), std::out_of_range);
  CHECK_THROWS_AS(WreathElement(2) * WreathElement(3), ContextMismatch);
}

TEST_CASE("order oracle at k = 2") {
  const GroupContext ctx(2);
  const std::vector<Element> gens{gen_x(ctx), gen_y(ctx)};
  const BfsResult r = bfs_closure(ctx, gens);
  CHECK(r.count == 1024);
  CHECK(r.count == (std::uint64_t{1} << (4 + 2 + 2 + 2)));

  std::set<std::uint64_t> image;
  std::uint64_t kernel = 0;
  const Subgroup zk = z_k(ctx);
  for (auto c : r.elements) {
    const Element g = Element::from_coords(ctx, c);
    const WreathElement w = project(g);
    image.insert(wkey(w));
    if (w.is_identity()) {
      ++kernel;
      CHECK(zk.contains(g));
    }
  }
  CHECK(image.size() == 64);
  CHECK(kernel == 16);
  CHECK(zk.log_order() == 4);
}

TEST_CASE("order oracle at k = 3") {
  const GroupContext ctx(3);
  const std::vector<Element> gens{gen_x(ctx), gen_y(ctx)};
  CHECK(bfs_closure(ctx, gens).count == (std::uint64_t{1} << 17));
  CHECK(subgroup_closure(ctx, gens).log_order() == 17);
}

TEST_CASE("bfs of a cyclic subgroup") {
  for (int k = 2; k <= 4; ++k) {
    const GroupContext ctx(k);
    const std::vector<Element> gens{gen_x(ctx)};
    CHECK(bfs_closure(ctx, gens).count == static_cast<std::uint64_t>(ctx.x_mod()));
  }
  const GroupContext ctx(3);
  const std::vector<Element> gens{gen_x(ctx), gen_y(ctx)};
  CHECK_THROWS_AS(bfs_closure(ctx, gens, 1000), CapacityError);
}

TEST_CASE("projection is a homomorphism") {
  std::mt19937_64 rng(4);
  for (int k = 2; k <= 4; ++k) {
    const GroupContext ctx(k);
    CHECK(project(Element(ctx)).is_identity());
    CHECK(project(gen_ysq(ctx)).is_identity());
    CHECK(project(gen_x(ctx)) == WreathElement(k, 1, 0));
    CHECK(project(gen_y(ctx)) == WreathElement(k, 0, 1));
    for (int t = 0; t < 2000; ++t) {
      const Element g = random_element(ctx, rng);
      const Element h = random_element(ctx, rng);
      CHECK(project(mul(g, h)) == project(g) * project(h));
    }
  }
}

TEST_CASE("relators") {
  for (int k = 2; k <= 4; ++k) {
    const GroupContext ctx(k);
    const auto rs = relator_check(ctx);
    CHECK(rs.size() == static_cast<std::size_t>(4 + 3 * ctx.nc() + 1));
    for (const auto& r : rs) {
      CAPTURE(k);
      CAPTURE(r.name);
      CHECK(r.ok());
    }
    CHECK(!rs.back().expect_identity);
  }
}

TEST_CASE("collection identities") {
  const GroupContext ctx(3);
  for (int r = 1; r <= 3; ++r) {
    CAPTURE(r);
    const CollectionCheck c = collection_identity_check(ctx, gen_x(ctx), gen_y(ctx), r);
    CHECK(c.power_formula);
    CHECK(c.commutator_formula);
  }
  std::mt19937_64 rng(8);
  for (int k = 2; k <= 3; ++k) {
    const GroupContext g(k);
    for (int t = 0; t < 40; ++t) {
      const Element a = random_element(g, rng);
      const Element b = random_element(g, rng);
      for (int r = 1; r <= k + 1; ++r) CHECK(collection_identity_check(g, a, b, r).ok());
    }
  }
  CHECK_THROWS_AS(collection_identity_check(ctx, gen_x(ctx), gen_y(ctx), 0), PreconditionError);
  CHECK_THROWS_AS(collection_identity_check(ctx, gen_x(ctx), gen_y(ctx), 5), PreconditionError);
}

TEST_CASE("collection kernel is not everything") {
  // a check modulo the whole group would be vacuous
  const GroupContext ctx(3);
  for (int r = 1; r <= 3; ++r) {
    const Subgroup k = collection_kernel(ctx, gen_x(ctx), gen_y(ctx), r);
    CHECK(k.log_order() < ctx.log_order());
    CHECK(is_normal(k));
  }
  // without the correction terms the power identity fails at r = 2
  const Element lhs = pow(mul(gen_x(ctx), gen_y(ctx)), 4);
  const Element naive = mul(pow(gen_x(ctx), 4), pow(gen_y(ctx), 4));
  CHECK(!collection_kernel(ctx, gen_x(ctx), gen_y(ctx), 2).contains(mul(inv(lhs), naive)));
}
