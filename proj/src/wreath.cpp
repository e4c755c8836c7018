#include "pro2/wreath.hpp"

#include <deque>
#include <stdexcept>

#include "pro2/errors.hpp"

namespace pro2 {

namespace {

std::uint64_t rotate(std::uint64_t v, int s, int n) {
  s %= n;
  if (s == 0) return v;
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  return ((v << s) | (v >> (n - s))) & mask;
}

// Pascal's triangle modulo 2^(k+1), the exponent of G_k.
std::vector<std::vector<long long>> binomials_mod(int rows, long long mod) {
  std::vector<std::vector<long long>> c(static_cast<std::size_t>(rows + 1));
  for (int i = 0; i <= rows; ++i) {
    auto& row = c[static_cast<std::size_t>(i)];
    row.assign(static_cast<std::size_t>(i + 1), 1);
    for (int j = 1; j < i; ++j) {
      const auto& prev = c[static_cast<std::size_t>(i - 1)];
      row[static_cast<std::size_t>(j)] = (prev[static_cast<std::size_t>(j - 1)] + prev[static_cast<std::size_t>(j)]) % mod;
    }
  }
  return c;
}

}  // namespace

WreathElement::WreathElement(int k, std::uint32_t shift, std::uint64_t base) : k_(k), t_(shift), v_(base) {
  const int n = 1 << k;
  if (shift >= static_cast<std::uint32_t>(n) || (base >> n) != 0) throw std::out_of_range("wreath coordinates out of range");
}

WreathElement operator*(const WreathElement& g, const WreathElement& h) {
  if (g.k_ != h.k_) throw ContextMismatch("wreath elements from different levels");
  const int n = 1 << g.k_;
  WreathElement out(g.k_);
  out.t_ = (g.t_ + h.t_) % static_cast<std::uint32_t>(n);
  out.v_ = rotate(g.v_, static_cast<int>(h.t_), n) ^ h.v_;
  return out;
}

int wreath_log_order(int k) { return (1 << k) + k; }

WreathElement project(const Element& g) {
  const int n = 1 << g.k();
  return WreathElement(g.k(), g.x_exponent() % static_cast<std::uint32_t>(n), g.y_bits());
}

BfsResult bfs_closure(const GroupContext& ctx, std::span<const Element> gens, std::uint64_t cap) {
  BfsResult out;
  std::deque<Element> frontier;
  const Element one(ctx);
  out.elements.insert(coords(one));
  frontier.push_back(one);
  while (!frontier.empty()) {
    const Element g = frontier.front();
    frontier.pop_front();
    for (const auto& s : gens) {
      const Element h = mul(g, s);
      if (out.elements.insert(coords(h)).second) {
        if (out.elements.size() > cap) throw CapacityError("bfs_closure: more than " + std::to_string(cap) + " elements");
        frontier.push_back(h);
      }
    }
  }
  out.count = out.elements.size();
  return out;
}

std::vector<RelatorResult> relator_check(const GroupContext& ctx) {
  const Element x = gen_x(ctx);
  const Element y = gen_y(ctx);
  std::vector<RelatorResult> out;
  auto add = [&](std::string name, const Element& g, bool expect = true) {
    out.push_back({std::move(name), expect, g.is_identity()});
  };
  add("x^(2^(k+1))", pow(x, ctx.x_mod()));
  add("y^4", pow(y, 4));
  add("[x^(2^k),y]", comm(pow(x, ctx.ny()), y));
  add("[y^2,x]", comm(pow(y, 2), x));
  for (int i = 1; i <= ctx.nc(); ++i) {
    const Element yi = conj(y, pow(x, i));
    const Element c = comm(y, yi);
    const std::string tag = "[y_0,y_" + std::to_string(i) + "]";
    add(tag + "^2", pow(c, 2));
    add("[" + tag.substr(1, tag.size() - 2) + ",x]", comm(c, x));
    add("[" + tag.substr(1, tag.size() - 2) + ",y]", comm(c, y));
  }
  add("x^(2^k)", pow(x, ctx.ny()), false);
  return out;
}

Subgroup collection_kernel(const GroupContext& ctx, const Element& u, const Element& v, int r) {
  // Commutators of weight > class + 1 vanish; class of G_k is 2^k + 1.
  const int max_weight = ctx.ny() + 2;
  const int big = 1 << r;
  std::vector<Element> gens;

  // Left-normed words [l_1, ..., l_w], grown one letter at a time.
  auto rec = [&](auto&& self, const Element& value, int weight, int v_weight) -> void {
    if (weight >= 2 && v_weight >= 2 && !value.is_identity()) {
      if (weight >= big) gens.push_back(value);
      for (int s = 1; s <= r; ++s) {
        if (weight < (1 << s)) gens.push_back(pow(value, 1LL << (r - s + 1)));
      }
    }
    if (weight == max_weight || value.is_identity()) return;
    self(self, comm(value, u), weight + 1, v_weight);
    self(self, comm(value, v), weight + 1, v_weight + 1);
  };
  rec(rec, u, 1, 0);
  rec(rec, v, 1, 1);
  return normal_closure(ctx, gens);
}

CollectionCheck collection_identity_check(const GroupContext& ctx, const Element& a, const Element& b, int r) {
  if (r < 1 || r > ctx.k() + 1) {
    throw PreconditionError("collection_identity_check: need 1 <= r <= k+1, got r = " + std::to_string(r));
  }
  const int q = 1 << r;
  const auto binom = binomials_mod(q, ctx.x_mod());
  CollectionCheck out;

  // (ab)^q = a^q b^q [b,a]^C(q,2) [b,a,a]^C(q,3) ... [b,a,...,a]
  {
    Element rhs = mul(pow(a, q), pow(b, q));
    for (int j = 2; j <= q; ++j) {
      rhs = mul(rhs, pow(comm_left(b, a, j - 1), binom[static_cast<std::size_t>(q)][static_cast<std::size_t>(j)]));
    }
    const Element lhs = pow(mul(a, b), q);
    const Subgroup kernel = collection_kernel(ctx, a, b, r);
    out.power_formula = kernel.contains(mul(inv(lhs), rhs));
    out.log_kernel_power = kernel.log_order();
  }

  // [a^q, b] = [a,b]^q [a,b,a]^C(q,2) ... [a,b,a,...,a]
  {
    const Element ab = comm(a, b);
    Element rhs(ctx);
    for (int j = 1; j <= q; ++j) {
      rhs = mul(rhs, pow(comm_left(ab, a, j - 1), binom[static_cast<std::size_t>(q)][static_cast<std::size_t>(j)]));
    }
    const Element lhs = comm(pow(a, q), b);
    const Subgroup kernel = collection_kernel(ctx, a, ab, r);
    out.commutator_formula = kernel.contains(mul(inv(lhs), rhs));
    out.log_kernel_commutator = kernel.log_order();
  }
  return out;
}

}  // namespace pro2
