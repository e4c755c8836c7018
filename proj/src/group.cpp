#include "pro2/group.hpp"

#include <bit>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "pro2/errors.hpp"

namespace pro2 {

namespace {

std::uint64_t low_mask(int bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

void require_same(const Element& g, const Element& h) {
  if (g.k() != h.k()) {
    throw ContextMismatch("elements from G_" + std::to_string(g.k()) + " and G_" + std::to_string(h.k()));
  }
}

// Central correction for collecting `first` (ascending) followed by `second`
// (ascending): every pair p in first, q in second with p > q is an inversion
// and contributes [y_p, y_q] = c_fold(p-q).
std::uint64_t inversion_commutators(std::uint64_t first, std::uint64_t second, int n) {
  if (first == 0 || second == 0) return 0;
  std::uint64_t out = 0;
  for (int d = 1; d < n; ++d) {
    if (std::popcount(first & (second << d)) & 1) {
      out ^= std::uint64_t{1} << (fold(d, n) - 1);
    }
  }
  return out;
}

}  // namespace

GroupContext::GroupContext(int k) : k_(k) {
  if (k < kMinLevel || k > kMaxLevel) {
    throw std::out_of_range("level k must lie in [" + std::to_string(kMinLevel) + ", " +
                            std::to_string(kMaxLevel) + "], got " + std::to_string(k));
  }
}

Element::Element(const GroupContext& ctx) noexcept : k_(static_cast<std::uint8_t>(ctx.k())) {}

Element Element::from_parts(const GroupContext& ctx, std::uint32_t x_exponent, std::uint64_t y_bits,
                            bool ysq, std::uint64_t c_bits) {
  if (x_exponent >= static_cast<std::uint32_t>(ctx.x_mod()) || (y_bits & ~low_mask(ctx.ny())) ||
      (c_bits & ~low_mask(ctx.nc()))) {
    throw std::out_of_range("normal-form coordinates out of range");
  }
  Element g(ctx);
  g.a_ = x_exponent;
  g.e_ = y_bits;
  g.delta_ = ysq;
  g.f_ = c_bits;
  return g;
}

Element Element::from_coords(const GroupContext& ctx, std::uint64_t c) {
  if (c & ~low_mask(ctx.log_order())) throw std::out_of_range("coordinate vector too long");
  const auto a = static_cast<std::uint32_t>(c & low_mask(ctx.k() + 1));
  const std::uint64_t e = (c >> ctx.y_pos(0)) & low_mask(ctx.ny());
  const bool delta = (c >> ctx.ysq_pos()) & 1U;
  const std::uint64_t f = (c >> ctx.c_pos(1)) & low_mask(ctx.nc());
  return from_parts(ctx, a, e, delta, f);
}

int fold(int d, int n) noexcept {
  d %= n;
  if (d < 0) d += n;
  return d <= n - d ? d : n - d;
}

Element generator(const GroupContext& ctx, Generator name, int index) {
  switch (name) {
    case Generator::x:
      return Element::from_parts(ctx, 1, 0, false, 0);
    case Generator::y:
      return Element::from_parts(ctx, 0, 1, false, 0);
    case Generator::y_i:
      if (index < 0 || index >= ctx.ny()) {
        throw std::out_of_range("y_i index " + std::to_string(index) + " outside [0, " +
                                std::to_string(ctx.ny()) + ")");
      }
      return Element::from_parts(ctx, 0, std::uint64_t{1} << index, false, 0);
    case Generator::c_d:
      if (index < 1 || index > ctx.nc()) {
        throw std::out_of_range("c_d index " + std::to_string(index) + " outside [1, " +
                                std::to_string(ctx.nc()) + "]");
      }
      return Element::from_parts(ctx, 0, 0, false, std::uint64_t{1} << (index - 1));
    case Generator::ysq:
      return Element::from_parts(ctx, 0, 0, true, 0);
    case Generator::w:
      return Element::from_parts(ctx, 0, low_mask(ctx.ny()), false, 0);
  }
  throw std::invalid_argument("unknown generator");
}

Element gen_x(const GroupContext& ctx) { return generator(ctx, Generator::x); }
Element gen_y(const GroupContext& ctx) { return generator(ctx, Generator::y); }
Element gen_y_conj(const GroupContext& ctx, int i) { return generator(ctx, Generator::y_i, i); }
Element gen_central(const GroupContext& ctx, int d) { return generator(ctx, Generator::c_d, d); }
Element gen_ysq(const GroupContext& ctx) { return generator(ctx, Generator::ysq); }
Element gen_w(const GroupContext& ctx) { return generator(ctx, Generator::w); }

Element mul(const Element& g, const Element& h) {
  require_same(g, h);
  const int n = 1 << g.k_;
  const int xmod = 2 * n;
  const std::uint64_t mask = low_mask(n);

  // x^a Y_g x^a' Y_h = x^(a+a') (Y_g)^(x^a') Y_h, and conjugation by x^s sends
  // y_i to y_{i+s}.  The rotated word splits into an ascending run of indices
  // >= s followed by an ascending run of wrapped indices < s.
  const int s = static_cast<int>(h.a_) & (n - 1);
  std::uint64_t high = g.e_;
  std::uint64_t low = 0;
  if (s != 0) {
    high = (g.e_ << s) & mask;
    low = g.e_ >> (n - s);
  }
  const std::uint64_t rotated = high | low;

  Element out(GroupContext(g.k_));
  out.a_ = (g.a_ + h.a_) % static_cast<std::uint32_t>(xmod);
  out.e_ = rotated ^ h.e_;
  // y_i^2 = y^2 for every i.
  out.delta_ = g.delta_ ^ h.delta_ ^ static_cast<bool>(std::popcount(rotated & h.e_) & 1);
  out.f_ = g.f_ ^ h.f_ ^ inversion_commutators(high, low, n) ^ inversion_commutators(rotated, h.e_, n);
  return out;
}

Element inv(const Element& g) {
  const GroupContext ctx(g.k_);
  const int n = ctx.ny();
  // (x^a Y z)^-1 = z Y^-1 x^-a, and Y^-1 is the reversed word times y^(2m).
  Element u(ctx);
  u.e_ = g.e_;
  u.delta_ = g.delta_ ^ static_cast<bool>(std::popcount(g.e_) & 1);
  u.f_ = g.f_ ^ inversion_commutators(g.e_, g.e_, n);
  Element xinv(ctx);
  xinv.a_ = (static_cast<std::uint32_t>(ctx.x_mod()) - g.a_) % static_cast<std::uint32_t>(ctx.x_mod());
  return mul(u, xinv);
}

Element pow(const Element& g, long long n) {
  if (n < 0) return pow(inv(g), -n);
  Element result(g.context());
  Element base = g;
  while (n > 0) {
    if (n & 1) result = mul(result, base);
    n >>= 1;
    if (n > 0) base = mul(base, base);
  }
  return result;
}

Element comm(const Element& g, const Element& h) { return mul(mul(inv(g), inv(h)), mul(g, h)); }

Element comm_left(const Element& g, const Element& h, int m) {
  Element c = g;
  for (int i = 0; i < m; ++i) c = comm(c, h);
  return c;
}

Element comm_left(std::span<const Element> word) {
  if (word.empty()) throw std::invalid_argument("empty commutator word");
  Element c = word.front();
  for (const auto& e : word.subspan(1)) c = comm(c, e);
  return c;
}

Element conj(const Element& h, const Element& g) { return mul(mul(inv(g), h), g); }

long long element_order(const Element& g) {
  long long t = 1;
  Element p = g;
  while (!p.is_identity()) {
    p = mul(p, p);
    t *= 2;
  }
  return t;
}

Element comm_yx(const GroupContext& ctx, int i) {
  if (i < 1) throw std::out_of_range("comm_yx needs i >= 1");
  return comm_left(gen_y(ctx), gen_x(ctx), i - 1);
}

Element comm_yxy(const GroupContext& ctx, int i) {
  if (i < 2) throw std::out_of_range("comm_yxy needs i >= 2");
  return comm(comm_yx(ctx, i - 1), gen_y(ctx));
}

std::uint64_t coords(const Element& g) noexcept {
  const GroupContext ctx(g.k());
  return std::uint64_t{g.x_exponent()} | (g.y_bits() << ctx.y_pos(0)) |
         (std::uint64_t{g.ysq()} << ctx.ysq_pos()) | (g.c_bits() << ctx.c_pos(1));
}

int depth(const Element& g) noexcept {
  const std::uint64_t c = coords(g);
  return c == 0 ? GroupContext(g.k()).log_order() : std::countr_zero(c);
}

std::string to_string(const Element& g) {
  if (g.is_identity()) return "1";
  std::ostringstream os;
  const char* sep = "";
  if (g.x_exponent() != 0) {
    os << "x^" << g.x_exponent();
    sep = "*";
  }
  const int n = 1 << g.k();
  for (int i = 0; i < n; ++i) {
    if (g.y(i)) {
      os << sep << "y" << i;
      sep = "*";
    }
  }
  if (g.ysq()) {
    os << sep << "ysq";
    sep = "*";
  }
  for (int d = 1; d <= n / 2; ++d) {
    if (g.c(d)) {
      os << sep << "c" << d;
      sep = "*";
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Element& g) { return os << to_string(g); }

}  // namespace pro2
