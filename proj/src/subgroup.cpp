#include "pro2/subgroup.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <string>

#include "pro2/errors.hpp"

namespace pro2 {

std::uint64_t default_enumeration_cap() {
  if (const char* env = std::getenv("PRO2_CAP"); env != nullptr && *env != '\0') {
    try {
      return std::stoull(env, nullptr, 0);
    } catch (const std::exception&) {
      // unparsable override falls through to the default
    }
  }
  return kDefaultEnumerationCap;
}

Subgroup::Subgroup(const GroupContext& ctx) : ctx_(ctx) { slot_.fill(-1); }

std::vector<int> Subgroup::depths() const {
  std::vector<int> out;
  out.reserve(basis_.size());
  for (const auto& b : basis_) out.push_back(depth(b));
  return out;
}

Element Subgroup::sift(const Element& g) const {
  if (g.k() != ctx_.k()) throw ContextMismatch("sift: element and subgroup from different levels");
  const int top = ctx_.log_order();
  Element r = g;
  for (;;) {
    const int d = depth(r);
    if (d == top) return r;
    const int s = slot_[static_cast<std::size_t>(d)];
    if (s < 0) return r;
    r = mul(inverses_[static_cast<std::size_t>(s)], r);
  }
}

bool Subgroup::contains(const Subgroup& other) const {
  return std::all_of(other.basis_.begin(), other.basis_.end(), [this](const Element& b) { return contains(b); });
}

Element Subgroup::word(std::uint64_t exponents) const {
  Element g(ctx_);
  for (std::size_t j = 0; j < basis_.size(); ++j) {
    if ((exponents >> j) & 1U) g = mul(g, basis_[j]);
  }
  return g;
}

void Subgroup::insert(const Element& r) {
  const int d = depth(r);
  const auto pos = std::find_if(basis_.begin(), basis_.end(), [d](const Element& b) { return depth(b) > d; });
  const auto idx = pos - basis_.begin();
  basis_.insert(pos, r);
  inverses_.insert(inverses_.begin() + idx, inv(r));
  slot_.fill(-1);
  for (std::size_t j = 0; j < basis_.size(); ++j) slot_[static_cast<std::size_t>(depth(basis_[j]))] = static_cast<std::int8_t>(j);
}

bool operator==(const Subgroup& a, const Subgroup& b) {
  return a.ctx_ == b.ctx_ && a.log_order() == b.log_order() && a.contains(b);
}

ClosureBuilder::ClosureBuilder(const GroupContext& ctx, bool normal) : sub_(ctx), normal_(normal) {}

ClosureBuilder::ClosureBuilder(Subgroup start, bool normal) : sub_(std::move(start)), normal_(normal) {
  if (normal_) {
    const GroupContext ctx = sub_.context();
    for (const auto& b : sub_.basis()) {
      queue_.push_back(conj(b, gen_x(ctx)));
      queue_.push_back(conj(b, gen_y(ctx)));
    }
    run();
  }
}

bool ClosureBuilder::add(const Element& g) {
  if (sub_.contains(g)) return false;
  queue_.push_back(g);
  run();
  return true;
}

void ClosureBuilder::add_all(std::span<const Element> gens) {
  for (const auto& g : gens) add(g);
}

void ClosureBuilder::run() {
  const GroupContext ctx = sub_.context();
  const Element x = gen_x(ctx);
  const Element y = gen_y(ctx);
  while (!queue_.empty()) {
    const Element g = queue_.back();
    queue_.pop_back();
    const Element r = sub_.sift(g);
    if (r.is_identity()) continue;
    sub_.insert(r);
    // Products in both orders and squares sifting to 1 make the normal words a
    // subgroup: b_j b_i = b_i b_j^(b_i) puts every conjugate b_j^(b_i) into the
    // span of the deeper basis elements.
    for (const auto& b : sub_.basis()) {
      if (b == r) continue;
      queue_.push_back(mul(r, b));
      queue_.push_back(mul(b, r));
    }
    queue_.push_back(mul(r, r));
    if (normal_) {
      queue_.push_back(conj(r, x));
      queue_.push_back(conj(r, y));
    }
  }
}

Subgroup trivial_subgroup(const GroupContext& ctx) { return Subgroup(ctx); }

Subgroup whole_group(const GroupContext& ctx) { return subgroup_closure(ctx, {gen_x(ctx), gen_y(ctx)}); }

Subgroup subgroup_closure(const GroupContext& ctx, std::span<const Element> gens) {
  ClosureBuilder cb(ctx, false);
  cb.add_all(gens);
  return std::move(cb).take();
}

Subgroup subgroup_closure(const GroupContext& ctx, std::initializer_list<Element> gens) {
  return subgroup_closure(ctx, std::span<const Element>(gens.begin(), gens.size()));
}

Subgroup normal_closure(const GroupContext& ctx, std::span<const Element> gens) {
  ClosureBuilder cb(ctx, true);
  cb.add_all(gens);
  return std::move(cb).take();
}

Subgroup normal_closure(const GroupContext& ctx, std::initializer_list<Element> gens) {
  return normal_closure(ctx, std::span<const Element>(gens.begin(), gens.size()));
}

bool is_normal(const Subgroup& s) {
  const GroupContext ctx = s.context();
  const Element x = gen_x(ctx);
  const Element y = gen_y(ctx);
  return std::all_of(s.basis().begin(), s.basis().end(),
                     [&](const Element& b) { return s.contains(conj(b, x)) && s.contains(conj(b, y)); });
}

Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b) {
  if (!(a.context() == b.context())) throw ContextMismatch("commutator_subgroup: operands from different levels");
  if (!is_normal(a) || !is_normal(b)) throw PreconditionError("commutator_subgroup: operands must be normal");
  std::vector<Element> gens;
  gens.reserve(a.basis().size() * b.basis().size());
  for (const auto& u : a.basis()) {
    for (const auto& v : b.basis()) gens.push_back(comm(u, v));
  }
  return normal_closure(a.context(), gens);
}

void for_each_element(const Subgroup& s, const std::function<void(const Element&)>& visit, std::uint64_t cap) {
  const int r = s.log_order();
  if (r >= 63 || (std::uint64_t{1} << r) > cap) {
    throw CapacityError("subgroup of order 2^" + std::to_string(r) + " exceeds enumeration cap " + std::to_string(cap));
  }
  const auto basis = s.basis();
  // Depth-first over exponent tuples; each leaf is one normal word.
  auto rec = [&](auto&& self, std::size_t j, const Element& prefix) -> void {
    if (j == basis.size()) {
      visit(prefix);
      return;
    }
    self(self, j + 1, prefix);
    self(self, j + 1, mul(prefix, basis[j]));
  };
  rec(rec, 0, Element(s.context()));
}

Subgroup power_subgroup(const Subgroup& a, long long q, std::uint64_t cap) {
  if (q < 1) throw PreconditionError("power_subgroup: exponent must be positive");
  ClosureBuilder cb(a.context(), false);
  for_each_element(a, [&](const Element& g) { cb.add(pow(g, q)); }, cap);
  return std::move(cb).take();
}

Subgroup product_subgroup(const Subgroup& a, const Subgroup& b) {
  if (!(a.context() == b.context())) throw ContextMismatch("product_subgroup: operands from different levels");
  ClosureBuilder cb(a, false);
  cb.add_all(b.basis());
  return std::move(cb).take();
}

Subgroup squares_over(const Subgroup& a, const Subgroup& m) {
  if (!(a.context() == m.context())) throw ContextMismatch("squares_over: operands from different levels");
  ClosureBuilder cb(m, false);
  for (const auto& b : a.basis()) cb.add(mul(b, b));
  return std::move(cb).take();
}

Subgroup product_subgroup(std::initializer_list<Subgroup> factors) {
  if (factors.size() == 0) throw std::invalid_argument("product_subgroup: no factors");
  Subgroup out = *factors.begin();
  for (auto it = factors.begin() + 1; it != factors.end(); ++it) out = product_subgroup(out, *it);
  return out;
}

namespace {

// B contains <y^2, c_1, ..., c_{n/2}> and sits inside <x^(2^k)> H_k, where
// phi(g) = (bit k of a, e) is a homomorphism with kernel exactly that layer.
bool is_central_layered(const Subgroup& b) {
  const GroupContext ctx = b.context();
  for (const auto& g : b.basis()) {
    if (depth(g) < ctx.k()) return false;
  }
  if (!b.contains(gen_ysq(ctx))) return false;
  for (int d = 1; d <= ctx.nc(); ++d) {
    if (!b.contains(gen_central(ctx, d))) return false;
  }
  return true;
}

std::uint64_t layer_image(const Element& g, int k) {
  return ((g.x_exponent() >> k) & 1U) | (g.y_bits() << 1);
}

// XOR basis keyed by highest set bit.
struct Gf2Basis {
  std::array<std::uint64_t, 64> row{};
  std::array<std::uint64_t, 64> tag{};

  // Reduces v (with companion tag) in place; returns true if v became zero.
  bool reduce(std::uint64_t& v, std::uint64_t& t) const {
    while (v != 0) {
      const int p = 63 - std::countl_zero(v);
      if (row[static_cast<std::size_t>(p)] == 0) return false;
      v ^= row[static_cast<std::size_t>(p)];
      t ^= tag[static_cast<std::size_t>(p)];
    }
    return true;
  }
  void insert(std::uint64_t v, std::uint64_t t) {
    const int p = 63 - std::countl_zero(v);
    row[static_cast<std::size_t>(p)] = v;
    tag[static_cast<std::size_t>(p)] = t;
  }
};

Subgroup layered_intersection(const Subgroup& a, const Subgroup& b) {
  const GroupContext ctx = a.context();
  const int k = ctx.k();

  Gf2Basis target;
  for (const auto& g : b.basis()) {
    std::uint64_t v = layer_image(g, k);
    std::uint64_t t = 0;
    if (!target.reduce(v, t)) target.insert(v, 0);
  }

  // A ∩ G_(k) is spanned by the basis elements of depth >= k.
  std::vector<Element> tail;
  for (const auto& g : a.basis()) {
    if (depth(g) >= k) tail.push_back(g);
  }

  // Kernel of lambda -> sum lambda_j phi(t_j) modulo phi(B).
  Gf2Basis quotient;
  std::vector<Element> gens;
  for (std::size_t j = 0; j < tail.size(); ++j) {
    std::uint64_t v = layer_image(tail[j], k);
    std::uint64_t scratch = 0;
    target.reduce(v, scratch);
    std::uint64_t comb = std::uint64_t{1} << j;
    if (quotient.reduce(v, comb)) {
      Element g(ctx);
      for (std::size_t i = 0; i < tail.size(); ++i) {
        if ((comb >> i) & 1U) g = mul(g, tail[i]);
      }
      gens.push_back(g);
    } else {
      quotient.insert(v, comb);
    }
  }
  return subgroup_closure(ctx, gens);
}

}  // namespace

Subgroup intersection(const Subgroup& a, const Subgroup& b, std::uint64_t cap) {
  if (!(a.context() == b.context())) throw ContextMismatch("intersection: operands from different levels");
  Subgroup out(a.context());
  if (is_central_layered(b)) {
    out = layered_intersection(a, b);
  } else if (is_central_layered(a)) {
    out = layered_intersection(b, a);
  } else {
    const Subgroup& small = a.log_order() <= b.log_order() ? a : b;
    const Subgroup& large = a.log_order() <= b.log_order() ? b : a;
    ClosureBuilder cb(a.context(), false);
    for_each_element(
        small, [&](const Element& g) {
          if (large.contains(g)) cb.add(g);
        },
        cap);
    out = std::move(cb).take();
  }
  if (!a.contains(out) || !b.contains(out)) {
    throw std::logic_error("intersection: result not contained in both operands");
  }
  return out;
}

int log_index(const Subgroup& a, const Subgroup& b) {
  if (!a.contains(b)) throw PreconditionError("log_index: second subgroup is not contained in the first");
  return a.log_order() - b.log_order();
}

bool is_closed(const Subgroup& s) {
  const auto basis = s.basis();
  for (const auto& u : basis) {
    for (const auto& v : basis) {
      if (!s.contains(mul(u, v))) return false;
    }
  }
  return true;
}

bool is_abelian(const Subgroup& s) {
  const auto basis = s.basis();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      if (!comm(basis[i], basis[j]).is_identity()) return false;
    }
  }
  return true;
}

bool is_elementary_abelian(const Subgroup& s) {
  return is_abelian(s) && std::all_of(s.basis().begin(), s.basis().end(),
                                      [](const Element& b) { return mul(b, b).is_identity(); });
}

}  // namespace pro2
