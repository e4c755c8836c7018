#pragma once

// Independent models used as oracles for the normal-form engine: the wreath
// product W_k = C_2 wr C_(2^k), the projection G_k -> W_k with kernel Z_k,
// breadth-first closure, relator evaluation and the 2-power collection
// identities.

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "pro2/group.hpp"
#include "pro2/subgroup.hpp"

namespace pro2 {

/// (shift t mod 2^k, base vector v).  (t, v)(t', v') = (t + t', rot_t'(v) + v'),
/// where rot_s moves coordinate i to i + s.
class WreathElement {
 public:
  explicit WreathElement(int k) noexcept : k_(k) {}
  WreathElement(int k, std::uint32_t shift, std::uint64_t base);

  int k() const noexcept { return k_; }
  std::uint32_t shift() const noexcept { return t_; }
  std::uint64_t base() const noexcept { return v_; }
  bool is_identity() const noexcept { return t_ == 0 && v_ == 0; }

  friend WreathElement operator*(const WreathElement& g, const WreathElement& h);
  friend bool operator==(const WreathElement&, const WreathElement&) = default;

 private:
  int k_;
  std::uint32_t t_ = 0;
  std::uint64_t v_ = 0;
};

/// log2 |W_k| = 2^k + k.
int wreath_log_order(int k);

/// x -> (1, 0), y -> (0, e_0).
WreathElement project(const Element& g);

struct BfsResult {
  std::uint64_t count = 0;
  /// coords() of every element reached.
  std::unordered_set<std::uint64_t> elements;
};

/// Closure of gens under right multiplication by the generators.
/// Throws CapacityError once more than cap elements are reached.
BfsResult bfs_closure(const GroupContext& ctx, std::span<const Element> gens,
                      std::uint64_t cap = std::uint64_t{1} << 20);

struct RelatorResult {
  std::string name;
  bool expect_identity;
  bool is_identity;
  bool ok() const { return expect_identity == is_identity; }
};

/// Every defining relator of G_k (expected trivial) plus x^(2^k) (expected
/// nontrivial).
std::vector<RelatorResult> relator_check(const GroupContext& ctx);

/// Normal closure of (i) left-normed commutators in {u, v} of weight >= 2^r with
/// weight >= 2 in v and (ii) 2^(r-s+1)-th powers of those of weight < 2^s
/// (weight >= 2 in v), 1 <= s <= r.
Subgroup collection_kernel(const GroupContext& ctx, const Element& u, const Element& v, int r);

struct CollectionCheck {
  bool power_formula = false;       // (ab)^(2^r) modulo K(a, b)
  bool commutator_formula = false;  // [a^(2^r), b] modulo K(a, [a, b])
  int log_kernel_power = 0;
  int log_kernel_commutator = 0;
  bool ok() const { return power_formula && commutator_formula; }
};

/// Requires r >= 1 and 2^r <= 2^(k+1).
CollectionCheck collection_identity_check(const GroupContext& ctx, const Element& a, const Element& b, int r);

}  // namespace pro2
