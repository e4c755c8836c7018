#pragma once

// Subgroups of G_k held as induced bases: generators with pairwise distinct
// depths, so that every subgroup element is a unique product b_1^e_1 ... b_r^e_r
// (e_i in {0,1}, ascending depth) and membership is decided by sifting.
//
// The depth filtration G_k = G_(0) > G_(1) > ... > G_(logOrder) = 1 has index 2
// at each step, which is what makes sifting work.

#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "pro2/group.hpp"

namespace pro2 {

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 22;

/// Enumeration cap, overridden by the PRO2_CAP environment variable when set.
std::uint64_t default_enumeration_cap();

class Subgroup {
 public:
  /// Trivial subgroup of G_k.
  explicit Subgroup(const GroupContext& ctx);

  GroupContext context() const { return ctx_; }
  /// Basis in ascending depth order.
  std::span<const Element> basis() const noexcept { return basis_; }
  std::vector<int> depths() const;
  int log_order() const noexcept { return static_cast<int>(basis_.size()); }
  bool is_trivial() const noexcept { return basis_.empty(); }

  /// Residue r with g = (b_1^e_1 ... b_j^e_j) r; r is the identity iff g lies
  /// in the subgroup, and otherwise depth(r) is not a basis depth.
  Element sift(const Element& g) const;
  bool contains(const Element& g) const { return sift(g).is_identity(); }
  bool contains(const Subgroup& other) const;

  /// Normal word with the given exponent bits (bit j selects basis element j).
  Element word(std::uint64_t exponents) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b);

 private:
  friend class ClosureBuilder;

  void insert(const Element& r);

  GroupContext ctx_;
  std::vector<Element> basis_;
  std::vector<Element> inverses_;
  std::array<std::int8_t, 64> slot_;
};

/// Incremental closure: adds generators and keeps the basis closed under
/// products and squares (and conjugation by x, y when normal).
class ClosureBuilder {
 public:
  ClosureBuilder(const GroupContext& ctx, bool normal);
  explicit ClosureBuilder(Subgroup start, bool normal = false);

  /// Adds g and closes; returns false if g was already a member.
  bool add(const Element& g);
  void add_all(std::span<const Element> gens);
  const Subgroup& current() const noexcept { return sub_; }
  Subgroup take() && { return std::move(sub_); }

 private:
  void run();

  Subgroup sub_;
  bool normal_;
  std::vector<Element> queue_;
};

Subgroup trivial_subgroup(const GroupContext& ctx);
Subgroup whole_group(const GroupContext& ctx);

Subgroup subgroup_closure(const GroupContext& ctx, std::span<const Element> gens);
Subgroup subgroup_closure(const GroupContext& ctx, std::initializer_list<Element> gens);
Subgroup normal_closure(const GroupContext& ctx, std::span<const Element> gens);
Subgroup normal_closure(const GroupContext& ctx, std::initializer_list<Element> gens);

/// Stable under conjugation by x and y.
bool is_normal(const Subgroup& s);

/// [A, B] for normal A, B.  Throws PreconditionError for a non-normal operand.
Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b);

/// Subgroup generated by { a^q : a in A }, found by enumerating A.
/// Throws CapacityError when |A| exceeds cap.
Subgroup power_subgroup(const Subgroup& a, long long q, std::uint64_t cap = default_enumeration_cap());

/// M A^2 for normal M containing [A, A].  A/M is abelian, so squaring is a
/// homomorphism there and the squares of a basis of A suffice; no enumeration.
Subgroup squares_over(const Subgroup& a, const Subgroup& m);

/// A B; at least one operand must be normal for this to be the set product.
Subgroup product_subgroup(const Subgroup& a, const Subgroup& b);
Subgroup product_subgroup(std::initializer_list<Subgroup> factors);

/// A ∩ B.  Exact linear algebra when one operand contains the central layer
/// <y^2, c_d> and lies in <x^(2^k)> H_k; otherwise enumerates the smaller
/// operand (CapacityError above cap).
Subgroup intersection(const Subgroup& a, const Subgroup& b, std::uint64_t cap = default_enumeration_cap());

/// Visits every element of s; CapacityError when |s| > cap.
void for_each_element(const Subgroup& s, const std::function<void(const Element&)>& visit,
                      std::uint64_t cap = default_enumeration_cap());

/// Index as a log: log2 |A : B| for B <= A.
int log_index(const Subgroup& a, const Subgroup& b);

/// Every basis commutator and square lies in the subgroup (closure invariant).
bool is_closed(const Subgroup& s);
bool is_abelian(const Subgroup& s);
bool is_elementary_abelian(const Subgroup& s);

}  // namespace pro2
