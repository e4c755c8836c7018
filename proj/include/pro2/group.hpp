#pragma once

// Exact arithmetic in the finite 2-groups
//
//   G_k = < x, y | x^(2^(k+1)), y^4, [x^(2^k), y], [y^2, x],
//                  [y_0, y_i]^2, [y_0, y_i, x], [y_0, y_i, y]  (1 <= i <= 2^(k-1)) >
//
// with y_i = y^(x^i) = x^-i y x^i and [a, b] = a^-1 b^-1 a b.
//
// Every element has a unique normal form
//
//   x^a * y_0^e_0 ... y_{n-1}^e_{n-1} * (y^2)^delta * c_1^f_1 ... c_{n/2}^f_{n/2}
//
// where n = 2^k, a is taken mod 2^(k+1), and c_d = [y_0, y_d] are the central
// commutators.  The commutator [y_i, y_j] only depends on the folded distance
// min(|i-j|, n-|i-j|), so collecting a word in the y_i reduces to counting
// inversions by distance.

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>

namespace pro2 {

inline constexpr int kMinLevel = 2;
// logOrder must fit into a 64-bit coordinate word.
inline constexpr int kMaxLevel = 5;

/// Level k together with the sizes derived from it.  Cheap value type.
class GroupContext {
 public:
  explicit GroupContext(int k);

  int k() const noexcept { return k_; }
  /// Number of conjugates y_0 .. y_{n-1}, n = 2^k.
  int ny() const noexcept { return 1 << k_; }
  /// Number of central commutators c_1 .. c_{n/2}.
  int nc() const noexcept { return 1 << (k_ - 1); }
  /// Order of x, 2^(k+1).
  int x_mod() const noexcept { return 1 << (k_ + 1); }
  /// log2 |G_k| = 2^k + 2^(k-1) + k + 2.
  int log_order() const noexcept { return ny() + nc() + k_ + 2; }

  // Coordinate layout used by coords() and depth().
  int x_pos(int bit) const noexcept { return bit; }
  int y_pos(int i) const noexcept { return k_ + 1 + i; }
  int ysq_pos() const noexcept { return k_ + 1 + ny(); }
  int c_pos(int d) const noexcept { return k_ + 1 + ny() + d; }

  friend bool operator==(const GroupContext&, const GroupContext&) = default;

 private:
  int k_;
};

/// One element of G_k in normal form.
class Element {
 public:
  /// Identity of G_k.
  explicit Element(const GroupContext& ctx) noexcept;

  /// Builds the normal form with the given coordinates; bits outside the valid
  /// ranges are rejected.
  static Element from_parts(const GroupContext& ctx, std::uint32_t x_exponent, std::uint64_t y_bits,
                            bool ysq, std::uint64_t c_bits);
  /// Inverse of coords().
  static Element from_coords(const GroupContext& ctx, std::uint64_t coords);

  GroupContext context() const { return GroupContext(k_); }
  int k() const noexcept { return k_; }

  std::uint32_t x_exponent() const noexcept { return a_; }
  /// Bit i is the exponent of y_i.
  std::uint64_t y_bits() const noexcept { return e_; }
  bool ysq() const noexcept { return delta_; }
  /// Bit d-1 is the exponent of c_d = [y_0, y_d].
  std::uint64_t c_bits() const noexcept { return f_; }

  bool y(int i) const noexcept { return (e_ >> i) & 1U; }
  bool c(int d) const noexcept { return (f_ >> (d - 1)) & 1U; }

  bool is_identity() const noexcept { return a_ == 0 && e_ == 0 && !delta_ && f_ == 0; }

  friend bool operator==(const Element&, const Element&) = default;

 private:
  friend Element mul(const Element&, const Element&);
  friend Element inv(const Element&);

  std::uint8_t k_;
  bool delta_ = false;
  std::uint32_t a_ = 0;
  std::uint64_t e_ = 0;
  std::uint64_t f_ = 0;
};

enum class Generator { x, y, y_i, c_d, ysq, w };

/// Normal form of a named element.  `index` is i for y_i and d for c_d.
/// Throws std::out_of_range when the index is outside 0 <= i < 2^k or
/// 1 <= d <= 2^(k-1).
Element generator(const GroupContext& ctx, Generator name, int index = 0);

Element gen_x(const GroupContext& ctx);
Element gen_y(const GroupContext& ctx);
Element gen_y_conj(const GroupContext& ctx, int i);
Element gen_central(const GroupContext& ctx, int d);
Element gen_ysq(const GroupContext& ctx);
/// w = y_{n-1} ... y_1 y_0.
Element gen_w(const GroupContext& ctx);

/// Throws ContextMismatch when g and h live in different G_k.
Element mul(const Element& g, const Element& h);
Element inv(const Element& g);
Element pow(const Element& g, long long n);
/// [g, h] = g^-1 h^-1 g h.
Element comm(const Element& g, const Element& h);
/// Left-normed [g, h, ..., h] with m copies of h; m = 0 returns g.
Element comm_left(const Element& g, const Element& h, int m);
/// Left-normed [e_0, e_1, ..., e_r].
Element comm_left(std::span<const Element> word);
/// g^-1 h g
Element conj(const Element& h, const Element& g);
/// Least power of two t with g^t = 1.
long long element_order(const Element& g);

inline Element operator*(const Element& g, const Element& h) { return mul(g, h); }

/// [y, x, ..., x] with i-1 copies of x; i = 1 gives y.
Element comm_yx(const GroupContext& ctx, int i);
/// [y, x, ..., x, y] with i-2 copies of x, for i >= 2.
Element comm_yxy(const GroupContext& ctx, int i);

/// Polycyclic coordinate vector: bit p is coordinate p in the layout of
/// GroupContext (x bits low to high, then y_0.., then y^2, then c_1..).
std::uint64_t coords(const Element& g) noexcept;
/// Index of the first nonzero coordinate; log_order() for the identity.
int depth(const Element& g) noexcept;

/// Folded distance min(d mod n, n - d mod n); 0 means no commutator.
int fold(int d, int n) noexcept;

std::string to_string(const Element& g);
std::ostream& operator<<(std::ostream& os, const Element& g);

}  // namespace pro2

template <>
struct std::hash<pro2::Element> {
  std::size_t operator()(const pro2::Element& g) const noexcept {
    return std::hash<std::uint64_t>{}(pro2::coords(g) * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(g.k()));
  }
};
