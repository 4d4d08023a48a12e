#ifndef SPR_SCALAR_HPP
#define SPR_SCALAR_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "spr/errors.hpp"

namespace spr {

enum class FieldKind { Rationals, QuadExt };

/// Identifies one of the supported ordered fields: Q or Q(sqrt d) with d squarefree, d >= 2.
/// The square root is always the positive real one, which fixes the ordering.
class FieldTag {
 public:
  FieldTag() = default;

  static FieldTag rationals() { return FieldTag(); }
  /// Throws std::invalid_argument unless d >= 2 and squarefree.
  static FieldTag quadratic(std::int64_t d);
  /// Accepts "Q" and "Q(sqrt:<d>)".
  static FieldTag parse(std::string_view text);

  FieldKind kind() const noexcept { return kind_; }
  bool is_rationals() const noexcept { return kind_ == FieldKind::Rationals; }
  /// 0 for Q.
  std::int64_t radicand() const noexcept { return d_; }
  std::string to_string() const;

  friend bool operator==(const FieldTag&, const FieldTag&) = default;

 private:
  FieldKind kind_ = FieldKind::Rationals;
  std::int64_t d_ = 0;
};

enum class Sign : int { Minus = -1, Zero = 0, Plus = 1 };

inline Sign operator*(Sign a, Sign b) {
  return static_cast<Sign>(static_cast<int>(a) * static_cast<int>(b));
}
inline Sign operator-(Sign a) { return static_cast<Sign>(-static_cast<int>(a)); }
char to_char(Sign s);

/// Exact element a + b*sqrt(d) of a supported field. For Q, b is always zero.
/// a and b are kept in canonical mpq form, so structural equality is value equality.
class Scalar {
 public:
  /// Rational zero.
  Scalar() = default;
  explicit Scalar(const FieldTag& field) : field_(field) {}
  Scalar(const FieldTag& field, mpq_class a, mpq_class b = 0);

  static Scalar rational(const mpq_class& q) { return Scalar(FieldTag::rationals(), q); }
  static Scalar from_int(const FieldTag& field, long v) { return Scalar(field, mpq_class(v)); }
  static Scalar one(const FieldTag& field) { return Scalar(field, mpq_class(1)); }

  const FieldTag& field() const noexcept { return field_; }
  const mpq_class& rational_part() const noexcept { return a_; }
  const mpq_class& radical_part() const noexcept { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  /// True when the value lies in Q (radical part zero), whatever the field.
  bool has_rational_value() const { return sgn(b_) == 0; }

  Scalar inv() const;
  /// Same value relabelled into another field. FieldMismatch if a radical part would be lost.
  Scalar in_field(const FieldTag& target) const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& y);
  Scalar& operator-=(const Scalar& y);
  Scalar& operator*=(const Scalar& y);
  Scalar& operator/=(const Scalar& y);

  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }

  friend bool operator==(const Scalar& x, const Scalar& y) {
    return x.field_ == y.field_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

 private:
  void require_same_field(const Scalar& y) const;

  FieldTag field_;
  mpq_class a_;
  mpq_class b_;
};

/// Exact sign of a + b*sqrt(d); never consults floating point.
Sign sign(const Scalar& x);

/// Total order induced by sign(x - y): negative, zero, positive.
int compare(const Scalar& x, const Scalar& y);
Scalar abs(const Scalar& x);

/// The unique integer k with k <= N*x < k+1.
mpz_class floor_scaled(const Scalar& x, const mpz_class& n);

/// floor_scaled(x, n) / n as a rational in the field of x.
Scalar round_down(const Scalar& x, const mpz_class& n);

/// rational := ['-'] digits ['/' digits], nonzero denominator.
mpq_class parse_rational(std::string_view text);
std::string format_rational(const mpq_class& q);

/// Human-readable "a" or "a + b*sqrt(d)"; not the interchange grammar.
std::string to_string(const Scalar& x);
/// Nearest double, for diagnostics only.
double approximate(const Scalar& x);

}  // namespace spr

#endif  // SPR_SCALAR_HPP
