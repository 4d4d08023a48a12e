#include "spr/scalar.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace spr {

NotRational::NotRational(std::vector<std::pair<std::size_t, std::size_t>> positions)
    : Error([&] {
        std::string msg = "matrix has irrational entries at";
        for (const auto& [i, j] : positions) {
          msg += " (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
        }
        return msg;
      }()),
      positions_(std::move(positions)) {}

FieldTag FieldTag::quadratic(std::int64_t d) {
  if (d < 2) throw std::invalid_argument("radicand must be at least 2");
  for (std::int64_t f = 2; f * f <= d; ++f) {
    if (d % (f * f) == 0) {
      throw std::invalid_argument("radicand " + std::to_string(d) + " is not squarefree");
    }
  }
  FieldTag tag;
  tag.kind_ = FieldKind::QuadExt;
  tag.d_ = d;
  return tag;
}

FieldTag FieldTag::parse(std::string_view text) {
  if (text == "Q") return rationals();
  constexpr std::string_view prefix = "Q(sqrt:";
  if (text.size() > prefix.size() + 1 && text.substr(0, prefix.size()) == prefix &&
      text.back() == ')') {
    std::string_view digits = text.substr(prefix.size(), text.size() - prefix.size() - 1);
    std::int64_t d = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(digits[i])) || d > (INT64_MAX - 9) / 10) {
        throw ParseError("bad radicand in field tag", prefix.size() + i);
      }
      d = d * 10 + (digits[i] - '0');
    }
    try {
      return quadratic(d);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), prefix.size());
    }
  }
  throw ParseError("unknown field tag '" + std::string(text) + "'", 0);
}

std::string FieldTag::to_string() const {
  if (is_rationals()) return "Q";
  return "Q(sqrt:" + std::to_string(d_) + ")";
}

char to_char(Sign s) {
  switch (s) {
    case Sign::Plus:
      return '+';
    case Sign::Minus:
      return '-';
    case Sign::Zero:
      break;
  }
  return '0';
}

Scalar::Scalar(const FieldTag& field, mpq_class a, mpq_class b)
    : field_(field), a_(std::move(a)), b_(std::move(b)) {
  a_.canonicalize();
  b_.canonicalize();
  if (field_.is_rationals() && sgn(b_) != 0) {
    throw FieldMismatch("radical part given for a scalar over Q");
  }
}

void Scalar::require_same_field(const Scalar& y) const {
  if (!(field_ == y.field_)) {
    throw FieldMismatch("operands over " + field_.to_string() + " and " + y.field_.to_string());
  }
}

Scalar Scalar::operator-() const {
  Scalar r(*this);
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& y) {
  require_same_field(y);
  a_ += y.a_;
  b_ += y.b_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& y) {
  require_same_field(y);
  a_ -= y.a_;
  b_ -= y.b_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& y) {
  require_same_field(y);
  if (field_.is_rationals()) {
    a_ *= y.a_;
    return *this;
  }
  // (a + b r)(a' + b' r) = (aa' + bb'd) + (ab' + a'b) r
  mpq_class a = a_ * y.a_ + b_ * y.b_ * field_.radicand();
  mpq_class b = a_ * y.b_ + y.a_ * b_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

Scalar Scalar::inv() const {
  if (is_zero()) throw DivisionByZero();
  if (sgn(b_) == 0) return Scalar(field_, 1 / a_);
  // 1/(a + b r) = (a - b r) / (a^2 - b^2 d); the norm is nonzero because d is not a square.
  mpq_class norm = a_ * a_ - b_ * b_ * field_.radicand();
  return Scalar(field_, a_ / norm, -b_ / norm);
}

Scalar& Scalar::operator/=(const Scalar& y) {
  require_same_field(y);
  return *this *= y.inv();
}

Scalar Scalar::in_field(const FieldTag& target) const {
  if (field_ == target) return *this;
  if (sgn(b_) != 0) {
    throw FieldMismatch("cannot move " + field_.to_string() + " element with radical part to " +
                        target.to_string());
  }
  return Scalar(target, a_);
}

Sign sign(const Scalar& x) {
  const int sa = sgn(x.rational_part());
  const int sb = sgn(x.radical_part());
  if (sb == 0) return static_cast<Sign>(sa);
  if (sa == 0 || sa == sb) return static_cast<Sign>(sb);
  // Opposite strict signs: the part with the larger square wins. Equality cannot occur.
  const mpq_class lhs = x.rational_part() * x.rational_part();
  const mpq_class rhs = x.radical_part() * x.radical_part() * x.field().radicand();
  return static_cast<Sign>(lhs > rhs ? sa : sb);
}

int compare(const Scalar& x, const Scalar& y) { return static_cast<int>(sign(x - y)); }

Scalar abs(const Scalar& x) { return sign(x) == Sign::Minus ? -x : x; }

namespace {

mpz_class floor_of(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace

mpz_class floor_scaled(const Scalar& x, const mpz_class& n) {
  const mpq_class p = x.rational_part() * n;
  const mpq_class q = x.radical_part() * n;
  if (sgn(q) == 0) return floor_of(p);

  // |q| sqrt(d) = sqrt(q^2 d) lies in [s, s+1) with s = isqrt(floor(q^2 d)).
  const mpz_class t = floor_of(q * q * x.field().radicand());
  mpz_class s;
  mpz_sqrt(s.get_mpz_t(), t.get_mpz_t());
  if (sgn(q) < 0) s = -s;
  mpz_class k = floor_of(p) + s;

  auto residual_sign = [&](const mpz_class& c) {
    return sign(Scalar(x.field(), p - mpq_class(c), q));
  };
  while (residual_sign(k) == Sign::Minus) --k;
  while (residual_sign(k + 1) != Sign::Minus) ++k;
  return k;
}

Scalar round_down(const Scalar& x, const mpz_class& n) {
  return Scalar(x.field(), mpq_class(floor_scaled(x, n), n));
}

mpq_class parse_rational(std::string_view text) {
  std::size_t pos = 0;
  std::string num;
  if (pos < text.size() && text[pos] == '-') {
    num.push_back('-');
    ++pos;
  }
  const std::size_t num_start = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    num.push_back(text[pos++]);
  }
  if (pos == num_start) throw ParseError("expected digits", pos);

  std::string den = "1";
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    const std::size_t den_start = pos;
    den.clear();
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      den.push_back(text[pos++]);
    }
    if (pos == den_start) throw ParseError("expected denominator digits", pos);
    if (den.find_first_not_of('0') == std::string::npos) {
      throw ParseError("zero denominator", den_start);
    }
  }
  if (pos != text.size()) throw ParseError("unexpected character", pos);

  mpq_class q{mpz_class(num), mpz_class(den)};
  q.canonicalize();
  return q;
}

std::string format_rational(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Scalar& x) {
  if (x.field().is_rationals()) return format_rational(x.rational_part());
  return format_rational(x.rational_part()) + " + " + format_rational(x.radical_part()) +
         "*sqrt(" + std::to_string(x.field().radicand()) + ")";
}

double approximate(const Scalar& x) {
  return x.rational_part().get_d() +
         x.radical_part().get_d() * std::sqrt(static_cast<double>(x.field().radicand()));
}

}  // namespace spr
