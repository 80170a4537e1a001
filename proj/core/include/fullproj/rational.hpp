#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace fullproj {

// Exact rational in lowest terms with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t v);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const mpq_class& q);

  // Accepts "a", "-a", "a/b".
  static Rational parse(std::string_view text);

  const mpq_class& raw() const { return q_; }
  std::string to_string() const;

  bool is_integer() const;
  int sign() const { return sgn(q_); }
  std::int64_t numerator_i64() const;
  std::int64_t denominator_i64() const;
  std::string numerator_str() const;
  std::string denominator_str() const;

  Rational floor() const;
  Rational abs() const;
  double to_double() const { return q_.get_d(); }

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const;

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

using RationalVector = std::vector<Rational>;

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

}  // namespace fullproj

template <>
struct std::hash<fullproj::Rational> {
  std::size_t operator()(const fullproj::Rational& r) const { return r.hash(); }
};
