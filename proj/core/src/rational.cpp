#include "fullproj/rational.hpp"

#include <climits>
#include <stdexcept>

namespace fullproj {

Rational::Rational(std::int64_t v) {
  // mpz_class has no int64 constructor on every platform; go through strings
  // only when the value does not fit in long.
  if (v >= LONG_MIN && v <= LONG_MAX) {
    q_ = mpq_class(static_cast<long>(v));
  } else {
    q_ = mpq_class(std::to_string(v));
  }
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  q_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  q_.canonicalize();
}

Rational::Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  const auto slash = s.find('/');
  auto valid = [](const std::string& part, bool allow_sign) {
    if (part.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!valid(s, true)) throw std::invalid_argument("malformed rational: " + s);
    if (s[0] == '+') s.erase(0, 1);
    return Rational(mpq_class(mpz_class(s)));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!valid(num, true) || !valid(den, false)) throw std::invalid_argument("malformed rational: " + s);
  if (num[0] == '+') num.erase(0, 1);
  mpz_class d(den);
  if (d == 0) throw std::invalid_argument("zero denominator");
  return Rational(mpq_class(mpz_class(num), d));
}

std::string Rational::to_string() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

bool Rational::is_integer() const { return q_.get_den() == 1; }

std::int64_t Rational::numerator_i64() const {
  if (!q_.get_num().fits_slong_p()) throw std::overflow_error("numerator too large");
  return q_.get_num().get_si();
}

std::int64_t Rational::denominator_i64() const {
  if (!q_.get_den().fits_slong_p()) throw std::overflow_error("denominator too large");
  return q_.get_den().get_si();
}

std::string Rational::numerator_str() const { return q_.get_num().get_str(); }
std::string Rational::denominator_str() const { return q_.get_den().get_str(); }

Rational Rational::floor() const {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return Rational(mpq_class(f));
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(q_))); }

Rational& Rational::operator+=(const Rational& o) {
  q_ += o.q_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  q_ -= o.q_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  q_ *= o.q_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.q_ == 0) throw std::domain_error("division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-q_)); }

std::size_t Rational::hash() const {
  const std::size_t a = std::hash<std::string>{}(q_.get_num().get_str(16));
  const std::size_t b = std::hash<std::string>{}(q_.get_den().get_str(16));
  return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace fullproj
