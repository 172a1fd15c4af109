#include "evote/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace evote {

namespace {

bool isIntegerLiteral(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(std::int64_t value) {
  mpz_class z;
  // mpz_class has no int64 constructor on every platform; go through the string form.
  z.set_str(std::to_string(value), 10);
  value_ = mpq_class(z);
}

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw std::invalid_argument("Rational: zero denominator");
  mpz_class n;
  mpz_class d;
  n.set_str(std::to_string(numerator), 10);
  d.set_str(std::to_string(denominator), 10);
  value_ = mpq_class(n, d);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!isIntegerLiteral(num) || !isIntegerLiteral(den) || den[0] == '-') {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("malformed rational '" + std::string(text) + "': zero denominator");
  return Rational(mpq_class(n, d));
}

std::string Rational::numerator() const { return value_.get_num().get_str(); }

std::string Rational::denominator() const { return value_.get_den().get_str(); }

bool Rational::isInteger() const { return value_.get_den() == 1; }

Rational Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return Rational(mpq_class(q));
}

std::string Rational::toString() const { return numerator() + "/" + denominator(); }

Rational &Rational::operator+=(const Rational &rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational &Rational::operator-=(const Rational &rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational &Rational::operator*=(const Rational &rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational &Rational::operator/=(const Rational &rhs) {
  if (rhs.value_ == 0) throw std::domain_error("Rational: division by zero");
  value_ /= rhs.value_;
  return *this;
}

bool operator==(const Rational &lhs, const Rational &rhs) { return cmp(lhs.value_, rhs.value_) == 0; }

std::strong_ordering operator<=>(const Rational &lhs, const Rational &rhs) {
  int c = cmp(lhs.value_, rhs.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace evote
