#include "k0s/exactmath.hpp"

#include <string>

namespace k0s::exactmath {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Field Field::prime(std::uint32_t p) {
  if (!is_prime(p)) throw ArithmeticError("field modulus " + std::to_string(p) + " is not prime");
  return Field{p};
}

std::string Field::name() const {
  return is_rational() ? std::string("Q") : "Fp:" + std::to_string(modulus);
}

Scalar::Scalar(long value, Field field) : value_(value), field_(field) { reduce(); }

Scalar::Scalar(const mpq_class& value, Field field) : value_(value), field_(field) {
  value_.canonicalize();
  reduce();
}

void Scalar::reduce() {
  if (field_.is_rational()) return;
  const mpz_class p = field_.modulus;
  mpz_class num = value_.get_num();
  mpz_class den = value_.get_den();
  if (den != 1) {
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0) {
      throw ArithmeticError("denominator not invertible in " + field_.name());
    }
    num *= inv;
  }
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
  value_ = mpq_class(r);
}

Scalar Scalar::parse(std::string_view text, Field field) {
  std::string s(text);
  const auto trim = [](std::string& t) {
    const auto b = t.find_first_not_of(" \t");
    const auto e = t.find_last_not_of(" \t");
    t = b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
  };
  trim(s);
  if (s.empty()) throw ArithmeticError("empty scalar literal");
  if (s.front() == '+') s.erase(0, 1);
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? std::string("1") : s.substr(slash + 1);
  trim(num);
  trim(den);
  const auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = t[0] == '-' ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i) {
      if (t[i] < '0' || t[i] > '9') return false;
    }
    return true;
  };
  if (!is_int(num) || !is_int(den) || den[0] == '-') {
    throw ArithmeticError("malformed scalar literal '" + std::string(text) + "'");
  }
  mpz_class n(num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw ArithmeticError("zero denominator in '" + std::string(text) + "'");
  return Scalar(mpq_class(n, d), field);
}

std::string Scalar::str() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

void Scalar::check_same_field(const Scalar& o) const {
  if (!(field_ == o.field_)) {
    throw ArithmeticError("mixing scalars over " + field_.name() + " and " + o.field_.name());
  }
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw ArithmeticError("division by zero");
  if (field_.is_rational()) return Scalar(1 / value_, field_);
  Scalar r;
  r.field_ = field_;
  mpz_class inv;
  const mpz_class p = field_.modulus;
  mpz_invert(inv.get_mpz_t(), value_.get_num_mpz_t(), p.get_mpz_t());
  r.value_ = mpq_class(inv);
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.value_ = -r.value_;
  r.reduce();
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same_field(o);
  value_ += o.value_;
  reduce();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_same_field(o);
  value_ -= o.value_;
  reduce();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same_field(o);
  value_ *= o.value_;
  reduce();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same_field(o);
  return *this *= o.inverse();
}

}  // namespace k0s::exactmath
