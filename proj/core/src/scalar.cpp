#include "cuspbend/scalar.hpp"

#include <cctype>
#include <locale>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace cuspbend {

namespace {

template <class Op>
Scalar combine(const Scalar& a, const Scalar& b, Op op) {
  if (a.is_exact() && b.is_exact()) return Scalar(Rational(op(a.rational(), b.rational())));
  return Scalar(op(a.to_double(), b.to_double()));
}

}  // namespace

Scalar Scalar::exact(long num, long den) {
  if (den == 0) throw DomainError("Scalar::exact: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return Scalar(q);
}

Scalar Scalar::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  if (s.empty()) throw DomainError("Scalar::parse: empty string");
  bool is_float = s.find_first_of(".eEiInN") != std::string::npos;
  if (!is_float) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw DomainError("Scalar::parse: bad rational '" + s + "'");
    if (q.get_den() == 0) throw DomainError("Scalar::parse: zero denominator in '" + s + "'");
    q.canonicalize();
    return Scalar(q);
  }
  std::istringstream in(s);
  in.imbue(std::locale::classic());
  double v = 0.0;
  if (s == "inf" || s == "+inf") return Scalar(std::numeric_limits<double>::infinity());
  if (s == "-inf") return Scalar(-std::numeric_limits<double>::infinity());
  in >> v;
  if (in.fail() || !in.eof()) throw DomainError("Scalar::parse: bad number '" + s + "'");
  return Scalar(v);
}

const Rational& Scalar::rational() const {
  if (!is_exact()) throw ModeError("Scalar::rational: value is not exact");
  return std::get<Rational>(value_);
}

double Scalar::to_double() const {
  if (is_exact()) return std::get<Rational>(value_).get_d();
  return std::get<double>(value_);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  return *this = combine(*this, o, [](const auto& x, const auto& y) { return x + y; });
}

Scalar& Scalar::operator-=(const Scalar& o) {
  return *this = combine(*this, o, [](const auto& x, const auto& y) { return x - y; });
}

Scalar& Scalar::operator*=(const Scalar& o) {
  return *this = combine(*this, o, [](const auto& x, const auto& y) { return x * y; });
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_exact() && o.rational() == 0) throw DomainError("Scalar: division by exact zero");
  return *this = combine(*this, o, [](const auto& x, const auto& y) { return x / y; });
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(Rational(-rational()));
  return Scalar(-std::get<double>(value_));
}

bool Scalar::is_exact_zero() const { return rational() == 0; }

bool Scalar::is_zero(double tol) const {
  if (is_exact()) return rational() == 0;
  return std::abs(std::get<double>(value_)) <= tol;
}

int Scalar::sign(double tol) const {
  if (is_exact()) return sgn(rational());
  double v = std::get<double>(value_);
  if (std::abs(v) <= tol) return 0;
  return v > 0 ? 1 : -1;
}

bool Scalar::identical(const Scalar& o) const {
  if (is_exact() != o.is_exact()) return false;
  if (is_exact()) return rational() == o.rational();
  return std::get<double>(value_) == std::get<double>(o.value_);
}

std::string Scalar::to_string() const {
  if (is_exact()) {
    const Rational& q = rational();
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
  }
  double v = std::get<double>(value_);
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::setprecision(17) << v;
  return out.str();
}

Scalar abs(const Scalar& x) {
  if (x.is_exact()) return Scalar(Rational(::abs(x.rational())));
  return Scalar(std::abs(x.to_double()));
}

Scalar log(const Scalar& x) {
  if (x.is_exact()) {
    if (x.rational() <= 0) throw DomainError("log of a nonpositive value");
    if (x.rational() == 1) return Scalar(0);
  }
  double v = x.to_double();
  if (v <= 0) throw DomainError("log of a nonpositive value");
  return Scalar(std::log(v));
}

Scalar exp(const Scalar& x) {
  if (x.is_exact() && x.rational() == 0) return Scalar(1);
  return Scalar(std::exp(x.to_double()));
}

Scalar to_float(const Scalar& x) { return Scalar(x.to_double()); }

bool approx_equal(const Scalar& a, const Scalar& b, double tol) {
  if (a.is_exact() && b.is_exact()) return a.rational() == b.rational();
  return std::abs(a.to_double() - b.to_double()) <= tol;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace cuspbend
