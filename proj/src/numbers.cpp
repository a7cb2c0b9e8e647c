#include "renormkit/numbers.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

namespace renormkit {

namespace mp = boost::multiprecision;

bool is_perfect_square(const BigInt& n, BigInt* root) {
  if (n < 0) return false;
  BigInt s = mp::sqrt(n);
  if (s * s != n) return false;
  if (root) *root = s;
  return true;
}

std::pair<BigInt, BigInt> squarefree_decompose(const BigInt& n, std::uint64_t max_trial) {
  if (n <= 0) throw DomainError("squarefree_decompose: argument must be positive");
  BigInt rem = n;
  BigInt k = 1;
  BigInt d = 1;
  for (std::uint64_t p = 2;; p += (p == 2 ? 1 : 2)) {
    BigInt pb = p;
    if (pb * pb * pb > rem) break;
    if (p > max_trial) {
      throw BudgetError("squarefree_decompose: radicand too large to factor");
    }
    int e = 0;
    while (rem % pb == 0) {
      rem /= pb;
      ++e;
    }
    for (int i = 0; i + 1 < e; i += 2) k *= pb;
    if (e % 2 == 1) d *= pb;
  }
  // Every prime factor of rem now exceeds its cube root, so rem is 1, a
  // prime, a product of two distinct primes, or a prime square.
  BigInt root;
  if (rem > 1 && is_perfect_square(rem, &root)) {
    k *= root;
  } else {
    d *= rem;
  }
  return {k, d};
}

BigInt floor_of(const Rational& x) {
  BigInt num = mp::numerator(x);
  BigInt den = mp::denominator(x);
  BigInt q = num / den;
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

QuadSurd::QuadSurd(Rational a, Rational b, BigInt radicand)
    : a_(std::move(a)), b_(std::move(b)), d_(std::move(radicand)) {
  if (b_ != 0 && d_ < 2) throw DomainError("QuadSurd: radicand must be >= 2");
  if (b_ == 0) d_ = 0;
}

QuadSurd QuadSurd::from_pqr(const BigInt& p, const BigInt& q, const BigInt& r, const BigInt& d) {
  if (r == 0) throw DomainError("QuadSurd: zero denominator");
  if (q == 0) return QuadSurd(Rational(p, r));
  if (d <= 0) throw DomainError("QuadSurd: radicand must be positive");
  auto [k, sf] = squarefree_decompose(d);
  if (sf == 1) return QuadSurd(Rational(p + q * k, r));
  return QuadSurd(Rational(p, r), Rational(q * k, r), sf);
}

void QuadSurd::check_field(const QuadSurd& o) const {
  if (b_ != 0 && o.b_ != 0 && d_ != o.d_) {
    throw DomainError("QuadSurd: mixed quadratic fields sqrt(" + d_.str() + ") and sqrt(" +
                      o.d_.str() + ")");
  }
}

void QuadSurd::adopt_field(const QuadSurd& o) {
  if (b_ == 0) d_ = o.d_;
}

QuadSurd::Pqr QuadSurd::pqr() const {
  BigInt den_a = mp::denominator(a_);
  BigInt den_b = mp::denominator(b_);
  BigInt r = mp::lcm(den_a, den_b);
  BigInt p = mp::numerator(a_) * (r / den_a);
  BigInt q = mp::numerator(b_) * (r / den_b);
  BigInt g = mp::gcd(mp::gcd(p, q), r);
  if (g > 1) {
    p /= g;
    q /= g;
    r /= g;
  }
  return {p, q, r, b_ == 0 ? BigInt(0) : d_};
}

int QuadSurd::sign() const {
  int sa = a_.sign();
  int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 against b^2 D.
  Rational diff = a_ * a_ - b_ * b_ * Rational(d_);
  return diff.sign() * sa;
}

QuadSurd QuadSurd::conjugate() const {
  QuadSurd c = *this;
  c.b_ = -c.b_;
  return c;
}

Rational QuadSurd::norm() const { return a_ * a_ - b_ * b_ * Rational(d_); }

BigInt QuadSurd::floor() const {
  if (b_ == 0) return floor_of(a_);
  auto approx = to_float<Float128>();
  BigInt k(mp::floor(approx));
  while (*this < QuadSurd(Rational(k))) k -= 1;
  while (*this >= QuadSurd(Rational(k + 1))) k += 1;
  return k;
}

QuadSurd QuadSurd::operator-() const {
  QuadSurd c = *this;
  c.a_ = -c.a_;
  c.b_ = -c.b_;
  return c;
}

QuadSurd& QuadSurd::operator+=(const QuadSurd& o) {
  check_field(o);
  adopt_field(o);
  a_ += o.a_;
  b_ += o.b_;
  if (b_ == 0) d_ = 0;
  return *this;
}

QuadSurd& QuadSurd::operator-=(const QuadSurd& o) {
  check_field(o);
  adopt_field(o);
  a_ -= o.a_;
  b_ -= o.b_;
  if (b_ == 0) d_ = 0;
  return *this;
}

QuadSurd& QuadSurd::operator*=(const QuadSurd& o) {
  check_field(o);
  adopt_field(o);
  Rational a = a_ * o.a_ + b_ * o.b_ * Rational(d_);
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  if (b_ == 0) d_ = 0;
  return *this;
}

QuadSurd& QuadSurd::operator/=(const QuadSurd& o) {
  if (o.is_zero()) throw DomainError("QuadSurd: division by zero");
  check_field(o);
  Rational n = o.norm();
  QuadSurd inv = o.conjugate();
  inv.a_ /= n;
  inv.b_ /= n;
  return *this *= inv;
}

bool operator==(const QuadSurd& x, const QuadSurd& y) {
  if (x.a_ != y.a_ || x.b_ != y.b_) return false;
  return x.b_ == 0 || x.d_ == y.d_;
}

std::strong_ordering operator<=>(const QuadSurd& x, const QuadSurd& y) {
  int s = (x - y).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double QuadSurd::to_double() const { return static_cast<double>(to_float<Float128>()); }

std::string QuadSurd::to_string() const {
  auto [p, q, r, d] = pqr();
  if (q == 0) return r == 1 ? p.str() : p.str() + "/" + r.str();
  std::ostringstream os;
  os << "(" << p;
  os << (q < 0 ? " - " : " + ");
  BigInt aq = q < 0 ? BigInt(-q) : q;
  if (aq != 1) os << aq << "*";
  os << "sqrt(" << d << "))";
  if (r != 1) os << "/" << r;
  return os.str();
}

std::string QuadSurd::to_spec() const {
  auto [p, q, r, d] = pqr();
  return "surd:" + p.str() + "," + q.str() + "," + r.str() + "," + (q == 0 ? BigInt(1) : d).str();
}

QuadSurd pow(const QuadSurd& x, std::int64_t n) {
  if (n < 0) return pow(QuadSurd(1) / x, -n);
  QuadSurd result(1);
  QuadSurd base = x;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

std::string format_sig(double x, int digits) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general,
                           digits);
  return std::string(buf.data(), res.ptr);
}

}  // namespace renormkit
