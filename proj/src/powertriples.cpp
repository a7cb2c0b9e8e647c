#include "renormkit/powertriples.hpp"

namespace renormkit {

std::string PowerTriple::to_string() const {
  return "(" + std::to_string(level) + "," + a.str() + "," + b.str() + ")";
}

PowerTriple make_triple(std::int64_t level, long long a, long long b) {
  if (a < 0 || b < 0) throw DomainError("power-triple coordinates must be nonnegative");
  return {level, BigInt(a), BigInt(b)};
}

TriplesContext::TriplesContext(EigenData eigen, std::int64_t level_bound)
    : eigen_(std::move(eigen)), level_bound_(level_bound) {
  if (level_bound_ < 1) throw DomainError("level bound must be positive");
  const auto& m = eigen_.matrix;
  if (m.m11 <= 0 || m.m12 <= 0 || m.m21 <= 0 || m.m22 <= 0) {
    throw DomainError("power-triples need a matrix with positive entries");
  }
  QuadSurd m11{Rational(m.m11)}, m12{Rational(m.m12)}, m21{Rational(m.m21)};
  e2_ = (eigen_.t - m11) / m21;
  u1_ = m12;
  u2_ = eigen_.t - m11;
  proj_den_inv_ = QuadSurd(1) / (u1_ + e2_ * u2_);

  QuadSurd e1_check = QuadSurd(Rational(m.m11)) + e2_ * QuadSurd(Rational(m.m21));
  QuadSurd e2_check = QuadSurd(Rational(m.m12)) + e2_ * QuadSurd(Rational(m.m22));
  if (!(e1_check == eigen_.t) || !(e2_check == eigen_.t * e2_)) {
    throw std::logic_error("TriplesContext: covector is not a left eigenvector");
  }

  t_pows_.resize(static_cast<std::size_t>(2 * level_bound_ + 1));
  t_pows_[static_cast<std::size_t>(level_bound_)] = QuadSurd(1);
  for (std::int64_t k = 1; k <= level_bound_; ++k) {
    t_pows_[static_cast<std::size_t>(level_bound_ + k)] =
        t_pows_[static_cast<std::size_t>(level_bound_ + k - 1)] * eigen_.t;
    t_pows_[static_cast<std::size_t>(level_bound_ - k)] =
        t_pows_[static_cast<std::size_t>(level_bound_ - k + 1)] * eigen_.inv_t;
  }
}

void TriplesContext::check_level(std::int64_t n) const {
  if (n > level_bound_ || n < -level_bound_) {
    throw BudgetError("power-triple level " + std::to_string(n) + " outside the configured bound " +
                      std::to_string(level_bound_));
  }
}

void TriplesContext::check_valid(const PowerTriple& p) const {
  if (p.a < 0 || p.b < 0) {
    throw DomainError("power-triple " + p.to_string() + " has a negative coordinate");
  }
}

const QuadSurd& TriplesContext::t_pow(std::int64_t n) const {
  check_level(n);
  return t_pows_[static_cast<std::size_t>(n + level_bound_)];
}

QuadSurd TriplesContext::proj(const BigInt& a, const BigInt& b) const {
  return (QuadSurd(Rational(a)) * u1_ + QuadSurd(Rational(b)) * u2_) * proj_den_inv_;
}

int TriplesContext::proj_sign(const BigInt& a, const BigInt& b) const {
  // u1, u2 and the normalizer are positive.
  return (QuadSurd(Rational(a)) * u1_ + QuadSurd(Rational(b)) * u2_).sign();
}

QuadSurd TriplesContext::iota(const PowerTriple& p) const {
  check_valid(p);
  if (p.is_zero()) return QuadSurd(0);
  return t_pow(p.level) * proj(p.a, p.b);
}

QuadSurd TriplesContext::translation_of(const PowerTriple& p) const {
  check_valid(p);
  if (p.is_zero()) return QuadSurd(0);
  return t_pow(-p.level) *
         (QuadSurd(Rational(p.b)) * eigen_.w - QuadSurd(Rational(p.a)) * eigen_.v);
}

LatticePoint TriplesContext::push_down(const LatticePoint& x) const {
  const auto& m = eigen_.matrix;
  return {x.x1 * m.m11 + x.x2 * m.m21, x.x1 * m.m12 + x.x2 * m.m22};
}

LatticePoint TriplesContext::push_up(const LatticePoint& x) const {
  const auto& m = eigen_.matrix;
  return {x.x1 * m.m22 - x.x2 * m.m21, x.x2 * m.m11 - x.x1 * m.m12};
}

PowerTriple TriplesContext::at_level(const PowerTriple& p, std::int64_t level) const {
  check_valid(p);
  check_level(level);
  if (p.is_zero()) return {level, 0, 0};
  LatticePoint x{p.a, p.b};
  std::int64_t n = p.level;
  while (n > level) {
    x = push_down(x);
    --n;
  }
  while (n < level) {
    x = push_up(x);
    ++n;
    if (x.x1 < 0 || x.x2 < 0) {
      throw DomainError("power-triple " + p.to_string() + " has no representative at level " +
                        std::to_string(level));
    }
  }
  return {n, x.x1, x.x2};
}

PowerTriple TriplesContext::canonical(const PowerTriple& p) const {
  check_valid(p);
  if (p.is_zero()) return {0, 0, 0};
  LatticePoint x{p.a, p.b};
  std::int64_t n = p.level;
  for (;;) {
    LatticePoint up = push_up(x);
    if (up.x1 < 0 || up.x2 < 0) break;
    x = up;
    ++n;
    check_level(n);
  }
  return {n, x.x1, x.x2};
}

bool TriplesContext::equivalent(const PowerTriple& p, const PowerTriple& q) const {
  return canonical(p) == canonical(q);
}

PowerTriple TriplesContext::from_lattice(std::int64_t level, const LatticePoint& x) const {
  if (x.x1 == 0 && x.x2 == 0) return {0, 0, 0};
  if (proj_sign(x.x1, x.x2) <= 0) {
    throw DomainError("lattice point has nonpositive projection; not a power-triple");
  }
  LatticePoint y = x;
  std::int64_t n = level;
  while (y.x1 < 0 || y.x2 < 0) {
    y = push_down(y);
    --n;
    check_level(n);
  }
  return {n, y.x1, y.x2};
}

PowerTriple TriplesContext::add(const PowerTriple& p, const PowerTriple& q) const {
  check_valid(p);
  check_valid(q);
  if (p.is_zero()) return q;
  if (q.is_zero()) return p;
  std::int64_t n = std::min(p.level, q.level);
  PowerTriple x = at_level(p, n);
  PowerTriple y = at_level(q, n);
  return {n, x.a + y.a, x.b + y.b};
}

std::strong_ordering TriplesContext::compare(const PowerTriple& p, const PowerTriple& q) const {
  check_valid(p);
  check_valid(q);
  if (p.is_zero() || q.is_zero()) {
    return (p.is_zero() ? 0 : 1) <=> (q.is_zero() ? 0 : 1);
  }
  std::int64_t n = std::min(p.level, q.level);
  PowerTriple x = at_level(p, n);
  PowerTriple y = at_level(q, n);
  int s = proj_sign(x.a - y.a, x.b - y.b);
  return s <=> 0;
}

PowerTriple TriplesContext::subtract(const PowerTriple& p, const PowerTriple& q) const {
  if (compare(p, q) < 0) {
    throw DomainError("subtract: " + p.to_string() + " < " + q.to_string());
  }
  if (q.is_zero()) return p;
  std::int64_t n = std::min(p.level, q.level);
  PowerTriple x = at_level(p, n);
  PowerTriple y = at_level(q, n);
  return from_lattice(n, {x.a - y.a, x.b - y.b});
}

PowerTriple TriplesContext::scale_by_t(const PowerTriple& p) const {
  check_valid(p);
  if (p.is_zero()) return p;
  check_level(p.level + 1);
  return {p.level + 1, p.a, p.b};
}

}  // namespace renormkit
