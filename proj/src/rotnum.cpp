#include "renormkit/rotnum.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace renormkit {

namespace mp = boost::multiprecision;

namespace {

// Rounding allowance for one Float128 operation chain, relative to |value|.
const Float128& float_eps() {
  static const Float128 eps = ldexp(Float128(1), -124);
  return eps;
}

const Rational kHalf{1, 2};

BigInt parse_bigint(std::string_view s) {
  std::string str(s);
  if (str.empty()) throw DomainError("expected an integer, got empty text");
  std::size_t start = (str[0] == '-' || str[0] == '+') ? 1 : 0;
  if (start == str.size()) throw DomainError("expected an integer, got '" + str + "'");
  for (std::size_t i = start; i < str.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(str[i]))) {
      throw DomainError("expected an integer, got '" + str + "'");
    }
  }
  bool neg = str[0] == '-';
  str.erase(0, std::min(str.find_first_not_of("+-0"), str.size()));
  if (str.empty()) return BigInt(0);
  BigInt v(str);
  return neg ? BigInt(-v) : v;
}

Rational parse_decimal(std::string_view s) {
  std::string str(s);
  bool neg = false;
  std::size_t pos = 0;
  if (pos < str.size() && (str[pos] == '-' || str[pos] == '+')) neg = str[pos++] == '-';
  std::string digits;
  std::int64_t frac_digits = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; pos < str.size(); ++pos) {
    char c = str[pos];
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) ++frac_digits;
    } else {
      break;
    }
  }
  std::int64_t exponent = 0;
  if (pos < str.size() && (str[pos] == 'e' || str[pos] == 'E')) {
    std::string exp_text = str.substr(pos + 1);
    auto res = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    if (res.ec != std::errc() || res.ptr != exp_text.data() + exp_text.size() ||
        std::abs(exponent) > 100000) {
      throw DomainError("cannot parse rotation number '" + str + "'");
    }
    pos = str.size();
  }
  if (!any_digit || pos != str.size()) {
    throw DomainError("cannot parse rotation number '" + str + "'");
  }
  // A leading zero would select octal in the BigInt string constructor.
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size()));
  BigInt num(digits.empty() ? std::string("0") : digits);
  std::int64_t scale = exponent - frac_digits;
  Rational value(num);
  BigInt ten_pow = mp::pow(BigInt(10), static_cast<unsigned>(scale < 0 ? -scale : scale));
  value = scale < 0 ? value / Rational(ten_pow) : value * Rational(ten_pow);
  return neg ? -value : value;
}

BoundedFloat reduce_float(Float128 value, Float128 error) {
  Float128 fl = floor(value);
  value -= fl;
  return {value, error + abs(value) * float_eps()};
}

}  // namespace

std::string_view to_string(AntiBranch b) { return b == AntiBranch::OneThird ? "1/3" : "2/3"; }

// --- RotationNumber -------------------------------------------------------

RotationNumber RotationNumber::from_rational(const Rational& x) {
  const auto& num = mp::numerator(x);
  if (num >= 0 && num < mp::denominator(x)) return RotationNumber(Storage(x));
  return RotationNumber(Storage(x - Rational(floor_of(x))));
}

RotationNumber RotationNumber::from_surd(const QuadSurd& x) {
  if (x.is_rational()) return from_rational(x.rational_part());
  return RotationNumber(Storage(x - QuadSurd(Rational(x.floor()))));
}

RotationNumber RotationNumber::from_float(const Float128& value, const Float128& error) {
  if (!isfinite(value) || !isfinite(error) || error < 0) {
    throw DomainError("rotation number: non-finite value or negative error bound");
  }
  return RotationNumber(Storage(reduce_float(value, error)));
}

RotationNumber RotationNumber::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(0, 1);
  if (s.rfind("surd:", 0) == 0) {
    std::vector<std::string> parts;
    std::stringstream ss(s.substr(5));
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (parts.size() != 4) {
      throw DomainError("surd syntax is surd:p,q,r,D, got '" + s + "'");
    }
    return from_surd(QuadSurd::from_pqr(parse_bigint(parts[0]), parse_bigint(parts[1]),
                                        parse_bigint(parts[2]), parse_bigint(parts[3])));
  }
  if (auto slash = s.find('/'); slash != std::string::npos) {
    BigInt p = parse_bigint(std::string_view(s).substr(0, slash));
    BigInt q = parse_bigint(std::string_view(s).substr(slash + 1));
    if (q == 0) throw DomainError("rotation number with zero denominator");
    return from_rational(Rational(p, q));
  }
  Rational exact = parse_decimal(s);
  Float128 value = rational_to_float<Float128>(exact);
  return from_float(value, abs(value) * float_eps());
}

bool RotationNumber::is_zero() const {
  switch (kind()) {
    case Kind::Rational:
      return std::get<Rational>(value_) == 0;
    case Kind::Surd:
      return false;
    case Kind::Float:
      return false;
  }
  return false;
}

QuadSurd RotationNumber::exact() const {
  if (auto* r = std::get_if<Rational>(&value_)) return QuadSurd(*r);
  if (auto* q = std::get_if<QuadSurd>(&value_)) return *q;
  throw DomainError("rotation number is a float approximation, exact value unavailable");
}

const BoundedFloat& RotationNumber::bounded() const {
  if (auto* f = std::get_if<BoundedFloat>(&value_)) return *f;
  throw DomainError("rotation number is exact, not a bounded float");
}

Float128 RotationNumber::approx() const {
  if (auto* f = std::get_if<BoundedFloat>(&value_)) return f->value;
  return exact().to_float<Float128>();
}

std::string RotationNumber::to_string() const {
  if (auto* f = std::get_if<BoundedFloat>(&value_)) {
    return format_sig(f->value, 20) + " +- " + format_sig(f->error, 3);
  }
  return exact().to_string();
}

bool operator==(const RotationNumber& x, const RotationNumber& y) {
  if (x.is_exact() != y.is_exact()) return false;
  if (x.is_exact()) return x.exact() == y.exact();
  return x.bounded().value == y.bounded().value && x.bounded().error == y.bounded().error;
}

// --- RenormWord / matrices -------------------------------------------------

RenormWord RenormWord::parse(std::string_view text) {
  RenormWord w;
  for (char c : text) {
    if (c == 'L' || c == 'l') {
      w.symbols_.push_back(Branch::L);
    } else if (c == 'R' || c == 'r') {
      w.symbols_.push_back(Branch::R);
    } else {
      throw DomainError("renormalization word must be over {L, R}, got '" + std::string(text) +
                        "'");
    }
  }
  return w;
}

bool RenormWord::has_both_symbols() const {
  bool l = false, r = false;
  for (Branch b : symbols_) (b == Branch::L ? l : r) = true;
  return l && r;
}

std::string RenormWord::to_string() const {
  std::string s;
  for (Branch b : symbols_) s.push_back(b == Branch::L ? 'L' : 'R');
  return s;
}

AntiRenormMatrix AntiRenormMatrix::elementary(Branch b) {
  if (b == Branch::R) return {1, 1, 0, 1};
  return {1, 0, 1, 1};
}

AntiRenormMatrix operator*(const AntiRenormMatrix& x, const AntiRenormMatrix& y) {
  return {x.m11 * y.m11 + x.m12 * y.m21, x.m11 * y.m12 + x.m12 * y.m22,
          x.m21 * y.m11 + x.m22 * y.m21, x.m21 * y.m12 + x.m22 * y.m22};
}

std::string AntiRenormMatrix::to_string() const {
  return "[[" + m11.str() + "," + m12.str() + "],[" + m21.str() + "," + m22.str() + "]]";
}

AntiRenormMatrix word_to_matrix(const RenormWord& word) {
  if (word.empty()) throw DomainError("word_to_matrix: empty word");
  AntiRenormMatrix m;
  for (Branch b : word.symbols()) m = AntiRenormMatrix::elementary(b) * m;
  return m;
}

// --- branch maps ---------------------------------------------------------------

Branch branch_of(const RotationNumber& theta) {
  if (const Rational* r = theta.rational()) {
    if (*r == 0) throw DomainError("theta = 0 is the fixed cusp; no branch applies");
    return *r <= kHalf ? Branch::L : Branch::R;
  }
  if (theta.is_exact()) {
    QuadSurd x = theta.exact();
    if (x.is_zero()) throw DomainError("theta = 0 is the fixed cusp; no branch applies");
    return x <= QuadSurd(kHalf) ? Branch::L : Branch::R;
  }
  const auto& [x, e] = theta.bounded();
  if (x - e <= 0 || x + e >= 1) {
    throw AmbiguousBranchError("float rotation number " + theta.to_string() +
                               " cannot be separated from 0");
  }
  Float128 half = Float128(1) / 2;
  if (x + e <= half) return Branch::L;
  if (x - e > half) return Branch::R;
  throw AmbiguousBranchError("float rotation number " + theta.to_string() +
                             " straddles 1/2; branch is ambiguous");
}

RotationNumber apply_branch(Branch b, const RotationNumber& theta) {
  if (const Rational* r = theta.rational()) {
    // Work on p/q directly; one normalization instead of several.
    const BigInt& p = mp::numerator(*r);
    const BigInt& q = mp::denominator(*r);
    if (b == Branch::L) return RotationNumber::from_rational(Rational(p, q - p));
    if (p == 0) throw DomainError("right branch undefined at theta = 0");
    return RotationNumber::from_rational(Rational(2 * p - q, p));
  }
  if (theta.is_exact()) {
    QuadSurd x = theta.exact();
    if (b == Branch::L) {
      if (x == QuadSurd(1)) throw DomainError("left branch undefined at theta = 1");
      return RotationNumber::from_surd(x / (QuadSurd(1) - x));
    }
    if (x.is_zero()) throw DomainError("right branch undefined at theta = 0");
    return RotationNumber::from_surd((QuadSurd(2) * x - QuadSurd(1)) / x);
  }
  const auto& [x, e] = theta.bounded();
  if (b == Branch::L) {
    Float128 hi = x + e;
    if (hi >= 1) throw AmbiguousBranchError("left branch: error interval reaches 1");
    Float128 y = x / (1 - x);
    Float128 lip = 1 / ((1 - hi) * (1 - hi));
    return RotationNumber::from_float(y, e * lip + abs(y) * float_eps());
  }
  Float128 lo = x - e;
  if (lo <= 0) throw AmbiguousBranchError("right branch: error interval reaches 0");
  Float128 y = (2 * x - 1) / x;
  Float128 lip = 1 / (lo * lo);
  return RotationNumber::from_float(y, e * lip + abs(y) * float_eps());
}

RotationNumber prime_renorm(const RotationNumber& theta) {
  if (theta.is_zero()) {
    throw DomainError("prime_renorm: theta = 0 is the fixed cusp, renormalization undefined");
  }
  return apply_branch(branch_of(theta), theta);
}

RotationNumber molecule_map(const RotationNumber& theta) { return prime_renorm(theta); }

RotationNumber apply_word(const RenormWord& word, const RotationNumber& theta) {
  RotationNumber x = theta;
  for (Branch b : word.symbols()) x = apply_branch(b, x);
  return x;
}

std::pair<double, double> prime_renorm_vec(double v_minus, double w) {
  if (!(v_minus <= 0.0) || !(w >= 0.0) || (v_minus == 0.0 && w == 0.0)) {
    throw DomainError("prime_renorm_vec: input must be a nonzero vector in R<=0 x R>=0");
  }
  if (-v_minus >= w) return {v_minus + w, w};
  return {v_minus, w + v_minus};
}

std::pair<QuadSurd, QuadSurd> prime_renorm_vec(const QuadSurd& v_minus, const QuadSurd& w) {
  if (v_minus.sign() > 0 || w.sign() < 0 || (v_minus.is_zero() && w.is_zero())) {
    throw DomainError("prime_renorm_vec: input must be a nonzero vector in R<=0 x R>=0");
  }
  if (-v_minus >= w) return {v_minus + w, w};
  return {v_minus, w + v_minus};
}

// --- periodic points -------------------------------------------------------------

EigenData periodic_point(const RenormWord& word) {
  if (!word.has_both_symbols()) {
    throw DomainError("periodic_point: word '" + word.to_string() +
                      "' uses a single symbol; its fixed point degenerates to 0");
  }
  EigenData e;
  e.word = word;
  e.matrix = word_to_matrix(word);
  const auto& m = e.matrix;
  BigInt tr = m.trace();
  auto [k, d] = squarefree_decompose(tr * tr - 4);
  e.t = QuadSurd(Rational(tr, 2), Rational(k, 2), d);
  e.inv_t = QuadSurd(Rational(tr)) - e.t;
  e.lambda_star = e.t * e.t;
  // Eigenvector (-v, w) of M for 1/t: w/v = (m11 - 1/t)/m12.
  QuadSurd m12(Rational(m.m12));
  QuadSurd theta = m12 / (m12 + QuadSurd(Rational(m.m11)) - e.inv_t);
  e.theta_star = RotationNumber::from_surd(theta);
  e.v = theta;
  e.w = QuadSurd(1) - theta;

  if (!(apply_word(word, e.theta_star) == e.theta_star)) {
    throw std::logic_error("periodic_point: branch composition does not fix theta_star");
  }
  QuadSurd x1 = QuadSurd(Rational(m.m11)) * (-e.v) + QuadSurd(Rational(m.m12)) * e.w;
  QuadSurd x2 = QuadSurd(Rational(m.m21)) * (-e.v) + QuadSurd(Rational(m.m22)) * e.w;
  if (!(x1 == e.inv_t * (-e.v)) || !(x2 == e.inv_t * e.w)) {
    throw std::logic_error("periodic_point: eigenvector relation fails");
  }
  return e;
}

Itinerary itinerary(const RotationNumber& theta, std::size_t steps) {
  if (theta.is_zero()) throw DomainError("itinerary: theta = 0");
  Itinerary it;
  RotationNumber x = theta;
  for (std::size_t k = 0; k < steps; ++k) {
    if (x.is_zero()) {
      it.hit_zero = true;
      it.hit_step = k;
      break;
    }
    Branch b = branch_of(x);
    it.word.push_back(b);
    x = apply_branch(b, x);
  }
  return it;
}

RotationNumber antirenorm_rotation(const RotationNumber& mu, AntiBranch branch) {
  if (mu.is_zero()) throw DomainError("antirenorm_rotation: mu must lie in (0, 1)");
  if (const Rational* r = mu.rational()) {
    const BigInt& p = mp::numerator(*r);
    const BigInt& q = mp::denominator(*r);
    if (branch == AntiBranch::OneThird) return RotationNumber::from_rational(Rational(q, 2 * q - p));
    return RotationNumber::from_rational(Rational(p, q + p));
  }
  if (mu.is_exact()) {
    QuadSurd x = mu.exact();
    if (branch == AntiBranch::OneThird) {
      return RotationNumber::from_surd(QuadSurd(1) / (QuadSurd(2) - x));
    }
    return RotationNumber::from_surd(x / (QuadSurd(1) + x));
  }
  const auto& [x, e] = mu.bounded();
  if (x - e <= 0 || x + e >= 1) {
    throw AmbiguousBranchError("antirenorm_rotation: float mu not separated from 0");
  }
  // Both inverse branches are 1-Lipschitz on (0, 1).
  Float128 y = branch == AntiBranch::OneThird ? 1 / (2 - x) : x / (1 + x);
  return RotationNumber::from_float(y, e + abs(y) * float_eps());
}

std::optional<std::size_t> renorm_period(const RotationNumber& theta, std::size_t max_period) {
  if (!theta.is_exact()) {
    throw DomainError("renorm_period: periodicity is only decidable for exact rotation numbers");
  }
  RotationNumber x = theta;
  for (std::size_t m = 1; m <= max_period; ++m) {
    if (x.is_zero()) return std::nullopt;
    x = prime_renorm(x);
    if (x == theta) return m;
  }
  return std::nullopt;
}

AntiBranch antirenorm_branch_for(const RotationNumber& theta_star, std::size_t step_index) {
  auto period = renorm_period(theta_star);
  if (!period) {
    throw DomainError("antirenorm_branch_for: " + theta_star.to_string() +
                      " is not a periodic point of the prime renormalization");
  }
  if (step_index < 1 || step_index > *period) {
    throw DomainError("antirenorm_branch_for: step index must lie in [1, " +
                      std::to_string(*period) + "]");
  }
  RotationNumber x = theta_star;
  for (std::size_t k = 1; k < step_index; ++k) x = prime_renorm(x);
  return branch_of(x) == Branch::L ? AntiBranch::TwoThirds : AntiBranch::OneThird;
}

std::vector<BigInt> convergent_denominators(const QuadSurd& x, std::size_t count) {
  std::vector<BigInt> q;
  BigInt prev = 0, cur = 1;
  QuadSurd y = x - QuadSurd(Rational(x.floor()));
  while (q.size() < count) {
    q.push_back(cur);
    if (y.is_zero()) break;
    y = QuadSurd(1) / y;
    BigInt a = y.floor();
    y -= QuadSurd(Rational(a));
    BigInt next = a * cur + prev;
    prev = cur;
    cur = next;
  }
  return q;
}

}  // namespace renormkit
