#include "renormkit/cardioid.hpp"

#include <ostream>

namespace renormkit {

CardioidPoint cardioid_point(const RotationNumber& theta) {
  using F = Float128;
  F x = to_binfloat<128>(theta);
  auto c = cardioid_value<128>(x);
  F a = 2 * boost::math::constants::pi<F>() * x;
  return {theta, c.re, c.im, cos(a), sin(a)};
}

std::vector<RotationNumber> pullback_sequence(const RenormWord& word, const RotationNumber& r0,
                                              std::size_t steps) {
  if (r0.is_zero()) throw DomainError("pullback_sequence: r0 must lie in (0, 1)");
  EigenData eig = periodic_point(word);
  const std::size_t m = word.size();
  std::vector<AntiBranch> branches;
  for (std::size_t i = 1; i <= m; ++i) {
    branches.push_back(antirenorm_branch_for(eig.theta_star, i));
  }
  auto distance = [&](const RotationNumber& r) -> Float128 {
    if (r.is_exact()) return (r.exact() - eig.v).abs().to_float<Float128>();
    return abs(r.approx() - eig.v.to_float<Float128>());
  };

  std::vector<RotationNumber> seq{r0};
  Float128 prev = distance(r0);
  for (std::size_t k = 0; k < steps; ++k) {
    RotationNumber r = seq.back();
    for (std::size_t i = m; i-- > 0;) r = antirenorm_rotation(r, branches[i]);
    Float128 d = distance(r);
    if (d > prev) {
      throw DomainError("pullback_sequence: distance to theta_star grew at step " +
                        std::to_string(k + 1) + "; r0 is outside the basin of the inverse branch");
    }
    prev = d;
    seq.push_back(std::move(r));
  }
  return seq;
}

namespace {

template <unsigned Bits>
bool resolvable(const QuadSurd& delta) {
  using F = BinFloat<Bits>;
  if (delta.is_zero()) return true;
  F d = abs(delta.to_float<F>());
  return d >= 1000 * ldexp(F(1), -static_cast<int>(Bits));
}

template <unsigned Bits>
void fill_rows(ScalingReport& rep, const std::vector<RotationNumber>& seq, const QuadSurd& ts,
               std::size_t count) {
  using F = BinFloat<Bits>;
  const F two_pi = 2 * boost::math::constants::pi<F>();
  const F theta = ts.to_float<F>();
  const F ls_re = cos(two_pi * theta), ls_im = sin(two_pi * theta);
  const auto cs = cardioid_value<Bits>(theta);

  F prev_abs = 0, prev_dc = 0;
  for (std::size_t n = 0; n < count; ++n) {
    const auto& r = seq[n];
    QuadSurd delta = r.exact() - ts;
    F d = delta.to_float<F>();
    // lambda_r - lambda_s = lambda_s (e^{i phi} - 1), phi = 2 pi delta.
    F phi = two_pi * d;
    F s_half = sin(phi / 2);
    F e_re = -2 * s_half * s_half, e_im = sin(phi);
    F dl_re = ls_re * e_re - ls_im * e_im;
    F dl_im = ls_re * e_im + ls_im * e_re;
    // c(r) - c(s) = dl (1/2 - (2 lambda_s + dl)/4).
    F k_re = F(1) / 2 - (2 * ls_re + dl_re) / 4;
    F k_im = -(2 * ls_im + dl_im) / 4;
    F dc_re = dl_re * k_re - dl_im * k_im;
    F dc_im = dl_re * k_im + dl_im * k_re;
    F abs_d = abs(d);
    F abs_dc = sqrt(dc_re * dc_re + dc_im * dc_im);

    ScalingRow row;
    row.step = n;
    row.r = r;
    row.abs_err = static_cast<double>(abs_d);
    row.c_re = static_cast<double>(cs.re + dc_re);
    row.c_im = static_cast<double>(cs.im + dc_im);
    if (n > 0 && abs_d > 0) {
      row.angle_ratio = static_cast<double>(prev_abs / abs_d);
      row.param_ratio = static_cast<double>(prev_dc / abs_dc);
    }
    prev_abs = abs_d;
    prev_dc = abs_dc;
    rep.rows.push_back(std::move(row));
  }
}

template <unsigned Bits>
std::size_t resolvable_prefix(const std::vector<QuadSurd>& deltas) {
  std::size_t k = 0;
  while (k < deltas.size() && resolvable<Bits>(deltas[k])) ++k;
  return k;
}

}  // namespace

ScalingReport scaling_report(const RenormWord& word, const RotationNumber& r0, std::size_t steps,
                             unsigned min_bits) {
  EigenData eig = periodic_point(word);
  if (!r0.is_exact()) throw DomainError("scaling_report: r0 must be exact (p/q or surd)");
  auto seq = pullback_sequence(word, r0, steps);

  ScalingReport rep;
  rep.theta_star = eig.theta_star;
  rep.word = word;
  rep.lambda_star = eig.lambda_star;

  std::vector<QuadSurd> deltas;
  for (const auto& r : seq) deltas.push_back(r.exact() - eig.v);

  struct Level {
    unsigned bits;
    std::size_t (*prefix)(const std::vector<QuadSurd>&);
    void (*fill)(ScalingReport&, const std::vector<RotationNumber>&, const QuadSurd&, std::size_t);
  };
  static const Level levels[] = {
      {128, resolvable_prefix<128>, fill_rows<128>},
      {256, resolvable_prefix<256>, fill_rows<256>},
      {512, resolvable_prefix<512>, fill_rows<512>},
      {1024, resolvable_prefix<1024>, fill_rows<1024>},
      {2048, resolvable_prefix<2048>, fill_rows<2048>},
  };
  if (min_bits > 2048) throw PrecisionError("scaling_report: precision above 2048 bits unsupported");
  const Level* chosen = nullptr;
  std::size_t count = 0;
  for (const auto& lv : levels) {
    if (lv.bits < min_bits) continue;
    chosen = &lv;
    count = lv.prefix(deltas);
    if (count == deltas.size()) break;
  }
  rep.precision_bits = chosen->bits;
  rep.truncated = count < deltas.size();
  chosen->fill(rep, seq, eig.v, count);
  if (rep.rows.size() >= 3) {
    rep.residual = std::abs(rep.rows.back().angle_ratio - rep.rows[rep.rows.size() - 2].angle_ratio);
  }
  return rep;
}

void write_scaling_csv(std::ostream& os, const ScalingReport& report) {
  auto num = [](double x) { return std::isnan(x) ? std::string() : format_sig(x, 17); };
  os << "step,r,abs_err,angle_ratio,c_re,c_im,param_ratio\n";
  for (const auto& row : report.rows) {
    os << row.step << ',' << format_sig(row.r.to_double(), 17) << ',' << num(row.abs_err) << ','
       << num(row.angle_ratio) << ',' << num(row.c_re) << ',' << num(row.c_im) << ','
       << num(row.param_ratio) << '\n';
  }
}

}  // namespace renormkit
