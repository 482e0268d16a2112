// SPDX-License-Identifier: MIT
#include "hsrlink/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hsrlink {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double sincpi(double e) { return e == 0.0 ? 1.0 : std::sin(kPi * e) / (kPi * e); }

double parity(int m) { return (m % 2 == 0) ? 1.0 : -1.0; }

struct MapSums {
  double rho = 0.0;       // sum rho
  double rho_sinc = 0.0;  // sum rho * sinc(eps)
  double rho_sin = 0.0;   // sum rho * sin(pi eps)
};

MapSums map_sums(const LargeScaleMap& map, double omega_d) {
  MapSums s;
  for (const auto& p : map) {
    const double eps = omega_d * p.cos_aoa;
    s.rho += p.rho;
    s.rho_sinc += p.rho * sincpi(eps);
    s.rho_sin += p.rho * std::sin(kPi * eps);
  }
  return s;
}

double ratio_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace

double lambda_los(const LargeScaleMap& map, double omega_d, int m) {
  if (map.empty()) throw std::invalid_argument("lambda_los: empty path map");
  const MapSums s = map_sums(map, omega_d);
  if (m == 0) return s.rho_sinc * s.rho_sinc + s.rho_sin * s.rho_sin / 3.0;
  // Two near-resonant cross terms plus the flat 2/(pi m)^2 floor.
  double shifted_minus = 0.0;  // sum rho sin(pi eps) / (pi (eps - m))
  double shifted_plus = 0.0;   // sum rho sin(pi eps) / (pi (eps + m))
  for (const auto& p : map) {
    const double eps = omega_d * p.cos_aoa;
    shifted_minus += p.rho * std::sin(kPi * eps) / (kPi * (eps - m));
    shifted_plus += p.rho * std::sin(kPi * eps) / (kPi * (eps + m));
  }
  const double flat = 2.0 * s.rho_sin * s.rho_sin / (kPi * kPi * m * m);
  return parity(m) * (s.rho_sinc * shifted_minus + shifted_plus * s.rho_sinc + flat);
}

LambdaRician lambda_rician(const LargeScaleMap& map, const SmallScaleFading& fading,
                           double k_factor, double omega_d, int m) {
  if (map.empty()) throw std::invalid_argument("lambda_rician: empty path map");
  if (!(k_factor > 0.0)) throw std::invalid_argument("lambda_rician: K must be positive");
  if (fading.r.size() != map.size())
    throw std::invalid_argument("lambda_rician: one fading draw per RRU required");

  const MapSums s = map_sums(map, omega_d);
  std::complex<double> faded = 0.0;  // sum rho_t r_t
  for (std::size_t i = 0; i < map.size(); ++i) faded += map[i].rho * fading.r[i];

  LambdaRician out;
  out.los = lambda_los(map, omega_d, m);
  if (m == 0) {
    out.nlos = (1.0 + zeta2 * omega_d * omega_d) * faded * faded;
    out.los_nlos = s.rho_sinc * faded +
                   (std::sqrt(2.0) * kPi / 6.0) * omega_d * s.rho_sin * faded;
    out.nlos_los = out.los_nlos;
  } else {
    out.nlos = parity(m) * omega_d * omega_d / (static_cast<double>(m) * m) * faded * faded;
    const auto cross = [&](int mm) {
      double acc = 0.0;
      for (const auto& p : map) {
        const double eps = omega_d * p.cos_aoa;
        acc += p.rho * (-omega_d / (std::sqrt(2.0) * mm) +
                        std::sin(kPi * eps) / (kPi * (eps + mm)) +
                        std::sqrt(2.0) * eps * omega_d / (static_cast<double>(mm) * mm));
      }
      return parity(mm) * faded * acc;
    };
    out.los_nlos = cross(m);
    out.nlos_los = cross(-m);
  }
  if (std::isinf(k_factor)) {
    out.combined = out.los;  // K -> inf: the mixture weights collapse onto LOS
    return out;
  }
  const double kp1 = k_factor + 1.0;
  out.combined = (k_factor / kp1) * out.los +
                 (std::sqrt(k_factor) / kp1) * (out.los_nlos + out.nlos_los) +
                 (1.0 / kp1) * out.nlos;
  return out;
}

double sir_exact(const ChannelMatrix& channel, int k) {
  const int n = channel.n();
  if (k < 0 || k >= n) throw std::out_of_range("sir_exact: subcarrier out of range");
  if (channel.pure_los()) {
    // A circulant: the Gram matrix A^T A is circulant too, so the SIR is the
    // same at every subcarrier and falls out of one inverse transform.
    const fft::cvec& spec = channel.los_spectrum();
    fft::cvec gram(n);
    for (int q = 0; q < n; ++q) gram[q] = spec[(n - q) % n] * spec[q];
    fft::inverse_inplace(gram.data(), n);
    const double num = std::norm(gram[0]);
    double den = 0.0;
    for (int m = 1; m < n; ++m) den += std::norm(gram[m]);
    return den == 0.0 ? kInf : num / den;
  }
  fft::cvec impulse(n, 0.0);
  impulse[k] = 1.0;
  fft::cvec col(n), row(n);
  channel.scalar_apply(impulse.data(), col.data());
  channel.scalar_apply_transpose(col.data(), row.data());
  const double num = std::norm(row[k]);
  double den = 0.0;
  for (int i = 0; i < n; ++i)
    if (i != k) den += std::norm(row[i]);
  return den == 0.0 ? kInf : num / den;
}

double sir_unequalized(const ChannelMatrix& channel, int k) {
  const int n = channel.n();
  if (k < 0 || k >= n) throw std::out_of_range("sir_unequalized: subcarrier out of range");
  const double num = std::norm(channel.scalar_entry(k, k));
  double den = 0.0;
  for (int i = 0; i < n; ++i)
    if (i != k) den += std::norm(channel.scalar_entry(k, i));
  return den == 0.0 ? kInf : num / den;
}

double sir_closed_form(const LargeScaleMap& map, double omega_d, int max_offset) {
  if (max_offset < 1) throw std::invalid_argument("sir_closed_form: max_offset must be >= 1");
  const double num = lambda_los(map, omega_d, 0);
  double den = 0.0;
  double partial_zeta4 = 0.0;
  for (int m = 1; m <= max_offset; ++m) {
    const double c = lambda_los(map, omega_d, m);  // symmetric in +/- m
    den += 2.0 * c * c;
    partial_zeta4 += 1.0 / (static_cast<double>(m) * m * m * m);
  }
  // The surviving large-offset term decays as 2 (sum rho sin)^2 / (pi m)^2.
  const MapSums s = map_sums(map, omega_d);
  const double tail_coeff = 2.0 * s.rho_sin * s.rho_sin / (kPi * kPi);
  den += 2.0 * tail_coeff * tail_coeff * (zeta4 - partial_zeta4);
  return den == 0.0 ? kInf : (num * num) / den;
}

SirBounds sir_bounds_awgn(double psi, double omega_d, double cos_theta_a,
                          double cos_theta_b) {
  if (!(omega_d > 0.0)) throw std::invalid_argument("sir_bounds_awgn: omega_d must be > 0");
  const double w4 = omega_d * omega_d * omega_d * omega_d;
  const double ca4 = std::pow(cos_theta_a, 4);
  const double cb4 = std::pow(cos_theta_b, 4);
  SirBounds b;
  b.max_sir = psi / (72.0 * w4 * ca4 * zeta4);
  b.min_sir = 1.0 / (8.0 * w4 * cb4 * zeta4);
  return b;
}

SirBounds sir_bounds_rician(const LargeScaleMap& map, const SmallScaleFading& fading,
                            double k_factor, double omega_d) {
  if (map.size() < 2)
    throw std::invalid_argument("sir_bounds_rician: abeam map with flanking RRUs required");
  if (!(k_factor > 0.0) || std::isinf(k_factor))
    throw std::invalid_argument("sir_bounds_rician: K must be finite and positive");
  if (fading.r.empty()) throw std::invalid_argument("sir_bounds_rician: fading draws required");
  const double rho_c = map[0].rho;       // abeam RRU
  const double rho_f = map[1].rho;       // flanking RRU
  const double ca = std::abs(map[1].cos_aoa);
  // Midpoint angle recovered from the abeam geometry: the perpendicular
  // offset is the nearest distance, the spacing comes from the flank.
  const double d_v = map[0].distance;
  const double d_h = std::sqrt(std::max(0.0, map[1].distance * map[1].distance - d_v * d_v));
  const double cb = (d_h / 2.0) / std::hypot(d_h / 2.0, d_v);

  const std::complex<double> r = fading.r[0];
  std::complex<double> s;
  if (fading.r.size() >= 3)
    s = fading.r[1] + fading.r[2];
  else if (fading.r.size() == 2)
    s = fading.r[0] + fading.r[1];
  else
    s = std::sqrt(2.0) * fading.r[0];

  const double sqk = std::sqrt(k_factor);
  const double w4 = omega_d * omega_d * omega_d * omega_d;

  const double num_max = rho_c * rho_c * std::norm((sqk + r) * (sqk + r));
  const std::complex<double> den_max_core =
      3.0 * k_factor * rho_f * ca * ca - 2.0 * sqk * rho_f * ca * ca * r + rho_c * r * r;
  const double den_max = 8.0 * zeta4 * w4 * std::norm(den_max_core);

  const std::complex<double> num_min_core = 4.0 * k_factor + 2.0 * sqk * s + s * s;
  const std::complex<double> den_min_core = 8.0 * k_factor * cb * cb + s * s;
  const double num_min = std::norm(num_min_core);
  const double den_min = 2.0 * zeta4 * w4 * std::norm(den_min_core);

  SirBounds b;
  b.max_sir = den_max == 0.0 ? kInf : num_max / den_max;
  b.min_sir = den_min == 0.0 ? kInf : num_min / den_min;
  return b;
}

double alg1_max_sir_sample(double psi, double omega_d, double cos_theta_a,
                           double k_factor, double u) {
  if (!(k_factor > 0.0)) throw std::invalid_argument("alg1_max_sir_sample: K must be > 0");
  if (u < 0.0) throw std::invalid_argument("alg1_max_sir_sample: residual power must be >= 0");
  const double w2 = omega_d * omega_d;
  const double ca4 = std::pow(cos_theta_a, 4);
  if (std::isinf(k_factor)) return psi / (72.0 * w2 * w2 * ca4 * zeta4);
  return psi * k_factor / (72.0 * w2 * w2 * ca4 * zeta4 * k_factor + psi * zeta2 * w2 * u);
}

SirStats rician_sir_stats(double psi, double omega_d, double cos_theta_a,
                          double k_factor) {
  if (!(k_factor > 0.0)) throw std::invalid_argument("rician_sir_stats: K must be > 0");
  const double w2 = omega_d * omega_d;
  const double ca4 = std::pow(cos_theta_a, 4);
  const double ln10 = std::log(10.0);
  SirStats st;
  if (std::isinf(k_factor))
    st.mean_max_sir = psi / (72.0 * w2 * w2 * ca4 * zeta4);
  else
    st.mean_max_sir =
        psi * k_factor / (72.0 * w2 * w2 * ca4 * zeta4 * k_factor + psi * zeta2 * w2);
  const double ratio = 1.0 + psi * zeta2 / (29.0 * w2 * ca4 * zeta4 * k_factor);
  const double l = std::log10(ratio);
  st.var_max_db2 = 8.0 * l * l;
  if (std::isinf(k_factor)) {
    st.var_max_full_db2 = 0.0;
    st.var_min_full_db2 = 0.0;
  } else {
    st.var_max_full_db2 = 400.0 / (ln10 * ln10 * k_factor);
    st.var_min_full_db2 = 200.0 / (ln10 * ln10 * k_factor);
  }
  return st;
}

double proper_k(double psi, double omega_d, double cos_theta_a, double chi) {
  if (!(chi > 0.0) || !(chi < 1.0)) throw std::invalid_argument("proper_k: chi must be in (0,1)");
  const auto ver = [&](double k) {
    const SirStats st = rician_sir_stats(psi, omega_d, cos_theta_a, k);
    const double mean_db = ratio_db(st.mean_max_sir);
    if (mean_db <= 0.0) return kInf;
    return st.var_max_db2 / mean_db;
  };
  double lo = 0.0, hi = 12.0;  // log10 K
  if (ver(std::pow(10.0, hi)) > chi) return kInf;
  if (ver(std::pow(10.0, lo)) < chi) return 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (ver(std::pow(10.0, mid)) > chi)
      lo = mid;
    else
      hi = mid;
  }
  return std::pow(10.0, 0.5 * (lo + hi));
}

double matched_filter_snr(const LargeScaleMap& map, int t_y, double noise_var) {
  if (map.empty()) throw std::invalid_argument("matched_filter_snr: empty path map");
  if (t_y <= 0) throw std::invalid_argument("matched_filter_snr: t_y must be positive");
  if (!(noise_var > 0.0)) throw std::invalid_argument("matched_filter_snr: noise_var must be > 0");
  double rho = 0.0;
  for (const auto& p : map) rho += p.rho;
  return t_y * rho * rho / noise_var;
}

AsqResult asq(const std::function<double(double)>& sinr_profile, double gamma,
              double v, double span_m, double t_s) {
  if (!(v > 0.0)) throw std::invalid_argument("asq: speed must be positive");
  if (span_m < 0.0) throw std::invalid_argument("asq: span must be non-negative");
  if (!(t_s > 0.0)) throw std::invalid_argument("asq: symbol duration must be positive");
  AsqResult res;
  if (span_m == 0.0) return res;

  const double g2 = gamma * gamma;
  const auto capacity = [&](double sinr) {
    if (std::isinf(sinr)) return std::log2(1.0 + g2);
    return std::log2(1.0 + g2 / (g2 / sinr + 1.0));
  };

  constexpr int intervals = 800;  // composite Simpson, even count
  const double h = span_m / intervals;
  double sinr_min = kInf, sinr_max = 0.0;
  double acc = 0.0;
  for (int i = 0; i <= intervals; ++i) {
    const double sinr = sinr_profile(i * h);
    if (!(sinr >= 0.0)) throw std::domain_error("asq: SINR profile must be non-negative");
    sinr_min = std::min(sinr_min, sinr);
    sinr_max = std::max(sinr_max, sinr);
    const double f = capacity(sinr);
    const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    acc += w * f;
  }
  res.integral_value = acc * h / 3.0 / (v * t_s);
  res.two_point_value =
      span_m / (2.0 * v * t_s) * (capacity(sinr_max) + capacity(sinr_min));
  return res;
}

}  // namespace hsrlink
