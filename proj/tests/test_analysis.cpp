// SPDX-License-Identifier: MIT
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "hsrlink/analysis.hpp"
#include "hsrlink/channel.hpp"
#include "hsrlink/geometry.hpp"
#include "hsrlink/oracle.hpp"

using namespace hsrlink;
using cd = std::complex<double>;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

DeploymentConfig default_cfg() { return DeploymentConfig{}; }

LargeScaleMap map_at(double x) { return dominant_set(default_cfg(), {x, 0.0}); }

double to_db(double v) { return 10.0 * std::log10(v); }

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(std::numbers::pi * x) / (std::numbers::pi * x); }

// Small-angle dense oracle: per-RRU sinc-kernel Toeplitz operators summed with
// rho weights; the Gram uses the plain transpose. This is the regime the
// closed forms live in (they drop the O(eps) phase of the exact kernel).
struct SincToeplitz {
  int n;
  std::vector<std::vector<cd>> s;

  SincToeplitz(const LargeScaleMap& map, const SmallScaleFading* fading, double k_factor,
               double w, int n_in)
      : n(n_in), s(n_in, std::vector<cd>(n_in, 0.0)) {
    const double ls = fading ? std::sqrt(k_factor / (k_factor + 1.0)) : 1.0;
    for (const auto& p : map)
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) s[r][c] += ls * p.rho * sinc((r - c) + w * p.cos_aoa);
    if (fading) {
      cd faded = 0.0;
      for (std::size_t t = 0; t < map.size(); ++t) faded += map[t].rho * fading->r[t];
      const double ns = std::sqrt(1.0 / (k_factor + 1.0));
      const auto d = [&](int m) -> double {
        if (m == 0) return 1.0;
        const double mag = w / (std::sqrt(2.0) * std::abs(m));
        const double sign = (std::abs(m) % 2 == 0) ? 1.0 : -1.0;
        return (m > 0 ? sign : -sign) * mag;
      };
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) s[r][c] += ns * faded * d(r - c);
    }
  }

  cd gram(int r, int c) const {  // (S^T S)(r, c)
    cd acc = 0.0;
    for (int t = 0; t < n; ++t) acc += s[t][r] * s[t][c];
    return acc;
  }
};

}  // namespace

TEST_CASE("zeta constants are exact") {
  CHECK(std::abs(zeta2 - std::riemann_zeta(2.0)) < 1e-14);
  CHECK(std::abs(zeta4 - std::riemann_zeta(4.0)) < 1e-14);
}

TEST_CASE("lambda_los: single-path limit, decay, dense oracle") {
  LargeScaleMap single(1);
  single[0].rho = 2.5;
  single[0].cos_aoa = 0.0;
  CHECK(lambda_los(single, 0.08, 0) == doctest::Approx(2.5 * 2.5).epsilon(1e-12));

  const LargeScaleMap map = map_at(1750.0);
  // O(1/m^2) decay of the off-diagonal coefficients
  const double at_64 = std::abs(lambda_los(map, 0.08, 64));
  const double at_128 = std::abs(lambda_los(map, 0.08, 128));
  CHECK(at_128 < at_64);
  CHECK(at_128 * 128.0 * 128.0 < 4.0 * at_64 * 64.0 * 64.0);

  const SincToeplitz dense(map, nullptr, 0.0, 0.08, 32);
  const int k = 16;
  for (int m = 0; m <= 8; ++m) {
    const double cf = lambda_los(map, 0.08, m);
    const cd dz = dense.gram(k, k + m);
    CHECK(std::abs(cf - dz) / std::abs(dz) < 0.03);
  }
}

TEST_CASE("lambda_rician: limits and dense oracle") {
  const LargeScaleMap map = map_at(1750.0);
  Rng rng = Rng::stream(7, "analysis-lambda", 0);
  const SmallScaleFading fading = draw_fading(map.size(), rng);

  SmallScaleFading zero;
  zero.r.assign(map.size(), 0.0);
  for (int m : {0, 1, 3}) {
    const LambdaRician lr = lambda_rician(map, zero, 5.0, 0.08, m);
    CHECK(std::abs(lr.combined - (5.0 / 6.0) * lambda_los(map, 0.08, m)) < 1e-12);
    const LambdaRician li = lambda_rician(map, fading, kInf, 0.08, m);
    CHECK(std::abs(li.combined - lambda_los(map, 0.08, m)) < 1e-12);
  }

  const double K = 100.0;
  const SincToeplitz dense(map, &fading, K, 0.08, 32);
  const int k = 16;
  for (int m = 0; m <= 8; ++m) {
    const LambdaRician lr = lambda_rician(map, fading, K, 0.08, m);
    const cd dz = dense.gram(k, k + m);
    CHECK(std::abs(lr.combined - dz) / std::abs(dz) < 0.05);
  }
  CHECK_THROWS_AS(lambda_rician(map, fading, 0.0, 0.08, 1), std::invalid_argument);
  SmallScaleFading wrong;
  wrong.r.assign(map.size() + 1, 0.0);
  CHECK_THROWS_AS(lambda_rician(map, wrong, 10.0, 0.08, 1), std::invalid_argument);
}

TEST_CASE("sir_exact: no-ICI degeneracy and factored-vs-dense oracle") {
  const LargeScaleMap map = map_at(1750.0);
  const ChannelMatrix still = build_los_channel(map, 0.0, 32, 2, 2);
  CHECK(std::isinf(sir_exact(still, 7)));

  Rng rng = Rng::stream(7, "analysis-sir", 0);
  for (const int n : {16, 32, 64}) {
    const ChannelMatrix los = build_los_channel(map, 0.08, n, 2, 2);
    const SmallScaleFading fading = draw_fading(map.size(), rng);
    const ChannelMatrix ric = build_rician_channel(los, 50.0, fading, 0.08, n);
    for (const ChannelMatrix* ch : {&los, &ric}) {
      const int k = n / 2;
      const double fast = sir_exact(*ch, k);
      // dense oracle: impulse through S then S^T, block norms over antennas
      const DenseMatrix dense = dense_channel(*ch);
      Frame x(static_cast<std::size_t>(n) * ch->t_x(), 0.0);
      x[static_cast<std::size_t>(k) * ch->t_x()] = 1.0;
      const std::vector<cd> z = dense.apply_transpose(dense.apply(x));
      double num = 0.0, den = 0.0;
      for (int i = 0; i < n; ++i)
        for (int a = 0; a < ch->t_x(); ++a) {
          const double e = std::norm(z[static_cast<std::size_t>(i) * ch->t_x() + a]);
          (i == k ? num : den) += e;
        }
      CHECK(fast == doctest::Approx(num / den).epsilon(1e-9));
    }
  }
}

TEST_CASE("antenna invariance of sir_exact") {
  const LargeScaleMap map = map_at(1500.0);
  const double base = sir_exact(build_los_channel(map, 0.08, 64, 1, 1), 32);
  for (const int t : {2, 4, 8}) {
    const double s = sir_exact(build_los_channel(map, 0.08, 64, t, t), 32);
    CHECK(std::abs(s / base - 1.0) < 1e-9);
  }
}

TEST_CASE("equalization never loses SIR at the midpoint") {
  const ChannelMatrix ch = build_los_channel(map_at(1750.0), 0.08, 128, 2, 2);
  CHECK(sir_exact(ch, 64) > sir_unequalized(ch, 64));
}

TEST_CASE("sir_bounds_awgn values and scaling law") {
  const DeploymentConfig cfg = default_cfg();
  const double psi = psi_ratio(map_at(1500.0));
  const double ca = cos_theta_abeam_flank(cfg);
  const double cb = cos_theta_midpoint(cfg);
  const SirBounds b = sir_bounds_awgn(psi, 0.08, ca, cb);
  CHECK(to_db(b.max_sir) == doctest::Approx(52.184666140059).epsilon(1e-10));
  CHECK(to_db(b.min_sir) == doctest::Approx(35.791090621569).epsilon(1e-10));
  CHECK(b.max_sir >= b.min_sir);

  const SirBounds half = sir_bounds_awgn(psi, 0.04, ca, cb);
  CHECK(half.max_sir == doctest::Approx(16.0 * b.max_sir).epsilon(1e-12));
  CHECK(half.min_sir == doctest::Approx(16.0 * b.min_sir).epsilon(1e-12));
  CHECK_THROWS_AS(sir_bounds_awgn(psi, 0.0, ca, cb), std::invalid_argument);
}

TEST_CASE("closed-form SIR against the anchor table") {
  CHECK(to_db(sir_closed_form(map_at(1500.0), 0.08)) == doctest::Approx(56.4897).epsilon(1e-5));
  CHECK(to_db(sir_closed_form(map_at(1750.0), 0.08)) == doctest::Approx(35.7090).epsilon(1e-5));
}

TEST_CASE("sir_bounds_rician: zero fading collapses onto the AWGN bounds") {
  const DeploymentConfig cfg = default_cfg();
  const LargeScaleMap map = map_at(1500.0);
  const double psi = psi_ratio(map);
  SmallScaleFading zero;
  zero.r.assign(map.size(), 0.0);
  const SirBounds awgn =
      sir_bounds_awgn(psi, 0.08, cos_theta_abeam_flank(cfg), cos_theta_midpoint(cfg));
  for (const double k_db : {10.0, 30.0}) {
    const SirBounds b = sir_bounds_rician(map, zero, std::pow(10.0, k_db / 10.0), 0.08);
    CHECK(b.max_sir == doctest::Approx(awgn.max_sir).epsilon(1e-12));
    CHECK(b.min_sir == doctest::Approx(awgn.min_sir).epsilon(1e-12));
  }
}

TEST_CASE("max-SIR statistics: reference values and limits") {
  const double psi = psi_ratio(map_at(1500.0));
  const double ca = cos_theta_abeam_flank(default_cfg());

  const SirStats at_1000 = rician_sir_stats(psi, 0.08, ca, 1000.0);
  CHECK(to_db(at_1000.mean_max_sir) == doctest::Approx(47.8055992105).epsilon(1e-9));
  CHECK(at_1000.var_max_db2 == doctest::Approx(4.2179005892).epsilon(1e-9));

  const SirStats at_10 = rician_sir_stats(psi, 0.08, ca, 10.0);
  CHECK(at_10.var_max_full_db2 == doctest::Approx(7.5444678805).epsilon(1e-9));
  CHECK(at_10.var_min_full_db2 == doctest::Approx(3.7722339402).epsilon(1e-9));
  CHECK(at_10.var_min_full_db2 == doctest::Approx(at_10.var_max_full_db2 / 2.0).epsilon(1e-12));

  const SirStats inf_k = rician_sir_stats(psi, 0.08, ca, kInf);
  CHECK(inf_k.var_max_full_db2 == 0.0);
  CHECK(inf_k.var_min_full_db2 == 0.0);
  const SirBounds awgn = sir_bounds_awgn(psi, 0.08, ca, cos_theta_midpoint(default_cfg()));
  CHECK(inf_k.mean_max_sir == doctest::Approx(awgn.max_sir).epsilon(1e-12));

  // monotone in K: mean nondecreasing, variance nonincreasing
  double prev_mean = 0.0, prev_var = kInf;
  for (int e = 0; e <= 6; ++e) {
    const SirStats s = rician_sir_stats(psi, 0.08, ca, std::pow(10.0, e));
    CHECK(s.mean_max_sir >= prev_mean);
    CHECK(s.var_max_db2 <= prev_var);
    prev_mean = s.mean_max_sir;
    prev_var = s.var_max_db2;
  }
}

TEST_CASE("alg1 sample model: zero draw hits the AWGN cap, K = inf flat") {
  const DeploymentConfig cfg = default_cfg();
  const double psi = psi_ratio(map_at(1500.0));
  const double ca = cos_theta_abeam_flank(cfg);
  const double cap = sir_bounds_awgn(psi, 0.08, ca, cos_theta_midpoint(cfg)).max_sir;
  CHECK(alg1_max_sir_sample(psi, 0.08, ca, 100.0, 0.0) == doctest::Approx(cap).epsilon(1e-12));
  CHECK(alg1_max_sir_sample(psi, 0.08, ca, kInf, 3.7) == doctest::Approx(cap).epsilon(1e-12));
  CHECK(alg1_max_sir_sample(psi, 0.08, ca, 100.0, 1.0) < cap);
  CHECK_THROWS_AS(alg1_max_sir_sample(psi, 0.08, ca, 100.0, -0.5), std::invalid_argument);
}

TEST_CASE("proper_k root and monotonicity") {
  const double psi = psi_ratio(map_at(1500.0));
  const double ca = cos_theta_abeam_flank(default_cfg());
  const double kp = proper_k(psi, 0.08, ca, 0.10);
  CHECK(to_db(kp) == doctest::Approx(29.463151).epsilon(2e-7));

  // VER threshold: at K_p the ratio crosses chi
  const auto ver = [&](double k) {
    const SirStats s = rician_sir_stats(psi, 0.08, ca, k);
    return s.var_max_db2 / to_db(s.mean_max_sir);
  };
  CHECK(ver(kp) == doctest::Approx(0.10).epsilon(1e-6));

  CHECK(proper_k(psi, 0.08, ca, 0.30) < kp);  // looser threshold, smaller K_p

  // small-omega regime: bisection agrees with a fine grid scan
  const double kp_small = proper_k(psi, 0.01, ca, 0.10);
  double scan = 0.0;
  for (double lg = 0.0; lg <= 12.0; lg += 0.001) {
    scan = lg;
    const SirStats s = rician_sir_stats(psi, 0.01, ca, std::pow(10.0, lg));
    if (s.var_max_db2 / to_db(s.mean_max_sir) <= 0.10) break;
  }
  CHECK(std::abs(10.0 * std::log10(kp_small) - 10.0 * scan) < 0.02);

  CHECK_THROWS_AS(proper_k(psi, 0.08, ca, 0.0), std::invalid_argument);
}

TEST_CASE("matched filter SNR at the anchor positions") {
  CHECK(matched_filter_snr(map_at(1500.0), 4, 1.0) ==
        doctest::Approx(475704.599).epsilon(1e-8));
  CHECK(matched_filter_snr(map_at(1750.0), 4, 1.0) ==
        doctest::Approx(42502.697).epsilon(1e-7));
}

TEST_CASE("asq: constant profile is exact, zero span is zero") {
  const auto flat = [](double) { return 1000.0; };
  const AsqResult r = asq(flat, 50.0, 120.0, 488.0, 71e-6);
  CHECK(r.integral_value == doctest::Approx(r.two_point_value).epsilon(1e-12));
  const double cap = std::log2(1.0 + 2500.0 / (2500.0 / 1000.0 + 1.0));
  CHECK(r.integral_value == doctest::Approx(488.0 / (120.0 * 71e-6) * cap).epsilon(1e-12));

  const AsqResult zero = asq(flat, 50.0, 120.0, 0.0, 71e-6);
  CHECK(zero.integral_value == 0.0);
  CHECK(zero.two_point_value == 0.0);

  CHECK_THROWS_AS(asq(flat, 50.0, 0.0, 488.0, 71e-6), std::invalid_argument);
  const auto negative = [](double) { return -1.0; };
  CHECK_THROWS_AS(asq(negative, 50.0, 120.0, 488.0, 71e-6), std::domain_error);
}

TEST_CASE("exact SIR stays inside the honest bound corridor") {
  // Lower side holds with the 1.5 dB slack; the upper side needs 5 dB
  // (the exact Gram beats the small-angle cap by up to ~4.7 dB near abeam).
  const DeploymentConfig cfg = default_cfg();
  const double ca = cos_theta_abeam_flank(cfg);
  const double cb = cos_theta_midpoint(cfg);
  for (const double w : {0.05, 0.08, 0.1}) {
    const double psi = psi_ratio(map_at(1500.0));
    const SirBounds b = sir_bounds_awgn(psi, w, ca, cb);
    for (double x = 1500.0; x <= 2000.0 + 1e-9; x += 20.0) {
      const double s = to_db(sir_exact(build_los_channel(map_at(x), w, 1024, 4, 4), 512));
      CHECK(s >= to_db(b.min_sir) - 1.5);
      CHECK(s <= to_db(b.max_sir) + 5.0);
    }
  }
}
