// SPDX-License-Identifier: MIT
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <doctest.h>

#include "hsrlink/channel.hpp"
#include "hsrlink/geometry.hpp"
#include "hsrlink/oracle.hpp"
#include "hsrlink/rng.hpp"

using namespace hsrlink;
using cd = std::complex<double>;

namespace {

DeploymentConfig small_config(int n) {
  DeploymentConfig cfg;
  cfg.n = n;
  cfg.t_x = 2;
  cfg.t_y = 2;
  return cfg;
}

LargeScaleMap midpoint_map(const DeploymentConfig& cfg) {
  const double x = (cfg.rru_count / 2 - 1) * cfg.d_h + cfg.d_h / 2.0;
  return dominant_set(cfg, {x, 0.0});
}

double frame_norm2(const Frame& f) {
  double acc = 0.0;
  for (const cd& v : f) acc += std::norm(v);
  return acc;
}

}  // namespace

TEST_CASE("stationary channel is a pure gain with antenna broadcast") {
  const DeploymentConfig cfg = small_config(16);
  const LargeScaleMap map = midpoint_map(cfg);
  const ChannelMatrix ch = build_los_channel(map, 0.0, cfg.n, cfg.t_x, cfg.t_y);
  double rho_sum = 0.0;
  for (const auto& p : map) rho_sum += p.rho;

  Rng rng = Rng::stream(3, "chan-v0", 0);
  const Frame x = make_unit_phase_frame(cfg.n, cfg.t_x, rng);
  const Frame y = ch.apply(x);
  REQUIRE(static_cast<int>(y.size()) == cfg.n * cfg.t_y);
  for (int k = 0; k < cfg.n; ++k) {
    cd block_sum = 0.0;
    for (int a = 0; a < cfg.t_x; ++a) block_sum += x[k * cfg.t_x + a];
    for (int b = 0; b < cfg.t_y; ++b)
      CHECK(std::abs(y[k * cfg.t_y + b] - rho_sum * block_sum) < 1e-9);
  }
}

TEST_CASE("factored frame product equals dense materialization") {
  const DeploymentConfig cfg = small_config(32);
  const LargeScaleMap map = midpoint_map(cfg);
  const ChannelMatrix los = build_los_channel(map, 0.08, cfg.n, cfg.t_x, cfg.t_y);
  Rng rng = Rng::stream(3, "chan-dense", 0);
  const SmallScaleFading fading = draw_fading(map.size(), rng);
  const ChannelMatrix ric = build_rician_channel(los, 100.0, fading, 0.08, cfg.n);

  for (const ChannelMatrix* ch : {&los, &ric}) {
    const DenseMatrix dense = dense_channel(*ch);
    const Frame x = make_qpsk_frame(cfg.n, cfg.t_x, rng);
    const Frame fast = ch->apply(x);
    const Frame fast_t = ch->apply_transpose(ch->apply(x));
    const std::vector<cd> slow = dense.apply(x);
    const std::vector<cd> slow_t = dense.apply_transpose(dense.apply(x));
    for (std::size_t i = 0; i < fast.size(); ++i) CHECK(std::abs(fast[i] - slow[i]) < 1e-10);
    for (std::size_t i = 0; i < fast_t.size(); ++i)
      CHECK(std::abs(fast_t[i] - slow_t[i]) < 1e-10);
  }
}

TEST_CASE("K to infinity degenerates to the LOS channel") {
  const DeploymentConfig cfg = small_config(32);
  const LargeScaleMap map = midpoint_map(cfg);
  const ChannelMatrix los = build_los_channel(map, 0.08, cfg.n, cfg.t_x, cfg.t_y);
  Rng rng = Rng::stream(3, "chan-kinf", 0);
  const SmallScaleFading fading = draw_fading(map.size(), rng);
  const ChannelMatrix ric = build_rician_channel(
      los, std::numeric_limits<double>::infinity(), fading, 0.08, cfg.n);
  const DenseMatrix a = dense_channel(los);
  const DenseMatrix b = dense_channel(ric);
  REQUIRE(a.a.size() == b.a.size());
  for (std::size_t i = 0; i < a.a.size(); ++i) CHECK(std::abs(a.a[i] - b.a[i]) < 1e-12);
}

TEST_CASE("K = 1 splits LOS power by sqrt(1/2)") {
  const DeploymentConfig cfg = small_config(16);
  const LargeScaleMap map = midpoint_map(cfg);
  const ChannelMatrix los = build_los_channel(map, 0.08, cfg.n, cfg.t_x, cfg.t_y);
  SmallScaleFading zero;
  zero.r.assign(map.size(), 0.0);  // NLOS absent: only the LOS scaling remains
  const ChannelMatrix ric = build_rician_channel(los, 1.0, zero, 0.08, cfg.n);
  Rng rng = Rng::stream(3, "chan-k1", 0);
  const Frame x = make_unit_phase_frame(cfg.n, cfg.t_x, rng);
  const Frame yl = los.apply(x);
  const Frame yr = ric.apply(x);
  const double split = std::sqrt(0.5);
  for (std::size_t i = 0; i < yl.size(); ++i)
    CHECK(std::abs(yr[i] - split * yl[i]) < 1e-12);
}

TEST_CASE("Rician dense matrix equals brute-force assembly") {
  // Independent assembly: sqrt(K/(K+1)) * sum_t rho_t C(eps_t) (x) G
  //                     + sqrt(1/(K+1)) * (sum_t rho_t r_t) * D(omega) (x) G.
  const DeploymentConfig cfg = small_config(32);
  const LargeScaleMap map = midpoint_map(cfg);
  const double w = 0.08, K = 100.0;
  const ChannelMatrix los = build_los_channel(map, w, cfg.n, cfg.t_x, cfg.t_y);
  Rng rng = Rng::stream(3, "chan-assembly", 0);
  const SmallScaleFading fading = draw_fading(map.size(), rng);
  const ChannelMatrix ric = build_rician_channel(los, K, fading, w, cfg.n);
  const DenseMatrix got = dense_channel(ric);

  std::vector<IciMatrix> parts;
  for (const auto& p : map)
    parts.push_back(build_los_ici_matrix(w * p.cos_aoa, cfg.n));
  const IciMatrix spread = build_nlos_ici_matrix(w, cfg.n);
  const double los_scale = std::sqrt(K / (K + 1.0));
  const double nlos_scale = std::sqrt(1.0 / (K + 1.0));
  cd fading_sum = 0.0;
  for (std::size_t t = 0; t < map.size(); ++t) fading_sum += map[t].rho * fading.r[t];

  for (int rk = 0; rk < cfg.n; ++rk)
    for (int ck = 0; ck < cfg.n; ++ck) {
      cd scalar = nlos_scale * fading_sum * spread.entry(rk, ck);
      for (std::size_t t = 0; t < map.size(); ++t)
        scalar += los_scale * map[t].rho * parts[t].entry(rk, ck);
      for (int b = 0; b < cfg.t_y; ++b)
        for (int a = 0; a < cfg.t_x; ++a)
          CHECK(std::abs(got.at(rk * cfg.t_y + b, ck * cfg.t_x + a) - scalar) < 1e-12);
    }
}

TEST_CASE("transmit adds noise of the requested variance") {
  const DeploymentConfig cfg = small_config(64);
  const LargeScaleMap map = midpoint_map(cfg);
  const ChannelMatrix ch = build_los_channel(map, 0.0, cfg.n, cfg.t_x, cfg.t_y);
  Rng rng = Rng::stream(3, "chan-noise", 0);
  const Frame x(cfg.n * cfg.t_x, 0.0);  // silence: output is pure noise
  double acc = 0.0;
  int count = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Frame y = transmit(ch, x, 2.0, rng);
    acc += frame_norm2(y);
    count += static_cast<int>(y.size());
  }
  CHECK(acc / count == doctest::Approx(2.0).epsilon(0.05));
  // noiseless transmit is exactly the channel product
  const Frame x2 = make_unit_phase_frame(cfg.n, cfg.t_x, rng);
  const Frame clean = transmit(ch, x2, 0.0, rng);
  const Frame direct = ch.apply(x2);
  for (std::size_t i = 0; i < clean.size(); ++i) CHECK(clean[i] == direct[i]);
}

TEST_CASE("QPSK interference power matches the Gram-row prediction") {
  // E || interference at block k ||^2 over random frames equals
  // (T_y T_x)^2 * sum_{i != k} |M(k,i)|^2 with M the scalar Gram row.
  const DeploymentConfig cfg = small_config(64);
  const LargeScaleMap map = midpoint_map(cfg);
  const ChannelMatrix ch = build_los_channel(map, 0.08, cfg.n, cfg.t_x, cfg.t_y);
  const int k = cfg.n / 2;

  fft::cvec impulse(cfg.n, 0.0), col(cfg.n), row(cfg.n);
  impulse[k] = 1.0;
  ch.scalar_apply(impulse.data(), col.data());
  ch.scalar_apply_transpose(col.data(), row.data());
  double predicted = 0.0;
  for (int i = 0; i < cfg.n; ++i)
    if (i != k) predicted += std::norm(row[i]);
  predicted *= static_cast<double>(cfg.t_y * cfg.t_x) * (cfg.t_y * cfg.t_x);

  Rng rng = Rng::stream(3, "chan-qpsk", 0);
  double measured = 0.0;
  const int frames = 10000;
  for (int trial = 0; trial < frames; ++trial) {
    const Frame x = make_qpsk_frame(cfg.n, cfg.t_x, rng);
    const Frame z = ch.apply_transpose(ch.apply(x));
    cd x_sum = 0.0;
    for (int a = 0; a < cfg.t_x; ++a) x_sum += x[k * cfg.t_x + a];
    const cd desired = row[k] * static_cast<double>(cfg.t_y) * x_sum;
    for (int a = 0; a < cfg.t_x; ++a) measured += std::norm(z[k * cfg.t_x + a] - desired);
  }
  measured /= frames;
  CHECK(measured == doctest::Approx(predicted).epsilon(0.05));
}

TEST_CASE("power bookkeeping: Rician energy splits by the K weights") {
  // E||S x||^2 over fading draws = K/(K+1) ||S_L x||^2 + 1/(K+1) E||S_N x||^2.
  const DeploymentConfig cfg = small_config(32);
  const LargeScaleMap map = midpoint_map(cfg);
  const double w = 0.08, K = 1.0;
  const ChannelMatrix los = build_los_channel(map, w, cfg.n, cfg.t_x, cfg.t_y);
  Rng rng = Rng::stream(3, "chan-power", 0);
  const Frame x = make_unit_phase_frame(cfg.n, cfg.t_x, rng);
  const Frame y_los = los.apply(x);

  // unit-weight spread response (I_D (x) G) x, recovered from one draw
  SmallScaleFading probe;
  probe.r.assign(map.size(), 0.0);
  probe.r[0] = 1.0;
  const ChannelMatrix ric_probe = build_rician_channel(los, K, probe, w, cfg.n);
  Frame y_spread = ric_probe.apply(x);
  const double los_scale = std::sqrt(K / (K + 1.0));
  const double nlos_scale = std::sqrt(1.0 / (K + 1.0));
  for (std::size_t i = 0; i < y_spread.size(); ++i)
    y_spread[i] = (y_spread[i] - los_scale * y_los[i]) / (nlos_scale * map[0].rho);

  double rho2_sum = 0.0;
  for (const auto& p : map) rho2_sum += p.rho * p.rho;
  const double expected = K / (K + 1.0) * frame_norm2(y_los) +
                          1.0 / (K + 1.0) * rho2_sum * frame_norm2(y_spread);

  double acc = 0.0;
  const int draws = 4000;
  for (int trial = 0; trial < draws; ++trial) {
    const SmallScaleFading fading = draw_fading(map.size(), rng);
    const ChannelMatrix ric = build_rician_channel(los, K, fading, w, cfg.n);
    acc += frame_norm2(ric.apply(x));
  }
  CHECK(acc / draws == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("frame generators have unit average symbol power") {
  Rng rng = Rng::stream(3, "chan-frames", 0);
  const Frame q = make_qpsk_frame(256, 2, rng);
  const Frame u = make_unit_phase_frame(256, 2, rng);
  for (const cd& v : q) CHECK(std::abs(std::norm(v) - 1.0) < 1e-12);
  for (const cd& v : u) CHECK(std::abs(std::norm(v) - 1.0) < 1e-12);
  // QPSK symbols take values on the four diagonal points
  for (const cd& v : q) {
    CHECK(std::abs(std::abs(v.real()) - std::sqrt(0.5)) < 1e-12);
    CHECK(std::abs(std::abs(v.imag()) - std::sqrt(0.5)) < 1e-12);
  }
}
