// SPDX-License-Identifier: MIT
#include "hsrlink/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "hsrlink/channel.hpp"
#include "hsrlink/equalize.hpp"
#include "hsrlink/ici.hpp"
#include "hsrlink/oracle.hpp"
#include "hsrlink/rng.hpp"

namespace hsrlink {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double to_db(double linear) { return 10.0 * std::log10(linear); }

double harmonic_sinr(double sir, double snr) {
  if (std::isinf(sir)) return snr;
  if (std::isinf(snr)) return sir;
  return 1.0 / (1.0 / sir + 1.0 / snr);
}

std::string format_k_db(double k_factor) {
  return std::isinf(k_factor) ? "inf" : format_number(to_db(k_factor));
}

// Streaming mean / unbiased variance.
struct Moments {
  long count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double d = x - mean;
    mean += d / count;
    m2 += d * (x - mean);
  }
  double variance() const { return count > 1 ? m2 / (count - 1) : 0.0; }
};

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string ExperimentResult::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ',';
    out += columns[c];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += row[c];
    }
    out += '\n';
  }
  return out;
}

SpanGeometry span_geometry(const DeploymentConfig& cfg) {
  cfg.validate();
  SpanGeometry g;
  g.x_abeam = (cfg.rru_count / 2 - 1) * cfg.d_h;
  g.x_mid = g.x_abeam + cfg.d_h / 2.0;
  g.span = cfg.d_h;
  g.map_a = dominant_set(cfg, {g.x_abeam, 0.0});
  g.map_b = dominant_set(cfg, {g.x_mid, 0.0});
  g.psi = psi_ratio(g.map_a);
  g.service_span = g.psi;  // the service span reuses the power-ratio value
  g.cos_a = cos_theta_abeam_flank(cfg);
  g.cos_b = cos_theta_midpoint(cfg);
  return g;
}

double speed_from_omega(const DeploymentConfig& cfg, double omega_d) {
  if (!(omega_d >= 0.0)) throw std::invalid_argument("speed_from_omega: omega_d must be >= 0");
  return omega_d * speed_of_light / (cfg.f_carrier * cfg.t_s);
}

LosSweepSummary los_sweep_summary(const DeploymentConfig& cfg, double omega_d,
                                  double step_m) {
  if (!(step_m > 0.0)) throw std::invalid_argument("los_sweep_summary: step must be > 0");
  const SpanGeometry g = span_geometry(cfg);
  const int k = cfg.n / 2;
  double best = 0.0, worst = kInf, raw_worst = kInf;
  for (double x = g.x_abeam; x <= g.x_abeam + g.span + 1e-9; x += step_m) {
    const LargeScaleMap map = dominant_set(cfg, {x, 0.0});
    const ChannelMatrix ch = build_los_channel(map, omega_d, cfg.n, cfg.t_x, cfg.t_y);
    const double s = sir_exact(ch, k);
    const double raw = sir_unequalized(ch, k);
    best = std::max(best, s);
    worst = std::min(worst, s);
    raw_worst = std::min(raw_worst, raw);
  }
  const SirBounds b = sir_bounds_awgn(g.psi, omega_d, g.cos_a, g.cos_b);
  LosSweepSummary out;
  out.max_sir_db = to_db(best);
  out.min_sir_db = to_db(worst);
  out.raw_min_db = to_db(raw_worst);
  out.bound_max_db = to_db(b.max_sir);
  out.bound_min_db = to_db(b.min_sir);
  out.closed_form_max_db = to_db(sir_closed_form(g.map_a, omega_d));
  out.closed_form_min_db = to_db(sir_closed_form(g.map_b, omega_d));
  return out;
}

MobileService mobile_service(const DeploymentConfig& cfg, double omega_d) {
  const SpanGeometry g = span_geometry(cfg);
  const double v = speed_from_omega(cfg, omega_d);
  const double span = g.service_span;
  const double gamma = gamma_beta(g.map_a, cfg.n, cfg.t_x, cfg.t_y).gamma;
  const double noise_var = 1.0;
  const int k = cfg.n / 2;

  // Sample the three profiles on the quadrature grid used by asq().
  constexpr int intervals = 800;
  const double h = span / intervals;
  std::vector<double> snr(intervals + 1), eq(intervals + 1), raw(intervals + 1);
  for (int i = 0; i <= intervals; ++i) {
    const double x = g.x_abeam + i * h;
    const LargeScaleMap map = dominant_set(cfg, {x, 0.0});
    snr[i] = matched_filter_snr(map, cfg.t_y, noise_var);
    const ChannelMatrix ch = build_los_channel(map, omega_d, cfg.n, cfg.t_x, cfg.t_y);
    eq[i] = harmonic_sinr(sir_exact(ch, k), snr[i]);
    raw[i] = harmonic_sinr(sir_unequalized(ch, k), snr[i]);
  }
  const auto at = [&](const std::vector<double>& tab) {
    return [&tab, h](double x) {
      return tab[static_cast<std::size_t>(std::llround(x / h))];
    };
  };
  MobileService ms;
  ms.no_ici = asq(at(snr), gamma, v, span, cfg.t_s).integral_value;
  ms.reduced = asq(at(eq), gamma, v, span, cfg.t_s).integral_value;
  ms.without = asq(at(raw), gamma, v, span, cfg.t_s).integral_value;

  const SirBounds b = sir_bounds_awgn(g.psi, omega_d, g.cos_a, g.cos_b);
  const double snr_a = matched_filter_snr(g.map_a, cfg.t_y, noise_var);
  const double snr_b = matched_filter_snr(g.map_b, cfg.t_y, noise_var);
  const double g2 = gamma * gamma;
  const auto capacity = [&](double sinr) {
    return std::log2(1.0 + g2 / (g2 / sinr + 1.0));
  };
  ms.theory = span / (2.0 * v * cfg.t_s) *
              (capacity(harmonic_sinr(b.max_sir, snr_a)) +
               capacity(harmonic_sinr(b.min_sir, snr_b)));
  return ms;
}

RicianBoundMc mc_alg2_bounds(const DeploymentConfig& cfg, double omega_d,
                             double k_factor, int iterations, std::uint64_t seed,
                             const std::string& label) {
  if (iterations < 2) throw std::invalid_argument("mc_alg2_bounds: iterations must be >= 2");
  const SpanGeometry g = span_geometry(cfg);
  Moments max_db, min_db;
  for (int i = 0; i < iterations; ++i) {
    Rng rng = Rng::stream(seed, label, static_cast<std::uint64_t>(i));
    const SmallScaleFading fading = draw_fading(g.map_a.size(), rng);
    const SirBounds b = sir_bounds_rician(g.map_a, fading, k_factor, omega_d);
    max_db.add(to_db(b.max_sir));
    min_db.add(to_db(b.min_sir));
  }
  return {{max_db.mean, max_db.variance()}, {min_db.mean, min_db.variance()}};
}

McMoments mc_alg1_max(const DeploymentConfig& cfg, double omega_d, double k_factor,
                      int iterations, std::uint64_t seed, const std::string& label) {
  if (iterations < 2) throw std::invalid_argument("mc_alg1_max: iterations must be >= 2");
  const SpanGeometry g = span_geometry(cfg);
  Moments db;
  for (int i = 0; i < iterations; ++i) {
    Rng rng = Rng::stream(seed, label, static_cast<std::uint64_t>(i));
    const double u = rng.exponential();
    db.add(to_db(alg1_max_sir_sample(g.psi, omega_d, g.cos_a, k_factor, u)));
  }
  return {db.mean, db.variance()};
}

ExperimentResult run_position_sweep(const DeploymentConfig& cfg, double omega_d,
                                    double k_factor, int algorithm, double step_m,
                                    std::uint64_t seed) {
  if (algorithm != 1 && algorithm != 2)
    throw std::invalid_argument("run_position_sweep: algorithm must be 1 or 2");
  if (!(step_m > 0.0)) throw std::invalid_argument("run_position_sweep: step must be > 0");
  const SpanGeometry g = span_geometry(cfg);
  const int k = cfg.n / 2;
  const bool rician = !std::isinf(k_factor);

  ExperimentResult res;
  res.name = "sweep";
  res.columns = {"omega_d",  "k_db",         "alg",          "seed",
                 "position_m", "sir_db",     "sir_raw_db",   "sir_theory_db",
                 "bound_max_db", "bound_min_db"};

  double bound_max_db = kInf, bound_min_db = kInf;
  if (omega_d > 0.0) {
    const SirBounds b = sir_bounds_awgn(g.psi, omega_d, g.cos_a, g.cos_b);
    bound_max_db = to_db(b.max_sir);
    bound_min_db = to_db(b.min_sir);
  }
  double theory_flat_db = kInf;
  if (rician && omega_d > 0.0)
    theory_flat_db =
        to_db(rician_sir_stats(g.psi, omega_d, g.cos_a, k_factor).mean_max_sir);

  int idx = 0;
  for (double x = g.x_abeam; x <= g.x_abeam + g.span + 1e-9; x += step_m, ++idx) {
    const LargeScaleMap map = dominant_set(cfg, {x, 0.0});
    const ChannelMatrix los = build_los_channel(map, omega_d, cfg.n, cfg.t_x, cfg.t_y);
    double sir, raw, theory_db;
    if (!rician) {
      sir = sir_exact(los, k);
      raw = sir_unequalized(los, k);
      theory_db = omega_d > 0.0 ? to_db(sir_closed_form(map, omega_d)) : kInf;
    } else {
      Rng rng = Rng::stream(seed, "sweep-fading", static_cast<std::uint64_t>(idx));
      const SmallScaleFading fading = draw_fading(map.size(), rng);
      const ChannelMatrix ch = build_rician_channel(los, k_factor, fading, omega_d, cfg.n);
      raw = sir_unequalized(ch, k);
      theory_db = theory_flat_db;
      if (algorithm == 2) {
        sir = sir_exact(ch, k);
      } else {
        // LOS-estimated equalizer on the Rician channel: Gram row of S_L^T S.
        fft::cvec impulse(cfg.n, 0.0);
        impulse[k] = 1.0;
        fft::cvec col(cfg.n), row(cfg.n);
        los.scalar_apply(impulse.data(), col.data());
        ch.scalar_apply_transpose(col.data(), row.data());
        const double num = std::norm(row[k]);
        double den = 0.0;
        for (int i = 0; i < cfg.n; ++i)
          if (i != k) den += std::norm(row[i]);
        sir = den == 0.0 ? kInf : num / den;
      }
    }
    res.rows.push_back({format_number(omega_d), format_k_db(k_factor),
                        std::to_string(algorithm), std::to_string(seed),
                        format_number(x), format_number(to_db(sir)),
                        format_number(to_db(raw)), format_number(theory_db),
                        format_number(bound_max_db), format_number(bound_min_db)});
  }
  return res;
}

ExperimentResult run_table1(const DeploymentConfig& cfg, std::uint64_t seed) {
  ExperimentResult res;
  res.name = "table1";
  res.columns = {"omega_d", "metric", "value", "seed"};
  const auto push = [&](double w, const char* metric, double value) {
    res.rows.push_back({format_number(w), metric, format_number(value),
                        std::to_string(seed)});
  };
  for (const double w : {0.05, 0.08, 0.12, 0.15, 0.2}) {
    const LosSweepSummary s = los_sweep_summary(cfg, w, 5.0);
    const MobileService ms = mobile_service(cfg, w);
    push(w, "max_sir_reduced_db", s.max_sir_db);
    push(w, "min_sir_reduced_db", s.min_sir_db);
    push(w, "min_sir_without_db", s.raw_min_db);
    push(w, "bound_max_db", s.bound_max_db);
    push(w, "bound_min_db", s.bound_min_db);
    push(w, "closed_form_max_db", s.closed_form_max_db);
    push(w, "closed_form_min_db", s.closed_form_min_db);
    push(w, "ms_no_ici", ms.no_ici);
    push(w, "ms_reduced", ms.reduced);
    push(w, "ms_theory", ms.theory);
    push(w, "ms_without", ms.without);
  }
  return res;
}

ExperimentResult run_table2(const DeploymentConfig& cfg, std::uint64_t seed) {
  const double omega_d = 0.08;
  const double k_factor = 1000.0;  // 30 dB
  ExperimentResult res;
  res.name = "table2";
  res.columns = {"algorithm", "t_antennas", "omega_d",      "k_db",
                 "seed",      "e_max_sir_db", "var_max_db2", "e_min_sir_db",
                 "var_min_db2", "sir_exact_db"};
  for (int alg = 1; alg <= 2; ++alg) {
    for (const int t : {1, 2, 4, 8}) {
      DeploymentConfig regime = cfg;
      regime.t_x = t;
      regime.t_y = t;
      const std::string label =
          "table2-alg" + std::to_string(alg) + "-t" + std::to_string(t);
      // Exact-arithmetic antenna invariance witness at the abeam point.
      const SpanGeometry g = span_geometry(regime);
      const ChannelMatrix ch =
          build_los_channel(g.map_a, omega_d, regime.n, regime.t_x, regime.t_y);
      const double exact_db = to_db(sir_exact(ch, regime.n / 2));
      std::string e_min = "", v_min = "";
      McMoments max_mc;
      if (alg == 1) {
        max_mc = mc_alg1_max(regime, omega_d, k_factor, mc_iterations, seed, label);
      } else {
        const RicianBoundMc mc =
            mc_alg2_bounds(regime, omega_d, k_factor, mc_iterations, seed, label);
        max_mc = mc.max_sir;
        e_min = format_number(mc.min_sir.mean_db);
        v_min = format_number(mc.min_sir.var_db2);
      }
      res.rows.push_back({std::to_string(alg), std::to_string(t),
                          format_number(omega_d), format_k_db(k_factor),
                          std::to_string(seed), format_number(max_mc.mean_db),
                          format_number(max_mc.var_db2), e_min, v_min,
                          format_number(exact_db)});
    }
  }
  return res;
}

ExperimentResult run_table3(const DeploymentConfig& cfg, std::uint64_t seed) {
  const double omega_d = 0.08;
  ExperimentResult res;
  res.name = "table3";
  res.columns = {"algorithm", "omega_d", "k_db", "seed", "statistic", "simulated", "theory"};
  const SpanGeometry g = span_geometry(cfg);
  const auto push = [&](int alg, double k_db, const char* stat, double sim, double th) {
    res.rows.push_back({std::to_string(alg), format_number(omega_d),
                        format_number(k_db), std::to_string(seed), stat,
                        format_number(sim), format_number(th)});
  };
  for (const double k_db : {20.0, 30.0, 40.0}) {
    const double k_factor = std::pow(10.0, k_db / 10.0);
    const std::string label = "table3-alg1-k" + format_number(k_db);
    const McMoments mc = mc_alg1_max(cfg, omega_d, k_factor, mc_iterations, seed, label);
    const SirStats st = rician_sir_stats(g.psi, omega_d, g.cos_a, k_factor);
    push(1, k_db, "e_max_sir_db", mc.mean_db, to_db(st.mean_max_sir));
    push(1, k_db, "var_max_db2", mc.var_db2, st.var_max_db2);
  }
  const SirBounds awgn = sir_bounds_awgn(g.psi, omega_d, g.cos_a, g.cos_b);
  for (const double k_db : {10.0, 20.0, 30.0}) {
    const double k_factor = std::pow(10.0, k_db / 10.0);
    const std::string label = "table3-alg2-k" + format_number(k_db);
    const RicianBoundMc mc =
        mc_alg2_bounds(cfg, omega_d, k_factor, mc_iterations, seed, label);
    const SirStats st = rician_sir_stats(g.psi, omega_d, g.cos_a, k_factor);
    push(2, k_db, "e_max_sir_db", mc.max_sir.mean_db, to_db(awgn.max_sir));
    push(2, k_db, "var_max_db2", mc.max_sir.var_db2, st.var_max_full_db2);
    push(2, k_db, "e_min_sir_db", mc.min_sir.mean_db, to_db(awgn.min_sir));
    push(2, k_db, "var_min_db2", mc.min_sir.var_db2, st.var_min_full_db2);
  }
  return res;
}

ExperimentResult run_asq(const DeploymentConfig& cfg,
                         const std::vector<double>& omega_list, std::uint64_t seed) {
  ExperimentResult res;
  res.name = "asq";
  res.columns = {"omega_d", "position_m", "seed",        "asq_no_ici",
                 "asq_reduced", "asq_without", "asq_two_point"};
  const SpanGeometry g = span_geometry(cfg);
  const int k = cfg.n / 2;
  for (const double w : omega_list) {
    const double v = speed_from_omega(cfg, w);
    const double span = g.service_span;
    const double gamma = gamma_beta(g.map_a, cfg.n, cfg.t_x, cfg.t_y).gamma;
    const double g2 = gamma * gamma;
    const auto capacity = [&](double sinr) {
      if (std::isinf(sinr)) return std::log2(1.0 + g2);
      return std::log2(1.0 + g2 / (g2 / sinr + 1.0));
    };
    const SirBounds b = sir_bounds_awgn(g.psi, w, g.cos_a, g.cos_b);
    const double snr_a = matched_filter_snr(g.map_a, cfg.t_y, 1.0);
    const double snr_b = matched_filter_snr(g.map_b, cfg.t_y, 1.0);
    const double two_point_total =
        span / (2.0 * v * cfg.t_s) *
        (capacity(harmonic_sinr(b.max_sir, snr_a)) +
         capacity(harmonic_sinr(b.min_sir, snr_b)));

    constexpr int intervals = 100;
    const double h = span / intervals;
    double acc_snr = 0.0, acc_eq = 0.0, acc_raw = 0.0;
    double prev_snr = 0.0, prev_eq = 0.0, prev_raw = 0.0;
    for (int i = 0; i <= intervals; ++i) {
      const double x = i * h;
      const LargeScaleMap map = dominant_set(cfg, {g.x_abeam + x, 0.0});
      const double snr = matched_filter_snr(map, cfg.t_y, 1.0);
      const ChannelMatrix ch = build_los_channel(map, w, cfg.n, cfg.t_x, cfg.t_y);
      const double c_snr = capacity(snr);
      const double c_eq = capacity(harmonic_sinr(sir_exact(ch, k), snr));
      const double c_raw = capacity(harmonic_sinr(sir_unequalized(ch, k), snr));
      if (i > 0) {
        acc_snr += 0.5 * (prev_snr + c_snr) * h;
        acc_eq += 0.5 * (prev_eq + c_eq) * h;
        acc_raw += 0.5 * (prev_raw + c_raw) * h;
      }
      prev_snr = c_snr;
      prev_eq = c_eq;
      prev_raw = c_raw;
      const double scale = 1.0 / (v * cfg.t_s);
      res.rows.push_back({format_number(w), format_number(x), std::to_string(seed),
                          format_number(acc_snr * scale), format_number(acc_eq * scale),
                          format_number(acc_raw * scale),
                          format_number(two_point_total * x / span)});
    }
  }
  return res;
}

ExperimentResult run_verify(const DeploymentConfig& cfg, std::uint64_t seed) {
  ExperimentResult res;
  res.name = "verify";
  res.columns = {"check", "value", "limit", "time_s", "status"};
  const auto push = [&](const std::string& check, double value, double limit,
                        double elapsed) {
    const bool pass = value <= limit;
    res.ok = res.ok && pass;
    res.rows.push_back({check, format_number(value), format_number(limit),
                        format_number(elapsed), pass ? "PASS" : "FAIL"});
  };

  // --- single-CFO matrix structure ---
  double t0 = now_seconds();
  {
    double worst = 0.0;
    for (const double eps : {0.05, 0.08, 0.2})
      worst = std::max(worst, unitarity_deviation(build_los_ici_matrix(eps, 1024)));
    push("ici_unitarity_n1024", worst, 1e-9, now_seconds() - t0);
  }
  t0 = now_seconds();
  {
    double worst = 0.0;
    for (const int n : {16, 64, 1024})
      for (const double eps : {0.0, 0.05, 0.2})
        worst = std::max(worst, std::abs(build_los_ici_matrix(eps, n).row_energy() - 1.0));
    push("ici_row_energy", worst, 1e-9, now_seconds() - t0);
  }
  t0 = now_seconds();
  {
    const IciMatrix id = build_los_ici_matrix(0.0, 1024);
    double worst = std::abs(id.generator()[0] - 1.0);
    for (int m = 1; m < 1024; ++m) worst = std::max(worst, std::abs(id.generator()[m]));
    push("ici_identity_eps0", worst, 0.0, now_seconds() - t0);
  }

  // --- factored vs dense products at N=32, T=2 ---
  t0 = now_seconds();
  {
    DeploymentConfig small = cfg;
    small.n = 32;
    small.t_x = 2;
    small.t_y = 2;
    const SpanGeometry g = span_geometry(small);
    const ChannelMatrix los =
        build_los_channel(g.map_b, 0.08, small.n, small.t_x, small.t_y);
    Rng rng = Rng::stream(seed, "verify-dense", 0);
    const SmallScaleFading fading = draw_fading(g.map_b.size(), rng);
    const ChannelMatrix ric = build_rician_channel(los, 100.0, fading, 0.08, small.n);
    double worst = 0.0;
    for (const ChannelMatrix* ch : {&los, &ric}) {
      const Frame x = make_unit_phase_frame(small.n, small.t_x, rng);
      const Frame fast = ch->apply(x);
      const auto dense = dense_channel(*ch).apply(x);
      for (std::size_t i = 0; i < fast.size(); ++i)
        worst = std::max(worst, std::abs(fast[i] - dense[i]));
    }
    push("dense_vs_factored_frame", worst, 1e-10, now_seconds() - t0);
  }

  // --- Rician degeneracy and gain limits ---
  t0 = now_seconds();
  {
    DeploymentConfig small = cfg;
    small.n = 32;
    small.t_x = 2;
    small.t_y = 2;
    const SpanGeometry g = span_geometry(small);
    const ChannelMatrix los =
        build_los_channel(g.map_a, 0.08, small.n, small.t_x, small.t_y);
    Rng rng = Rng::stream(seed, "verify-degenerate", 0);
    const SmallScaleFading fading = draw_fading(g.map_a.size(), rng);
    const ChannelMatrix ric = build_rician_channel(los, kInf, fading, 0.08, small.n);
    const Frame x = make_unit_phase_frame(small.n, small.t_x, rng);
    const Frame y = los.apply(x);
    const Frame a = equalize_los(los, y);
    const Frame b = equalize_rician(ric, y);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      worst = std::max(worst, std::abs(a[i] - b[i]));
    const auto da = dense_channel(los);
    const auto db = dense_channel(ric);
    for (std::size_t i = 0; i < da.a.size(); ++i)
      worst = std::max(worst, std::abs(da.a[i] - db.a[i]));
    push("rician_los_degeneracy", worst, 1e-12, now_seconds() - t0);

    t0 = now_seconds();
    const double gb = gamma_beta(g.map_a, small.n, small.t_x, small.t_y).gamma;
    const double gz = gamma_zeta(g.map_a, fading, kInf, small.n, small.t_x, small.t_y).gamma;
    push("gamma_k_limit", std::abs(gz - gb), 1e-12, now_seconds() - t0);
  }

  // --- empirical vs exact SIR ---
  t0 = now_seconds();
  {
    DeploymentConfig small = cfg;
    small.n = 32;
    small.t_x = 2;
    small.t_y = 2;
    const SpanGeometry g = span_geometry(small);
    const ChannelMatrix ch =
        build_los_channel(g.map_b, 0.08, small.n, small.t_x, small.t_y);
    Rng rng = Rng::stream(seed, "verify-empirical", 0);
    const double emp = empirical_sir(ch, small.n / 2, 10000, rng);
    const double exact = sir_exact(ch, small.n / 2);
    push("empirical_vs_exact_sir_db", std::abs(to_db(emp) - to_db(exact)), 0.2,
         now_seconds() - t0);
  }

  // --- Gram off-diagonal energy slack across the sweep ---
  for (const double w : {0.05, 0.08, 0.1}) {
    t0 = now_seconds();
    const SpanGeometry g = span_geometry(cfg);
    double worst_ratio = 0.0;
    for (double x = g.x_abeam; x <= g.x_abeam + g.span + 1e-9; x += 5.0) {
      const LargeScaleMap map = dominant_set(cfg, {x, 0.0});
      const ChannelMatrix ch = build_los_channel(map, w, cfg.n, cfg.t_x, cfg.t_y);
      const double s = sir_exact(ch, cfg.n / 2);
      worst_ratio = std::max(worst_ratio, 1.0 / s);  // offdiag/diag Gram energy
    }
    const double bound = 8.0 * std::pow(w, 4) * std::pow(g.cos_b, 4) * zeta4;
    push("gram_offdiag_slack_w" + format_number(w), worst_ratio / bound, 1.25,
         now_seconds() - t0);
  }

  // --- scatterer-sum spread variance grid ---
  {
    const int n = 1024;
    const int samples = 2500;
    for (const double k_factor : {1.0, 10.0}) {
      t0 = now_seconds();
      const std::vector<double> omegas = {0.05, 0.08};
      const std::vector<long> offsets = {1, 2, 4, 8};
      // var_acc[omega][m]
      std::vector<std::vector<double>> var_acc(omegas.size(),
                                               std::vector<double>(offsets.size(), 0.0));
      const std::string label = "verify-spread-k" + format_number(k_factor);
      for (int i = 0; i < samples; ++i) {
        Rng rng = Rng::stream(seed, label, static_cast<std::uint64_t>(i));
        const ScattererEnsemble ens =
            make_scatterer_ensemble(default_scatterer_count, k_factor, rng);
        for (std::size_t wi = 0; wi < omegas.size(); ++wi)
          for (std::size_t mi = 0; mi < offsets.size(); ++mi) {
            if (k_factor != 1.0 && offsets[mi] == 8) continue;  // m=8 only for scaling
            var_acc[wi][mi] +=
                std::norm(doppler_spread_sample(ens, omegas[wi], offsets[mi], n));
          }
      }
      for (std::size_t wi = 0; wi < omegas.size(); ++wi)
        for (std::size_t mi = 0; mi < offsets.size(); ++mi)
          var_acc[wi][mi] /= samples;
      const double elapsed = now_seconds() - t0;
      bool first = true;
      for (std::size_t wi = 0; wi < omegas.size(); ++wi)
        for (std::size_t mi = 0; mi < 3; ++mi) {
          const double w = omegas[wi];
          const long m = offsets[mi];
          const double theory = w * w / (2.0 * (k_factor + 1.0) * m * m);
          push("spread_var_m" + std::to_string(m) + "_w" + format_number(w) + "_k" +
                   format_number(k_factor),
               std::abs(var_acc[wi][mi] / theory - 1.0), 0.10, first ? elapsed : 0.0);
          first = false;
        }
      if (k_factor == 1.0) {
        // quartering law on the omega = 0.08 column
        for (std::size_t mi = 0; mi + 1 < offsets.size(); ++mi) {
          const double ratio = var_acc[1][mi] / var_acc[1][mi + 1];
          push("spread_scaling_m" + std::to_string(offsets[mi]),
               std::abs(ratio / 4.0 - 1.0), 0.15, 0.0);
        }
      }
    }
  }

  // --- direct-tap variance, K = 0 ---
  t0 = now_seconds();
  {
    const int samples = 10000;
    double acc = 0.0;
    for (int i = 0; i < samples; ++i) {
      Rng rng = Rng::stream(seed, "verify-spread-tap", static_cast<std::uint64_t>(i));
      const ScattererEnsemble ens =
          make_scatterer_ensemble(default_scatterer_count, 0.0, rng);
      acc += std::norm(doppler_spread_sample(ens, 0.08, 0, 1024));
    }
    push("spread_direct_tap_var", std::abs(acc / samples - 1.0), 0.05,
         now_seconds() - t0);
  }

  // --- spread Gaussianity (excess kurtosis of both parts) ---
  t0 = now_seconds();
  {
    const int samples = 100000;
    Moments re, im;
    std::vector<double> res_re(samples), res_im(samples);
    for (int i = 0; i < samples; ++i) {
      Rng rng = Rng::stream(seed, "verify-spread-kurt", static_cast<std::uint64_t>(i));
      const ScattererEnsemble ens = make_scatterer_ensemble(2000, 1.0, rng);
      const std::complex<double> d = doppler_spread_sample(ens, 0.08, 1, 1024);
      res_re[i] = d.real();
      res_im[i] = d.imag();
      re.add(d.real());
      im.add(d.imag());
    }
    const auto excess = [&](const std::vector<double>& v, const Moments& m) {
      const double sd = std::sqrt(m.variance());
      double fourth = 0.0;
      for (const double x : v) fourth += std::pow((x - m.mean) / sd, 4);
      return std::abs(fourth / v.size() - 3.0);
    };
    push("spread_kurtosis", std::max(excess(res_re, re), excess(res_im, im)), 0.2,
         now_seconds() - t0);
  }

  // --- ASQ two-point vs quadrature on the dB tent profile ---
  for (const double w : {0.05, 0.08}) {
    t0 = now_seconds();
    const SpanGeometry g = span_geometry(cfg);
    const LosSweepSummary s = los_sweep_summary(cfg, w, 5.0);
    const double snr_a = matched_filter_snr(g.map_a, cfg.t_y, 1.0);
    const double snr_b = matched_filter_snr(g.map_b, cfg.t_y, 1.0);
    const double top_db =
        to_db(harmonic_sinr(std::pow(10.0, s.max_sir_db / 10.0), snr_a));
    const double bot_db =
        to_db(harmonic_sinr(std::pow(10.0, s.min_sir_db / 10.0), snr_b));
    const double half = g.span / 2.0;
    const auto tent = [&](double x) {
      const double frac = 1.0 - std::abs(std::fmod(x, g.span) - half) / half;
      return std::pow(10.0, (top_db + (bot_db - top_db) * frac) / 10.0);
    };
    const double gamma = gamma_beta(g.map_a, cfg.n, cfg.t_x, cfg.t_y).gamma;
    const AsqResult r =
        asq(tent, gamma, speed_from_omega(cfg, w), g.service_span, cfg.t_s);
    push("asq_two_point_gap_w" + format_number(w),
         std::abs(r.two_point_value - r.integral_value) / r.integral_value, 0.05,
         now_seconds() - t0);
  }

  // --- CSV determinism ---
  t0 = now_seconds();
  {
    const ExperimentResult a = run_position_sweep(cfg, 0.08, 100.0, 2, 50.0, seed);
    const ExperimentResult b = run_position_sweep(cfg, 0.08, 100.0, 2, 50.0, seed);
    push("csv_determinism", a.to_csv() == b.to_csv() ? 0.0 : 1.0, 0.0,
         now_seconds() - t0);
  }

  // --- zeta constants ---
  t0 = now_seconds();
  {
    const double dev = std::max(std::abs(zeta2 - std::riemann_zeta(2.0)),
                                std::abs(zeta4 - std::riemann_zeta(4.0)));
    push("zeta_constants", dev, 1e-14, now_seconds() - t0);
  }

  return res;
}

}  // namespace hsrlink
