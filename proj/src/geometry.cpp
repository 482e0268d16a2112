// SPDX-License-Identifier: MIT
#include "hsrlink/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hsrlink {

void DeploymentConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };
  if (!(d_h > 0.0) || !std::isfinite(d_h)) fail("d_h_m must be > 0");
  if (!(d_v > 0.0) || !std::isfinite(d_v)) fail("d_v_m must be > 0");
  if (rru_count < 1) fail("rru_count must be >= 1");
  if (t_x < 1) fail("t_x must be >= 1");
  if (t_y < 1) fail("t_y must be >= 1");
  if (n < 2) fail("n_subcarriers must be >= 2");
  if (!(f_carrier > 0.0) || !std::isfinite(f_carrier)) fail("f_carrier_hz must be > 0");
  if (!(t_s > 0.0) || !std::isfinite(t_s)) fail("t_s_s must be > 0");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) fail("alpha must be > 0");
  if (!std::isfinite(b_db)) fail("b_db must be finite");
  if (n_t < 1) fail("n_t must be >= 1");
  if (n_t > rru_count) fail("n_t must be <= rru_count");
}

namespace {

void apply_key(DeploymentConfig& cfg, const std::string& key, const std::string& value,
               int line_no) {
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + msg);
  };
  double d = 0.0;
  long long i = 0;
  bool is_int = false;
  try {
    size_t pos = 0;
    d = std::stod(value, &pos);
    if (pos != value.size()) fail("trailing characters in value '" + value + "'");
    i = std::llround(d);
    is_int = (static_cast<double>(i) == d);
  } catch (const std::invalid_argument&) {
    fail("cannot parse value '" + value + "'");
  } catch (const std::out_of_range&) {
    fail("value out of range '" + value + "'");
  }
  auto want_int = [&](const char* name) {
    if (!is_int) fail(std::string(name) + " must be an integer");
    return static_cast<int>(i);
  };
  if (key == "d_h_m") cfg.d_h = d;
  else if (key == "d_v_m") cfg.d_v = d;
  else if (key == "rru_count") cfg.rru_count = want_int("rru_count");
  else if (key == "t_x") cfg.t_x = want_int("t_x");
  else if (key == "t_y") cfg.t_y = want_int("t_y");
  else if (key == "n_subcarriers") cfg.n = want_int("n_subcarriers");
  else if (key == "f_carrier_hz") cfg.f_carrier = d;
  else if (key == "t_s_s") cfg.t_s = d;
  else if (key == "alpha") cfg.alpha = d;
  else if (key == "b_db") cfg.b_db = d;
  else if (key == "n_t") cfg.n_t = want_int("n_t");
  else fail("unknown key '" + key + "'");
}

}  // namespace

DeploymentConfig parse_config_text(const std::string& text) {
  DeploymentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    for (char& c : line)
      if (c == '=' || c == ':' || c == '\t') c = ' ';
    std::istringstream ls(line);
    std::string key, value, extra;
    if (!(ls >> key)) continue;  // blank line
    if (!(ls >> value))
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": missing value");
    if (ls >> extra)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": trailing tokens");
    apply_key(cfg, key, value, line_no);
  }
  cfg.validate();
  return cfg;
}

DeploymentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

double path_gain_db(const DeploymentConfig& cfg, double distance) {
  return cfg.b_db - 10.0 * cfg.alpha * std::log10(distance);
}

double rho_of_distance(const DeploymentConfig& cfg, double distance) {
  return std::pow(10.0, path_gain_db(cfg, distance) / 20.0);
}

PathGeometry path_geometry(const DeploymentConfig& cfg, const TrainState& train, int rru_index) {
  if (!std::isfinite(train.x) || !std::isfinite(train.v))
    throw std::invalid_argument("train state must be finite");
  if (rru_index < 0 || rru_index >= cfg.rru_count)
    throw std::invalid_argument("rru_index out of range");
  const double x_rru = static_cast<double>(rru_index) * cfg.d_h;
  const double dx = x_rru - train.x;
  PathGeometry p;
  p.rru_index = rru_index;
  p.distance = std::hypot(dx, cfg.d_v);
  // Exactly zero abeam: the overhead path contributes no Doppler offset.
  p.cos_aoa = (dx == 0.0) ? 0.0 : dx / p.distance;
  p.rho = rho_of_distance(cfg, p.distance);
  return p;
}

LargeScaleMap dominant_set(const DeploymentConfig& cfg, const TrainState& train) {
  if (cfg.rru_count < cfg.n_t) throw std::invalid_argument("rru_count < n_t");
  LargeScaleMap all;
  all.reserve(static_cast<size_t>(cfg.rru_count));
  for (int i = 0; i < cfg.rru_count; ++i) all.push_back(path_geometry(cfg, train, i));
  std::sort(all.begin(), all.end(), [](const PathGeometry& a, const PathGeometry& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.rru_index < b.rru_index;
  });
  all.resize(static_cast<size_t>(cfg.n_t));
  return all;
}

double psi_ratio(const LargeScaleMap& map) {
  if (map.size() < 2) throw std::invalid_argument("psi_ratio needs at least two paths");
  const double r = map[0].rho / map[1].rho;
  return r * r;
}

double cos_theta_abeam_flank(const DeploymentConfig& cfg) {
  return cfg.d_h / std::hypot(cfg.d_h, cfg.d_v);
}

double cos_theta_midpoint(const DeploymentConfig& cfg) {
  return (cfg.d_h / 2.0) / std::hypot(cfg.d_h / 2.0, cfg.d_v);
}

}  // namespace hsrlink
