// SPDX-License-Identifier: MIT
#include "hsrlink/equalize.hpp"

#include <cmath>
#include <stdexcept>

namespace hsrlink {

namespace {
double dimension_scale(int n, int t_x, int t_y) {
  return std::sqrt(static_cast<double>(n) * t_x * t_y);
}
}  // namespace

EqualizerGain gamma_beta(const LargeScaleMap& map, int n, int t_x, int t_y) {
  if (map.empty()) throw std::invalid_argument("gamma_beta: empty path map");
  double rho_sum = 0.0;
  for (const auto& p : map) rho_sum += p.rho;
  const double g = dimension_scale(n, t_x, t_y) * rho_sum;
  if (!(g > 0.0)) throw std::domain_error("gamma_beta: gain must be positive");
  return {g, EqualizerGain::Kind::Los};
}

EqualizerGain gamma_zeta(const LargeScaleMap& map, const SmallScaleFading& fading,
                         double k_factor, int n, int t_x, int t_y) {
  if (map.empty()) throw std::invalid_argument("gamma_zeta: empty path map");
  if (!(k_factor > 0.0)) throw std::invalid_argument("gamma_zeta: K must be positive");
  if (std::isinf(k_factor)) return {gamma_beta(map, n, t_x, t_y).gamma, EqualizerGain::Kind::Rician};
  if (fading.r.size() != map.size())
    throw std::invalid_argument("gamma_zeta: one fading draw per RRU required");
  const double los = std::sqrt(k_factor / (k_factor + 1.0));
  const double nlos = std::sqrt(1.0 / (k_factor + 1.0));
  std::complex<double> zeta = 0.0;
  for (std::size_t i = 0; i < map.size(); ++i)
    zeta += map[i].rho * (los + nlos * fading.r[i]);
  const double g = dimension_scale(n, t_x, t_y) * std::abs(zeta);
  if (!(g > 0.0)) throw std::domain_error("gamma_zeta: gain must be positive");
  return {g, EqualizerGain::Kind::Rician};
}

Frame equalize_los(const ChannelMatrix& channel, const Frame& y) {
  if (!channel.pure_los())
    throw std::invalid_argument("equalize_los: channel must be pure LOS");
  const double g = std::sqrt(static_cast<double>(channel.n()) * channel.t_x() * channel.t_y()) *
                   std::abs(channel.weight_sum());
  if (!(g > 0.0)) throw std::domain_error("equalize_los: gain must be positive");
  Frame out = channel.apply_transpose(y);
  for (auto& v : out) v /= g;
  return out;
}

Frame equalize_rician(const ChannelMatrix& channel, const Frame& y) {
  // K = inf is accepted: the gain degenerates to gamma_beta exactly.
  const double g = std::sqrt(static_cast<double>(channel.n()) * channel.t_x() * channel.t_y()) *
                   std::abs(channel.weight_sum());
  if (!(g > 0.0)) throw std::domain_error("equalize_rician: gain must be positive");
  Frame out = channel.apply_transpose(y);
  for (auto& v : out) v /= g;
  return out;
}

}  // namespace hsrlink
