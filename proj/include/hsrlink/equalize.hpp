// SPDX-License-Identifier: MIT
//
// Normalized transpose equalizers: Y_hat = (1/gamma) S^T Y, no matrix inverse.
// The gain is sqrt(N T_y T_x) times the magnitude of the summed term weights,
// which reduces to sqrt(N T_y T_x) * sum(rho) for a pure LOS channel.
#pragma once

#include "hsrlink/channel.hpp"
#include "hsrlink/geometry.hpp"

namespace hsrlink {

struct EqualizerGain {
  enum class Kind { Los, Rician };
  double gamma = 0.0;
  Kind kind = Kind::Los;
};

EqualizerGain gamma_beta(const LargeScaleMap& map, int n, int t_x, int t_y);
EqualizerGain gamma_zeta(const LargeScaleMap& map, const SmallScaleFading& fading,
                         double k_factor, int n, int t_x, int t_y);

Frame equalize_los(const ChannelMatrix& channel, const Frame& y);
Frame equalize_rician(const ChannelMatrix& channel, const Frame& y);

}  // namespace hsrlink
