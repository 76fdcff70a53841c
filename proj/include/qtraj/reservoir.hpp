// Copyright 2026 The qtraj Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Rates of an engineered pump channel obtained by driving to a fast-decaying
// auxiliary level and eliminating it adiabatically.

namespace qtraj {

struct DriveParams {
  double omega = 0.0;        ///< drive strength
  double big_gamma = 0.0;    ///< auxiliary-level decay rate
  double gamma_minus = 0.0;  ///< natural decay rate of the qubit
};

struct PumpRate {
  double rate = 0.0;
  /// False when omega exceeds validity_ratio * big_gamma; the rate is still
  /// returned but adiabatic elimination is questionable.
  bool adiabatic_ok = true;
};

inline constexpr double kDefaultValidityRatio = 0.1;

/// 4 omega^2 / big_gamma. Throws DomainError for big_gamma <= 0 or negative inputs.
PumpRate engineered_pump_rate(const DriveParams& p, double validity_ratio = kDefaultValidityRatio);

/// Drive strength at which the pump rate equals gamma_minus.
double balanced_drive_strength(double gamma_minus, double big_gamma);

/// gamma_plus / (gamma_minus - gamma_plus). Throws DomainError unless
/// 0 <= gamma_plus < gamma_minus.
double thermal_occupation(double gamma_minus, double gamma_plus);

}  // namespace qtraj
