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

#include "qtraj/reservoir.hpp"

#include <cmath>

#include "qtraj/error.hpp"

namespace qtraj {

PumpRate engineered_pump_rate(const DriveParams& p, double validity_ratio) {
  if (!(p.big_gamma > 0.0)) throw DomainError("big_gamma must be positive");
  if (p.omega < 0.0 || p.gamma_minus < 0.0) throw DomainError("drive parameters must be >= 0");
  if (!(validity_ratio > 0.0)) throw DomainError("validity ratio must be positive");
  return {4.0 * p.omega * p.omega / p.big_gamma, p.omega <= validity_ratio * p.big_gamma};
}

double balanced_drive_strength(double gamma_minus, double big_gamma) {
  if (!(big_gamma > 0.0)) throw DomainError("big_gamma must be positive");
  if (gamma_minus < 0.0) throw DomainError("gamma_minus must be >= 0");
  return 0.5 * std::sqrt(gamma_minus * big_gamma);
}

double thermal_occupation(double gamma_minus, double gamma_plus) {
  if (gamma_plus < 0.0) throw DomainError("gamma_plus must be >= 0");
  if (!(gamma_plus < gamma_minus)) {
    throw DomainError("thermal occupation diverges for gamma_plus >= gamma_minus");
  }
  return gamma_plus / (gamma_minus - gamma_plus);
}

}  // namespace qtraj
