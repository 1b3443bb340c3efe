// Copyright 2026 The lspec authors
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

#include "lspec/models.hpp"

#include <cmath>

namespace lspec {

void validate(const ModelSpec& m) {
  if (m.dim < 2) throw DimensionError("ModelSpec: dim must be >= 2");
  if (m.hamiltonian.dim() != m.dim) throw ShapeError("ModelSpec: Hamiltonian dim mismatch");
  const double hnorm = hs_norm(m.hamiltonian);
  if (!m.hamiltonian.is_hermitian(1e-12 * std::max(hnorm, 1.0)))
    throw ParameterError("ModelSpec: Hamiltonian is not Hermitian");
  for (const auto& j : m.jumps) {
    if (j.op.dim() != m.dim) throw ShapeError("ModelSpec: jump operator dim mismatch");
    if (!(j.rate >= 0)) throw ParameterError("ModelSpec: jump rates must be >= 0");
  }
}

ModelSpec kerr_model(double delta, double u, double f, double gamma, HilbertDim cutoff) {
  if (!(gamma > 0)) throw ParameterError("kerr_model: gamma must be positive");
  const Operator a = destroy(cutoff);
  const Operator ad = a.adjoint();
  const Operator n = ad * a;
  ModelSpec m;
  m.dim = cutoff.value;
  m.name = "kerr";
  m.hamiltonian = Operator((-delta) * n.dense() + (u / 2.0) * (ad * ad * a * a).dense() +
                           f * (ad.dense() + a.dense()));
  m.jumps = {{a, gamma}};
  m.params = {{"delta", delta}, {"u", u}, {"f", f}, {"gamma", gamma},
              {"cutoff", static_cast<double>(cutoff.value)}};
  validate(m);
  return m;
}

ModelSpec kerr_thermo(double delta, double u_tilde, double f_tilde, double gamma, double big_n,
                      HilbertDim cutoff) {
  if (!(big_n > 0)) throw ParameterError("kerr_thermo: N must be positive");
  ModelSpec m = kerr_model(delta, u_tilde / big_n, f_tilde * std::sqrt(big_n), gamma, cutoff);
  m.name = "kerr_thermo";
  m.params["n"] = big_n;
  m.params["u_tilde"] = u_tilde;
  m.params["f_tilde"] = f_tilde;
  return m;
}

ModelSpec two_photon_model(double delta, double u, double g, double gamma, double eta,
                           HilbertDim cutoff) {
  if (!(gamma > 0)) throw ParameterError("two_photon_model: gamma must be positive");
  if (eta < 0) throw ParameterError("two_photon_model: eta must be >= 0");
  const Operator a = destroy(cutoff);
  const Operator ad = a.adjoint();
  const Operator n = ad * a;
  ModelSpec m;
  m.dim = cutoff.value;
  m.name = "two_photon";
  m.hamiltonian = Operator((-delta) * n.dense() + (u / 2.0) * (ad * ad * a * a).dense() +
                           (g / 2.0) * ((ad * ad).dense() + (a * a).dense()));
  m.jumps = {{a, gamma}, {a * a, eta}};
  m.params = {{"delta", delta}, {"u", u},     {"g", g},
              {"gamma", gamma}, {"eta", eta}, {"cutoff", static_cast<double>(cutoff.value)}};
  validate(m);
  return m;
}

ModelSpec two_photon_thermo(double delta, double u_tilde, double g, double gamma,
                            double eta_tilde, double big_n, HilbertDim cutoff) {
  if (!(big_n > 0)) throw ParameterError("two_photon_thermo: N must be positive");
  ModelSpec m =
      two_photon_model(delta, u_tilde / big_n, g, gamma, eta_tilde / big_n, cutoff);
  m.name = "two_photon_thermo";
  m.params["n"] = big_n;
  m.params["u_tilde"] = u_tilde;
  m.params["eta_tilde"] = eta_tilde;
  return m;
}

ModelSpec two_level_model(double omega, double epsilon, double gamma) {
  if (!(gamma > 0)) throw ParameterError("two_level_model: gamma must be positive");
  if (epsilon < 0) throw ParameterError("two_level_model: epsilon must be >= 0");
  ModelSpec m;
  m.dim = 2;
  m.name = "two_level";
  m.hamiltonian = Operator((omega / 2.0) * sigma_z().dense());
  m.jumps = {{sigma_minus(), epsilon}, {sigma_x(), gamma}};
  m.params = {{"omega", omega}, {"epsilon", epsilon}, {"gamma", gamma}};
  validate(m);
  return m;
}

int default_cutoff(double big_n) {
  return std::max(20, static_cast<int>(std::ceil(8.0 * big_n)));
}

}  // namespace lspec
