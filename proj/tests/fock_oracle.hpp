// Copyright 2026 The cntqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Test-only brute-force oracle: evaluates the displaced-parity form
//   W(alpha) = (2/pi) Tr[ D(-alpha) rho D(alpha) Pi ]
// in a truncated Fock space, with D built by exponentiating alpha a+ - alpha* a
// through an eigendecomposition. Deliberately independent of the closed-form
// path in the library.

#ifndef CNTQC_TESTS_FOCK_ORACLE_HPP
#define CNTQC_TESTS_FOCK_ORACLE_HPP

#include <Eigen/Dense>
#include <complex>

#include "cntqc/bloch.hpp"

namespace cntqc::testing {

inline Eigen::MatrixXcd displacement_operator(std::complex<double> alpha, int cutoff) {
  Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) {
    gen(n, n - 1) = alpha * std::sqrt(static_cast<double>(n));          // alpha a+
    gen(n - 1, n) = -std::conj(alpha) * std::sqrt(static_cast<double>(n));  // -alpha* a
  }
  // gen is anti-Hermitian, so i*gen is Hermitian and exp(gen) = V e^{-i w} V+.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(std::complex<double>(0, 1) * gen);
  const Eigen::VectorXd w = es.eigenvalues();
  Eigen::VectorXcd phases(cutoff);
  for (int k = 0; k < cutoff; ++k) phases(k) = std::exp(std::complex<double>(0, -w(k)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline double displaced_parity_wigner(const TLSDensity& rho, std::complex<double> alpha,
                                      int cutoff = 40) {
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(cutoff, cutoff);
  full(0, 0) = rho.rho00;
  full(1, 1) = rho.rho11;
  full(0, 1) = rho.rho01;
  full(1, 0) = std::conj(rho.rho01);

  const Eigen::MatrixXcd d_minus = displacement_operator(-alpha, cutoff);
  Eigen::VectorXcd parity(cutoff);
  for (int n = 0; n < cutoff; ++n) parity(n) = (n % 2 == 0) ? 1.0 : -1.0;

  const Eigen::MatrixXcd displaced = d_minus * full * d_minus.adjoint();
  const std::complex<double> trace = (displaced * parity.asDiagonal()).trace();
  return 2.0 / std::numbers::pi * trace.real();
}

}  // namespace cntqc::testing

#endif  // CNTQC_TESTS_FOCK_ORACLE_HPP
