#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "cliffcut/circuit.hpp"
#include "cliffcut/distribution.hpp"
#include "cliffcut/rng.hpp"

namespace cliffcut {

// Raised when a dense simulation would exceed the width guard.
struct WidthError : std::runtime_error {
  uint32_t n_qubits;
  uint32_t limit;
  WidthError(uint32_t n, uint32_t lim)
      : std::runtime_error("statevector width guard: " + std::to_string(n) +
                           " qubits exceeds limit " + std::to_string(lim)),
        n_qubits(n),
        limit(lim) {}
};

constexpr uint32_t kDefaultWidthLimit = 26;

// Dense 2^n amplitude simulator. Exact up to float rounding; memory bound
// enforced by the width guard. Qubit q maps to bit q of the amplitude index.
class Statevector {
public:
  explicit Statevector(uint32_t n_qubits, uint32_t width_limit = kDefaultWidthLimit);

  void apply(const Gate& g);
  void apply_all(const std::vector<Gate>& gates) {
    for (const auto& g : gates) apply(g);
  }

  uint32_t num_qubits() const { return n_; }
  const std::vector<std::complex<double>>& amplitudes() const { return amps_; }
  double norm() const;

  // Probabilities of the measured-bit marginal; entries below eps dropped.
  Distribution distribution(const std::set<uint32_t>& measured, double eps = 1e-12) const;

  // Multinomial sampling of the measured bits; returns normalized frequencies.
  Distribution sample(const std::set<uint32_t>& measured, uint64_t shots, Rng& rng) const;

private:
  void apply_1q(uint32_t q, const std::complex<double> u[2][2]);
  void apply_diag(uint32_t q, std::complex<double> d0, std::complex<double> d1);

  uint32_t n_;
  std::vector<std::complex<double>> amps_;
};

// Runs the whole circuit and returns the exact measured-bit distribution.
Distribution sv_distribution(const Circuit& c, uint32_t width_limit = kDefaultWidthLimit);

// Runs the whole circuit once and samples `shots` outcomes.
Distribution sv_sample(const Circuit& c, uint64_t shots, Rng& rng,
                       uint32_t width_limit = kDefaultWidthLimit);

}  // namespace cliffcut
