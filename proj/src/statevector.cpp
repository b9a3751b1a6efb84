#include "cliffcut/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cliffcut {

namespace {
using cd = std::complex<double>;
constexpr double kInvSqrt2 = 0.70710678118654752440;

std::string key_for(uint64_t idx, const std::vector<uint32_t>& bits) {
  std::string key(bits.size(), '0');
  for (size_t j = 0; j < bits.size(); ++j) {
    if ((idx >> bits[j]) & 1u) key[j] = '1';
  }
  return key;
}
}  // namespace

Statevector::Statevector(uint32_t n_qubits, uint32_t width_limit) : n_(n_qubits) {
  if (n_qubits == 0) throw std::invalid_argument("statevector: zero qubits");
  if (n_qubits > width_limit) throw WidthError(n_qubits, width_limit);
  amps_.assign(uint64_t{1} << n_, cd{0.0, 0.0});
  amps_[0] = 1.0;
}

double Statevector::norm() const {
  double s = 0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void Statevector::apply_1q(uint32_t q, const cd u[2][2]) {
  const uint64_t stride = uint64_t{1} << q;
  const uint64_t size = amps_.size();
  for (uint64_t base = 0; base < size; base += 2 * stride) {
    for (uint64_t i = base; i < base + stride; ++i) {
      cd a = amps_[i];
      cd b = amps_[i + stride];
      amps_[i] = u[0][0] * a + u[0][1] * b;
      amps_[i + stride] = u[1][0] * a + u[1][1] * b;
    }
  }
}

void Statevector::apply_diag(uint32_t q, cd d0, cd d1) {
  const uint64_t stride = uint64_t{1} << q;
  const uint64_t size = amps_.size();
  for (uint64_t base = 0; base < size; base += 2 * stride) {
    for (uint64_t i = base; i < base + stride; ++i) {
      amps_[i] *= d0;
      amps_[i + stride] *= d1;
    }
  }
}

void Statevector::apply(const Gate& g) {
  if (g.q0 >= n_ || (g.q1 != kNoQubit && g.q1 >= n_)) {
    throw std::out_of_range("statevector: qubit index out of range");
  }
  const uint64_t size = amps_.size();
  switch (g.kind) {
    case GateKind::I:
      return;
    case GateKind::X: {
      const uint64_t s = uint64_t{1} << g.q0;
      for (uint64_t base = 0; base < size; base += 2 * s) {
        for (uint64_t i = base; i < base + s; ++i) std::swap(amps_[i], amps_[i + s]);
      }
      return;
    }
    case GateKind::Y: {
      const uint64_t s = uint64_t{1} << g.q0;
      for (uint64_t base = 0; base < size; base += 2 * s) {
        for (uint64_t i = base; i < base + s; ++i) {
          cd a = amps_[i];
          amps_[i] = cd{0, -1} * amps_[i + s];
          amps_[i + s] = cd{0, 1} * a;
        }
      }
      return;
    }
    case GateKind::Z:
      apply_diag(g.q0, 1.0, -1.0);
      return;
    case GateKind::S:
      apply_diag(g.q0, 1.0, cd{0, 1});
      return;
    case GateKind::Sdg:
      apply_diag(g.q0, 1.0, cd{0, -1});
      return;
    case GateKind::T:
      apply_diag(g.q0, 1.0, cd{kInvSqrt2, kInvSqrt2});
      return;
    case GateKind::Tdg:
      apply_diag(g.q0, 1.0, cd{kInvSqrt2, -kInvSqrt2});
      return;
    case GateKind::RZ: {
      double h = 0.5 * g.angle;
      apply_diag(g.q0, cd{std::cos(h), -std::sin(h)}, cd{std::cos(h), std::sin(h)});
      return;
    }
    case GateKind::H: {
      const cd u[2][2] = {{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}};
      apply_1q(g.q0, u);
      return;
    }
    case GateKind::SqrtX: {
      const cd u[2][2] = {{cd{0.5, 0.5}, cd{0.5, -0.5}}, {cd{0.5, -0.5}, cd{0.5, 0.5}}};
      apply_1q(g.q0, u);
      return;
    }
    case GateKind::RX: {
      double h = 0.5 * g.angle;
      const cd u[2][2] = {{std::cos(h), cd{0, -std::sin(h)}}, {cd{0, -std::sin(h)}, std::cos(h)}};
      apply_1q(g.q0, u);
      return;
    }
    case GateKind::RY: {
      double h = 0.5 * g.angle;
      const cd u[2][2] = {{std::cos(h), -std::sin(h)}, {std::sin(h), std::cos(h)}};
      apply_1q(g.q0, u);
      return;
    }
    case GateKind::CX: {
      const uint64_t c = uint64_t{1} << g.q0;
      const uint64_t t = uint64_t{1} << g.q1;
      for (uint64_t i = 0; i < size; ++i) {
        if ((i & c) && !(i & t)) std::swap(amps_[i], amps_[i | t]);
      }
      return;
    }
    case GateKind::CZ: {
      const uint64_t m = (uint64_t{1} << g.q0) | (uint64_t{1} << g.q1);
      for (uint64_t i = 0; i < size; ++i) {
        if ((i & m) == m) amps_[i] = -amps_[i];
      }
      return;
    }
    case GateKind::Swap: {
      const uint64_t a = uint64_t{1} << g.q0;
      const uint64_t b = uint64_t{1} << g.q1;
      for (uint64_t i = 0; i < size; ++i) {
        if ((i & a) && !(i & b)) std::swap(amps_[i], amps_[(i ^ a) | b]);
      }
      return;
    }
  }
}

Distribution Statevector::distribution(const std::set<uint32_t>& measured, double eps) const {
  std::vector<uint32_t> bits(measured.begin(), measured.end());
  Distribution d(static_cast<uint32_t>(bits.size()));
  if (bits.empty()) {
    d.add("", 1.0);
    return d;
  }
  for (uint64_t i = 0; i < amps_.size(); ++i) {
    double p = std::norm(amps_[i]);
    if (p > 0) d.add(key_for(i, bits), p);
  }
  d.prune(eps);
  return d;
}

Distribution Statevector::sample(const std::set<uint32_t>& measured, uint64_t shots,
                                 Rng& rng) const {
  std::vector<uint32_t> bits(measured.begin(), measured.end());
  Distribution d(static_cast<uint32_t>(bits.size()));
  if (shots == 0) return d;
  if (bits.empty()) {
    d.add("", 1.0);
    return d;
  }
  // Sorted uniforms, then one cumulative pass over the amplitudes.
  std::vector<double> u(shots);
  for (auto& x : u) x = rng.next_double();
  std::sort(u.begin(), u.end());
  double cum = 0;
  size_t j = 0;
  const double inv_shots = 1.0 / static_cast<double>(shots);
  for (uint64_t i = 0; i < amps_.size() && j < u.size(); ++i) {
    cum += std::norm(amps_[i]);
    uint64_t hits = 0;
    while (j < u.size() && u[j] < cum) {
      ++hits;
      ++j;
    }
    if (hits) d.add(key_for(i, bits), static_cast<double>(hits) * inv_shots);
  }
  // Float dust can leave trailing draws unassigned; fold them into the top index.
  if (j < u.size()) {
    d.add(key_for(amps_.size() - 1, bits), static_cast<double>(u.size() - j) * inv_shots);
  }
  return d;
}

Distribution sv_distribution(const Circuit& c, uint32_t width_limit) {
  Statevector sv(c.n_qubits, width_limit);
  sv.apply_all(c.gates);
  return sv.distribution(c.measured);
}

Distribution sv_sample(const Circuit& c, uint64_t shots, Rng& rng, uint32_t width_limit) {
  Statevector sv(c.n_qubits, width_limit);
  sv.apply_all(c.gates);
  return sv.sample(c.measured, shots, rng);
}

}  // namespace cliffcut
