#include "cliffcut/circuit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cliffcut {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kCliffordAngleTol = 1e-12;
}  // namespace

const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::I: return "id";
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::H: return "h";
    case GateKind::S: return "s";
    case GateKind::Sdg: return "sdg";
    case GateKind::SqrtX: return "sx";
    case GateKind::CX: return "cx";
    case GateKind::CZ: return "cz";
    case GateKind::Swap: return "swap";
    case GateKind::T: return "t";
    case GateKind::Tdg: return "tdg";
    case GateKind::RZ: return "rz";
    case GateKind::RX: return "rx";
    case GateKind::RY: return "ry";
  }
  return "?";
}

double normalize_angle(double theta) {
  double a = std::fmod(theta, kTwoPi);
  if (a < 0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;  // fmod noise at the boundary
  return a;
}

Gate make_gate(GateKind k, uint32_t q0) {
  if (is_two_qubit(k)) throw std::invalid_argument("make_gate: two-qubit kind");
  if (is_rotation(k)) throw std::invalid_argument("make_gate: rotation needs an angle");
  return Gate{k, q0, kNoQubit, 0.0};
}

Gate make_gate2(GateKind k, uint32_t q0, uint32_t q1) {
  if (!is_two_qubit(k)) throw std::invalid_argument("make_gate2: single-qubit kind");
  if (q0 == q1) throw std::invalid_argument("make_gate2: operands must be distinct");
  return Gate{k, q0, q1, 0.0};
}

Gate make_rotation(GateKind k, uint32_t q, double angle) {
  if (!is_rotation(k)) throw std::invalid_argument("make_rotation: not a rotation kind");
  return Gate{k, q, kNoQubit, normalize_angle(angle)};
}

namespace {

// Index of the nearest multiple of pi/2, or -1 when not Clifford.
int clifford_quarter(double angle) {
  double q = angle / kHalfPi;
  double r = std::round(q);
  if (std::abs(angle - r * kHalfPi) > kCliffordAngleTol) return -1;
  int k = static_cast<int>(r) % 4;
  if (k < 0) k += 4;
  return k;
}

}  // namespace

bool is_clifford_gate(const Gate& g) {
  switch (g.kind) {
    case GateKind::T:
    case GateKind::Tdg:
      return false;
    case GateKind::RZ:
    case GateKind::RX:
    case GateKind::RY:
      return clifford_quarter(g.angle) >= 0;
    default:
      return true;
  }
}

std::vector<Gate> clifford_decomposition(const Gate& g) {
  if (!is_clifford_gate(g)) throw std::invalid_argument("clifford_decomposition: non-Clifford gate");
  if (!is_rotation(g.kind)) return {g};
  int k = clifford_quarter(g.angle);
  uint32_t q = g.q0;
  auto one = [&](GateKind kind) { return std::vector<Gate>{Gate{kind, q, kNoQubit, 0.0}}; };
  switch (g.kind) {
    case GateKind::RZ:
      switch (k) {
        case 0: return one(GateKind::I);
        case 1: return one(GateKind::S);
        case 2: return one(GateKind::Z);
        default: return one(GateKind::Sdg);
      }
    case GateKind::RX:
      switch (k) {
        case 0: return one(GateKind::I);
        case 1: return one(GateKind::SqrtX);
        case 2: return one(GateKind::X);
        // RX(3pi/2) = SqrtX^3: X then SqrtX in time order.
        default: return {Gate{GateKind::X, q, kNoQubit, 0.0}, Gate{GateKind::SqrtX, q, kNoQubit, 0.0}};
      }
    case GateKind::RY:
      switch (k) {
        case 0: return one(GateKind::I);
        // RY(pi/2) conjugates Z -> X, X -> -Z; realized as Z then H.
        case 1: return {Gate{GateKind::Z, q, kNoQubit, 0.0}, Gate{GateKind::H, q, kNoQubit, 0.0}};
        case 2: return one(GateKind::Y);
        default: return {Gate{GateKind::H, q, kNoQubit, 0.0}, Gate{GateKind::Z, q, kNoQubit, 0.0}};
      }
    default:
      return {g};
  }
}

std::vector<Gate> inverse_gates(const Gate& g) {
  switch (g.kind) {
    case GateKind::S: return {Gate{GateKind::Sdg, g.q0, kNoQubit, 0.0}};
    case GateKind::Sdg: return {Gate{GateKind::S, g.q0, kNoQubit, 0.0}};
    case GateKind::T: return {Gate{GateKind::Tdg, g.q0, kNoQubit, 0.0}};
    case GateKind::Tdg: return {Gate{GateKind::T, g.q0, kNoQubit, 0.0}};
    // SqrtX^-1 = SqrtX^3: X then SqrtX.
    case GateKind::SqrtX:
      return {Gate{GateKind::X, g.q0, kNoQubit, 0.0}, Gate{GateKind::SqrtX, g.q0, kNoQubit, 0.0}};
    case GateKind::RZ:
    case GateKind::RX:
    case GateKind::RY:
      return {make_rotation(g.kind, g.q0, -g.angle)};
    default:
      return {g};  // self-inverse: I,X,Y,Z,H,CX,CZ,Swap
  }
}

Circuit inverse_circuit(const Circuit& c) {
  Circuit inv;
  inv.n_qubits = c.n_qubits;
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
    for (const auto& g : inverse_gates(*it)) inv.gates.push_back(g);
  }
  return inv;
}

Circuit inject_t_gates(const Circuit& c, uint32_t count, Rng& rng) {
  if (c.n_qubits == 0) throw std::invalid_argument("inject_t_gates: empty circuit");
  Circuit out = c;
  for (uint32_t i = 0; i < count; ++i) {
    uint64_t pos = rng.uniform_below(out.gates.size() + 1);
    uint32_t q = static_cast<uint32_t>(rng.uniform_below(out.n_qubits));
    out.gates.insert(out.gates.begin() + static_cast<ptrdiff_t>(pos),
                     Gate{GateKind::T, q, kNoQubit, 0.0});
  }
  return out;
}

}  // namespace cliffcut
