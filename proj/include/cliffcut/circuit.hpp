#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "cliffcut/rng.hpp"

namespace cliffcut {

enum class GateKind : uint8_t {
  I, X, Y, Z, H, S, Sdg, SqrtX,  // single-qubit Clifford
  CX, CZ, Swap,                   // two-qubit Clifford
  T, Tdg,                         // fixed non-Clifford
  RZ, RX, RY,                     // rotations, Clifford iff angle = k*pi/2
};

constexpr uint32_t kNoQubit = 0xffffffffu;

struct Gate {
  GateKind kind;
  uint32_t q0;
  uint32_t q1 = kNoQubit;   // second operand for CX/CZ/Swap
  double angle = 0.0;       // rotations only, normalized to [0, 2*pi)

  bool operator==(const Gate& o) const = default;
};

inline bool is_two_qubit(GateKind k) {
  return k == GateKind::CX || k == GateKind::CZ || k == GateKind::Swap;
}
inline bool is_rotation(GateKind k) {
  return k == GateKind::RZ || k == GateKind::RX || k == GateKind::RY;
}

const char* gate_name(GateKind k);

// Wraps an angle into [0, 2*pi).
double normalize_angle(double theta);

Gate make_gate(GateKind k, uint32_t q0);
Gate make_gate2(GateKind k, uint32_t q0, uint32_t q1);
Gate make_rotation(GateKind k, uint32_t q, double angle);

// A rotation is Clifford iff its angle is a multiple of pi/2 within 1e-12.
bool is_clifford_gate(const Gate& g);

// Rewrites a Clifford gate into generator gates {I,X,Y,Z,H,S,Sdg,SqrtX,CX,CZ,Swap}.
// Clifford rotations expand to their canonical sequences (e.g. RZ(pi/2) -> S,
// RY(pi/2) -> Z,H); non-rotations pass through. Throws on non-Clifford input.
std::vector<Gate> clifford_decomposition(const Gate& g);

// Gate inverse as a sequence (time order) from the same gate library.
std::vector<Gate> inverse_gates(const Gate& g);

struct Circuit {
  uint32_t n_qubits = 0;
  std::vector<Gate> gates;
  std::set<uint32_t> measured;  // measurements are terminal

  bool operator==(const Circuit& o) const = default;
};

inline bool is_clifford_circuit(const Circuit& c) {
  for (const auto& g : c.gates) {
    if (!is_clifford_gate(g)) return false;
  }
  return true;
}

// Appends the inverse of c's gate list (measurement set left empty).
Circuit inverse_circuit(const Circuit& c);

// Inserts `count` T gates one at a time at (gate index, qubit) drawn uniformly
// from the substream; positions range over [0, current gate count].
Circuit inject_t_gates(const Circuit& c, uint32_t count, Rng& rng);

}  // namespace cliffcut
