#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cliffcut/circuit.hpp"

namespace cliffcut {

// A wire cut on `qubit` immediately before the gate at index `position`
// (position == gate count means after the last gate, before measurement).
struct CutPoint {
  uint32_t qubit;
  uint32_t position;
  bool operator==(const CutPoint& o) const = default;
};

// One local wire of a fragment: the segment [seg_start, seg_end) of an
// original qubit's timeline. Segments starting at 0 consume the circuit's
// |0> input; segments ending at the gate count reach the circuit's output.
struct FragmentWire {
  uint32_t qubit;
  uint32_t seg_start;
  uint32_t seg_end;
  bool quantum_in;   // starts at a cut
  bool quantum_out;  // ends at a cut
  bool measured;     // circuit output included in the original measured set
};

struct Fragment {
  // Local subcircuit over the fragment's wires; `measured` holds the measured
  // circuit-output wires only (quantum outputs are measured per variant).
  Circuit circuit;
  std::vector<FragmentWire> wires;
  std::vector<uint32_t> in_legs;   // wire index per quantum input, in cut order
  std::vector<uint32_t> out_legs;  // wire index per quantum output, in cut order
  std::vector<uint32_t> gate_indices;  // original gate positions (provenance)
  bool clifford = true;

  uint32_t num_in() const { return static_cast<uint32_t>(in_legs.size()); }
  uint32_t num_out() const { return static_cast<uint32_t>(out_legs.size()); }
};

// A cut edge joins the quantum output leg of one fragment to the quantum
// input leg of another (possibly the same fragment, when a non-Clifford gate
// was cut out of the middle of a connected region).
struct CutEdge {
  CutPoint point;
  uint32_t from_fragment;
  uint32_t from_leg;
  uint32_t to_fragment;
  uint32_t to_leg;
};

struct FragmentGraph {
  uint32_t n_qubits = 0;
  std::set<uint32_t> measured;
  std::vector<Fragment> fragments;
  std::vector<CutEdge> cuts;  // sorted by (position, qubit)

  uint32_t k() const { return static_cast<uint32_t>(cuts.size()); }
};

// Greedy cut placement: one cut immediately before and one immediately after
// each maximal run of non-Clifford gates on a wire, skipping cuts that would
// sit at the circuit boundary. Returns cuts sorted by (position, qubit).
// Cut count is bounded by twice the non-Clifford gate count.
std::vector<CutPoint> find_cuts(const Circuit& c);

// Severs the given wires and groups the resulting segments into connected
// components. Throws std::invalid_argument on out-of-range or duplicate cuts.
FragmentGraph fragment_circuit(const Circuit& c, const std::vector<CutPoint>& cuts);

struct CostReport {
  bool ok = true;
  uint32_t k = 0;
  double term_count = 0;  // 4^k
  std::vector<uint64_t> variant_counts;
  std::string message;
};

// Refuses evaluation when the quasi-probability term count would explode.
CostReport cost_guard(const FragmentGraph& g, uint32_t k_max);

}  // namespace cliffcut
