#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cliffcut/cutter.hpp"
#include "cliffcut/distribution.hpp"
#include "cliffcut/variants.hpp"

namespace cliffcut {

enum class PauliLabel : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

const char* pauli_name(PauliLabel p);

// Entry keys pack 2 bits per leg, input legs then output legs, first leg in
// the most significant position.
uint64_t pack_labels(const std::vector<PauliLabel>& in_labels,
                     const std::vector<PauliLabel>& out_labels);

struct FragmentTensor {
  uint32_t n_in = 0;
  uint32_t n_out = 0;
  uint32_t n_circuit_bits = 0;
  std::map<uint64_t, Distribution> entries;  // label code -> weighted dist
  std::vector<VariantResult> source;         // retained for corrections
  bool corrected = false;
};

// Converts raw variant distributions into the Pauli-resolved tensor:
// output legs are folded with measurement-outcome signs, input legs with the
// preparation-state coefficients of each Pauli. Takes results by value; move
// them in when the caller is done with them.
FragmentTensor build_tensor(const Fragment& f,
                            std::vector<VariantResult> results);

// Euclidean projection onto the probability simplex, restricted to the
// observed support. Positive inputs that already sum to one pass unchanged.
Distribution project_to_simplex(const Distribution& d);

// Sampled-mode mitigation: per-variant Euclidean projection onto the
// probability simplex (over the observed support), then per-preparation
// averaging of the circuit-output marginal across measurement bases. Exact
// inputs pass through unchanged; the pass is idempotent.
FragmentTensor correct_tensor(const Fragment& f, const FragmentTensor& t,
                              bool sampled_mode);

struct TimeoutError : std::runtime_error {
  explicit TimeoutError(const std::string& what) : std::runtime_error(what) {}
};

struct ContractOptions {
  uint32_t workers = 1;
  bool has_deadline = false;
  std::chrono::steady_clock::time_point deadline{};
};

struct Reconstruction {
  Distribution quasi;   // signed, scaled by 2^-k
  uint64_t term_count;  // Pauli assignments evaluated (4^k)
};

// Sums the tensor-network product over all 4^k Pauli label assignments.
// Work is split into fixed chunks merged in index order, so the result is
// bitwise identical for any worker count.
Reconstruction contract(const FragmentGraph& g,
                        const std::vector<FragmentTensor>& tensors,
                        const ContractOptions& opts = {});

struct FinalizeResult {
  Distribution dist;
  double negativity_mass;
};

// Clips negative quasi-probability weights, renormalizes, and records the
// clipped mass. Throws std::runtime_error when no positive mass remains.
FinalizeResult finalize(const Distribution& quasi);

// Quasi-probability of a single output bitstring without materializing the
// full distribution.
double strong_probability(const FragmentGraph& g,
                          const std::vector<FragmentTensor>& tensors,
                          const std::string& bitstring);

}  // namespace cliffcut
