#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cliffcut/circuit.hpp"
#include "cliffcut/cutter.hpp"
#include "cliffcut/distribution.hpp"
#include "cliffcut/recombine.hpp"
#include "cliffcut/variants.hpp"

namespace cliffcut {

enum class Mode { Exact, Sampled };

const char* mode_name(Mode m);

struct SimOptions {
  Mode mode = Mode::Exact;
  uint64_t shots = 5000;
  uint64_t seed = 0;
  uint32_t k_max = 10;
  uint64_t support_cap = uint64_t{1} << 20;
  uint32_t sv_width_limit = 26;
  uint32_t workers = 1;
  double timeout_s = 0;  // 0 disables the deadline
  bool keep_variants = false;
};

// Raised when the cost guard predicts an infeasible recombination.
struct GuardRefusal : std::runtime_error {
  CostReport report;
  explicit GuardRefusal(CostReport r)
      : std::runtime_error(r.message), report(std::move(r)) {}
};

struct SimResult {
  Distribution dist;
  FragmentGraph graph;
  uint32_t k = 0;
  uint64_t term_count = 0;
  double negativity_mass = 0;
  Mode mode = Mode::Exact;
  uint64_t shots = 0;        // per-variant shot budget (sampled paths)
  uint64_t total_shots = 0;  // summed over sampled variant evaluations
  uint64_t seed = 0;
  uint64_t variant_total = 0;
  bool sampled_fallback = false;  // exact mode hit the support cap somewhere
  bool correction_applied = false;
  double elapsed_s = 0;
  // Raw per-fragment variant results, populated when keep_variants is set.
  std::vector<std::vector<VariantResult>> variants;
};

// Full pipeline: cut placement, fragmentation, cost guard, variant
// evaluation, tensor assembly (with sampled-mode corrections), contraction,
// and finalization.
SimResult simulate_circuit(const Circuit& c, const SimOptions& opt);

// Same pipeline starting from an existing fragment graph.
SimResult simulate_graph(const FragmentGraph& g, const SimOptions& opt);

// Quasi-probability of one output bitstring, skipping the full contraction.
double strong_probability(const Circuit& c, const std::string& bitstring,
                          const SimOptions& opt);

}  // namespace cliffcut
