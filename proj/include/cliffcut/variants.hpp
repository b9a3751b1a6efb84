#pragma once

#include <cstdint>
#include <vector>

#include "cliffcut/circuit.hpp"
#include "cliffcut/cutter.hpp"
#include "cliffcut/distribution.hpp"
#include "cliffcut/rng.hpp"

namespace cliffcut {

enum class PrepState : uint8_t { Zero = 0, One = 1, Plus = 2, PlusI = 3 };
enum class MeasBasis : uint8_t { X = 0, Y = 1, Z = 2 };

const char* prep_name(PrepState p);
const char* basis_name(MeasBasis b);

struct VariantSpec {
  std::vector<PrepState> preps;  // one per quantum input leg
  std::vector<MeasBasis> bases;  // one per quantum output leg
  uint64_t index = 0;            // position in enumeration order
};

// Bit layout of `dist` keys: measured circuit outputs first (ascending
// original qubit), then quantum outputs (leg order).
struct VariantResult {
  VariantSpec spec;
  Distribution dist;
  bool sampled = false;
  uint64_t shots_used = 0;
};

// All 4^num_in * 3^num_out variants in lexicographic order over
// (preps..., bases...) with the first leg most significant.
std::vector<VariantSpec> enumerate_variants(const Fragment& f);

uint64_t variant_count(const Fragment& f);

// Index of the variant with the given prep and basis assignment.
uint64_t variant_index(const Fragment& f, const std::vector<PrepState>& preps,
                       const std::vector<MeasBasis>& bases);

// Local circuit with preparation gates prepended (leg order) and basis-change
// gates appended; quantum outputs are added to the measured set.
Circuit build_variant_circuit(const Fragment& f, const VariantSpec& s);

struct EvalOptions {
  bool exact = true;
  uint64_t shots = 5000;
  uint64_t support_cap = uint64_t{1} << 20;
  uint32_t sv_width_limit = 26;
};

struct EvalOutcome {
  VariantResult result;
  bool fell_back_to_sampling = false;  // exact mode hit the support cap
};

// Dispatches to the stabilizer engine when the variant circuit is Clifford
// and to the dense statevector engine otherwise.
EvalOutcome evaluate_variant(const Fragment& f, const VariantSpec& s,
                             const EvalOptions& opt, Rng rng);

// Evaluates every variant of one fragment, results in enumeration order.
// Randomness for variant i is drawn from substream(seed, "variant",
// fragment_index, i), the same derivation the pipeline uses, so results do
// not depend on scheduling. *any_fallback, when given, is set to whether a
// support-cap fallback occurred for any variant.
std::vector<VariantResult> evaluate_fragment(const Fragment& f,
                                             const EvalOptions& opt,
                                             uint64_t seed,
                                             uint32_t fragment_index = 0,
                                             bool* any_fallback = nullptr);

}  // namespace cliffcut
