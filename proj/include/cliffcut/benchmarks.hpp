#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cliffcut/circuit.hpp"
#include "cliffcut/distribution.hpp"
#include "cliffcut/pipeline.hpp"
#include "cliffcut/rng.hpp"

namespace cliffcut {

// Hardware-efficient ansatz: alternating single-qubit rotation layers (axis
// Z or X, angle a random multiple of pi/2) and nearest-neighbour CX ladders.
Circuit gen_hwea(uint32_t n, uint32_t rounds, Rng& rng);

// QAOA for a Sherrington-Kirkpatrick instance with +-1 couplings: per round
// a ZZ phase layer over all pairs (CX conjugation) and an RX mixer layer,
// with angles restricted to multiples of pi/2.
Circuit gen_qaoa_sk(uint32_t n, uint32_t rounds, Rng& rng);

// Phase-flip repetition code over n_data qubits: data qubits prepared in
// |+>, adjacent pairs checked by X(x)X parity measurements onto n_data-1
// ancillas; only the ancillas are measured.
Circuit gen_phase_repetition(uint32_t n_data);

// Random Clifford circuit with `depth` layers of single-qubit Cliffords and
// randomly paired two-qubit gates. Used for engine cross-validation.
Circuit gen_random_clifford(uint32_t n, uint32_t depth, Rng& rng);

// Dispatch by family name: hwea, qaoa, repcode (param ignored), random
// (param is the depth).
Circuit generate_family(const std::string& family, uint32_t n, uint32_t param,
                        Rng& rng);

// Classical (squared Bhattacharyya) fidelity between two distributions.
double hellinger_fidelity(const Distribution& p, const Distribution& q);

// Mean of the per-bit marginal Hellinger fidelities.
double marginal_hellinger_fidelity(const Distribution& p, const Distribution& q);

// Family rule for benchmark scoring: sparse repetition-code outputs are
// compared on the full distribution, dense families on mean marginals.
double family_fidelity(const std::string& family, const Distribution& oracle,
                       const Distribution& got);

struct SuitePoint {
  std::string family;
  uint32_t n = 0;
  uint32_t rounds = 0;  // depth for the random family
  uint32_t t_count = 0;
};

struct SuiteConfig {
  std::vector<SuitePoint> points;
  uint32_t repeats = 5;
  Mode mode = Mode::Exact;
  uint64_t shots = 5000;
  uint64_t seed = 0;
  uint32_t oracle_limit = 20;
  uint32_t k_max = 10;
  uint32_t workers = 1;
  double timeout_s = 0;
  uint64_t support_cap = uint64_t{1} << 20;
  uint32_t sv_width_limit = 26;
};

struct BenchmarkRecord {
  std::string family;
  uint32_t n = 0;
  uint32_t rounds = 0;
  uint32_t t_count = 0;
  uint64_t seed = 0;
  std::string mode;
  uint64_t shots = 0;
  double runtime_s = 0;
  double fidelity = 0;
  bool has_fidelity = false;
  double k = 0;      // mean cut count across repeats
  double terms = 0;  // mean recombination term count
  bool has_cost = false;
  uint32_t repeats_ok = 0;
  uint32_t repeats_total = 0;
};

// Runs every point `repeats` times with derived seeds and aggregates.
std::vector<BenchmarkRecord> run_suite(const SuiteConfig& cfg);

// CSV with header family,n,rounds,t_count,seed,mode,shots,runtime_s,
// fidelity,k,terms; unavailable fields are left empty.
std::string records_csv(const std::vector<BenchmarkRecord>& records);

}  // namespace cliffcut
