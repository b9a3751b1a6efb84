#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cliffcut/circuit.hpp"
#include "cliffcut/distribution.hpp"
#include "cliffcut/rng.hpp"

namespace cliffcut {

struct NonCliffordError : std::runtime_error {
  explicit NonCliffordError(const std::string& what_) : std::runtime_error(what_) {}
};

// Raised by exact_distribution when the measured support exceeds the cap;
// callers fall back to sampling.
struct SupportTooLarge : std::runtime_error {
  uint32_t dim;
  explicit SupportTooLarge(uint32_t d)
      : std::runtime_error("stabilizer support too large: 2^" + std::to_string(d) + " outcomes"),
        dim(d) {}
};

// Clifford circuit flattened to primitive tableau updates (rotations expanded
// to generator sequences once, at load time).
struct CompiledClifford {
  enum Op : uint8_t { H, S, Sdg, X, Y, Z, SqrtX, CX, CZ, Swap };
  struct Step {
    Op op;
    uint32_t q0;
    uint32_t q1;
  };
  uint32_t n_qubits = 0;
  std::vector<Step> steps;
};

CompiledClifford compile_clifford(const Circuit& c);  // throws NonCliffordError

// Aaronson-Gottesman tableau over 2n generator rows (destabilizers then
// stabilizers). Columns are stored qubit-major and bit-packed over rows, so a
// gate touches O(n/64) machine words and measurement row-multiplications run
// word-parallel across 64 rows at a time.
class Tableau {
public:
  explicit Tableau(uint32_t n_qubits);

  uint32_t num_qubits() const { return n_; }

  void reset();
  void apply(const Gate& g);  // throws NonCliffordError
  void run(const CompiledClifford& ops);

  void h(uint32_t q);
  void s(uint32_t q);
  void sdg(uint32_t q);
  void x(uint32_t q);
  void y(uint32_t q);
  void z(uint32_t q);
  void sqrt_x(uint32_t q);
  void cx(uint32_t c, uint32_t t);
  void cz(uint32_t a, uint32_t b);
  void swap_q(uint32_t a, uint32_t b);

  struct MeasureResult {
    int bit;
    bool deterministic;
  };
  // Z measurement with state collapse. Random outcomes consume one bit of the
  // rng stream; deterministic outcomes consume nothing.
  MeasureResult measure_z(uint32_t q, Rng& rng);

  // Row introspection (tests and Gaussian elimination).
  bool x_bit(uint32_t row, uint32_t q) const;
  bool z_bit(uint32_t row, uint32_t q) const;
  bool phase_bit(uint32_t row) const;

  // Verifies the symplectic structure: stabilizers commute pairwise, each
  // destabilizer anticommutes with exactly its partner stabilizer, rows nonzero.
  bool check_invariants() const;

private:
  friend struct TableauRows;
  uint64_t* xs(uint32_t q) { return xs_.data() + size_t{q} * row_words_; }
  uint64_t* zs(uint32_t q) { return zs_.data() + size_t{q} * row_words_; }
  const uint64_t* xs(uint32_t q) const { return xs_.data() + size_t{q} * row_words_; }
  const uint64_t* zs(uint32_t q) const { return zs_.data() + size_t{q} * row_words_; }
  int find_stabilizer_pivot(uint32_t q) const;

  uint32_t n_;
  uint32_t row_words_;  // words covering 2n row bits
  std::vector<uint64_t> xs_, zs_;
  std::vector<uint64_t> phase_;
};

// Affine description of the measured-bit outcome set: {base XOR span(basis)},
// uniform with probability 2^-dim. basis vectors are linearly independent and
// packed over the measured-bit positions.
struct AffineSupport {
  uint32_t n_bits = 0;
  std::vector<uint64_t> base;
  std::vector<std::vector<uint64_t>> basis;
  uint32_t dim() const { return static_cast<uint32_t>(basis.size()); }
};

AffineSupport measured_support(const Tableau& t, const std::vector<uint32_t>& measured);

// Exact measured-bit distribution by Gaussian elimination over the stabilizer
// group; enumerates the affine support when it fits under `cap` outcomes.
Distribution exact_distribution(const Circuit& c, uint64_t cap = uint64_t{1} << 20);

// `shots` independent tableau runs with terminal Z measurements; returns
// normalized frequencies.
Distribution sample_counts(const Circuit& c, uint64_t shots, Rng& rng);

// Draws `shots` outcomes from the exact affine support (one tableau run, one
// elimination, then O(dim) word-ops per shot). Same outcome law as
// sample_counts; preferred for wide fragments.
Distribution sample_support(const Circuit& c, uint64_t shots, Rng& rng);

}  // namespace cliffcut
