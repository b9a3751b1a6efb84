#include "cliffcut/variants.hpp"

#include <algorithm>
#include <stdexcept>

#include "cliffcut/statevector.hpp"
#include "cliffcut/tableau.hpp"

namespace cliffcut {

const char* prep_name(PrepState p) {
  switch (p) {
    case PrepState::Zero: return "0";
    case PrepState::One: return "1";
    case PrepState::Plus: return "+";
    case PrepState::PlusI: return "+i";
  }
  return "?";
}

const char* basis_name(MeasBasis b) {
  switch (b) {
    case MeasBasis::X: return "X";
    case MeasBasis::Y: return "Y";
    case MeasBasis::Z: return "Z";
  }
  return "?";
}

uint64_t variant_count(const Fragment& f) {
  uint64_t total = 1;
  for (uint32_t i = 0; i < f.num_in(); ++i) total *= 4;
  for (uint32_t i = 0; i < f.num_out(); ++i) total *= 3;
  return total;
}

uint64_t variant_index(const Fragment& f, const std::vector<PrepState>& preps,
                       const std::vector<MeasBasis>& bases) {
  if (preps.size() != f.num_in() || bases.size() != f.num_out())
    throw std::invalid_argument("variant assignment does not match leg count");
  uint64_t idx = 0;
  for (PrepState p : preps) idx = idx * 4 + static_cast<uint64_t>(p);
  for (MeasBasis b : bases) idx = idx * 3 + static_cast<uint64_t>(b);
  return idx;
}

std::vector<VariantSpec> enumerate_variants(const Fragment& f) {
  const uint64_t total = variant_count(f);
  std::vector<VariantSpec> specs;
  specs.reserve(total);
  VariantSpec s;
  s.preps.assign(f.num_in(), PrepState::Zero);
  s.bases.assign(f.num_out(), MeasBasis::X);
  for (uint64_t idx = 0; idx < total; ++idx) {
    s.index = idx;
    specs.push_back(s);
    // Odometer increment, last leg fastest.
    bool carry = true;
    for (size_t j = s.bases.size(); carry && j-- > 0;) {
      if (s.bases[j] == MeasBasis::Z) {
        s.bases[j] = MeasBasis::X;
      } else {
        s.bases[j] = static_cast<MeasBasis>(static_cast<uint8_t>(s.bases[j]) + 1);
        carry = false;
      }
    }
    for (size_t j = s.preps.size(); carry && j-- > 0;) {
      if (s.preps[j] == PrepState::PlusI) {
        s.preps[j] = PrepState::Zero;
      } else {
        s.preps[j] = static_cast<PrepState>(static_cast<uint8_t>(s.preps[j]) + 1);
        carry = false;
      }
    }
  }
  return specs;
}

Circuit build_variant_circuit(const Fragment& f, const VariantSpec& s) {
  if (s.preps.size() != f.num_in() || s.bases.size() != f.num_out())
    throw std::invalid_argument("variant spec does not match fragment legs");
  Circuit v;
  v.n_qubits = f.circuit.n_qubits;
  for (uint32_t j = 0; j < f.num_in(); ++j) {
    const uint32_t q = f.in_legs[j];
    switch (s.preps[j]) {
      case PrepState::Zero:
        break;
      case PrepState::One:
        v.gates.push_back(make_gate(GateKind::X, q));
        break;
      case PrepState::Plus:
        v.gates.push_back(make_gate(GateKind::H, q));
        break;
      case PrepState::PlusI:
        v.gates.push_back(make_gate(GateKind::H, q));
        v.gates.push_back(make_gate(GateKind::S, q));
        break;
    }
  }
  v.gates.insert(v.gates.end(), f.circuit.gates.begin(), f.circuit.gates.end());
  for (uint32_t j = 0; j < f.num_out(); ++j) {
    const uint32_t q = f.out_legs[j];
    switch (s.bases[j]) {
      case MeasBasis::X:
        v.gates.push_back(make_gate(GateKind::H, q));
        break;
      case MeasBasis::Y:
        v.gates.push_back(make_gate(GateKind::Sdg, q));
        v.gates.push_back(make_gate(GateKind::H, q));
        break;
      case MeasBasis::Z:
        break;
    }
  }
  v.measured = f.circuit.measured;
  for (uint32_t q : f.out_legs) v.measured.insert(q);
  return v;
}

namespace {

// Engines key result bits by ascending local qubit; the published layout is
// measured circuit outputs by ascending original qubit, then quantum output
// legs in cut order.
std::vector<uint32_t> layout_permutation(const Fragment& f) {
  std::vector<std::pair<uint32_t, uint32_t>> circuit_outs;  // (global, local)
  for (uint32_t w : f.circuit.measured) circuit_outs.push_back({f.wires[w].qubit, w});
  std::sort(circuit_outs.begin(), circuit_outs.end());

  std::vector<uint32_t> layout_locals;
  for (auto& [q, w] : circuit_outs) layout_locals.push_back(w);
  for (uint32_t w : f.out_legs) layout_locals.push_back(w);

  std::vector<uint32_t> sorted = layout_locals;
  std::sort(sorted.begin(), sorted.end());
  std::vector<uint32_t> perm(layout_locals.size());
  for (size_t j = 0; j < layout_locals.size(); ++j) {
    perm[j] = static_cast<uint32_t>(
        std::lower_bound(sorted.begin(), sorted.end(), layout_locals[j]) -
        sorted.begin());
  }
  return perm;
}

Distribution permute_keys(const Distribution& d, const std::vector<uint32_t>& perm) {
  bool identity = true;
  for (size_t j = 0; j < perm.size(); ++j)
    if (perm[j] != j) identity = false;
  if (identity) return d;
  Distribution out(d.n_bits);
  std::string key(perm.size(), '0');
  for (const auto& [k, w] : d.weights) {
    for (size_t j = 0; j < perm.size(); ++j) key[j] = k[perm[j]];
    out.add(key, w);
  }
  return out;
}

}  // namespace

EvalOutcome evaluate_variant(const Fragment& f, const VariantSpec& s,
                             const EvalOptions& opt, Rng rng) {
  const Circuit v = build_variant_circuit(f, s);
  EvalOutcome out;
  out.result.spec = s;

  if (is_clifford_circuit(v)) {
    if (opt.exact) {
      try {
        out.result.dist = exact_distribution(v, opt.support_cap);
      } catch (const SupportTooLarge&) {
        out.result.dist = sample_support(v, opt.shots, rng);
        out.result.sampled = true;
        out.result.shots_used = opt.shots;
        out.fell_back_to_sampling = true;
      }
    } else {
      out.result.dist = sample_support(v, opt.shots, rng);
      out.result.sampled = true;
      out.result.shots_used = opt.shots;
    }
  } else {
    Statevector sv(v.n_qubits, opt.sv_width_limit);
    sv.apply_all(v.gates);
    if (opt.exact) {
      out.result.dist = sv.distribution(v.measured);
    } else {
      out.result.dist = sv.sample(v.measured, opt.shots, rng);
      out.result.sampled = true;
      out.result.shots_used = opt.shots;
    }
  }

  out.result.dist = permute_keys(out.result.dist, layout_permutation(f));
  return out;
}

std::vector<VariantResult> evaluate_fragment(const Fragment& f,
                                             const EvalOptions& opt,
                                             uint64_t seed,
                                             uint32_t fragment_index,
                                             bool* any_fallback) {
  if (any_fallback) *any_fallback = false;
  std::vector<VariantResult> out;
  for (const VariantSpec& s : enumerate_variants(f)) {
    Rng rng = substream(seed, "variant", fragment_index, s.index);
    EvalOutcome o = evaluate_variant(f, s, opt, rng);
    if (o.fell_back_to_sampling && any_fallback) *any_fallback = true;
    out.push_back(std::move(o.result));
  }
  return out;
}

}  // namespace cliffcut
