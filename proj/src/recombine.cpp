#include "cliffcut/recombine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

namespace cliffcut {

const char* pauli_name(PauliLabel p) {
  switch (p) {
    case PauliLabel::I: return "I";
    case PauliLabel::X: return "X";
    case PauliLabel::Y: return "Y";
    case PauliLabel::Z: return "Z";
  }
  return "?";
}

uint64_t pack_labels(const std::vector<PauliLabel>& in_labels,
                     const std::vector<PauliLabel>& out_labels) {
  uint64_t code = 0;
  for (PauliLabel p : in_labels) code = code << 2 | static_cast<uint64_t>(p);
  for (PauliLabel p : out_labels) code = code << 2 | static_cast<uint64_t>(p);
  return code;
}

namespace {

void add_scaled(Distribution& dst, const Distribution& src, double coeff) {
  for (const auto& [k, w] : src.weights) dst.add(k, coeff * w);
}

// Cancellation in the label transforms leaves exact zeros behind. Dropping
// them keeps entries sparse; an absent key already reads as zero, and empty
// entries let the contraction skip whole terms.
void drop_zeros(Distribution& d) {
  for (auto it = d.weights.begin(); it != d.weights.end();) {
    it = it->second == 0.0 ? d.weights.erase(it) : std::next(it);
  }
}

// Applies the (-1)^bit measurement sign of every non-identity output label
// and drops the quantum-output characters from the key.
Distribution fold_outputs(const Distribution& d, uint32_t n_circ,
                          const std::vector<PauliLabel>& out_labels) {
  Distribution out(n_circ);
  const size_t n_out = out_labels.size();
  for (const auto& [key, w] : d.weights) {
    double sign = 1.0;
    for (size_t l = 0; l < n_out; ++l) {
      if (out_labels[l] != PauliLabel::I && key[n_circ + l] == '1') sign = -sign;
    }
    out.add(key.substr(0, n_circ), sign * w);
  }
  drop_zeros(out);
  return out;
}

}  // namespace

FragmentTensor build_tensor(const Fragment& f,
                            std::vector<VariantResult> results) {
  FragmentTensor t;
  t.n_in = f.num_in();
  t.n_out = f.num_out();
  t.n_circuit_bits = static_cast<uint32_t>(f.circuit.measured.size());
  if (results.size() != variant_count(f))
    throw std::invalid_argument("variant result count does not match fragment");
  for (uint64_t i = 0; i < results.size(); ++i) {
    if (results[i].spec.index != i)
      throw std::invalid_argument("variant results must be in enumeration order");
  }
  t.source = std::move(results);

  uint64_t pow3_out = 1;
  for (uint32_t l = 0; l < t.n_out; ++l) pow3_out *= 3;
  uint64_t pow4_in = 1;
  for (uint32_t l = 0; l < t.n_in; ++l) pow4_in *= 4;

  std::vector<PauliLabel> out_labels(t.n_out, PauliLabel::I);
  const uint64_t out_codes = uint64_t{1} << (2 * t.n_out);
  for (uint64_t oc = 0; oc < out_codes; ++oc) {
    uint64_t b3 = 0;  // measurement-basis variant digits for this label row
    for (uint32_t l = 0; l < t.n_out; ++l) {
      out_labels[l] = static_cast<PauliLabel>((oc >> (2 * (t.n_out - 1 - l))) & 3);
      const MeasBasis b = out_labels[l] == PauliLabel::X   ? MeasBasis::X
                          : out_labels[l] == PauliLabel::Y ? MeasBasis::Y
                                                           : MeasBasis::Z;
      b3 = b3 * 3 + static_cast<uint64_t>(b);
    }

    std::vector<Distribution> arr;
    arr.reserve(pow4_in);
    for (uint64_t pc = 0; pc < pow4_in; ++pc) {
      arr.push_back(fold_outputs(t.source[pc * pow3_out + b3].dist,
                                 t.n_circuit_bits, out_labels));
    }

    // Resolve each input leg from preparation states to Pauli components:
    // I = p0+p1, Z = p0-p1, X = 2p+ - p0 - p1, Y = 2p+i - p0 - p1.
    uint64_t stride = pow4_in;
    for (uint32_t j = 0; j < t.n_in; ++j) {
      stride /= 4;
      std::vector<Distribution> next(pow4_in, Distribution(t.n_circuit_bits));
      for (uint64_t base = 0; base < pow4_in; base += stride * 4) {
        for (uint64_t off = 0; off < stride; ++off) {
          const Distribution& d0 = arr[base + off];
          const Distribution& d1 = arr[base + stride + off];
          const Distribution& dp = arr[base + 2 * stride + off];
          const Distribution& di = arr[base + 3 * stride + off];
          Distribution& eI = next[base + off];
          Distribution& eX = next[base + stride + off];
          Distribution& eY = next[base + 2 * stride + off];
          Distribution& eZ = next[base + 3 * stride + off];
          add_scaled(eI, d0, 1.0);
          add_scaled(eI, d1, 1.0);
          add_scaled(eX, dp, 2.0);
          add_scaled(eX, d0, -1.0);
          add_scaled(eX, d1, -1.0);
          add_scaled(eY, di, 2.0);
          add_scaled(eY, d0, -1.0);
          add_scaled(eY, d1, -1.0);
          add_scaled(eZ, d0, 1.0);
          add_scaled(eZ, d1, -1.0);
          drop_zeros(eI);
          drop_zeros(eX);
          drop_zeros(eY);
          drop_zeros(eZ);
        }
      }
      arr = std::move(next);
    }

    for (uint64_t ic = 0; ic < pow4_in; ++ic)
      t.entries.emplace(ic << (2 * t.n_out) | oc, std::move(arr[ic]));
  }
  return t;
}

Distribution project_to_simplex(const Distribution& d) {
  std::vector<double> u;
  u.reserve(d.weights.size());
  for (const auto& [k, w] : d.weights) u.push_back(w);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0, theta = 0;
  for (size_t j = 0; j < u.size(); ++j) {
    cum += u[j];
    const double th = (cum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - th > 0) theta = th;
  }
  Distribution out(d.n_bits);
  for (const auto& [k, w] : d.weights) {
    const double p = w - theta;
    if (p > 0) out.add(k, p);
  }
  return out;
}

namespace {

// Forces every measurement-basis variant of one preparation to share the
// same circuit-output marginal (their average), reweighting conditionals.
void consistency_average(const Fragment& f, uint32_t n_circ,
                         std::vector<VariantResult>& rs) {
  const uint32_t n_out = f.num_out();
  if (n_out == 0) return;
  uint64_t pow3 = 1;
  for (uint32_t l = 0; l < n_out; ++l) pow3 *= 3;
  const uint64_t groups = rs.size() / pow3;

  std::vector<std::string> patterns;
  for (uint64_t s = 0; s < (uint64_t{1} << n_out); ++s) {
    std::string pat(n_out, '0');
    for (uint32_t l = 0; l < n_out; ++l)
      if (s >> (n_out - 1 - l) & 1) pat[l] = '1';
    patterns.push_back(pat);
  }

  for (uint64_t gi = 0; gi < groups; ++gi) {
    std::vector<std::map<std::string, double>> marg(pow3);
    std::map<std::string, double> avg;
    for (uint64_t b = 0; b < pow3; ++b) {
      for (const auto& [k, w] : rs[gi * pow3 + b].dist.weights)
        marg[b][k.substr(0, n_circ)] += w;
      for (const auto& [bk, bw] : marg[b]) avg[bk] += bw;
    }
    for (auto& [bk, bw] : avg) bw /= static_cast<double>(pow3);

    for (uint64_t b = 0; b < pow3; ++b) {
      Distribution& d = rs[gi * pow3 + b].dist;
      Distribution nd(d.n_bits);
      for (const auto& [k, w] : d.weights) {
        const std::string bk = k.substr(0, n_circ);
        nd.add(k, w * (avg[bk] / marg[b][bk]));
      }
      for (const auto& [bk, aw] : avg) {
        if (aw <= 0 || marg[b].count(bk)) continue;
        for (const std::string& pat : patterns)
          nd.add(bk + pat, aw / static_cast<double>(patterns.size()));
      }
      d = std::move(nd);
    }
  }
}

}  // namespace

FragmentTensor correct_tensor(const Fragment& f, const FragmentTensor& t,
                              bool sampled_mode) {
  if (!sampled_mode) return t;
  std::vector<VariantResult> rs = t.source;
  for (VariantResult& vr : rs) vr.dist = project_to_simplex(vr.dist);
  consistency_average(f, t.n_circuit_bits, rs);
  FragmentTensor out = build_tensor(f, std::move(rs));
  out.corrected = true;
  return out;
}

namespace {

// Global key positions (into the sorted measured-qubit list) of each
// fragment's circuit-output bits, in the fragment's own key order.
std::vector<std::vector<uint32_t>> fragment_positions(const FragmentGraph& g) {
  std::map<uint32_t, uint32_t> pos_of;
  for (uint32_t q : g.measured)
    pos_of.emplace(q, static_cast<uint32_t>(pos_of.size()));
  std::vector<std::vector<uint32_t>> positions(g.fragments.size());
  size_t covered = 0;
  for (size_t fi = 0; fi < g.fragments.size(); ++fi) {
    const Fragment& f = g.fragments[fi];
    std::vector<uint32_t> globals;
    for (uint32_t w : f.circuit.measured) globals.push_back(f.wires[w].qubit);
    std::sort(globals.begin(), globals.end());
    for (uint32_t q : globals) positions[fi].push_back(pos_of.at(q));
    covered += globals.size();
  }
  if (covered != g.measured.size())
    throw std::invalid_argument("fragment outputs do not cover the measured set");
  return positions;
}

struct FragmentCutIds {
  std::vector<uint32_t> in_cut;
  std::vector<uint32_t> out_cut;
};

std::vector<FragmentCutIds> fragment_cut_ids(const FragmentGraph& g) {
  std::vector<FragmentCutIds> ids(g.fragments.size());
  for (size_t fi = 0; fi < g.fragments.size(); ++fi) {
    ids[fi].in_cut.assign(g.fragments[fi].num_in(), 0);
    ids[fi].out_cut.assign(g.fragments[fi].num_out(), 0);
  }
  for (uint32_t j = 0; j < g.cuts.size(); ++j) {
    const CutEdge& e = g.cuts[j];
    if (e.from_fragment >= g.fragments.size() ||
        e.to_fragment >= g.fragments.size() ||
        e.from_leg >= ids[e.from_fragment].out_cut.size() ||
        e.to_leg >= ids[e.to_fragment].in_cut.size())
      throw std::invalid_argument("cut edge references a missing fragment leg");
    ids[e.from_fragment].out_cut[e.from_leg] = j;
    ids[e.to_fragment].in_cut[e.to_leg] = j;
  }
  return ids;
}

uint64_t entry_code_for(const FragmentCutIds& ids, uint64_t assignment,
                        uint32_t k) {
  uint64_t code = 0;
  for (uint32_t c : ids.in_cut)
    code = code << 2 | (assignment >> (2 * (k - 1 - c)) & 3);
  for (uint32_t c : ids.out_cut)
    code = code << 2 | (assignment >> (2 * (k - 1 - c)) & 3);
  return code;
}

}  // namespace

Reconstruction contract(const FragmentGraph& g,
                        const std::vector<FragmentTensor>& tensors,
                        const ContractOptions& opts) {
  if (tensors.size() != g.fragments.size())
    throw std::invalid_argument("tensor count does not match fragment count");
  const uint32_t k = g.k();
  if (k > 31) throw std::invalid_argument("too many cuts to contract");
  const uint64_t n_terms = uint64_t{1} << (2 * k);
  const uint32_t width = static_cast<uint32_t>(g.measured.size());
  const auto positions = fragment_positions(g);
  const auto cut_ids = fragment_cut_ids(g);

  constexpr uint64_t kChunk = 256;
  const uint64_t n_chunks = (n_terms + kChunk - 1) / kChunk;
  std::vector<std::map<std::string, double>> chunk_maps(n_chunks);
  std::atomic<uint64_t> next_chunk{0};
  std::atomic<uint64_t> evaluated{0};
  std::atomic<bool> expired{false};

  auto run_chunks = [&]() {
    std::vector<std::pair<std::string, double>> partial, cross;
    for (;;) {
      const uint64_t ci = next_chunk.fetch_add(1);
      if (ci >= n_chunks) break;
      if (opts.has_deadline &&
          std::chrono::steady_clock::now() > opts.deadline) {
        expired.store(true);
        break;
      }
      auto& out = chunk_maps[ci];
      const uint64_t lo = ci * kChunk;
      const uint64_t hi = std::min(n_terms, lo + kChunk);
      for (uint64_t a = lo; a < hi; ++a) {
        partial.clear();
        partial.emplace_back(std::string(width, '0'), 1.0);
        double scalar = 1.0;
        for (size_t fi = 0; fi < tensors.size(); ++fi) {
          const uint64_t code = entry_code_for(cut_ids[fi], a, k);
          const Distribution& d = tensors[fi].entries.at(code);
          if (d.weights.empty()) {
            scalar = 0.0;
            break;
          }
          if (positions[fi].empty()) {
            scalar *= d.weights.begin()->second;
            if (scalar == 0.0) break;
            continue;
          }
          cross.clear();
          for (const auto& [kbuf, w] : partial) {
            for (const auto& [bk, bw] : d.weights) {
              std::string nk = kbuf;
              for (size_t j = 0; j < bk.size(); ++j)
                nk[positions[fi][j]] = bk[j];
              cross.emplace_back(std::move(nk), w * bw);
            }
          }
          partial.swap(cross);
        }
        if (scalar != 0.0) {
          for (const auto& [kbuf, w] : partial) out[kbuf] += scalar * w;
        }
      }
      evaluated.fetch_add(hi - lo);
    }
  };

  const uint32_t workers = std::max<uint32_t>(1, opts.workers);
  if (workers == 1) {
    run_chunks();
  } else {
    std::vector<std::thread> pool;
    for (uint32_t t = 0; t < workers; ++t) pool.emplace_back(run_chunks);
    for (std::thread& t : pool) t.join();
  }
  if (expired.load()) throw TimeoutError("recombination timed out");

  Reconstruction r;
  r.quasi = Distribution(width);
  for (uint64_t ci = 0; ci < n_chunks; ++ci) {
    for (const auto& [key, w] : chunk_maps[ci]) r.quasi.add(key, w);
  }
  r.quasi.scale(std::ldexp(1.0, -static_cast<int>(k)));
  r.term_count = evaluated.load();
  return r;
}

FinalizeResult finalize(const Distribution& quasi) {
  FinalizeResult fr;
  fr.negativity_mass = quasi.negative_mass();
  Distribution clipped(quasi.n_bits);
  for (const auto& [k, w] : quasi.weights) {
    if (w > 0) clipped.add(k, w);
  }
  const double total = clipped.total();
  if (total <= 0)
    throw std::runtime_error("reconstruction yielded no positive probability mass");
  clipped.scale(1.0 / total);
  clipped.prune(1e-12);
  fr.dist = std::move(clipped);
  return fr;
}

double strong_probability(const FragmentGraph& g,
                          const std::vector<FragmentTensor>& tensors,
                          const std::string& bitstring) {
  if (bitstring.size() != g.measured.size())
    throw std::invalid_argument("bitstring width does not match measured set");
  for (char c : bitstring) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("bitstring must contain only 0/1");
  }
  if (tensors.size() != g.fragments.size())
    throw std::invalid_argument("tensor count does not match fragment count");
  const uint32_t k = g.k();
  if (k > 31) throw std::invalid_argument("too many cuts to contract");
  const uint64_t n_terms = uint64_t{1} << (2 * k);
  const auto positions = fragment_positions(g);
  const auto cut_ids = fragment_cut_ids(g);

  std::vector<std::string> sub_keys(tensors.size());
  for (size_t fi = 0; fi < tensors.size(); ++fi) {
    for (uint32_t pos : positions[fi]) sub_keys[fi].push_back(bitstring[pos]);
  }

  double sum = 0;
  for (uint64_t a = 0; a < n_terms; ++a) {
    double prod = 1.0;
    for (size_t fi = 0; fi < tensors.size() && prod != 0.0; ++fi) {
      const uint64_t code = entry_code_for(cut_ids[fi], a, k);
      prod *= tensors[fi].entries.at(code).at(sub_keys[fi]);
    }
    sum += prod;
  }
  return std::ldexp(sum, -static_cast<int>(k));
}

}  // namespace cliffcut
