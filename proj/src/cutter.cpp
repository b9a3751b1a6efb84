#include "cliffcut/cutter.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace cliffcut {

namespace {

// Gate indices touching each qubit, in circuit order.
std::vector<std::vector<uint32_t>> wire_gate_lists(const Circuit& c) {
  std::vector<std::vector<uint32_t>> lists(c.n_qubits);
  for (uint32_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    lists[g.q0].push_back(i);
    if (is_two_qubit(g.kind)) lists[g.q1].push_back(i);
  }
  return lists;
}

struct UnionFind {
  std::vector<uint32_t> parent;
  explicit UnionFind(size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  uint32_t find(uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(uint32_t a, uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::vector<CutPoint> find_cuts(const Circuit& c) {
  auto lists = wire_gate_lists(c);
  std::vector<CutPoint> cuts;
  for (uint32_t q = 0; q < c.n_qubits; ++q) {
    const auto& wl = lists[q];
    size_t i = 0;
    while (i < wl.size()) {
      if (is_clifford_gate(c.gates[wl[i]])) {
        ++i;
        continue;
      }
      size_t j = i;  // maximal run of non-Clifford gates on this wire
      while (j + 1 < wl.size() && !is_clifford_gate(c.gates[wl[j + 1]])) ++j;
      if (i > 0) cuts.push_back({q, wl[i]});
      if (j + 1 < wl.size()) cuts.push_back({q, wl[j] + 1});
      i = j + 1;
    }
  }
  std::sort(cuts.begin(), cuts.end(), [](const CutPoint& a, const CutPoint& b) {
    return a.position != b.position ? a.position < b.position : a.qubit < b.qubit;
  });
  return cuts;
}

FragmentGraph fragment_circuit(const Circuit& c, const std::vector<CutPoint>& cuts_in) {
  const uint32_t m = static_cast<uint32_t>(c.gates.size());
  std::vector<CutPoint> cuts = cuts_in;
  std::sort(cuts.begin(), cuts.end(), [](const CutPoint& a, const CutPoint& b) {
    return a.position != b.position ? a.position < b.position : a.qubit < b.qubit;
  });
  std::set<std::pair<uint32_t, uint32_t>> seen;
  for (const CutPoint& cp : cuts) {
    if (cp.qubit >= c.n_qubits)
      throw std::invalid_argument("cut qubit out of range");
    if (cp.position > m)
      throw std::invalid_argument("cut position out of range");
    if (!seen.insert({cp.qubit, cp.position}).second)
      throw std::invalid_argument("duplicate cut point");
  }

  // Segment boundaries per qubit: starts are {0} plus cut positions.
  std::vector<std::vector<uint32_t>> starts(c.n_qubits, std::vector<uint32_t>{0});
  for (const CutPoint& cp : cuts) starts[cp.qubit].push_back(cp.position);
  for (auto& s : starts) std::sort(s.begin(), s.end());

  std::vector<uint32_t> seg_offset(c.n_qubits + 1, 0);
  for (uint32_t q = 0; q < c.n_qubits; ++q)
    seg_offset[q + 1] = seg_offset[q] + static_cast<uint32_t>(starts[q].size());
  const uint32_t n_segs = seg_offset[c.n_qubits];

  auto segment_of = [&](uint32_t q, uint32_t gate_idx) {
    const auto& s = starts[q];
    auto it = std::upper_bound(s.begin(), s.end(), gate_idx);
    return seg_offset[q] + static_cast<uint32_t>(it - s.begin()) - 1;
  };

  UnionFind uf(n_segs);
  for (uint32_t i = 0; i < m; ++i) {
    const Gate& g = c.gates[i];
    if (is_two_qubit(g.kind)) uf.unite(segment_of(g.q0, i), segment_of(g.q1, i));
  }

  // Components in order of their smallest segment id.
  std::vector<uint32_t> frag_of(n_segs);
  std::map<uint32_t, uint32_t> root_to_frag;
  for (uint32_t s = 0; s < n_segs; ++s) {
    uint32_t r = uf.find(s);
    auto [it, inserted] =
        root_to_frag.emplace(r, static_cast<uint32_t>(root_to_frag.size()));
    frag_of[s] = it->second;
    (void)inserted;
  }

  FragmentGraph graph;
  graph.n_qubits = c.n_qubits;
  graph.measured = c.measured;
  graph.fragments.resize(root_to_frag.size());

  // Wires: segment s on qubit q spans [starts[q][k], next start or m).
  std::vector<uint32_t> local_wire(n_segs);
  for (uint32_t q = 0; q < c.n_qubits; ++q) {
    for (uint32_t k = 0; k < starts[q].size(); ++k) {
      const uint32_t s = seg_offset[q] + k;
      FragmentWire w;
      w.qubit = q;
      w.seg_start = starts[q][k];
      w.seg_end = k + 1 < starts[q].size() ? starts[q][k + 1] : m;
      w.quantum_in = k > 0;
      w.quantum_out = k + 1 < starts[q].size();
      w.measured = !w.quantum_out && c.measured.count(q) > 0;
      Fragment& f = graph.fragments[frag_of[s]];
      local_wire[s] = static_cast<uint32_t>(f.wires.size());
      f.wires.push_back(w);
    }
  }

  for (Fragment& f : graph.fragments) {
    f.circuit.n_qubits = static_cast<uint32_t>(f.wires.size());
    for (uint32_t w = 0; w < f.wires.size(); ++w)
      if (f.wires[w].measured) f.circuit.measured.insert(w);
  }

  for (uint32_t i = 0; i < m; ++i) {
    Gate g = c.gates[i];
    const uint32_t s0 = segment_of(g.q0, i);
    Fragment& f = graph.fragments[frag_of[s0]];
    g.q0 = local_wire[s0];
    if (is_two_qubit(g.kind)) g.q1 = local_wire[segment_of(c.gates[i].q1, i)];
    f.circuit.gates.push_back(g);
    f.gate_indices.push_back(i);
    if (!is_clifford_gate(g)) f.clifford = false;
  }

  for (const CutPoint& cp : cuts) {
    const auto& s = starts[cp.qubit];
    const uint32_t k =
        static_cast<uint32_t>(std::lower_bound(s.begin(), s.end(), cp.position) -
                              s.begin());
    const uint32_t up_seg = seg_offset[cp.qubit] + k - 1;
    const uint32_t dn_seg = seg_offset[cp.qubit] + k;
    CutEdge e;
    e.point = cp;
    e.from_fragment = frag_of[up_seg];
    e.to_fragment = frag_of[dn_seg];
    Fragment& uf_frag = graph.fragments[e.from_fragment];
    Fragment& df_frag = graph.fragments[e.to_fragment];
    e.from_leg = static_cast<uint32_t>(uf_frag.out_legs.size());
    e.to_leg = static_cast<uint32_t>(df_frag.in_legs.size());
    uf_frag.out_legs.push_back(local_wire[up_seg]);
    df_frag.in_legs.push_back(local_wire[dn_seg]);
    graph.cuts.push_back(e);
  }

  return graph;
}

CostReport cost_guard(const FragmentGraph& g, uint32_t k_max) {
  CostReport r;
  r.k = g.k();
  r.term_count = std::pow(4.0, static_cast<double>(r.k));
  for (const Fragment& f : g.fragments) {
    double v = std::pow(4.0, f.num_in()) * std::pow(3.0, f.num_out());
    r.variant_counts.push_back(static_cast<uint64_t>(v));
  }
  if (r.k > k_max) {
    r.ok = false;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "refusing evaluation: %u cuts would require %.0f "
                  "recombination terms (limit k <= %u)",
                  r.k, r.term_count, k_max);
    r.message = buf;
  }
  return r;
}

}  // namespace cliffcut
