#include "cliffcut/json_io.hpp"

#include <cstdio>
#include <set>
#include <stdexcept>

#include "cliffcut/parser.hpp"
#include "json.hpp"

namespace cliffcut {

using nlohmann::json;

namespace {

json dist_object(const Distribution& d) {
  json w = json::object();
  for (const auto& [k, v] : d.weights) w[k] = v;
  return w;
}

json graph_object(const FragmentGraph& g) {
  json j;
  j["n_qubits"] = g.n_qubits;
  j["measured"] = json::array();
  for (uint32_t q : g.measured) j["measured"].push_back(q);
  j["fragments"] = json::array();
  for (const Fragment& f : g.fragments) {
    json jf;
    jf["circuit"] = emit_circuit(f.circuit);
    jf["wires"] = json::array();
    for (const FragmentWire& w : f.wires) {
      jf["wires"].push_back({{"qubit", w.qubit},
                             {"start", w.seg_start},
                             {"end", w.seg_end},
                             {"quantum_in", w.quantum_in},
                             {"quantum_out", w.quantum_out},
                             {"measured", w.measured}});
    }
    jf["in_legs"] = f.in_legs;
    jf["out_legs"] = f.out_legs;
    jf["gate_indices"] = f.gate_indices;
    jf["clifford"] = f.clifford;
    j["fragments"].push_back(std::move(jf));
  }
  j["cuts"] = json::array();
  for (const CutEdge& e : g.cuts) {
    j["cuts"].push_back({{"qubit", e.point.qubit},
                         {"position", e.point.position},
                         {"from_fragment", e.from_fragment},
                         {"from_leg", e.from_leg},
                         {"to_fragment", e.to_fragment},
                         {"to_leg", e.to_leg}});
  }
  return j;
}

}  // namespace

std::string distribution_to_json(const Distribution& d) {
  json j;
  j["bits"] = d.n_bits;
  j["weights"] = dist_object(d);
  return j.dump(2) + "\n";
}

std::string artifact_json(const SimResult& r) {
  json j;
  j["distribution"] = dist_object(r.dist);
  j["metadata"] = {{"bits", r.dist.n_bits},
                   {"mode", mode_name(r.mode)},
                   {"seed", r.seed},
                   {"shots", r.shots},
                   {"total_shots", r.total_shots},
                   {"k", r.k},
                   {"term_count", r.term_count},
                   {"negativity_mass", r.negativity_mass},
                   {"fragments", r.graph.fragments.size()},
                   {"variants", r.variant_total},
                   {"sampled_fallback", r.sampled_fallback},
                   {"correction", r.correction_applied ? "simplex+consistency"
                                                       : "none"}};
  return j.dump(2) + "\n";
}

std::string artifact_csv(const SimResult& r) {
  std::string csv = "bitstring,probability\n";
  char buf[96];
  for (const auto& [k, w] : r.dist.weights) {
    std::snprintf(buf, sizeof(buf), ",%.17g\n", w);
    csv += k;
    csv += buf;
  }
  return csv;
}

std::string fragment_graph_to_json(const FragmentGraph& g) {
  return graph_object(g).dump(2) + "\n";
}

FragmentGraph fragment_graph_from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.contains("graph")) j = j.at("graph");
  FragmentGraph g;
  g.n_qubits = j.at("n_qubits").get<uint32_t>();
  for (const auto& q : j.at("measured")) g.measured.insert(q.get<uint32_t>());
  for (const auto& jf : j.at("fragments")) {
    Fragment f;
    f.circuit = parse_circuit(jf.at("circuit").get<std::string>());
    for (const auto& jw : jf.at("wires")) {
      FragmentWire w;
      w.qubit = jw.at("qubit").get<uint32_t>();
      w.seg_start = jw.at("start").get<uint32_t>();
      w.seg_end = jw.at("end").get<uint32_t>();
      w.quantum_in = jw.at("quantum_in").get<bool>();
      w.quantum_out = jw.at("quantum_out").get<bool>();
      w.measured = jw.at("measured").get<bool>();
      f.wires.push_back(w);
    }
    f.in_legs = jf.at("in_legs").get<std::vector<uint32_t>>();
    f.out_legs = jf.at("out_legs").get<std::vector<uint32_t>>();
    if (jf.contains("gate_indices"))
      f.gate_indices = jf.at("gate_indices").get<std::vector<uint32_t>>();
    f.clifford = is_clifford_circuit(f.circuit);
    g.fragments.push_back(std::move(f));
  }
  for (const auto& jc : j.at("cuts")) {
    CutEdge e;
    e.point.qubit = jc.at("qubit").get<uint32_t>();
    e.point.position = jc.at("position").get<uint32_t>();
    e.from_fragment = jc.at("from_fragment").get<uint32_t>();
    e.from_leg = jc.at("from_leg").get<uint32_t>();
    e.to_fragment = jc.at("to_fragment").get<uint32_t>();
    e.to_leg = jc.at("to_leg").get<uint32_t>();
    g.cuts.push_back(e);
  }
  validate_fragment_graph(g);
  return g;
}

void validate_fragment_graph(const FragmentGraph& g) {
  auto fail = [](const std::string& m) {
    throw std::invalid_argument("invalid fragment graph: " + m);
  };
  size_t in_total = 0, out_total = 0;
  for (const Fragment& f : g.fragments) {
    if (f.wires.empty()) fail("fragment has no wires");
    if (f.circuit.n_qubits != f.wires.size())
      fail("fragment circuit width does not match its wire count");
    for (const FragmentWire& w : f.wires) {
      if (w.qubit >= g.n_qubits) fail("wire qubit out of range");
      if (w.seg_start > w.seg_end) fail("wire segment is reversed in time");
    }
    for (uint32_t w : f.in_legs) {
      if (w >= f.wires.size()) fail("input leg references a missing wire");
    }
    for (uint32_t w : f.out_legs) {
      if (w >= f.wires.size()) fail("output leg references a missing wire");
    }
    for (uint32_t w : f.circuit.measured) {
      if (w >= f.wires.size()) fail("measured wire out of range");
      if (!g.measured.count(f.wires[w].qubit))
        fail("fragment measures a qubit outside the measured set");
    }
    in_total += f.in_legs.size();
    out_total += f.out_legs.size();
  }
  if (in_total != g.cuts.size() || out_total != g.cuts.size())
    fail("leg totals do not match the cut count");

  std::set<std::pair<uint32_t, uint32_t>> seen_in, seen_out;
  for (const CutEdge& e : g.cuts) {
    if (e.from_fragment >= g.fragments.size() ||
        e.to_fragment >= g.fragments.size())
      fail("cut references a missing fragment");
    const Fragment& from = g.fragments[e.from_fragment];
    const Fragment& to = g.fragments[e.to_fragment];
    if (e.from_leg >= from.out_legs.size()) fail("cut output leg out of range");
    if (e.to_leg >= to.in_legs.size()) fail("cut input leg out of range");
    if (!seen_out.insert({e.from_fragment, e.from_leg}).second)
      fail("output leg used by two cuts");
    if (!seen_in.insert({e.to_fragment, e.to_leg}).second)
      fail("input leg used by two cuts");
    // Time consistency at the wire-segment level: the producing segment must
    // end exactly where the consuming segment starts.
    const FragmentWire& wf = from.wires[from.out_legs[e.from_leg]];
    const FragmentWire& wt = to.wires[to.in_legs[e.to_leg]];
    if (wf.qubit != e.point.qubit || wt.qubit != e.point.qubit)
      fail("cut endpoints disagree on the qubit");
    if (wf.seg_end != e.point.position || wt.seg_start != e.point.position)
      fail("cut endpoints are not time-consistent");
  }

  std::set<uint32_t> covered;
  for (const Fragment& f : g.fragments) {
    for (uint32_t w : f.circuit.measured) {
      if (!covered.insert(f.wires[w].qubit).second)
        fail("two fragments measure the same qubit");
    }
  }
  if (covered.size() != g.measured.size())
    fail("measured qubits are not fully covered by fragments");
}

std::string cut_report_json(const FragmentGraph& g, const CostReport& guard) {
  json j;
  j["graph"] = graph_object(g);
  j["cost"] = {{"ok", guard.ok},
               {"k", guard.k},
               {"term_count", guard.term_count},
               {"variant_counts", guard.variant_counts},
               {"message", guard.message}};
  return j.dump(2) + "\n";
}

std::string variants_json(const SimResult& r) {
  json j;
  j["fragments"] = json::array();
  for (size_t fi = 0; fi < r.variants.size(); ++fi) {
    json jf;
    jf["fragment"] = fi;
    jf["variants"] = json::array();
    for (const VariantResult& vr : r.variants[fi]) {
      json jv;
      jv["index"] = vr.spec.index;
      jv["preps"] = json::array();
      for (PrepState p : vr.spec.preps) jv["preps"].push_back(prep_name(p));
      jv["bases"] = json::array();
      for (MeasBasis b : vr.spec.bases) jv["bases"].push_back(basis_name(b));
      jv["sampled"] = vr.sampled;
      jv["shots"] = vr.shots_used;
      jv["dist"] = dist_object(vr.dist);
      jf["variants"].push_back(std::move(jv));
    }
    j["fragments"].push_back(std::move(jf));
  }
  return j.dump(2) + "\n";
}

std::string records_json(const std::vector<BenchmarkRecord>& records) {
  json arr = json::array();
  for (const BenchmarkRecord& r : records) {
    json j;
    j["family"] = r.family;
    j["n"] = r.n;
    j["rounds"] = r.rounds;
    j["t_count"] = r.t_count;
    j["seed"] = r.seed;
    j["mode"] = r.mode;
    j["shots"] = r.shots;
    j["repeats_ok"] = r.repeats_ok;
    j["repeats_total"] = r.repeats_total;
    if (r.repeats_ok > 0) {
      j["runtime_s"] = r.runtime_s;
    } else {
      j["runtime_s"] = nullptr;
    }
    if (r.has_fidelity) {
      j["fidelity"] = r.fidelity;
    } else {
      j["fidelity"] = nullptr;
    }
    if (r.has_cost) {
      j["k"] = r.k;
      j["terms"] = r.terms;
    } else {
      j["k"] = nullptr;
      j["terms"] = nullptr;
    }
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

}  // namespace cliffcut
