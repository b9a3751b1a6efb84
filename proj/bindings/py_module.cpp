#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cliffcut/benchmarks.hpp"
#include "cliffcut/json_io.hpp"
#include "cliffcut/parser.hpp"
#include "cliffcut/pipeline.hpp"
#include "cliffcut/statevector.hpp"
#include "cliffcut/tableau.hpp"

namespace py = pybind11;
using namespace cliffcut;

namespace {

Distribution dist_from_dict(const py::dict& d) {
  Distribution out(0);
  bool first = true;
  for (auto item : d) {
    const std::string k = py::cast<std::string>(item.first);
    const double w = py::cast<double>(item.second);
    if (first) {
      out.n_bits = static_cast<uint32_t>(k.size());
      first = false;
    } else if (k.size() != out.n_bits) {
      throw std::invalid_argument("distribution keys have mixed widths");
    }
    out.add(k, w);
  }
  return out;
}

py::dict dist_to_dict(const Distribution& d) {
  py::dict r;
  for (const auto& [k, w] : d.weights) r[py::str(k)] = w;
  return r;
}

SimOptions make_options(const std::string& mode, uint64_t shots, uint64_t seed,
                        uint32_t k_max, uint32_t workers, double timeout_s) {
  if (mode != "exact" && mode != "sampled")
    throw std::invalid_argument("mode must be 'exact' or 'sampled'");
  SimOptions so;
  so.mode = mode == "sampled" ? Mode::Sampled : Mode::Exact;
  so.shots = shots;
  so.seed = seed;
  so.k_max = k_max;
  so.workers = workers;
  so.timeout_s = timeout_s;
  return so;
}

py::dict result_to_dict(const SimResult& r) {
  py::dict meta;
  meta["bits"] = r.dist.n_bits;
  meta["mode"] = mode_name(r.mode);
  meta["seed"] = r.seed;
  meta["shots"] = r.shots;
  meta["total_shots"] = r.total_shots;
  meta["k"] = r.k;
  meta["terms"] = r.term_count;
  meta["negativity_mass"] = r.negativity_mass;
  meta["fragments"] = r.graph.fragments.size();
  meta["variants"] = r.variant_total;
  meta["sampled_fallback"] = r.sampled_fallback;
  meta["correction"] = r.correction_applied ? "simplex+consistency" : "none";
  py::dict out;
  out["distribution"] = dist_to_dict(r.dist);
  out["metadata"] = meta;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Near-Clifford circuit simulation with wire cutting and "
            "quasi-probability recombination";
  m.attr("__version__") = "0.1.0";

  py::register_exception<ParseError>(m, "CircuitParseError", PyExc_ValueError);
  py::register_exception<GuardRefusal>(m, "CostGuardError", PyExc_RuntimeError);
  py::register_exception<WidthError>(m, "WidthLimitError", PyExc_ValueError);
  py::register_exception<TimeoutError>(m, "EvaluationTimeout", PyExc_RuntimeError);
  py::register_exception<NonCliffordError>(m, "NonCliffordError", PyExc_ValueError);
  py::register_exception<SupportTooLarge>(m, "SupportTooLargeError",
                                          PyExc_RuntimeError);

  m.def(
      "canonical",
      [](const std::string& text) { return emit_circuit(parse_circuit(text)); },
      py::arg("text"),
      "Parse a circuit and re-emit it in canonical one-gate-per-line form.");

  m.def(
      "circuit_info",
      [](const std::string& text) {
        const Circuit c = parse_circuit(text);
        uint32_t non_clifford = 0;
        for (const Gate& g : c.gates)
          if (!is_clifford_gate(g)) ++non_clifford;
        py::dict d;
        d["n_qubits"] = c.n_qubits;
        d["gates"] = c.gates.size();
        d["measured"] = std::vector<uint32_t>(c.measured.begin(), c.measured.end());
        d["non_clifford"] = non_clifford;
        d["clifford"] = non_clifford == 0;
        return d;
      },
      py::arg("text"));

  m.def(
      "generate",
      [](const std::string& family, uint32_t n, uint32_t rounds, uint32_t t,
         uint64_t seed) {
        Rng rng = substream(seed, "gen", 0, 0);
        Circuit c = generate_family(family, n, rounds, rng);
        if (t > 0) {
          Rng inj = substream(seed, "inject", 0, 0);
          c = inject_t_gates(c, t, inj);
        }
        return emit_circuit(c);
      },
      py::arg("family"), py::arg("n"), py::arg("rounds") = 1, py::arg("t") = 0,
      py::arg("seed") = 0,
      "Benchmark circuit text for family hwea | qaoa | repcode | random.");

  m.def(
      "inject_t",
      [](const std::string& text, uint32_t count, uint64_t seed) {
        Rng rng = substream(seed, "inject", 0, 0);
        return emit_circuit(inject_t_gates(parse_circuit(text), count, rng));
      },
      py::arg("text"), py::arg("count"), py::arg("seed") = 0);

  m.def(
      "simulate",
      [](const std::string& text, const std::string& mode, uint64_t shots,
         uint64_t seed, uint32_t k_max, uint32_t workers, double timeout_s) {
        const SimResult r = simulate_circuit(
            parse_circuit(text),
            make_options(mode, shots, seed, k_max, workers, timeout_s));
        return result_to_dict(r);
      },
      py::arg("text"), py::arg("mode") = "exact", py::arg("shots") = 5000,
      py::arg("seed") = 0, py::arg("k_max") = 10, py::arg("workers") = 1,
      py::arg("timeout_s") = 0.0,
      "Cut, evaluate, and recombine a circuit; returns distribution and "
      "metadata.");

  m.def(
      "simulate_graph_json",
      [](const std::string& graph_json, const std::string& mode, uint64_t shots,
         uint64_t seed, uint32_t k_max, uint32_t workers, double timeout_s) {
        const SimResult r = simulate_graph(
            fragment_graph_from_json(graph_json),
            make_options(mode, shots, seed, k_max, workers, timeout_s));
        return result_to_dict(r);
      },
      py::arg("graph_json"), py::arg("mode") = "exact", py::arg("shots") = 5000,
      py::arg("seed") = 0, py::arg("k_max") = 10, py::arg("workers") = 1,
      py::arg("timeout_s") = 0.0);

  m.def(
      "strong_probability",
      [](const std::string& text, const std::string& bitstring,
         const std::string& mode, uint64_t shots, uint64_t seed, uint32_t k_max) {
        return strong_probability(
            parse_circuit(text), bitstring,
            make_options(mode, shots, seed, k_max, 1, 0.0));
      },
      py::arg("text"), py::arg("bitstring"), py::arg("mode") = "exact",
      py::arg("shots") = 5000, py::arg("seed") = 0, py::arg("k_max") = 10,
      "Quasi-probability of one output bitstring.");

  m.def(
      "cut_info",
      [](const std::string& text, uint32_t k_max) {
        const Circuit c = parse_circuit(text);
        const FragmentGraph g = fragment_circuit(c, find_cuts(c));
        const CostReport guard = cost_guard(g, k_max);
        py::list frags;
        for (const Fragment& f : g.fragments) {
          py::dict jf;
          jf["wires"] = f.wires.size();
          jf["gates"] = f.circuit.gates.size();
          jf["in_legs"] = f.num_in();
          jf["out_legs"] = f.num_out();
          jf["clifford"] = f.clifford;
          frags.append(jf);
        }
        py::list cuts;
        for (const CutEdge& e : g.cuts) {
          py::dict je;
          je["qubit"] = e.point.qubit;
          je["position"] = e.point.position;
          je["from_fragment"] = e.from_fragment;
          je["to_fragment"] = e.to_fragment;
          cuts.append(je);
        }
        py::dict d;
        d["k"] = g.k();
        d["terms"] = guard.term_count;
        d["ok"] = guard.ok;
        d["fragments"] = frags;
        d["cuts"] = cuts;
        return d;
      },
      py::arg("text"), py::arg("k_max") = 10);

  m.def(
      "fragment_graph_json",
      [](const std::string& text) {
        const Circuit c = parse_circuit(text);
        return fragment_graph_to_json(fragment_circuit(c, find_cuts(c)));
      },
      py::arg("text"));

  m.def(
      "exact_distribution",
      [](const std::string& text, uint64_t cap) {
        return dist_to_dict(exact_distribution(parse_circuit(text), cap));
      },
      py::arg("text"), py::arg("cap") = uint64_t{1} << 20,
      "Stabilizer-engine exact output distribution of a Clifford circuit.");

  m.def(
      "sample_counts",
      [](const std::string& text, uint64_t shots, uint64_t seed) {
        Rng rng(seed);
        return dist_to_dict(sample_counts(parse_circuit(text), shots, rng));
      },
      py::arg("text"), py::arg("shots"), py::arg("seed") = 0,
      "Per-shot stabilizer sampling of a Clifford circuit.");

  m.def(
      "sv_distribution",
      [](const std::string& text) {
        return dist_to_dict(sv_distribution(parse_circuit(text)));
      },
      py::arg("text"), "Dense statevector output distribution.");

  m.def(
      "sv_sample",
      [](const std::string& text, uint64_t shots, uint64_t seed) {
        Rng rng(seed);
        return dist_to_dict(sv_sample(parse_circuit(text), shots, rng));
      },
      py::arg("text"), py::arg("shots"), py::arg("seed") = 0);

  m.def(
      "total_variation",
      [](const py::dict& p, const py::dict& q) {
        Distribution a = dist_from_dict(p);
        Distribution b = dist_from_dict(q);
        if (a.weights.empty()) a.n_bits = b.n_bits;
        if (b.weights.empty()) b.n_bits = a.n_bits;
        return total_variation(a, b);
      },
      py::arg("p"), py::arg("q"));

  m.def(
      "hellinger_fidelity",
      [](const py::dict& p, const py::dict& q) {
        Distribution a = dist_from_dict(p);
        Distribution b = dist_from_dict(q);
        if (a.weights.empty()) a.n_bits = b.n_bits;
        if (b.weights.empty()) b.n_bits = a.n_bits;
        return hellinger_fidelity(a, b);
      },
      py::arg("p"), py::arg("q"));

  m.def(
      "marginal_hellinger_fidelity",
      [](const py::dict& p, const py::dict& q) {
        Distribution a = dist_from_dict(p);
        Distribution b = dist_from_dict(q);
        if (a.weights.empty()) a.n_bits = b.n_bits;
        if (b.weights.empty()) b.n_bits = a.n_bits;
        return marginal_hellinger_fidelity(a, b);
      },
      py::arg("p"), py::arg("q"));
}
