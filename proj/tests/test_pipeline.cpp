#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "cliffcut/benchmarks.hpp"
#include "cliffcut/json_io.hpp"
#include "cliffcut/parser.hpp"
#include "cliffcut/pipeline.hpp"
#include "cliffcut/statevector.hpp"
#include "cliffcut/tableau.hpp"

using namespace cliffcut;

namespace {

Circuit t_chain(uint32_t k) {
  Circuit c;
  c.n_qubits = 1;
  c.gates.push_back(make_gate(GateKind::H, 0));
  for (uint32_t i = 0; i < k / 2; ++i) {
    c.gates.push_back(make_gate(GateKind::T, 0));
    c.gates.push_back(make_gate(GateKind::H, 0));
  }
  if (k % 2 == 1) c.gates.push_back(make_gate(GateKind::T, 0));
  c.measured = {0};
  return c;
}

Circuit random_near_clifford(uint64_t i, uint32_t max_n, uint32_t t_count) {
  Rng gen = substream(2026, "nc-gen", i);
  const uint32_t n = 2 + static_cast<uint32_t>(i % (max_n - 1));
  Circuit c = gen_random_clifford(n, 1 + static_cast<uint32_t>(i % (2 * n)), gen);
  Rng inj = substream(2026, "nc-inj", i);
  return inject_t_gates(c, t_count, inj);
}

}  // namespace

TEST_CASE("pure clifford circuits go through uncut") {
  Circuit ghz = parse_circuit(
      "qreg q[3];\nh q[0];\ncx q[0],q[1];\ncx q[1],q[2];\nmeasure q;\n");
  SimOptions opt;
  SimResult r = simulate_circuit(ghz, opt);
  CHECK(r.k == 0);
  CHECK(r.term_count == 1);
  CHECK(r.variant_total == 1);
  CHECK(r.negativity_mass == 0.0);
  CHECK_FALSE(r.correction_applied);
  CHECK_FALSE(r.sampled_fallback);
  CHECK(r.total_shots == 0);
  CHECK(total_variation(r.dist, exact_distribution(ghz)) <= 1e-15);
  CHECK(std::string(mode_name(r.mode)) == "exact");
}

TEST_CASE("exact reconstruction matches the dense oracle on random circuits") {
  for (uint64_t i = 0; i < 30; ++i) {
    Circuit c = random_near_clifford(i, 6, 1 + static_cast<uint32_t>(i % 2));
    SimOptions opt;
    opt.seed = 50 + i;
    SimResult r = simulate_circuit(c, opt);
    CHECK(r.dist.is_normalized(1e-9));
    CHECK(total_variation(r.dist, sv_distribution(c)) <= 1e-9);
    CHECK(r.term_count == (uint64_t{1} << (2 * r.k)));
  }
}

TEST_CASE("mutually connected fragments reconstruct correctly") {
  // The Clifford environment feeds the T fragment and consumes its output,
  // so the two fragments are linked in both directions.
  Circuit c = parse_circuit(
      "qreg q[2];\nh q[0];\ncx q[0],q[1];\nt q[0];\ncx q[0],q[1];\nmeasure q;\n");
  SimOptions opt;
  SimResult r = simulate_circuit(c, opt);
  CHECK(r.k == 2);
  REQUIRE(r.graph.fragments.size() == 2);
  CHECK(total_variation(r.dist, sv_distribution(c)) <= 1e-9);
}

TEST_CASE("identical seeds give byte-identical artifacts") {
  Circuit c = random_near_clifford(3, 5, 1);

  SimOptions exact;
  exact.seed = 777;
  std::string a = artifact_json(simulate_circuit(c, exact));
  std::string b = artifact_json(simulate_circuit(c, exact));
  CHECK(a == b);

  SimOptions wide = exact;
  wide.workers = 4;
  CHECK(artifact_json(simulate_circuit(c, wide)) == a);

  SimOptions sampled;
  sampled.seed = 777;
  sampled.mode = Mode::Sampled;
  sampled.shots = 600;
  std::string sa = artifact_json(simulate_circuit(c, sampled));
  SimOptions sampled4 = sampled;
  sampled4.workers = 4;
  CHECK(artifact_json(simulate_circuit(c, sampled4)) == sa);

  // Different seeds must not collide on the sampled path.
  SimOptions other = sampled;
  other.seed = 778;
  CHECK(artifact_json(simulate_circuit(c, other)) != sa);
}

TEST_CASE("fragment graphs survive a json round trip") {
  Circuit c = parse_circuit(
      "qreg q[3];\nh q[0];\ncx q[0],q[1];\nt q[1];\ncx q[1],q[2];\nmeasure q;\n");
  FragmentGraph g = fragment_circuit(c, find_cuts(c));
  std::string text = fragment_graph_to_json(g);
  FragmentGraph back = fragment_graph_from_json(text);
  CHECK(fragment_graph_to_json(back) == text);

  SimOptions opt;
  opt.seed = 99;
  SimResult direct = simulate_circuit(c, opt);
  SimResult via_graph = simulate_graph(back, opt);
  CHECK(via_graph.dist.weights == direct.dist.weights);
  CHECK(via_graph.k == direct.k);
}

TEST_CASE("cost guard refusals carry the report") {
  Circuit c = t_chain(11);
  SimOptions opt;
  CHECK_THROWS_AS(simulate_circuit(c, opt), GuardRefusal);
  try {
    simulate_circuit(c, opt);
    FAIL("expected a guard refusal");
  } catch (const GuardRefusal& e) {
    CHECK_FALSE(e.report.ok);
    CHECK(e.report.k == 11);
    CHECK(e.report.term_count == 4194304.0);
    CHECK(std::string(e.what()).find("4194304") != std::string::npos);
  }
  opt.k_max = 11;
  SimResult r = simulate_circuit(c, opt);
  CHECK(r.k == 11);
  CHECK(total_variation(r.dist, sv_distribution(c)) <= 1e-9);
}

TEST_CASE("timeouts abort the reconstruction") {
  Circuit c = t_chain(5);
  SimOptions opt;
  opt.timeout_s = 1e-9;
  CHECK_THROWS_AS(simulate_circuit(c, opt), TimeoutError);
}

TEST_CASE("sampled runs account for every shot drawn") {
  Circuit c = t_chain(2);  // h t h: three fragments, 3 + 12 + 4 variants
  SimOptions opt;
  opt.mode = Mode::Sampled;
  opt.shots = 512;
  opt.seed = 5;
  SimResult r = simulate_circuit(c, opt);
  CHECK(std::string(mode_name(r.mode)) == "sampled");
  CHECK(r.shots == 512);
  CHECK(r.variant_total == 19);
  CHECK(r.total_shots == 19 * 512);
  CHECK(r.correction_applied);
  CHECK(r.dist.is_normalized(1e-9));
  CHECK(total_variation(r.dist, sv_distribution(c)) < 0.2);
}

TEST_CASE("support cap overflows fall back to sampling in exact mode") {
  Circuit c = parse_circuit(
      "qreg q[3];\nh q[0];\nh q[1];\nh q[2];\ncx q[0],q[1];\ncx q[1],q[2];\n"
      "measure q;\n");
  SimOptions opt;
  opt.support_cap = 4;
  opt.shots = 2048;
  opt.seed = 12;
  SimResult r = simulate_circuit(c, opt);
  CHECK(r.sampled_fallback);
  CHECK(r.total_shots == 2048);
  CHECK(r.dist.is_normalized(1e-9));

  SimOptions roomy;
  roomy.seed = 12;
  CHECK_FALSE(simulate_circuit(c, roomy).sampled_fallback);
}

TEST_CASE("keep_variants retains the raw per-fragment results") {
  Circuit c = t_chain(2);
  SimOptions opt;
  opt.keep_variants = true;
  SimResult r = simulate_circuit(c, opt);
  REQUIRE(r.variants.size() == 3);
  CHECK(r.variants[0].size() == 3);
  CHECK(r.variants[1].size() == 12);
  CHECK(r.variants[2].size() == 4);

  SimOptions off;
  CHECK(simulate_circuit(c, off).variants.empty());
}

TEST_CASE("single bitstring queries match the full distribution") {
  Circuit c = t_chain(2);
  SimOptions opt;
  SimResult r = simulate_circuit(c, opt);
  for (const std::string& b : {"0", "1"}) {
    CHECK(strong_probability(c, b, opt) ==
          doctest::Approx(r.dist.at(b)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(strong_probability(c, "00", opt), std::invalid_argument);
}

TEST_CASE("partial measurement flows through the pipeline") {
  // Only the middle qubit of a three-qubit circuit is measured.
  Circuit c = parse_circuit(
      "qreg q[3];\nh q[0];\ncx q[0],q[1];\nt q[1];\ncx q[1],q[2];\n"
      "measure q[1];\n");
  SimOptions opt;
  SimResult r = simulate_circuit(c, opt);
  CHECK(r.dist.n_bits == 1);
  CHECK(total_variation(r.dist, sv_distribution(c)) <= 1e-9);
}
