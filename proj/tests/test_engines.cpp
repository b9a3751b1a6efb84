#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>

#include "cliffcut/benchmarks.hpp"
#include "cliffcut/statevector.hpp"
#include "cliffcut/tableau.hpp"

using namespace cliffcut;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("stabilizer and dense engines agree on random clifford circuits") {
  for (uint64_t i = 0; i < 200; ++i) {
    Rng gen = substream(8711, "gk", i);
    const uint32_t n = 2 + static_cast<uint32_t>(i % 7);           // 2..8
    const uint32_t depth = 1 + static_cast<uint32_t>(i % (2 * n)); // <= 2n
    Circuit c = gen_random_clifford(n, depth, gen);
    Distribution tab = exact_distribution(c);
    Distribution dense = sv_distribution(c);
    CHECK(total_variation(tab, dense) <= 1e-9);
  }
}

TEST_CASE("support sampling agrees with the exact support") {
  for (uint64_t i = 0; i < 30; ++i) {
    Rng gen = substream(55, "support", i);
    const uint32_t n = 2 + static_cast<uint32_t>(i % 5);
    Circuit c = gen_random_clifford(n, n + 2, gen);
    Distribution exact = exact_distribution(c);
    Rng shots = substream(55, "support-shots", i);
    Distribution sampled = sample_support(c, 2000, shots);
    // Sampled keys must lie inside the exact support, where every outcome
    // has the same probability 2^-dim.
    for (const auto& [k, w] : sampled.weights) {
      CHECK(exact.at(k) > 0.0);
    }
    CHECK(total_variation(exact, sampled) < 0.25);
  }
}

TEST_CASE("per-shot tableau runs agree with the exact law") {
  for (uint64_t i = 0; i < 10; ++i) {
    Rng gen = substream(56, "counts", i);
    Circuit c = gen_random_clifford(3, 4, gen);
    Distribution exact = exact_distribution(c);
    Rng shots = substream(56, "counts-shots", i);
    Distribution sampled = sample_counts(c, 4000, shots);
    CHECK(total_variation(exact, sampled) < 0.1);
  }
}

TEST_CASE("clifford rotation decompositions are circuit-equivalent") {
  // Sandwich the rotation between fixed entangling context layers and compare
  // against the same circuit with the decomposition substituted, on both
  // engines. The context makes local phase errors observable.
  auto context_front = [](Circuit& c) {
    c.gates.push_back(make_gate(GateKind::H, 0));
    c.gates.push_back(make_gate(GateKind::H, 1));
    c.gates.push_back(make_gate2(GateKind::CX, 0, 1));
    c.gates.push_back(make_gate(GateKind::S, 1));
  };
  auto context_back = [](Circuit& c) {
    c.gates.push_back(make_gate2(GateKind::CX, 1, 0));
    c.gates.push_back(make_gate(GateKind::H, 0));
    c.gates.push_back(make_gate(GateKind::H, 1));
  };
  for (GateKind kind : {GateKind::RZ, GateKind::RX, GateKind::RY}) {
    for (int k = 0; k < 4; ++k) {
      const Gate rot = make_rotation(kind, 0, k * kPi / 2);
      Circuit a, b;
      a.n_qubits = b.n_qubits = 2;
      a.measured = b.measured = {0, 1};
      context_front(a);
      a.gates.push_back(rot);
      context_back(a);
      context_front(b);
      for (const Gate& g : clifford_decomposition(rot)) b.gates.push_back(g);
      context_back(b);

      Distribution da = sv_distribution(a);
      Distribution db = sv_distribution(b);
      CHECK(total_variation(da, db) <= 1e-12);
      // The tableau path compiles the rotation through the same table.
      Distribution dt = exact_distribution(a);
      CHECK(total_variation(dt, da) <= 1e-9);
    }
  }
}

TEST_CASE("sqrt-x quarter turn matches rx(pi/2) observably") {
  Circuit a, b;
  a.n_qubits = b.n_qubits = 1;
  a.measured = b.measured = {0};
  a.gates = {make_gate(GateKind::H, 0), make_gate(GateKind::SqrtX, 0),
             make_gate(GateKind::H, 0)};
  b.gates = {make_gate(GateKind::H, 0),
             make_rotation(GateKind::RX, 0, kPi / 2),
             make_gate(GateKind::H, 0)};
  CHECK(total_variation(sv_distribution(a), sv_distribution(b)) <= 1e-12);
}

TEST_CASE("tableau compile rejects non-clifford circuits") {
  Circuit c;
  c.n_qubits = 1;
  c.gates = {make_rotation(GateKind::RY, 0, 0.3)};
  c.measured = {0};
  CHECK_THROWS_AS(compile_clifford(c), NonCliffordError);
  CHECK_THROWS_AS(exact_distribution(c), NonCliffordError);
  Rng r(1);
  CHECK_THROWS_AS(sample_counts(c, 10, r), NonCliffordError);
  CHECK_THROWS_AS(sample_support(c, 10, r), NonCliffordError);
}
