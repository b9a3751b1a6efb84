#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <numbers>

#include "cliffcut/benchmarks.hpp"
#include "cliffcut/parser.hpp"
#include "cliffcut/tableau.hpp"

using namespace cliffcut;

namespace {

Circuit make(const std::string& body) {
  return parse_circuit(body);
}

}  // namespace

TEST_CASE("fresh tableau is |0..0> with canonical rows") {
  Tableau t(3);
  CHECK(t.check_invariants());
  for (uint32_t q = 0; q < 3; ++q) {
    CHECK(t.x_bit(q, q));        // destabilizer row q = X_q
    CHECK_FALSE(t.z_bit(q, q));
    CHECK(t.z_bit(3 + q, q));    // stabilizer row q = Z_q
    CHECK_FALSE(t.x_bit(3 + q, q));
    CHECK_FALSE(t.phase_bit(q));
    CHECK_FALSE(t.phase_bit(3 + q));
  }
  Rng rng(1);
  for (uint32_t q = 0; q < 3; ++q) {
    auto m = t.measure_z(q, rng);
    CHECK(m.bit == 0);
    CHECK(m.deterministic);
  }
}

TEST_CASE("deterministic measurement outcomes") {
  Tableau t(2);
  Rng rng(5);
  t.x(0);
  auto m0 = t.measure_z(0, rng);
  CHECK(m0.bit == 1);
  CHECK(m0.deterministic);
  auto m1 = t.measure_z(1, rng);
  CHECK(m1.bit == 0);
  CHECK(m1.deterministic);
  CHECK(t.check_invariants());
}

TEST_CASE("random measurement collapses the state") {
  bool saw0 = false, saw1 = false;
  for (uint64_t seed = 0; seed < 64; ++seed) {
    Tableau t(1);
    Rng rng(seed);
    t.h(0);
    auto first = t.measure_z(0, rng);
    CHECK_FALSE(first.deterministic);
    auto second = t.measure_z(0, rng);
    CHECK(second.deterministic);
    CHECK(second.bit == first.bit);
    (first.bit ? saw1 : saw0) = true;
    CHECK(t.check_invariants());
  }
  CHECK(saw0);
  CHECK(saw1);
}

TEST_CASE("exact distributions of small clifford circuits") {
  auto d = exact_distribution(make("qreg q[1];\nx q[0];\nmeasure q;\n"));
  CHECK(d.weights.size() == 1);
  CHECK(d.at("1") == 1.0);

  d = exact_distribution(make("qreg q[1];\nh q[0];\nmeasure q;\n"));
  CHECK(d.at("0") == 0.5);
  CHECK(d.at("1") == 0.5);

  // Bell pair.
  d = exact_distribution(make("qreg q[2];\nh q[0];\ncx q[0],q[1];\nmeasure q;\n"));
  CHECK(d.weights.size() == 2);
  CHECK(d.at("00") == 0.5);
  CHECK(d.at("11") == 0.5);

  // GHZ-3.
  d = exact_distribution(
      make("qreg q[3];\nh q[0];\ncx q[0],q[1];\ncx q[1],q[2];\nmeasure q;\n"));
  CHECK(d.weights.size() == 2);
  CHECK(d.at("000") == 0.5);
  CHECK(d.at("111") == 0.5);

  // S*S = Z: HZH = X flips the qubit.
  d = exact_distribution(make("qreg q[1];\nh q[0];\ns q[0];\ns q[0];\nh q[0];\nmeasure q;\n"));
  CHECK(d.at("1") == 1.0);

  // sx*sx = X.
  d = exact_distribution(make("qreg q[1];\nsx q[0];\nsx q[0];\nmeasure q;\n"));
  CHECK(d.at("1") == 1.0);

  // H(1) CZ H(1) = CX(0,1).
  d = exact_distribution(make(
      "qreg q[2];\nh q[0];\nh q[1];\ncz q[0],q[1];\nh q[1];\nmeasure q;\n"));
  CHECK(d.at("00") == 0.5);
  CHECK(d.at("11") == 0.5);

  // Swap moves the excitation.
  d = exact_distribution(make("qreg q[2];\nx q[0];\nswap q[0],q[1];\nmeasure q;\n"));
  CHECK(d.at("01") == 1.0);

  // Y acts like a flip in the Z basis.
  d = exact_distribution(make("qreg q[1];\ny q[0];\nmeasure q;\n"));
  CHECK(d.at("1") == 1.0);
}

TEST_CASE("clifford rotations are accepted, non-clifford rejected") {
  auto d = exact_distribution(
      make("qreg q[1];\nrx(pi) q[0];\nmeasure q;\n"));
  CHECK(d.at("1") == 1.0);
  // RZ(pi/2) == S: H S S H = X.
  d = exact_distribution(make(
      "qreg q[1];\nh q[0];\nrz(pi/2) q[0];\nrz(pi/2) q[0];\nh q[0];\nmeasure q;\n"));
  CHECK(d.at("1") == 1.0);
  CHECK_THROWS_AS(exact_distribution(make("qreg q[1];\nt q[0];\nmeasure q;\n")),
                  NonCliffordError);
  CHECK_THROWS_AS(
      exact_distribution(make("qreg q[1];\nrz(pi/4) q[0];\nmeasure q;\n")),
      NonCliffordError);
}

TEST_CASE("partial measurement marginals") {
  Circuit c = make("qreg q[2];\nh q[0];\ncx q[0],q[1];\nmeasure q[1];\n");
  auto d = exact_distribution(c);
  CHECK(d.n_bits == 1);
  CHECK(d.at("0") == 0.5);
  CHECK(d.at("1") == 0.5);

  Circuit none = make("qreg q[2];\nh q[0];\n");
  auto d0 = exact_distribution(none);
  CHECK(d0.n_bits == 0);
  CHECK(d0.at("") == 1.0);
}

TEST_CASE("support cap raises with the support dimension") {
  Circuit c = make("qreg q[3];\nh q[0];\nh q[1];\nh q[2];\nmeasure q;\n");
  try {
    exact_distribution(c, 4);
    FAIL_CHECK("expected SupportTooLarge");
  } catch (const SupportTooLarge& e) {
    CHECK(e.dim == 3);
  }
  // The same support fits under the default cap.
  auto d = exact_distribution(c);
  CHECK(d.weights.size() == 8);
  CHECK(d.at("101") == 0.125);
}

TEST_CASE("affine support reflects stabilizer correlations") {
  // CX chain: outcomes are (b, b, b) only.
  Circuit c = make(
      "qreg q[3];\nh q[0];\ncx q[0],q[1];\ncx q[0],q[2];\nmeasure q;\n");
  Tableau t(3);
  t.h(0);
  t.cx(0, 1);
  t.cx(0, 2);
  auto sup = measured_support(t, {0, 1, 2});
  CHECK(sup.n_bits == 3);
  CHECK(sup.dim() == 1);
  auto d = exact_distribution(c);
  CHECK(d.weights.size() == 2);
}

TEST_CASE("sample_counts matches the exact law and is seeded") {
  Circuit bell = make("qreg q[2];\nh q[0];\ncx q[0],q[1];\nmeasure q;\n");
  Rng r1(42);
  auto d1 = sample_counts(bell, 2000, r1);
  CHECK(d1.total() == doctest::Approx(1.0));
  for (const auto& [k, w] : d1.weights) {
    CHECK((k == "00" || k == "11"));
  }
  CHECK(d1.at("00") == doctest::Approx(0.5).epsilon(0.15));

  Rng r2(42);
  auto d2 = sample_counts(bell, 2000, r2);
  CHECK(d1.weights == d2.weights);

  Circuit det = make("qreg q[1];\nx q[0];\nmeasure q;\n");
  Rng r3(0);
  auto d3 = sample_counts(det, 64, r3);
  CHECK(d3.at("1") == 1.0);
}

TEST_CASE("sample_support draws from the exact affine set") {
  Circuit bell = make("qreg q[2];\nh q[0];\ncx q[0],q[1];\nmeasure q;\n");
  Rng r(7);
  auto d = sample_support(bell, 4000, r);
  CHECK(d.total() == doctest::Approx(1.0));
  for (const auto& [k, w] : d.weights) {
    CHECK((k == "00" || k == "11"));
  }
  CHECK(d.at("00") == doctest::Approx(0.5).epsilon(0.15));

  Circuit det = make("qreg q[2];\nx q[0];\nmeasure q;\n");
  Rng r2(9);
  auto d2 = sample_support(det, 128, r2);
  CHECK(d2.at("10") == 1.0);
}

TEST_CASE("invariants hold after random clifford circuits") {
  for (uint64_t i = 0; i < 40; ++i) {
    Rng gen = substream(31, "tableau-inv", i);
    const uint32_t n = 2 + static_cast<uint32_t>(i % 7);
    Circuit c = gen_random_clifford(n, 2 * n, gen);
    Tableau t(n);
    t.run(compile_clifford(c));
    CHECK(t.check_invariants());
  }
}

TEST_CASE("wide shallow sampling stays fast" * doctest::timeout(60)) {
  Rng gen = substream(2024, "perf");
  Circuit c = gen_random_clifford(100, 100, gen);
  Rng shots(512);
  const auto start = std::chrono::steady_clock::now();
  auto d = sample_counts(c, 5000, shots);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  CHECK(d.total() == doctest::Approx(1.0));
  CHECK(secs < 5.0);
}
