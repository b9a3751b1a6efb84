#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "cliffcut/parser.hpp"
#include "cliffcut/statevector.hpp"

using namespace cliffcut;

namespace {
constexpr double kPi = std::numbers::pi;

Circuit make(const std::string& body) { return parse_circuit(body); }
}  // namespace

TEST_CASE("single hadamard amplitudes and distribution") {
  Statevector sv(1);
  sv.apply(make_gate(GateKind::H, 0));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(sv.amplitudes()[0].real() == doctest::Approx(r).epsilon(1e-14));
  CHECK(sv.amplitudes()[1].real() == doctest::Approx(r).epsilon(1e-14));
  auto d = sv.distribution({0});
  CHECK(d.at("0") == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(d.at("1") == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("H T H interference probabilities") {
  // p(0) = cos^2(pi/8), p(1) = sin^2(pi/8).
  auto d = sv_distribution(
      make("qreg q[1];\nh q[0];\nt q[0];\nh q[0];\nmeasure q;\n"));
  CHECK(d.at("0") == doctest::Approx(0.8535533905932737).epsilon(1e-14));
  CHECK(d.at("1") == doctest::Approx(0.14644660940672624).epsilon(1e-14));

  // tdg undoes t.
  d = sv_distribution(
      make("qreg q[1];\nh q[0];\nt q[0];\ntdg q[0];\nh q[0];\nmeasure q;\n"));
  CHECK(d.at("0") == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("phases are invisible in the computational basis") {
  auto d = sv_distribution(make("qreg q[1];\nh q[0];\nt q[0];\nmeasure q;\n"));
  CHECK(d.at("0") == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(d.at("1") == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("bell and ghz through the dense engine") {
  auto d = sv_distribution(
      make("qreg q[2];\nh q[0];\ncx q[0],q[1];\nmeasure q;\n"));
  CHECK(d.weights.size() == 2);
  CHECK(d.at("00") == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(d.at("11") == doctest::Approx(0.5).epsilon(1e-14));

  auto g = sv_distribution(make(
      "qreg q[3];\nh q[0];\ncx q[0],q[1];\ncx q[1],q[2];\nmeasure q[0];\nmeasure q[2];\n"));
  CHECK(g.n_bits == 2);
  CHECK(g.at("00") == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(g.at("11") == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("rotation gates match their matrix definitions") {
  // RY(theta)|0> = cos(theta/2)|0> + sin(theta/2)|1>.
  const double theta = 1.1;
  Statevector sv(1);
  sv.apply(make_rotation(GateKind::RY, 0, theta));
  CHECK(sv.amplitudes()[0].real() == doctest::Approx(std::cos(theta / 2)).epsilon(1e-13));
  CHECK(sv.amplitudes()[1].real() == doctest::Approx(std::sin(theta / 2)).epsilon(1e-13));

  // RX(pi)|0> = -i|1>.
  Statevector s2(1);
  s2.apply(make_rotation(GateKind::RX, 0, kPi));
  CHECK(std::abs(s2.amplitudes()[0]) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(s2.amplitudes()[1].imag() == doctest::Approx(-1.0).epsilon(1e-13));

  // RZ leaves |0> unchanged up to phase.
  Statevector s3(1);
  s3.apply(make_rotation(GateKind::RZ, 0, 0.7));
  CHECK(std::abs(s3.amplitudes()[0]) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("width guard") {
  CHECK_NOTHROW(Statevector(10));
  try {
    Statevector sv(27);
    FAIL_CHECK("expected WidthError");
  } catch (const WidthError& e) {
    CHECK(e.n_qubits == 27);
    CHECK(e.limit == 26);
  }
  try {
    Statevector sv(6, 5);
    FAIL_CHECK("expected WidthError");
  } catch (const WidthError& e) {
    CHECK(e.n_qubits == 6);
    CHECK(e.limit == 5);
  }
  Circuit wide;
  wide.n_qubits = 30;
  wide.measured = {0};
  CHECK_THROWS_AS(sv_distribution(wide), WidthError);
}

TEST_CASE("norm stays put over long random circuits") {
  Rng rng(401);
  const uint32_t n = 6;
  Statevector sv(n);
  for (int i = 0; i < 10000; ++i) {
    switch (rng.uniform_below(8)) {
      case 0: sv.apply(make_gate(GateKind::H, static_cast<uint32_t>(rng.uniform_below(n)))); break;
      case 1: sv.apply(make_gate(GateKind::S, static_cast<uint32_t>(rng.uniform_below(n)))); break;
      case 2: sv.apply(make_gate(GateKind::T, static_cast<uint32_t>(rng.uniform_below(n)))); break;
      case 3: sv.apply(make_gate(GateKind::SqrtX, static_cast<uint32_t>(rng.uniform_below(n)))); break;
      case 4: sv.apply(make_rotation(GateKind::RZ, static_cast<uint32_t>(rng.uniform_below(n)),
                                     rng.next_double() * 2 * kPi)); break;
      case 5: sv.apply(make_rotation(GateKind::RY, static_cast<uint32_t>(rng.uniform_below(n)),
                                     rng.next_double() * 2 * kPi)); break;
      default: {
        uint32_t a = static_cast<uint32_t>(rng.uniform_below(n));
        uint32_t b = static_cast<uint32_t>(rng.uniform_below(n - 1));
        if (b >= a) ++b;
        sv.apply(make_gate2(rng.next_bit() ? GateKind::CX : GateKind::CZ, a, b));
        break;
      }
    }
  }
  CHECK(std::abs(sv.norm() - 1.0) < 1e-9);
}

TEST_CASE("mirror circuits return to the all-zero state") {
  for (uint64_t trial = 0; trial < 20; ++trial) {
    Rng rng = substream(777, "mirror", trial);
    const uint32_t n = 2 + static_cast<uint32_t>(trial % 5);
    Circuit c;
    c.n_qubits = n;
    for (int i = 0; i < 40; ++i) {
      switch (rng.uniform_below(6)) {
        case 0: c.gates.push_back(make_gate(GateKind::H, static_cast<uint32_t>(rng.uniform_below(n)))); break;
        case 1: c.gates.push_back(make_gate(GateKind::T, static_cast<uint32_t>(rng.uniform_below(n)))); break;
        case 2: c.gates.push_back(make_gate(GateKind::Sdg, static_cast<uint32_t>(rng.uniform_below(n)))); break;
        case 3: c.gates.push_back(make_rotation(GateKind::RX, static_cast<uint32_t>(rng.uniform_below(n)),
                                                rng.next_double() * 2 * kPi)); break;
        case 4: c.gates.push_back(make_gate(GateKind::SqrtX, static_cast<uint32_t>(rng.uniform_below(n)))); break;
        default: {
          uint32_t a = static_cast<uint32_t>(rng.uniform_below(n));
          uint32_t b = static_cast<uint32_t>(rng.uniform_below(n - 1));
          if (b >= a) ++b;
          c.gates.push_back(make_gate2(GateKind::CX, a, b));
          break;
        }
      }
    }
    Circuit inv = inverse_circuit(c);
    c.gates.insert(c.gates.end(), inv.gates.begin(), inv.gates.end());
    for (uint32_t q = 0; q < n; ++q) c.measured.insert(q);
    auto d = sv_distribution(c);
    CHECK(d.at(std::string(n, '0')) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("tiny probabilities are pruned") {
  Circuit c;
  c.n_qubits = 1;
  c.gates = {make_rotation(GateKind::RY, 0, 2e-7)};
  c.measured = {0};
  auto d = sv_distribution(c);
  // p(1) = sin^2(1e-7) ~ 1e-14 falls below the 1e-12 floor.
  CHECK(d.weights.size() == 1);
  CHECK(d.at("0") == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sampling is seeded and close to the law") {
  Circuit bell = make("qreg q[2];\nh q[0];\ncx q[0],q[1];\nmeasure q;\n");
  Rng r1(11);
  auto d1 = sv_sample(bell, 5000, r1);
  CHECK(d1.total() == doctest::Approx(1.0));
  for (const auto& [k, w] : d1.weights) {
    CHECK((k == "00" || k == "11"));
  }
  CHECK(d1.at("00") == doctest::Approx(0.5).epsilon(0.1));
  Rng r2(11);
  auto d2 = sv_sample(bell, 5000, r2);
  CHECK(d1.weights == d2.weights);
}
