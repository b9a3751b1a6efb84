#include "cliffcut/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "cliffcut/statevector.hpp"

namespace cliffcut {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

void measure_all(Circuit& c) {
  for (uint32_t q = 0; q < c.n_qubits; ++q) c.measured.insert(q);
}

void random_rotation_layer(Circuit& c, Rng& rng) {
  for (uint32_t q = 0; q < c.n_qubits; ++q) {
    const GateKind axis = rng.next_bit() ? GateKind::RX : GateKind::RZ;
    const double angle = static_cast<double>(rng.uniform_below(4)) * kHalfPi;
    c.gates.push_back(make_rotation(axis, q, angle));
  }
}

}  // namespace

Circuit gen_hwea(uint32_t n, uint32_t rounds, Rng& rng) {
  if (n < 2 || rounds < 1)
    throw std::invalid_argument("gen_hwea: invalid sizes (need n >= 2, rounds >= 1)");
  Circuit c;
  c.n_qubits = n;
  for (uint32_t r = 0; r < rounds; ++r) {
    random_rotation_layer(c, rng);
    for (uint32_t q = 0; q + 1 < n; ++q)
      c.gates.push_back(make_gate2(GateKind::CX, q, q + 1));
  }
  random_rotation_layer(c, rng);
  measure_all(c);
  return c;
}

Circuit gen_qaoa_sk(uint32_t n, uint32_t rounds, Rng& rng) {
  if (n < 2)
    throw std::invalid_argument("gen_qaoa_sk: invalid sizes (need n >= 2)");
  Circuit c;
  c.n_qubits = n;
  for (uint32_t q = 0; q < n; ++q) c.gates.push_back(make_gate(GateKind::H, q));
  for (uint32_t r = 0; r < rounds; ++r) {
    const double gamma = static_cast<double>(rng.uniform_below(4)) * kHalfPi;
    for (uint32_t i = 0; i < n; ++i) {
      for (uint32_t j = i + 1; j < n; ++j) {
        const double w = rng.next_bit() ? -1.0 : 1.0;
        c.gates.push_back(make_gate2(GateKind::CX, i, j));
        c.gates.push_back(make_rotation(GateKind::RZ, j, w * gamma));
        c.gates.push_back(make_gate2(GateKind::CX, i, j));
      }
    }
    const double beta = static_cast<double>(rng.uniform_below(4)) * kHalfPi;
    for (uint32_t q = 0; q < n; ++q)
      c.gates.push_back(make_rotation(GateKind::RX, q, beta));
  }
  measure_all(c);
  return c;
}

Circuit gen_phase_repetition(uint32_t n_data) {
  if (n_data < 2)
    throw std::invalid_argument("gen_phase_repetition: need at least two data qubits");
  Circuit c;
  c.n_qubits = 2 * n_data - 1;
  for (uint32_t d = 0; d < n_data; ++d)
    c.gates.push_back(make_gate(GateKind::H, d));
  for (uint32_t j = 0; j + 1 < n_data; ++j) {
    const uint32_t anc = n_data + j;
    // X(x)X parity of data j and j+1, accumulated onto the ancilla.
    for (uint32_t d : {j, j + 1}) {
      c.gates.push_back(make_gate(GateKind::H, d));
      c.gates.push_back(make_gate2(GateKind::CX, d, anc));
      c.gates.push_back(make_gate(GateKind::H, d));
    }
    c.measured.insert(anc);
  }
  return c;
}

Circuit gen_random_clifford(uint32_t n, uint32_t depth, Rng& rng) {
  if (n == 0) throw std::invalid_argument("gen_random_clifford: need at least one qubit");
  Circuit c;
  c.n_qubits = n;
  static constexpr GateKind kOneQ[] = {GateKind::X,   GateKind::Y,
                                       GateKind::Z,   GateKind::H,
                                       GateKind::S,   GateKind::Sdg,
                                       GateKind::SqrtX};
  std::vector<uint32_t> perm(n);
  for (uint32_t d = 0; d < depth; ++d) {
    for (uint32_t q = 0; q < n; ++q) {
      const uint64_t pick = rng.uniform_below(8);
      if (pick > 0) c.gates.push_back(make_gate(kOneQ[pick - 1], q));
    }
    for (uint32_t q = 0; q < n; ++q) perm[q] = q;
    for (uint32_t q = n; q > 1; --q)
      std::swap(perm[q - 1], perm[rng.uniform_below(q)]);
    for (uint32_t p = 0; p + 1 < n; p += 2) {
      switch (rng.uniform_below(4)) {
        case 1:
          c.gates.push_back(make_gate2(GateKind::CX, perm[p], perm[p + 1]));
          break;
        case 2:
          c.gates.push_back(make_gate2(GateKind::CZ, perm[p], perm[p + 1]));
          break;
        case 3:
          c.gates.push_back(make_gate2(GateKind::Swap, perm[p], perm[p + 1]));
          break;
        default:
          break;
      }
    }
  }
  measure_all(c);
  return c;
}

Circuit generate_family(const std::string& family, uint32_t n, uint32_t param,
                        Rng& rng) {
  if (family == "hwea") return gen_hwea(n, param, rng);
  if (family == "qaoa") return gen_qaoa_sk(n, param, rng);
  if (family == "repcode") return gen_phase_repetition(n);
  if (family == "random") return gen_random_clifford(n, param, rng);
  throw std::invalid_argument("unknown benchmark family: " + family);
}

double hellinger_fidelity(const Distribution& p, const Distribution& q) {
  if (p.n_bits != q.n_bits)
    throw std::invalid_argument("hellinger_fidelity: bit-width mismatch");
  if (!p.is_normalized() || !q.is_normalized())
    throw std::invalid_argument("hellinger_fidelity: unnormalized input");
  double bc = 0;
  auto ip = p.weights.begin();
  auto iq = q.weights.begin();
  while (ip != p.weights.end() && iq != q.weights.end()) {
    if (ip->first < iq->first) {
      ++ip;
    } else if (iq->first < ip->first) {
      ++iq;
    } else {
      if (ip->second > 0 && iq->second > 0)
        bc += std::sqrt(ip->second * iq->second);
      ++ip;
      ++iq;
    }
  }
  return bc * bc;
}

double marginal_hellinger_fidelity(const Distribution& p, const Distribution& q) {
  if (p.n_bits != q.n_bits)
    throw std::invalid_argument("marginal_hellinger_fidelity: bit-width mismatch");
  if (!p.is_normalized() || !q.is_normalized())
    throw std::invalid_argument("marginal_hellinger_fidelity: unnormalized input");
  if (p.n_bits == 0) return 1.0;
  double sum = 0;
  for (uint32_t b = 0; b < p.n_bits; ++b) {
    const auto [p0, p1] = p.bit_marginal(b);
    const auto [q0, q1] = q.bit_marginal(b);
    const double bc = std::sqrt(std::max(p0, 0.0) * std::max(q0, 0.0)) +
                      std::sqrt(std::max(p1, 0.0) * std::max(q1, 0.0));
    sum += bc * bc;
  }
  return sum / p.n_bits;
}

double family_fidelity(const std::string& family, const Distribution& oracle,
                       const Distribution& got) {
  if (family == "repcode") return hellinger_fidelity(oracle, got);
  return marginal_hellinger_fidelity(oracle, got);
}

std::vector<BenchmarkRecord> run_suite(const SuiteConfig& cfg) {
  std::vector<BenchmarkRecord> out;
  uint32_t point_id = 0;
  for (const SuitePoint& pt : cfg.points) {
    BenchmarkRecord rec;
    rec.family = pt.family;
    rec.n = pt.n;
    rec.rounds = pt.rounds;
    rec.t_count = pt.t_count;
    rec.mode = mode_name(cfg.mode);
    rec.shots = cfg.mode == Mode::Sampled ? cfg.shots : 0;
    rec.seed = derive_seed(cfg.seed, "suite-point", point_id);
    rec.repeats_total = cfg.repeats;

    double rt_sum = 0, fid_sum = 0, k_sum = 0, term_sum = 0;
    uint32_t ok = 0, fid_n = 0;
    for (uint32_t rep = 0; rep < cfg.repeats; ++rep) {
      Rng gen_rng = substream(cfg.seed, "gen", point_id, rep);
      Circuit c = generate_family(pt.family, pt.n, pt.rounds, gen_rng);
      if (pt.t_count > 0) {
        Rng inj_rng = substream(cfg.seed, "inject", point_id, rep);
        c = inject_t_gates(c, pt.t_count, inj_rng);
      }
      SimOptions so;
      so.mode = cfg.mode;
      so.shots = cfg.shots;
      so.seed = derive_seed(cfg.seed, "run", point_id, rep);
      so.k_max = cfg.k_max;
      so.workers = cfg.workers;
      so.timeout_s = cfg.timeout_s;
      so.support_cap = cfg.support_cap;
      so.sv_width_limit = cfg.sv_width_limit;
      SimResult sr;
      try {
        sr = simulate_circuit(c, so);
      } catch (const std::exception&) {
        // Timeouts, guard refusals and any other per-run failure are recorded
        // as a skipped repeat; the suite itself never throws.
        continue;
      }
      rt_sum += sr.elapsed_s;
      k_sum += sr.k;
      term_sum += static_cast<double>(sr.term_count);
      ++ok;
      if (c.n_qubits <= cfg.oracle_limit) {
        try {
          const Distribution oracle = sv_distribution(c);
          fid_sum += family_fidelity(pt.family, oracle, sr.dist);
          ++fid_n;
        } catch (const WidthError&) {
        }
      }
    }
    rec.repeats_ok = ok;
    if (ok > 0) {
      rec.runtime_s = rt_sum / ok;
      rec.k = k_sum / ok;
      rec.terms = term_sum / ok;
      rec.has_cost = true;
    }
    if (fid_n > 0) {
      rec.fidelity = fid_sum / fid_n;
      rec.has_fidelity = true;
    }
    out.push_back(std::move(rec));
    ++point_id;
  }
  return out;
}

std::string records_csv(const std::vector<BenchmarkRecord>& records) {
  std::string csv =
      "family,n,rounds,t_count,seed,mode,shots,runtime_s,fidelity,k,terms\n";
  char buf[256];
  for (const BenchmarkRecord& r : records) {
    std::snprintf(buf, sizeof(buf), "%s,%u,%u,%u,%llu,%s,%llu,",
                  r.family.c_str(), r.n, r.rounds, r.t_count,
                  static_cast<unsigned long long>(r.seed), r.mode.c_str(),
                  static_cast<unsigned long long>(r.shots));
    csv += buf;
    if (r.repeats_ok > 0) {
      std::snprintf(buf, sizeof(buf), "%.6f,", r.runtime_s);
      csv += buf;
    } else {
      csv += ",";
    }
    if (r.has_fidelity) {
      std::snprintf(buf, sizeof(buf), "%.6f,", r.fidelity);
      csv += buf;
    } else {
      csv += ",";
    }
    if (r.has_cost) {
      std::snprintf(buf, sizeof(buf), "%.3f,%.1f", r.k, r.terms);
      csv += buf;
    } else {
      csv += ",";
    }
    csv += "\n";
  }
  return csv;
}

}  // namespace cliffcut
