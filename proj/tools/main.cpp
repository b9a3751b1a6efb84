#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cliffcut/benchmarks.hpp"
#include "cliffcut/json_io.hpp"
#include "cliffcut/parser.hpp"
#include "cliffcut/pipeline.hpp"
#include "cliffcut/statevector.hpp"

namespace {

using namespace cliffcut;

struct OracleInfeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
    return c == '{';
  }
  return false;
}

// Circuit generator spec: family:n=LO[:HI[:STEP]],rounds=R,t=K
// (key `depth` is an alias for `rounds`, used by the random family).
struct GenSpec {
  std::string family;
  std::vector<uint32_t> sizes;
  uint32_t rounds = 1;
  uint32_t t_count = 0;
};

GenSpec parse_gen_spec(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos || colon == 0)
    throw std::invalid_argument("--gen expects family:key=value[,...]: " + text);
  GenSpec spec;
  spec.family = text.substr(0, colon);
  if (spec.family != "hwea" && spec.family != "qaoa" &&
      spec.family != "repcode" && spec.family != "random")
    throw std::invalid_argument("unknown --gen family: " + spec.family);

  std::string rest = text.substr(colon + 1);
  std::istringstream ss(rest);
  std::string kv;
  while (std::getline(ss, kv, ',')) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--gen expects key=value pairs: " + kv);
    const std::string key = kv.substr(0, eq);
    const std::string val = kv.substr(eq + 1);
    auto parse_u32 = [&](const std::string& s) {
      size_t used = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(s, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("--gen: bad number '" + s + "'");
      }
      if (used != s.size() || v > 0xffffffffUL)
        throw std::invalid_argument("--gen: bad number '" + s + "'");
      return static_cast<uint32_t>(v);
    };
    if (key == "n") {
      std::vector<uint32_t> parts;
      std::istringstream vs(val);
      std::string piece;
      while (std::getline(vs, piece, ':')) parts.push_back(parse_u32(piece));
      if (parts.empty() || parts.size() > 3)
        throw std::invalid_argument("--gen: n expects LO[:HI[:STEP]]");
      const uint32_t lo = parts[0];
      const uint32_t hi = parts.size() > 1 ? parts[1] : lo;
      const uint32_t step = parts.size() > 2 ? parts[2] : 1;
      if (step == 0 || hi < lo)
        throw std::invalid_argument("--gen: bad n range");
      for (uint32_t v = lo; v <= hi; v += step) spec.sizes.push_back(v);
    } else if (key == "rounds" || key == "depth") {
      spec.rounds = parse_u32(val);
    } else if (key == "t") {
      spec.t_count = parse_u32(val);
    } else {
      throw std::invalid_argument("--gen: unknown key '" + key + "'");
    }
  }
  if (spec.sizes.empty())
    throw std::invalid_argument("--gen: missing n=...");
  return spec;
}

Circuit circuit_from_gen(const GenSpec& spec, uint64_t seed) {
  if (spec.sizes.size() != 1)
    throw std::invalid_argument("--gen: a size range is only valid for bench");
  Rng gen_rng = substream(seed, "gen", 0, 0);
  Circuit c = generate_family(spec.family, spec.sizes[0], spec.rounds, gen_rng);
  if (spec.t_count > 0) {
    Rng inj = substream(seed, "inject", 0, 0);
    c = inject_t_gates(c, spec.t_count, inj);
  }
  return c;
}

struct CommonOpts {
  std::string input;
  std::string gen;
  std::string mode = "exact";
  uint64_t shots = 5000;
  uint64_t seed = 0;
  uint32_t k_max = 10;
  uint32_t oracle_limit = 20;
  uint32_t workers = 1;
  double timeout_s = 0;
  std::string out;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_input = true) {
  if (with_input) {
    cmd->add_option("--input", o.input, "Circuit file ('-' for stdin)");
    cmd->add_option("--gen", o.gen, "Generated circuit spec family:n=N,rounds=R,t=K");
  }
  cmd->add_option("--mode", o.mode, "Evaluation mode")
      ->check(CLI::IsMember({"exact", "sampled"}));
  cmd->add_option("--shots", o.shots, "Per-variant shots in sampled mode");
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--k-max", o.k_max, "Cut budget for the cost guard");
  cmd->add_option("--oracle-limit", o.oracle_limit,
                  "Max qubits for dense oracle comparison");
  cmd->add_option("--workers", o.workers, "Worker threads");
  cmd->add_option("--timeout-s", o.timeout_s, "Evaluation deadline in seconds");
  cmd->add_option("--out", o.out, "Output path ('-' or empty for stdout)");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
}

SimOptions sim_options(const CommonOpts& o, bool keep_variants = false) {
  SimOptions so;
  so.mode = o.mode == "sampled" ? Mode::Sampled : Mode::Exact;
  so.shots = o.shots;
  so.seed = o.seed;
  so.k_max = o.k_max;
  so.workers = o.workers;
  so.timeout_s = o.timeout_s;
  so.keep_variants = keep_variants;
  return so;
}

Circuit load_circuit(const CommonOpts& o) {
  // File input takes precedence when both are given.
  if (o.input.empty() && !o.gen.empty())
    return circuit_from_gen(parse_gen_spec(o.gen), o.seed);
  if (o.input.empty())
    throw std::invalid_argument("missing --input or --gen");
  const std::string text = read_input(o.input);
  if (looks_like_json(text))
    throw std::invalid_argument("expected a circuit in text format");
  return parse_circuit(text);
}

int cmd_simulate(const CommonOpts& o, const std::string& dump_variants) {
  SimOptions so = sim_options(o, !dump_variants.empty());
  SimResult r;
  std::string input_text;
  if (!o.input.empty() && o.gen.empty()) input_text = read_input(o.input);
  if (!input_text.empty() && looks_like_json(input_text)) {
    const FragmentGraph g = fragment_graph_from_json(input_text);
    r = simulate_graph(g, so);
  } else if (!input_text.empty()) {
    r = simulate_circuit(parse_circuit(input_text), so);
  } else {
    r = simulate_circuit(load_circuit(o), so);
  }
  write_output(o.out, o.format == "csv" ? artifact_csv(r) : artifact_json(r));
  if (!dump_variants.empty()) write_output(dump_variants, variants_json(r));
  std::fprintf(stderr,
               "fragments=%zu cuts=%u variants=%llu terms=%llu "
               "negativity=%.6g elapsed=%.3fs\n",
               r.graph.fragments.size(), r.k,
               static_cast<unsigned long long>(r.variant_total),
               static_cast<unsigned long long>(r.term_count),
               r.negativity_mass, r.elapsed_s);
  return 0;
}

int cmd_cut(const CommonOpts& o) {
  const Circuit c = load_circuit(o);
  const FragmentGraph g = fragment_circuit(c, find_cuts(c));
  const CostReport guard = cost_guard(g, o.k_max);
  write_output(o.out, cut_report_json(g, guard));
  std::fprintf(stderr, "fragments=%zu cuts=%u %s\n", g.fragments.size(), g.k(),
               guard.ok ? "ok" : guard.message.c_str());
  return 0;
}

int cmd_verify(const CommonOpts& o, double threshold) {
  const Circuit c = load_circuit(o);
  if (c.n_qubits > o.oracle_limit)
    throw OracleInfeasible("circuit exceeds --oracle-limit; no dense oracle");
  Distribution oracle;
  try {
    oracle = sv_distribution(c);
  } catch (const WidthError&) {
    throw OracleInfeasible("circuit exceeds the dense engine width limit");
  }
  const SimResult r = simulate_circuit(c, sim_options(o));
  const double tv = total_variation(oracle, r.dist);
  const double hf = hellinger_fidelity(oracle, r.dist);
  const double hm = marginal_hellinger_fidelity(oracle, r.dist);
  const bool pass = hm >= threshold;

  if (o.format == "json") {
    nlohmann::json j;
    j["n_qubits"] = c.n_qubits;
    j["mode"] = o.mode;
    j["tv"] = tv;
    j["hellinger"] = hf;
    j["hellinger_marginal"] = hm;
    j["threshold"] = threshold;
    j["pass"] = pass;
    write_output(o.out, j.dump(2) + "\n");
  } else {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "n_qubits: %u\nmode: %s\ntv: %.9g\nhellinger: %.9f\n"
                  "hellinger_marginal: %.9f\nthreshold: %.9f\npass: %s\n",
                  c.n_qubits, o.mode.c_str(), tv, hf, hm, threshold,
                  pass ? "yes" : "no");
    write_output(o.out, buf);
  }
  return pass ? 0 : 1;
}

int cmd_bench(const CommonOpts& o, const std::vector<std::string>& gens,
              uint32_t repeats) {
  if (gens.empty())
    throw std::invalid_argument("bench requires at least one --gen spec");
  SuiteConfig cfg;
  for (const std::string& s : gens) {
    const GenSpec spec = parse_gen_spec(s);
    for (uint32_t n : spec.sizes)
      cfg.points.push_back({spec.family, n, spec.rounds, spec.t_count});
  }
  cfg.repeats = repeats;
  cfg.mode = o.mode == "sampled" ? Mode::Sampled : Mode::Exact;
  cfg.shots = o.shots;
  cfg.seed = o.seed;
  cfg.oracle_limit = o.oracle_limit;
  cfg.k_max = o.k_max;
  cfg.workers = o.workers;
  cfg.timeout_s = o.timeout_s;
  const auto records = run_suite(cfg);
  write_output(o.out,
               o.format == "json" ? records_json(records) : records_csv(records));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Near-Clifford circuit simulator with wire cutting"};
  app.require_subcommand(1);

  CommonOpts sim_o, cut_o, ver_o, bench_o;
  std::string dump_variants;
  double threshold = 0.99;
  std::vector<std::string> bench_gens;
  uint32_t repeats = 5;
  bench_o.format = "csv";

  CLI::App* sim = app.add_subcommand("simulate", "Evaluate a circuit end to end");
  add_common(sim, sim_o);
  sim->add_option("--dump-variants", dump_variants,
                  "Also write raw per-variant distributions to this path");

  CLI::App* cut = app.add_subcommand("cut", "Report cut points and fragments");
  add_common(cut, cut_o);

  CLI::App* ver = app.add_subcommand("verify", "Compare against the dense oracle");
  add_common(ver, ver_o);
  ver->add_option("--threshold", threshold,
                  "Minimum mean marginal fidelity to pass");

  CLI::App* bench = app.add_subcommand("bench", "Run benchmark sweeps");
  add_common(bench, bench_o, false);
  bench->add_option("--gen", bench_gens,
                    "Sweep spec family:n=LO[:HI[:STEP]],rounds=R,t=K (repeatable)")
      ->required();
  bench->add_option("--repeats", repeats, "Repeats per sweep point");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(sim_o, dump_variants);
    if (cut->parsed()) return cmd_cut(cut_o);
    if (ver->parsed()) return cmd_verify(ver_o, threshold);
    if (bench->parsed()) return cmd_bench(bench_o, bench_gens, repeats);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const GuardRefusal& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 3;
  } catch (const WidthError& e) {
    std::fprintf(stderr, "width error: %s\n", e.what());
    return 4;
  } catch (const OracleInfeasible& e) {
    std::fprintf(stderr, "verification infeasible: %s\n", e.what());
    return 5;
  } catch (const TimeoutError& e) {
    std::fprintf(stderr, "timeout: %s\n", e.what());
    return 6;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
