#include "cliffcut/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

namespace cliffcut {

const char* mode_name(Mode m) {
  return m == Mode::Exact ? "exact" : "sampled";
}

namespace {

using Clock = std::chrono::steady_clock;

struct EvalPlan {
  std::vector<std::vector<VariantSpec>> specs;  // per fragment
  std::vector<std::pair<uint32_t, uint32_t>> tasks;  // (fragment, spec idx)
};

EvalPlan plan_variants(const FragmentGraph& g) {
  EvalPlan plan;
  plan.specs.resize(g.fragments.size());
  for (uint32_t fi = 0; fi < g.fragments.size(); ++fi) {
    plan.specs[fi] = enumerate_variants(g.fragments[fi]);
    for (uint32_t vi = 0; vi < plan.specs[fi].size(); ++vi)
      plan.tasks.push_back({fi, vi});
  }
  return plan;
}

std::vector<std::vector<VariantResult>> evaluate_all(
    const FragmentGraph& g, const EvalPlan& plan, const SimOptions& opt,
    bool has_deadline, Clock::time_point deadline, bool& fell_back,
    uint64_t& total_shots) {
  EvalOptions eopt;
  eopt.exact = opt.mode == Mode::Exact;
  eopt.shots = opt.shots;
  eopt.support_cap = opt.support_cap;
  eopt.sv_width_limit = opt.sv_width_limit;

  std::vector<std::vector<VariantResult>> results(g.fragments.size());
  for (size_t fi = 0; fi < g.fragments.size(); ++fi)
    results[fi].resize(plan.specs[fi].size());

  std::atomic<size_t> next{0};
  std::atomic<bool> expired{false};
  std::atomic<bool> any_fallback{false};
  std::atomic<uint64_t> shots_sum{0};
  std::exception_ptr error;
  std::mutex error_mu;

  auto run = [&]() {
    for (;;) {
      const size_t ti = next.fetch_add(1);
      if (ti >= plan.tasks.size() || expired.load()) break;
      if (has_deadline && Clock::now() > deadline) {
        expired.store(true);
        break;
      }
      const auto [fi, vi] = plan.tasks[ti];
      const VariantSpec& spec = plan.specs[fi][vi];
      try {
        Rng rng = substream(opt.seed, "variant", fi, spec.index);
        EvalOutcome out =
            evaluate_variant(g.fragments[fi], spec, eopt, rng);
        if (out.fell_back_to_sampling) any_fallback.store(true);
        shots_sum.fetch_add(out.result.shots_used);
        results[fi][vi] = std::move(out.result);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        expired.store(true);
        break;
      }
    }
  };

  const uint32_t workers =
      std::max<uint32_t>(1, std::min<uint32_t>(opt.workers,
                                               static_cast<uint32_t>(
                                                   plan.tasks.size() ? plan.tasks.size() : 1)));
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (uint32_t t = 0; t < workers; ++t) pool.emplace_back(run);
    for (std::thread& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  if (expired.load()) throw TimeoutError("variant evaluation timed out");

  fell_back = any_fallback.load();
  total_shots = shots_sum.load();
  return results;
}

}  // namespace

SimResult simulate_graph(const FragmentGraph& g, const SimOptions& opt) {
  const auto t0 = Clock::now();
  const bool has_deadline = opt.timeout_s > 0;
  const auto deadline =
      t0 + std::chrono::duration_cast<Clock::duration>(
               std::chrono::duration<double>(opt.timeout_s));

  CostReport guard = cost_guard(g, opt.k_max);
  if (!guard.ok) throw GuardRefusal(std::move(guard));

  EvalPlan plan = plan_variants(g);
  SimResult r;
  r.graph = g;
  r.k = g.k();
  r.mode = opt.mode;
  r.seed = opt.seed;
  r.shots = opt.mode == Mode::Sampled ? opt.shots : 0;
  r.variant_total = plan.tasks.size();

  bool fell_back = false;
  uint64_t total_shots = 0;
  auto results = evaluate_all(g, plan, opt, has_deadline, deadline, fell_back,
                              total_shots);
  r.sampled_fallback = fell_back;
  r.total_shots = total_shots;
  if (fell_back && opt.mode == Mode::Exact)
    r.shots = opt.shots;

  const bool correct = opt.mode == Mode::Sampled;
  std::vector<FragmentTensor> tensors;
  tensors.reserve(g.fragments.size());
  for (size_t fi = 0; fi < g.fragments.size(); ++fi) {
    // Raw results and the tensor's source copy are dead weight once the
    // tensor exists; wide fragments make them the peak of the whole run.
    FragmentTensor t = opt.keep_variants
                           ? build_tensor(g.fragments[fi], results[fi])
                           : build_tensor(g.fragments[fi],
                                          std::move(results[fi]));
    if (correct) t = correct_tensor(g.fragments[fi], t, true);
    t.source.clear();
    t.source.shrink_to_fit();
    tensors.push_back(std::move(t));
  }
  r.correction_applied = correct;
  if (opt.keep_variants) r.variants = std::move(results);

  ContractOptions copt;
  copt.workers = opt.workers;
  copt.has_deadline = has_deadline;
  copt.deadline = deadline;
  Reconstruction rec = contract(g, tensors, copt);
  r.term_count = rec.term_count;

  FinalizeResult fin = finalize(rec.quasi);
  r.dist = std::move(fin.dist);
  r.negativity_mass = fin.negativity_mass;
  r.elapsed_s =
      std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

SimResult simulate_circuit(const Circuit& c, const SimOptions& opt) {
  const FragmentGraph g = fragment_circuit(c, find_cuts(c));
  return simulate_graph(g, opt);
}

double strong_probability(const Circuit& c, const std::string& bitstring,
                          const SimOptions& opt) {
  const FragmentGraph g = fragment_circuit(c, find_cuts(c));
  CostReport guard = cost_guard(g, opt.k_max);
  if (!guard.ok) throw GuardRefusal(std::move(guard));

  EvalPlan plan = plan_variants(g);
  bool fell_back = false;
  uint64_t total_shots = 0;
  auto results = evaluate_all(g, plan, opt, false, Clock::time_point{},
                              fell_back, total_shots);
  std::vector<FragmentTensor> tensors;
  tensors.reserve(g.fragments.size());
  for (size_t fi = 0; fi < g.fragments.size(); ++fi) {
    FragmentTensor t = build_tensor(g.fragments[fi], std::move(results[fi]));
    if (opt.mode == Mode::Sampled)
      t = correct_tensor(g.fragments[fi], t, true);
    t.source.clear();
    t.source.shrink_to_fit();
    tensors.push_back(std::move(t));
  }
  return strong_probability(g, tensors, bitstring);
}

}  // namespace cliffcut
