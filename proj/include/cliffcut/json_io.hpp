#pragma once

#include <string>
#include <vector>

#include "cliffcut/benchmarks.hpp"
#include "cliffcut/cutter.hpp"
#include "cliffcut/distribution.hpp"
#include "cliffcut/pipeline.hpp"

namespace cliffcut {

// Serialized forms are deterministic: object keys are sorted and no
// wall-clock or concurrency details are included.

std::string distribution_to_json(const Distribution& d);

// Result artifact: distribution plus reproducibility metadata.
std::string artifact_json(const SimResult& r);

// bitstring,probability rows (header included), keys ascending.
std::string artifact_csv(const SimResult& r);

std::string fragment_graph_to_json(const FragmentGraph& g);
FragmentGraph fragment_graph_from_json(const std::string& text);

// Structural consistency checks for graphs assembled outside the cutter.
void validate_fragment_graph(const FragmentGraph& g);

// Cut analysis: cut points, per-fragment summaries, and the cost estimate.
std::string cut_report_json(const FragmentGraph& g, const CostReport& guard);

// Raw per-variant distributions kept by keep_variants.
std::string variants_json(const SimResult& r);

std::string records_json(const std::vector<BenchmarkRecord>& records);

}  // namespace cliffcut
