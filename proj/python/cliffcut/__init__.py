"""Near-Clifford circuit simulation with wire cutting.

Circuits are exchanged as text (see the repository README for the grammar);
distributions are plain ``{bitstring: probability}`` dicts.
"""

from ._core import (
    CircuitParseError,
    CostGuardError,
    EvaluationTimeout,
    NonCliffordError,
    SupportTooLargeError,
    WidthLimitError,
    __version__,
    canonical,
    circuit_info,
    cut_info,
    exact_distribution,
    fragment_graph_json,
    generate,
    hellinger_fidelity,
    inject_t,
    marginal_hellinger_fidelity,
    sample_counts,
    simulate,
    simulate_graph_json,
    strong_probability,
    sv_distribution,
    sv_sample,
    total_variation,
)

__all__ = [
    "CircuitParseError",
    "CostGuardError",
    "EvaluationTimeout",
    "NonCliffordError",
    "SupportTooLargeError",
    "WidthLimitError",
    "__version__",
    "canonical",
    "circuit_info",
    "cut_info",
    "exact_distribution",
    "fragment_graph_json",
    "generate",
    "hellinger_fidelity",
    "inject_t",
    "marginal_hellinger_fidelity",
    "sample_counts",
    "simulate",
    "simulate_graph_json",
    "strong_probability",
    "sv_distribution",
    "sv_sample",
    "total_variation",
]
