"""Digraph kernels, closures, and symmetric-arc cycle conditions.

The package centers on (k, l)-kernels of finite digraphs: vertex sets that
are pairwise far apart (directed distance at least k in both directions)
while absorbing every other vertex within distance l. It provides exact
solvers and exhaustive oracles, the cycle-symmetry premises under which
k-kernels are guaranteed to exist, a sharpness family showing the premise
cannot be weakened, and a deterministic, resumable search harness for
hunting counterexamples.
"""

from .digraph import (
    ArcClass,
    Cycle,
    Digraph,
    DistanceMatrix,
    asymmetric_part_is_acyclic,
    classify_arcs,
    closure,
    distances,
    enumerate_simple_cycles,
    cycle_symmetric_count,
    make_digraph,
    reverse,
)
from .families import FamilyInstance, FamilyReport, build_h_k, verify_h_k
from .formats import (
    ParseError,
    RunReport,
    canonical_json,
    parse_edge_list,
    write_dot,
    write_edge_list,
)
from .harness import (
    SearchCheckpoint,
    cursor_space,
    decode_cursor,
    enumerate_labeled_digraphs,
    hunt,
    load_checkpoint,
    random_hunt,
    save_checkpoint,
)
from .kernels import (
    KernelCertificate,
    all_k_kernels,
    find_k_kernel,
    find_kernel,
    find_kl_kernel,
    induced_subdigraph,
    is_k_independent,
    is_kernel_perfect,
    is_l_absorbent,
)
from .premises import (
    CycleReport,
    PathPairViolation,
    PremiseVerdict,
    check_disjoint_lemma_instance,
    check_path_pair_lemmas,
    check_small_cycle_symmetry,
    closure_cycles_have_symmetric_arc,
    conjecture_premise,
    duchet_premise,
    threshold,
)
from .verify import ItemResult, SweepOutcome, run_all, theorem_sweep

__version__ = "0.1.0"

__all__ = [
    "ArcClass",
    "Cycle",
    "CycleReport",
    "Digraph",
    "DistanceMatrix",
    "FamilyInstance",
    "FamilyReport",
    "ItemResult",
    "KernelCertificate",
    "ParseError",
    "PathPairViolation",
    "PremiseVerdict",
    "RunReport",
    "SearchCheckpoint",
    "SweepOutcome",
    "all_k_kernels",
    "asymmetric_part_is_acyclic",
    "build_h_k",
    "canonical_json",
    "check_disjoint_lemma_instance",
    "check_path_pair_lemmas",
    "check_small_cycle_symmetry",
    "classify_arcs",
    "closure",
    "closure_cycles_have_symmetric_arc",
    "conjecture_premise",
    "cursor_space",
    "cycle_symmetric_count",
    "decode_cursor",
    "distances",
    "duchet_premise",
    "enumerate_labeled_digraphs",
    "enumerate_simple_cycles",
    "find_k_kernel",
    "find_kernel",
    "find_kl_kernel",
    "hunt",
    "induced_subdigraph",
    "is_k_independent",
    "is_kernel_perfect",
    "is_l_absorbent",
    "load_checkpoint",
    "make_digraph",
    "parse_edge_list",
    "random_hunt",
    "reverse",
    "run_all",
    "save_checkpoint",
    "theorem_sweep",
    "threshold",
    "verify_h_k",
    "write_dot",
    "write_edge_list",
]
