"""Desk-scale laboratory for random 0/1 polytopes.

Exact polytope skeletons over percolated hypercube vertex sets, edge
expansion (exact, spectral, sweep), subcube families with box-graph paths,
and the coupling law for cube configurations.  Rationals cross the API as
"num/den" strings; feed them to fractions.Fraction for arithmetic.
"""

from ._core import (
    GuardError,
    InvariantError,
    cheeger_exact,
    cheeger_spectral_lower,
    cheeger_sweep_upper,
    coupling_p_value,
    direction_set_count,
    exact_edge_probability,
    family_size,
    gbox_path_length,
    harper_edge_bound,
    isoperimetry_ok,
    local_adjacent,
    run_command,
    sample_vertices,
    skeleton_edges,
)

__all__ = [
    "GuardError",
    "InvariantError",
    "cheeger_exact",
    "cheeger_spectral_lower",
    "cheeger_sweep_upper",
    "coupling_p_value",
    "direction_set_count",
    "exact_edge_probability",
    "family_size",
    "gbox_path_length",
    "harper_edge_bound",
    "isoperimetry_ok",
    "local_adjacent",
    "run_command",
    "sample_vertices",
    "skeleton_edges",
]

__version__ = "0.1.0"
