"""Optimizations on series-parallel-loop decompositions of structured programs."""

from ._core import (
    SploptError,
    allocate_registers,
    bench,
    brute_force_instance,
    cfg,
    cfg_dot,
    closedness_violations,
    decomposition_dot,
    decomposition_json,
    decomposition_term,
    format_program,
    interference,
    liveness,
    lospre,
    min_registers,
    solve_instance,
)

__all__ = [
    "SploptError",
    "allocate_registers",
    "bench",
    "brute_force_instance",
    "cfg",
    "cfg_dot",
    "closedness_violations",
    "decomposition_dot",
    "decomposition_json",
    "decomposition_term",
    "format_program",
    "interference",
    "liveness",
    "lospre",
    "min_registers",
    "solve_instance",
]
