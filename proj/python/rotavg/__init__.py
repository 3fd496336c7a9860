"""Rotation averaging on SO(3): BCD and SUM solvers with optimality certificates."""

from ._rotavg import (
    Certificate,
    NumericalError,
    ParseError,
    RAGraph,
    __version__,
    assemble_cost_block,
    assemble_r_tilde,
    axis_angle_to_rotation,
    build_lambda,
    certificate_matrix,
    certify,
    chordal_sq,
    generate,
    is_rotation,
    losso_oracle,
    majorizer_value,
    objective,
    random_rotation,
    random_rotation_uniform,
    read_graph,
    read_solution,
    rotation_to_nearest_valid,
    smallest_eigenvalue,
    solve_bcd,
    solve_losso,
    solve_sum,
    spanning_tree_init,
    trace_objective_sum,
    write_graph,
    write_solution,
)

__all__ = [
    "Certificate",
    "NumericalError",
    "ParseError",
    "RAGraph",
    "__version__",
    "assemble_cost_block",
    "assemble_r_tilde",
    "axis_angle_to_rotation",
    "build_lambda",
    "certificate_matrix",
    "certify",
    "chordal_sq",
    "generate",
    "is_rotation",
    "losso_oracle",
    "majorizer_value",
    "objective",
    "random_rotation",
    "random_rotation_uniform",
    "read_graph",
    "read_solution",
    "rotation_to_nearest_valid",
    "smallest_eigenvalue",
    "solve_bcd",
    "solve_losso",
    "solve_sum",
    "spanning_tree_init",
    "trace_objective_sum",
    "write_graph",
    "write_solution",
]
