"""Higher-order cubical differential forms on small cubes."""

from ._cubeforms import (
    ConvergenceRow,
    MeshError,
    RefinedMesh,
    SingularBlockError,
    SmallCube,
    UnisolvenceReport,
    binomial,
    check_unisolvence,
    coboundary,
    de_rham,
    dimension_table,
    dof_matrix,
    enumerate_small_cubes,
    evaluate_basis_form,
    evaluate_interpolant,
    load_mesh,
    run_convergence,
    small_cube_count,
    structured_mesh,
    verify_identities,
)

__all__ = [
    "ConvergenceRow",
    "MeshError",
    "RefinedMesh",
    "SingularBlockError",
    "SmallCube",
    "UnisolvenceReport",
    "binomial",
    "check_unisolvence",
    "coboundary",
    "de_rham",
    "dimension_table",
    "dof_matrix",
    "enumerate_small_cubes",
    "evaluate_basis_form",
    "evaluate_interpolant",
    "load_mesh",
    "run_convergence",
    "small_cube_count",
    "structured_mesh",
    "verify_identities",
]
