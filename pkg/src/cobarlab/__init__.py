"""cobarlab: exact homological invariants of conilpotent coalgebras.

Cobar-complex Ext tables, minimal cofree coresolutions, dual-algebra Ext and
mechanically checked comparison theorems, all in exact arithmetic over the
rationals or GF(p).
"""

from cobarlab.coalg import (
    Coalgebra,
    Comodule,
    GradedCoalgebra,
    ValidationReport,
    cofree_comodule,
    extension_comodule,
    flatten,
    opposite,
    regular_comodule,
    symmetric_coalgebra,
    tensor_coalgebra,
    trivial_comodule,
    validate,
    validate_comodule,
    validate_graded,
)
from cobarlab.cobar import (
    CobarClass,
    CobarComplex,
    ExtTable,
    build_cobar,
    class_coordinates,
    cobar_with_coefficients,
    cohomology_basis,
    ext_algebra_table,
    ext_product,
    ext_table,
)
from cobarlab.dualalg import (
    Algebra,
    ComparisonReport,
    GradedAlgebra,
    ModulePresentation,
    bar_ext_table,
    compare_theorem1,
    comodule_to_module,
    dual_algebra,
    ext_via_initially_projective,
    graded_dual,
    is_projective,
    minimal_free_resolution,
    module_ext,
    module_to_comodule,
    opposite_algebra,
    quadratic_algebra,
    validate_algebra,
)
from cobarlab.exactlin import (
    GF,
    QQ,
    Field,
    Matrix,
    SubspaceBasis,
    kernel_basis,
    kronecker,
    rank,
    solve,
)
from cobarlab.presentation import (
    SchemaError,
    dumps_presentation,
    load_presentation,
    loads_presentation,
    parse_presentation,
    presentation_of,
)
from cobarlab.resolve import (
    MinimalCoresolution,
    betti_dims,
    dualize_to_contramodule_resolution,
    minimal_coresolution,
    verify_contramodule_resolution,
    verify_coresolution,
)
from cobarlab.witness import (
    build_contra_witness,
    build_nonrational_module,
    contra_report,
    eventual_value,
    from_vector,
    is_rational,
    max_rational_submodule,
    nonrational_report,
    verify_contra_witness,
    verify_module_axioms,
)

__all__ = [
    "Algebra",
    "Coalgebra",
    "CobarClass",
    "CobarComplex",
    "Comodule",
    "ComparisonReport",
    "ExtTable",
    "Field",
    "GF",
    "GradedAlgebra",
    "GradedCoalgebra",
    "Matrix",
    "MinimalCoresolution",
    "ModulePresentation",
    "QQ",
    "SchemaError",
    "SubspaceBasis",
    "ValidationReport",
    "bar_ext_table",
    "betti_dims",
    "build_cobar",
    "build_contra_witness",
    "build_nonrational_module",
    "class_coordinates",
    "cobar_with_coefficients",
    "cofree_comodule",
    "cohomology_basis",
    "compare_theorem1",
    "comodule_to_module",
    "contra_report",
    "dual_algebra",
    "dualize_to_contramodule_resolution",
    "dumps_presentation",
    "eventual_value",
    "ext_algebra_table",
    "ext_product",
    "ext_table",
    "ext_via_initially_projective",
    "extension_comodule",
    "flatten",
    "from_vector",
    "graded_dual",
    "is_projective",
    "is_rational",
    "kernel_basis",
    "kronecker",
    "load_presentation",
    "loads_presentation",
    "max_rational_submodule",
    "minimal_coresolution",
    "minimal_free_resolution",
    "module_ext",
    "module_to_comodule",
    "nonrational_report",
    "opposite",
    "opposite_algebra",
    "parse_presentation",
    "presentation_of",
    "quadratic_algebra",
    "rank",
    "regular_comodule",
    "solve",
    "symmetric_coalgebra",
    "tensor_coalgebra",
    "trivial_comodule",
    "validate",
    "validate_algebra",
    "validate_comodule",
    "validate_graded",
    "verify_contra_witness",
    "verify_contramodule_resolution",
    "verify_coresolution",
    "verify_module_axioms",
]

__version__ = "0.1.0"
