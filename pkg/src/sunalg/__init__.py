"""Generators, invariant tensors and colour-factor algebra for su(N)."""

from .basis import build_basis, casimir_3f, casimir_f, extract_d, extract_f, tensors_for
from .adjoint import adjoint_casimirs, adjoint_for, build_adjoint
from .expr import ColorExpr, canonicalize, parse, to_text
from .npoly import NPoly
from .oracle import equal_by_sampling, eval_tensor
from .rewrite import contract, equivalent, expand_adjoint, reduce_defining, simplify
from .verify import check_one, run_suite

__all__ = [
    "ColorExpr", "NPoly", "adjoint_casimirs", "adjoint_for", "build_adjoint", "build_basis",
    "canonicalize", "casimir_3f", "casimir_f", "check_one", "contract", "equal_by_sampling",
    "equivalent", "eval_tensor", "expand_adjoint", "extract_d", "extract_f", "parse",
    "reduce_defining", "run_suite", "simplify", "tensors_for", "to_text",
]
