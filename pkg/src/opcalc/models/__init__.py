from .fock import FockVector, fock_apply, fock_apply_one, fock_basis, lefschetz_power
from .taut import TautAlgebra, TautPoly
from .diffop import DiffOp, expand, format_diff_term, realize, realize_P
from .zero_cycle import P_m1_realize, ZcElem, ZeroCycleModel, delta_apply
from .group_algebra import GroupAlgebraModel, GroupElem, pontryagin_identity_check
from .decompose import ActionTable, Decomposition, decompose_module, fock_action_table

__all__ = [
    "FockVector", "fock_apply", "fock_apply_one", "fock_basis", "lefschetz_power",
    "TautAlgebra", "TautPoly",
    "DiffOp", "expand", "format_diff_term", "realize", "realize_P",
    "P_m1_realize", "ZcElem", "ZeroCycleModel", "delta_apply",
    "GroupAlgebraModel", "GroupElem", "pontryagin_identity_check",
    "ActionTable", "Decomposition", "decompose_module", "fock_action_table",
]
