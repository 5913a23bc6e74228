from .t_operators import T_from_P, TRealizer, TTerm, relation_terms, relations_T_check
from .xcalc import (
    XElem,
    involution,
    sl2_triple,
    to_X_basis,
    to_Xt_basis,
    x_basis_change,
    x_bracket,
    x_relation,
    x_tilde,
)
from .expansion import expand_to_X, x_rel_equiv_check
from .checks import ad_ladder_check, fourier_involution_check, sl2_verify, x_ladder_check
from .pullback import (
    NPoly,
    TauPullback,
    gamma_ek,
    gross_schoen_general_check,
    gs_identity_check,
    tau_closed_form,
    tau_operator_route,
    tau_pullback,
    tau_pullback_check,
    tau_vanishing,
)

__all__ = [
    "T_from_P", "TRealizer", "TTerm", "relation_terms", "relations_T_check",
    "XElem", "involution", "sl2_triple", "to_X_basis", "to_Xt_basis", "x_basis_change", "x_bracket",
    "x_relation", "x_tilde",
    "expand_to_X", "x_rel_equiv_check",
    "ad_ladder_check", "fourier_involution_check", "sl2_verify", "x_ladder_check",
    "NPoly", "TauPullback", "gamma_ek", "gross_schoen_general_check", "gs_identity_check",
    "tau_closed_form", "tau_operator_route", "tau_pullback", "tau_pullback_check", "tau_vanishing",
]
