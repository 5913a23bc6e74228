from .LieElem import BiDegree, LieElem, PKey, key_bidegree, key_parity
from .bracket import bracket, bracket_coefficient, centralize, super_sign
from .l_basis import L, bracket_L, from_L_basis, to_L_basis, validate_chi

__all__ = [
    "BiDegree", "LieElem", "PKey", "key_bidegree", "key_parity",
    "bracket", "bracket_coefficient", "centralize", "super_sign",
    "L", "bracket_L", "from_L_basis", "to_L_basis", "validate_chi",
]
