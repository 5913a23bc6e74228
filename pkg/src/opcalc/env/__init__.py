from .words import ALGEBRAS, EnvElem, Letter, PGen, Tower, Word, format_word
from .rewriting import centralize, column_relation, commutator, is_normal, normal_form, row_relation
from .heisenberg import (
    FockGenerator, collino_embed, fock_images, heisenberg_embed, lefschetz_operators,
    rational_heisenberg_embed,
)

__all__ = [
    "ALGEBRAS", "EnvElem", "Letter", "PGen", "Tower", "Word", "format_word",
    "centralize", "column_relation", "commutator", "is_normal", "normal_form", "row_relation",
    "FockGenerator", "collino_embed", "fock_images", "heisenberg_embed", "lefschetz_operators",
    "rational_heisenberg_embed",
]
