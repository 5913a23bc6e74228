"""
分解 Heisenberg 模: M = M_0[t, u^[.]]

先用 pi_u = sum (-1)^n u^[n] du^n 取出 M_1 = ker du, 再用 pi_t = sum (-1)^n t^n dt^[n] 取出
M_0 = ker du 与所有 dt^[n] 的交. 每个基向量 x 展开为 sum t^i u^[j] x_ij,
x_ij = pi_t dt^[i] pi_u du^j x.
"""
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Any, Dict, List, Tuple

from sympy import Matrix, Rational

from src.opcalc.exceptions import ErrorCode, NonNilpotentError, ValidationError
from src.opcalc.models.fock import FockVector, fock_apply_one, fock_basis

logger = logging.getLogger(__name__)

Vector = Dict[str, Fraction]
OP_NAME = re.compile(r"^(t|du|u\[(\d+)\]|dt\[(\d+)\])$")


@dataclass
class ActionTable:
    """有限截断模上的算子表; 降次算子缺省的源视为零像"""
    basis: List[str]
    weights: Dict[str, int]
    max_weight: int
    ops: Dict[str, Dict[str, Vector]] = field(default_factory=dict)

    def validate(self) -> None:
        labels = set(self.basis)
        if len(labels) != len(self.basis):
            raise _table_error("duplicate basis labels")
        for label in self.basis:
            if label not in self.weights:
                raise _table_error(f"basis element '{label}' has no weight")
        for name, rows in self.ops.items():
            if not OP_NAME.match(name):
                raise _table_error(f"unknown operator '{name}'")
            for source, image in rows.items():
                unknown = ({source} | set(image)) - labels
                if unknown:
                    raise _table_error(f"operator '{name}' mentions unknown labels {sorted(unknown)}")
        for required in ("du", "dt[1]"):
            if required not in self.ops:
                raise _table_error(f"operator '{required}' is required")

    def apply(self, name: str, v: Vector) -> Vector:
        rows = self.ops.get(name, {})
        out: Vector = {}
        for label, c in v.items():
            for target, a in rows.get(label, {}).items():
                out[target] = out.get(target, Fraction(0)) + c * a
        return {label: c for label, c in out.items() if c}

    def divided(self, base: str, d: int, v: Vector) -> Vector:
        """u^[d] 或 dt^[d]; 表中缺省时用一次幂的 d 次方除以 d!"""
        if d == 0:
            return dict(v)
        name = f"{base}[{d}]"
        if name in self.ops:
            return self.apply(name, v)
        for _ in range(d):
            v = self.apply(f"{base}[1]", v)
        return {label: c / factorial(d) for label, c in v.items()}


def _table_error(detail: str) -> ValidationError:
    return ValidationError(detail=detail, field="action_table", error_code=ErrorCode.INVALID_ACTION_TABLE)


@dataclass
class Decomposition:
    m0_basis: List[Vector]
    expansions: Dict[str, List[Tuple[int, int, Vector]]]
    t_injective: bool
    du_surjective: bool
    recomposed: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "m0_dimension": len(self.m0_basis),
            "m0_basis": [format_vector(v) for v in self.m0_basis],
            "expansions": {
                label: [{"t": i, "u": j, "component": format_vector(v)} for i, j, v in parts]
                for label, parts in self.expansions.items()
            },
            "t_injective": self.t_injective,
            "du_surjective": self.du_surjective,
            "recomposed": self.recomposed,
        }


def format_vector(v: Vector) -> str:
    if not v:
        return "0"
    return " + ".join(label if c == 1 else f"{c}*{label}" for label, c in sorted(v.items()))


def _add(a: Vector, b: Vector, factor: Fraction = Fraction(1)) -> Vector:
    out = dict(a)
    for label, c in b.items():
        out[label] = out.get(label, Fraction(0)) + factor * c
    return {label: c for label, c in out.items() if c}


def _check_nilpotent(table: ActionTable, name: str) -> None:
    bound = len(table.basis) + 1
    for label in table.basis:
        v: Vector = {label: Fraction(1)}
        for _ in range(bound):
            v = table.apply(name, v)
            if not v:
                break
        if v:
            raise NonNilpotentError(detail=f"'{name}' is not nilpotent on '{label}'", operator=name)


def _pi_u(table: ActionTable, v: Vector) -> Vector:
    result: Vector = {}
    current, n = v, 0
    while current:
        result = _add(result, table.divided("u", n, current), Fraction((-1) ** n))
        current = table.apply("du", current)
        n += 1
    return result


def _pi_t(table: ActionTable, v: Vector) -> Vector:
    result: Vector = {}
    n = 0
    while True:
        lowered = table.divided("dt", n, v)
        if not lowered:
            return result
        raised = lowered
        for _ in range(n):
            raised = table.apply("t", raised)
        result = _add(result, raised, Fraction((-1) ** n))
        n += 1


def _raise(table: ActionTable, i: int, j: int, v: Vector) -> Vector:
    v = table.divided("u", j, v)
    for _ in range(i):
        v = table.apply("t", v)
    return v


def _matrix(table: ActionTable, name: str, sources: List[str], targets: List[str]) -> Matrix:
    index = {label: row for row, label in enumerate(targets)}
    rows = [[0] * len(sources) for _ in targets]
    for col, label in enumerate(sources):
        for target, c in table.apply(name, {label: Fraction(1)}).items():
            if target in index:
                rows[index[target]][col] = Rational(c.numerator, c.denominator)
    return Matrix(len(targets), len(sources), lambda r, c: rows[r][c])


def _kernel(table: ActionTable) -> List[Vector]:
    lowering = ["du"] + sorted(name for name in table.ops if name.startswith("dt["))
    blocks = [_matrix(table, name, table.basis, table.basis) for name in lowering]
    stacked = Matrix.vstack(*blocks)
    out = []
    for column in stacked.nullspace():
        v = {label: Fraction(int(x.p), int(x.q)) for label, x in zip(table.basis, column) if x != 0}
        out.append(v)
    return out


def decompose_module(table: ActionTable) -> Decomposition:
    table.validate()
    _check_nilpotent(table, "du")
    for name in sorted(table.ops):
        if name.startswith("dt["):
            _check_nilpotent(table, name)

    expansions: Dict[str, List[Tuple[int, int, Vector]]] = {}
    recomposed = True
    for label in table.basis:
        x: Vector = {label: Fraction(1)}
        parts: List[Tuple[int, int, Vector]] = []
        lowered_u, j = x, 0
        while lowered_u:
            y = _pi_u(table, lowered_u)
            lowered_t, i = y, 0
            while lowered_t:
                component = _pi_t(table, table.divided("dt", i, y))
                if component:
                    parts.append((i, j, component))
                i += 1
                lowered_t = table.divided("dt", i, y)
            j += 1
            lowered_u = table.apply("du", lowered_u)
        total: Vector = {}
        for i, j, component in parts:
            total = _add(total, _raise(table, i, j, component))
        if total != x:
            logger.warning(f"decomposition of '{label}' does not recompose: {format_vector(total)}")
            recomposed = False
        expansions[label] = parts

    lower = [label for label in table.basis if table.weights[label] < table.max_weight]
    t_matrix = _matrix(table, "t", lower, table.basis)
    t_injective = t_matrix.rank() == len(lower)

    du_image = _matrix(table, "du", table.basis, table.basis)
    targets = [row for row, label in enumerate(table.basis) if table.weights[label] < table.max_weight]
    units = Matrix(len(table.basis), len(targets), lambda r, c: 1 if r == targets[c] else 0)
    du_surjective = du_image.rank() == Matrix.hstack(du_image, units).rank()

    m0 = _kernel(table)
    logger.info(f"decompose_module: {len(table.basis)} basis vectors, dim M0 = {len(m0)}")
    return Decomposition(m0, expansions, t_injective, du_surjective, recomposed)


def fock_label(m: int, n: int) -> str:
    return f"t^{m}*u^[{n}]"


def fock_action_table(max_weight: int) -> ActionTable:
    """Gamma[t, u^[.]] 截断到权 max_weight 的作用表"""
    if max_weight < 0:
        raise ValidationError(detail=f"max_weight must be nonnegative, got {max_weight}", field="max_weight",
                              error_code=ErrorCode.INVALID_BOUNDS)
    keys = fock_basis(max_weight)
    basis = [fock_label(m, n) for m, n in keys]
    weights = {fock_label(m, n): m + n for m, n in keys}
    ops: Dict[str, Dict[str, Vector]] = {}

    def record(name: str, operator: str, d: int) -> None:
        rows: Dict[str, Vector] = {}
        for m, n in keys:
            image = fock_apply_one(operator, d, FockVector.basis(m, n))
            row = {fock_label(a, b): Fraction(c) for (a, b), c in image if a + b <= max_weight}
            if row:
                rows[fock_label(m, n)] = row
        ops[name] = rows

    record("t", "t", 1)
    record("du", "du", 1)
    for d in range(1, max_weight + 1):
        record(f"u[{d}]", "u", d)
        record(f"dt[{d}]", "dt", d)
    return ActionTable(basis, weights, max_weight, ops)
