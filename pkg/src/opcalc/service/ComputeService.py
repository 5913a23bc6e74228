"""
计算与展示服务

compute: 求值 DSL 表达式 (可选作用到一个重言多项式上), 或运行命名计算
         tau-pullback / gamma / decompose;
show:    环的展示, 以及 P 算子的微分算子形式.
"""
import logging
from typing import Any, Dict, List

from src.opcalc.cli.dsl import DslEvaluator, detect_algebra, type_name
from src.opcalc.cli.printer import result_payload, value_result
from src.opcalc.constants.CommonConstants import DEFAULT_FOCK_WEIGHT, DEFAULT_RING
from src.opcalc.env import EnvElem
from src.opcalc.exceptions import DslTypeError, ErrorCode, ValidationError, handle_service_exception
from src.opcalc.jaccalc.pullback import gamma_ek, pullback_algebra, tau_pullback
from src.opcalc.liealg import LieElem
from src.opcalc.liealg.l_basis import from_L_basis
from src.opcalc.mapper.ActionTableMapper import ActionTableMapper
from src.opcalc.model.dto.CommandRequest import CommandRequest
from src.opcalc.models import decompose_module, expand, fock_action_table, format_diff_term, realize
from src.opcalc.models.taut import TautPoly
from src.opcalc.ring import RingElem, RingSpec
from src.opcalc.runtime_registry import RingRegistry

logger = logging.getLogger(__name__)

COMPUTE_TARGETS = ("tau-pullback", "gamma", "decompose")

DEFAULT_DIFFOP_INDEX = 3


class ComputeService:
    """DSL 求值与命名计算"""

    def __init__(self, registry: RingRegistry = None, table_mapper: ActionTableMapper = None):
        self.registry = registry or RingRegistry()
        self.table_mapper = table_mapper or ActionTableMapper()

    def _ring(self, request: CommandRequest) -> RingSpec:
        return self.registry.for_request(request, DEFAULT_RING)

    @staticmethod
    def _require_k(request: CommandRequest, minimum: int) -> int:
        if request.k is None or request.k < minimum:
            raise ValidationError(
                detail=f"'{request.target}' needs --k >= {minimum}",
                field="k",
                error_code=ErrorCode.INVALID_BOUNDS
            )
        return request.k

    # ------------------------------------------------------------------ compute

    @handle_service_exception
    def compute(self, request: CommandRequest) -> Dict[str, Any]:
        """
        运行 compute 命令

        Args:
            request: target 为命名计算或 DSL 表达式

        Returns:
            JSON 负载 (schema, command, result, ...)
        """
        if request.target == "tau-pullback":
            return self.tau_pullback(request)
        if request.target == "gamma":
            return self.gamma(request)
        if request.target == "decompose":
            return self.decompose(request)
        return self.evaluate(request)

    def evaluate(self, request: CommandRequest) -> Dict[str, Any]:
        ring = self._ring(request)
        text = request.target
        evaluator = DslEvaluator(ring, detect_algebra(text + " " + (request.apply_to or "")))
        value = evaluator.parse(text)
        result = value_result(text, value)
        if request.apply_to is not None:
            target = evaluator.parse(request.apply_to)
            if isinstance(target, RingElem):
                target = evaluator.taut.scalar(target)
            if not isinstance(target, TautPoly):
                raise DslTypeError(detail="--apply-to needs a tautological polynomial",
                                   expected="TautPoly", actual=type_name(target))
            image = self.apply(value, target)
            result.update({"applied_to": str(target), "image": str(image)})
        return result_payload("compute", ring, result)

    @staticmethod
    def apply(value, target: TautPoly) -> TautPoly:
        """算子在 Gamma[x_n(a)] 上的作用"""
        if isinstance(value, LieElem) and value.basis == "L":
            value = from_L_basis(value)
        if isinstance(value, (LieElem, EnvElem)):
            return realize(target.algebra, value)(target)
        if isinstance(value, RingElem):
            return target.scale(value)
        raise DslTypeError(detail=f"{type_name(value)} does not act on tautological polynomials",
                           expected="LieElem or EnvElem", actual=type_name(value))

    def tau_pullback(self, request: CommandRequest) -> Dict[str, Any]:
        k = self._require_k(request, 1)
        ring = self.registry.for_request(request, "curve-chow")
        outcome = tau_pullback(ring, k)
        logger.info(f"tau pullback k={k} on {ring.name}: vanishes={outcome.vanishes}")
        return result_payload("tau-pullback", ring, outcome.to_dict(), {"k": k, "genus": request.genus})

    def gamma(self, request: CommandRequest) -> Dict[str, Any]:
        k = self._require_k(request, 0)
        ring = self.registry.for_request(request, "curve-chow")
        value = gamma_ek(pullback_algebra(ring), k)
        return result_payload("gamma", ring, {"k": k, "value": str(value)}, {"genus": request.genus})

    def decompose(self, request: CommandRequest) -> Dict[str, Any]:
        if request.table is not None:
            table = self.table_mapper.load(request.table)
            source = request.table
        else:
            weight = request.weight if request.weight is not None else DEFAULT_FOCK_WEIGHT
            table = fock_action_table(weight)
            source = f"fock(max_weight={weight})"
        decomposition = decompose_module(table)
        return result_payload("decompose", None, decomposition.to_dict(), {"table": source})

    # ------------------------------------------------------------------ show

    def show_ring(self, request: CommandRequest) -> RingSpec:
        return self._ring(request)

    @handle_service_exception
    def show_op(self, request: CommandRequest) -> Dict[str, Any]:
        ring = self._ring(request)
        evaluator = DslEvaluator(ring, detect_algebra(request.target))
        value = evaluator.parse(request.target)
        result = value_result(request.target, value)
        if request.as_diffop:
            result["diffop"] = self.diffop_lines(evaluator, value, request.max_index)
        return result_payload("show-op", ring, result)

    @staticmethod
    def diffop_lines(evaluator: DslEvaluator, value, max_index: int = None) -> List[str]:
        """P_{m,k}(a) 的各项 (n_i <= max_index), 每个基元一行"""
        if not isinstance(value, LieElem):
            raise DslTypeError(detail="--as-diffop expects a P or L expression",
                               expected="LieElem", actual=type_name(value))
        if value.basis == "L":
            value = from_L_basis(value)
        ring = evaluator.ring
        bound = DEFAULT_DIFFOP_INDEX if max_index is None else max_index
        lines: List[str] = []
        for (m, k, mono), coeff in value:
            a = coeff * ring.monomial(mono)
            terms = expand(evaluator.taut, m, k, a, bound)
            body = " + ".join(format_diff_term(evaluator.taut, term) for term in terms) or "0"
            lines.append(f"P({m},{k}; {a}) = {body}")
        return lines
