"""
验证套件服务

每个套件名对应一组检查; 套件选定所需的环, 按命令行给出的范围运行检查,
再由 ReportUtils 汇总成报告. 检查失败是报告里的数据, 不是异常.
"""
import logging
import time
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from src.opcalc.combinat.checks import combinat_suite
from src.opcalc.common import CheckResult, ReportUtils
from src.opcalc.constants.CommonConstants import (
    ALL_SUITE,
    CHOW_RING,
    DEFAULT_CONFLUENCE_TRIALS,
    DEFAULT_DIVIDED_INDEX,
    DEFAULT_DIVIDED_POWER,
    DEFAULT_FOCK_WEIGHT,
    DEFAULT_FOURIER_TOTAL,
    DEFAULT_HV_TOTAL,
    DEFAULT_MAX_GENUS,
    DEFAULT_MAX_INDEX,
    DEFAULT_PONTRYAGIN_POWER,
    DEFAULT_RING,
    DEFAULT_SEED,
    DEFAULT_T_WEIGHT,
    DEFAULT_TAU_K,
    DEFAULT_TAUT_INDEX,
    DEFAULT_TAUT_WEIGHT,
    DEFAULT_WITT_GENERATORS,
    DEFAULT_WITT_GENUS,
    DEFAULT_WITT_INDEX,
    DEFAULT_X_INDEX,
    SUITES,
)
from src.opcalc.env.checks import (
    confluence_check,
    divided_sweep,
    genus_one_example_check,
    heisenberg_contract_check,
    lefschetz_relations_check,
    pbw_sweep,
    relation_iii_d1_check,
    row_column_commute_check,
)
from src.opcalc.exceptions import ErrorCode, ValidationError, handle_service_exception
from src.opcalc.jaccalc import (
    ad_ladder_check,
    fourier_involution_check,
    gross_schoen_general_check,
    gs_identity_check,
    relations_T_check,
    sl2_verify,
    tau_pullback_check,
    x_ladder_check,
    x_rel_equiv_check,
)
from src.opcalc.liealg.checks import (
    antisymmetry_check,
    bidegree_additivity_check,
    centrality_check,
    heisenberg_subrelations_check,
    hv_bracket_check,
    super_jacobi_check,
)
from src.opcalc.model.dto.CommandRequest import CommandRequest
from src.opcalc.model.vo.ReportVO import ReportVO
from src.opcalc.models import pontryagin_identity_check
from src.opcalc.models.checks import (
    bookkeeping_check,
    collino_module_check,
    fock_decomposition_check,
    fock_sl2_check,
    homomorphism_check,
    lefschetz_bijection_check,
    pullback_p11_check,
)
from src.opcalc.models.zero_cycle import P_m1_values_check, grading_check, witt_P_m1_check, witt_delta_check
from src.opcalc.ring import RingSpec
from src.opcalc.ring.checks import ring_suite
from src.opcalc.runtime_registry import RingRegistry

logger = logging.getLogger(__name__)

# 套件运行结果: (检查结果, 使用的环, 报告中的参数)
SuiteOutcome = Tuple[List[CheckResult], Optional[RingSpec], Dict[str, object]]

# jacobi 在 curve-chow 上默认截断 psi^3 = 0
_JACOBI_PSI_TRUNCATION = 3


class VerificationService:
    """按套件名分派检查并生成报告"""

    def __init__(self, registry: Optional[RingRegistry] = None):
        self.registry = registry or RingRegistry()
        self._suites: Dict[str, Callable[[CommandRequest], SuiteOutcome]] = {
            "jacobi": self._jacobi,
            "hv": self._hv,
            "pbw": self._pbw,
            "divided": self._divided,
            "heisenberg": self._heisenberg,
            "fock-sl2": self._fock_sl2,
            "witt": self._witt,
            "taut-homomorphism": self._taut_homomorphism,
            "t-relations": self._t_relations,
            "x-equivalence": self._x_equivalence,
            "x-sl2": self._x_sl2,
            "tau-pullback": self._tau_pullback,
            "gross-schoen": self._gross_schoen,
            "ring": self._ring,
            "combinat": self._combinat,
            "modules": self._modules,
            "lefschetz": self._lefschetz,
            "collino": self._collino,
        }

    # ------------------------------------------------------------------ 入口

    @handle_service_exception
    def run_suite(self, request: CommandRequest) -> ReportVO:
        """
        运行一个套件 (或 all)

        Args:
            request: verb 为 verify 的命令, target 为套件名

        Returns:
            ReportVO: 套件报告; all 时为聚合报告

        Raises:
            ValidationError: 未知套件或范围无效
        """
        name = request.target
        started = time.perf_counter()
        if name == ALL_SUITE:
            children = [self._run_one(suite, request) for suite in SUITES]
            report = ReportUtils.aggregate(ALL_SUITE, children, parameters={"quick": request.quick})
        else:
            report = self._run_one(name, request)
        if request.timing:
            report.elapsed_ms = int((time.perf_counter() - started) * 1000)
        logger.info(f"suite {name}: {report.status}, {report.checked} instances, {len(report.failures)} failures")
        return report

    def suite_names(self) -> Sequence[str]:
        return tuple(self._suites)

    def _run_one(self, name: str, request: CommandRequest) -> ReportVO:
        runner = self._suites.get(name)
        if runner is None:
            raise ValidationError(
                detail=f"unknown suite '{name}'",
                field="suite",
                context={"known": [*SUITES, ALL_SUITE]},
                error_code=ErrorCode.UNKNOWN_SUITE
            )
        started = time.perf_counter()
        logger.info(f"running suite {name}")
        results, ring, parameters = runner(request)
        elapsed = int((time.perf_counter() - started) * 1000) if request.timing else None
        return ReportUtils.from_checks(name, results, ring=ring, parameters=parameters, elapsed_ms=elapsed)

    # ------------------------------------------------------------------ 辅助

    @staticmethod
    def _bound(value: Optional[int], default: int, quick: int, request: CommandRequest) -> int:
        if value is not None:
            return value
        return quick if request.quick else default

    @staticmethod
    def _genera(request: CommandRequest) -> List[int]:
        if request.max_genus is not None:
            return list(range(1, request.max_genus + 1))
        return [request.genus]

    def _ring(self, request: CommandRequest) -> SuiteOutcome:
        ring = self._default_ring(request)
        return ring_suite(ring), ring, {"genus": request.genus}

    def _default_ring(self, request: CommandRequest, **overrides) -> RingSpec:
        return self.registry.for_request(request, DEFAULT_RING, **overrides)

    def _chow(self, request: CommandRequest, genus: Optional[int] = None, **overrides) -> RingSpec:
        """需要截面 p0 的套件只在 curve-chow (或环文件) 上运行"""
        if request.ring_file is not None:
            return self.registry.load_file(request.ring_file)
        if request.ring == DEFAULT_RING:
            raise ValidationError(
                detail=f"suite '{request.target}' needs the {CHOW_RING} model (it uses the section p0)",
                field="ring"
            )
        options = self.registry.options_of(request)
        options.update(overrides)
        return self.registry.resolve(CHOW_RING, request.genus if genus is None else genus, **options)

    # ------------------------------------------------------------------ 套件

    def _jacobi(self, request: CommandRequest) -> SuiteOutcome:
        overrides = {}
        if request.ring == CHOW_RING and not (request.psi_truncation or request.over_point or request.trivial_family):
            overrides["psi_truncation"] = _JACOBI_PSI_TRUNCATION
        ring = self._default_ring(request, **overrides)
        bound = self._bound(request.max_index, DEFAULT_MAX_INDEX, 2, request)
        results = [
            super_jacobi_check(ring, bound, bound, threads=request.threads),
            antisymmetry_check(ring, bound, bound),
            bidegree_additivity_check(ring, bound, bound),
        ]
        return results, ring, {"genus": request.genus, "max_index": bound}

    def _hv(self, request: CommandRequest) -> SuiteOutcome:
        overrides = {"over_point": True} if request.ring == CHOW_RING else {}
        ring = self._default_ring(request, **overrides)
        total = self._bound(request.max_index, DEFAULT_HV_TOTAL, 3, request)
        return [hv_bracket_check(ring, total)], ring, {"genus": request.genus, "total": total}

    def _pbw(self, request: CommandRequest) -> SuiteOutcome:
        ring = self._default_ring(request)
        index = self._bound(request.max_index, 2, 1, request)
        results = [pbw_sweep(ring, index, DEFAULT_DIVIDED_POWER, algebra) for algebra in ("U1", "U2")]
        return results, ring, {"genus": request.genus, "max_index": index, "max_power": DEFAULT_DIVIDED_POWER}

    def _divided(self, request: CommandRequest) -> SuiteOutcome:
        ring = self._default_ring(request)
        index = self._bound(request.max_index, DEFAULT_DIVIDED_INDEX, 2, request)
        power = DEFAULT_DIVIDED_POWER if not request.quick else 2
        trials = 500 if request.quick else DEFAULT_CONFLUENCE_TRIALS
        seed = DEFAULT_SEED if request.seed is None else request.seed
        results: List[CheckResult] = []
        for side in ("row", "col"):
            results.append(divided_sweep(ring, index, power, side, threads=request.threads))
            results.append(relation_iii_d1_check(ring, index, side))
        results.append(confluence_check(ring, trials, 3, index, seed, threads=request.threads))
        genus_one = self.registry.resolve(DEFAULT_RING, 1)
        for side in ("row", "col"):
            results.append(genus_one_example_check(genus_one, index, side))
        parameters = {"genus": request.genus, "max_index": index, "max_power": power, "trials": trials, "seed": seed}
        return results, ring, parameters

    def _heisenberg(self, request: CommandRequest) -> SuiteOutcome:
        ring = self._default_ring(request)
        results = [
            heisenberg_subrelations_check(ring),
            centrality_check(ring, self._bound(request.max_index, 6, 3, request)),
            heisenberg_contract_check(ring, "standard", DEFAULT_DIVIDED_POWER),
        ]
        return results, ring, {"genus": request.genus}

    def _fock_sl2(self, request: CommandRequest) -> SuiteOutcome:
        ring = self._default_ring(request)
        weight = self._bound(request.weight, DEFAULT_FOCK_WEIGHT, 5, request)
        results = [fock_sl2_check(weight), lefschetz_bijection_check(weight)]
        for d1 in range(1, 3):
            for d2 in range(1, 3):
                results.append(row_column_commute_check(ring, d1, d2, weight))
        return results, ring, {"max_weight": weight}

    def _witt(self, request: CommandRequest) -> SuiteOutcome:
        index = self._bound(request.max_index, DEFAULT_WITT_INDEX, 3, request)
        results = [
            witt_delta_check(index, DEFAULT_WITT_GENUS, DEFAULT_WITT_GENERATORS),
            witt_P_m1_check(index, DEFAULT_WITT_GENUS, DEFAULT_WITT_GENERATORS),
            P_m1_values_check(index + 1),
            grading_check(DEFAULT_WITT_GENUS, DEFAULT_WITT_GENERATORS),
            pontryagin_identity_check(DEFAULT_PONTRYAGIN_POWER if not request.quick else 4),
        ]
        parameters = {"genus": DEFAULT_WITT_GENUS, "generators": DEFAULT_WITT_GENERATORS, "max_index": index}
        return results, None, parameters

    def _taut_homomorphism(self, request: CommandRequest) -> SuiteOutcome:
        ring = self._default_ring(request)
        index = self._bound(request.max_index, DEFAULT_TAUT_INDEX, 2, request)
        weight = self._bound(request.weight, DEFAULT_TAUT_WEIGHT, 3, request)
        results = [
            homomorphism_check(ring, index, weight, threads=request.threads),
            bookkeeping_check(ring, index, min(weight, 4)),
        ]
        return results, ring, {"genus": request.genus, "max_index": index, "max_weight": weight}

    def _t_relations(self, request: CommandRequest) -> SuiteOutcome:
        ring = self._chow(request)
        weight = self._bound(request.weight, DEFAULT_T_WEIGHT, 3, request)
        max_m = self._bound(request.max_index, 2, 1, request)
        result = relations_T_check(ring, 2, max_m, weight, threads=request.threads)
        return [result], ring, {"genus": request.genus, "max_m": max_m, "max_weight": weight}

    def _x_equivalence(self, request: CommandRequest) -> SuiteOutcome:
        ring = self._chow(request)
        max_n = self._bound(request.max_index, DEFAULT_X_INDEX, 2, request)
        result = x_rel_equiv_check(ring, 2, max_n, threads=request.threads)
        return [result], ring, {"genus": request.genus, "max_k": 2, "max_n": max_n}

    def _x_sl2(self, request: CommandRequest) -> SuiteOutcome:
        top = request.max_genus if request.max_genus is not None else (2 if request.quick else DEFAULT_MAX_GENUS)
        genera = list(range(1, top + 1))
        index = self._bound(request.max_index, DEFAULT_X_INDEX, 2, request)
        total = self._bound(request.weight, DEFAULT_FOURIER_TOTAL, 3, request)
        results: List[CheckResult] = []
        ring = None
        for g in genera:
            ring = self._chow(request, g, rational=True)
            results.extend([
                sl2_verify(ring, index),
                x_ladder_check(ring, total),
                fourier_involution_check(ring, total),
                ad_ladder_check(ring, total),
            ])
        return results, ring if len(genera) == 1 else None, {"genera": genera, "max_index": index, "max_total": total}

    def _tau_pullback(self, request: CommandRequest) -> SuiteOutcome:
        max_k = self._bound(request.k, DEFAULT_TAU_K, 3, request)
        if max_k < 1:
            raise ValidationError(detail="tau pullback needs k >= 1", field="k", error_code=ErrorCode.INVALID_BOUNDS)
        genera = self._genera(request)
        results: List[CheckResult] = []
        ring = None
        for g in genera:
            ring = self._chow(request, g)
            results.append(tau_pullback_check(ring, max_k))
        return results, ring if len(genera) == 1 else None, {"genera": genera, "max_k": max_k}

    def _gross_schoen(self, request: CommandRequest) -> SuiteOutcome:
        if request.k is not None and request.k < 2:
            raise ValidationError(detail="the modified diagonal identity needs k >= 2", field="k",
                                  error_code=ErrorCode.INVALID_BOUNDS)
        genera = self._genera(request)
        results: List[CheckResult] = []
        for g in genera:
            split = self._chow(request, g, over_point=True, canonical_split=True, trivial_family=False,
                               psi_truncation=0)
            results.append(gs_identity_check(split, request.k))
            trivial = self._chow(request, g, trivial_family=True, canonical_split=False, psi_truncation=0)
            results.append(gross_schoen_general_check(trivial, request.k))
        return results, None, {"genera": genera, "max_k": request.k if request.k is not None else "g+2"}

    def _combinat(self, request: CommandRequest) -> SuiteOutcome:
        bound = self._bound(request.max_index, 8, 5, request)
        return combinat_suite(bound), None, {"bound": bound}

    def _modules(self, request: CommandRequest) -> SuiteOutcome:
        ring = self._chow(request)
        weight = self._bound(request.weight, 6, 4, request)
        results = [
            fock_decomposition_check(weight),
            collino_module_check(ring, min(weight, 4)),
            pullback_p11_check(ring),
        ]
        return results, ring, {"genus": request.genus, "max_weight": weight}

    def _lefschetz(self, request: CommandRequest) -> SuiteOutcome:
        ring = self._default_ring(request)
        results = [
            lefschetz_relations_check(ring, "standard"),
            lefschetz_bijection_check(self._bound(request.max_index, DEFAULT_FOCK_WEIGHT, 5, request)),
        ]
        return results, ring, {"genus": request.genus}

    def _collino(self, request: CommandRequest) -> SuiteOutcome:
        ring = self._chow(request)
        results = [
            heisenberg_contract_check(ring, "collino", DEFAULT_DIVIDED_POWER),
            lefschetz_relations_check(ring, "collino"),
            collino_module_check(ring),
        ]
        return results, ring, {"genus": request.genus}
