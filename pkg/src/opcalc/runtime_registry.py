import logging
from typing import Any, Dict, Optional, Tuple

from src.opcalc.constants.CommonConstants import CHOW_RING, DEFAULT_RING, RING_KEYS
from src.opcalc.exceptions import ValidationError
from src.opcalc.mapper.RingFileMapper import RingFileMapper
from src.opcalc.model.dto.CommandRequest import CommandRequest
from src.opcalc.ring import RingSpec, make_curve_chow_symbolic, make_curve_cohomology

logger = logging.getLogger(__name__)

_CHOW_OPTIONS = ("rational", "over_point", "canonical_split", "psi_truncation", "trivial_family")


class RingRegistry:
    """按 (环名, 亏格, 选项) 解析并缓存不可变的 RingSpec, 同一进程内重复请求共享实例"""

    def __init__(self, mapper: Optional[RingFileMapper] = None) -> None:
        self._mapper = mapper or RingFileMapper()
        self._cache: Dict[Tuple[Any, ...], RingSpec] = {}

    @staticmethod
    def options_of(request: CommandRequest) -> Dict[str, Any]:
        return {name: getattr(request, name) for name in _CHOW_OPTIONS}

    def resolve(self, key: str, genus: int, **options: Any) -> RingSpec:
        if key not in RING_KEYS:
            raise ValidationError(
                detail=f"unknown ring '{key}'",
                field="ring",
                context={"known": list(RING_KEYS)},
            )
        if key == DEFAULT_RING:
            extra = sorted(name for name, value in options.items() if value and name != "rational")
            if extra:
                raise ValidationError(
                    detail=f"options {extra} only apply to {CHOW_RING}",
                    field="ring",
                )
        cache_key = (key, genus, tuple(sorted(options.items())))
        ring = self._cache.get(cache_key)
        if ring is None:
            if key == DEFAULT_RING:
                ring = make_curve_cohomology(genus, rational=bool(options.get("rational")))
            else:
                ring = make_curve_chow_symbolic(genus, **options)
            logger.debug(f"built ring {ring.name} g={genus} options={options}: {ring.fingerprint()}")
            self._cache[cache_key] = ring
        return ring

    def load_file(self, name: str) -> RingSpec:
        cache_key = ("file", name)
        ring = self._cache.get(cache_key)
        if ring is None:
            ring = self._mapper.load(name)
            self._cache[cache_key] = ring
        return ring

    def for_request(self, request: CommandRequest, default_key: str = DEFAULT_RING, **overrides: Any) -> RingSpec:
        """命令行请求对应的环; --ring-file 优先, 其次 --ring, 最后是套件给出的默认环"""
        if request.ring_file is not None:
            return self.load_file(request.ring_file)
        options = self.options_of(request)
        options.update(overrides)
        return self.resolve(request.ring or default_key, request.genus, **options)

    def clear(self) -> None:
        self._cache.clear()
