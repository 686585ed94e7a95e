"""
Suítes nomeadas. Cada preset monta uma lista de InstanceSpec, encadeia os
streams com índices globais distintos e roda o registro de checks por cima.
"""
import logging
from typing import Callable, Dict, Iterator, List, Optional, Sequence

from ..errors import InputError
from .core import Instance, SuiteResult
from .generators import (
    DEFAULT_GRID,
    MAX_EXHAUSTIVE_CAP_N,
    MAX_EXHAUSTIVE_CONV_N,
    SEED_STRIDE,
    SMALL_GRID,
    InstanceSpec,
    fixture_instances,
    generate,
)
from .registry import run_suite

logger = logging.getLogger(__name__)

DEFAULT_RANDOM_COUNT = 1000
DEFAULT_N4_COUNT = 100
ORACLE_GRID = ("0", "1/2", "1", "inf")
# fração do stream aleatório que vai para a grade pequena dos oráculos
ORACLE_STREAM_DIVISOR = 10

RANDOM_SHAPES = ("table", "prap", "quasimetric")


def _stream_seed(seed: int, stream: int) -> int:
    return seed + stream * SEED_STRIDE


def _chain(specs: Sequence[InstanceSpec], start: int = 0) -> Iterator[Instance]:
    index = start
    for spec in specs:
        for inst in generate(spec, start=index):
            index = inst.index + 1
            yield inst


def conv_exhaustive_specs(max_n: int, seed: int) -> List[InstanceSpec]:
    top = min(max_n, MAX_EXHAUSTIVE_CONV_N)
    return [InstanceSpec("conv", n, mode="exhaustive", seed=seed) for n in range(1, top + 1)]


def cap_exhaustive_specs(max_n: int, seed: int) -> List[InstanceSpec]:
    top = min(max_n, MAX_EXHAUSTIVE_CAP_N)
    return [
        InstanceSpec("cap", n, SMALL_GRID, "exhaustive", seed, shape=shape)
        for shape in ("table", "prap")
        for n in range(1, top + 1)
    ]


def cap_random_specs(max_n: int, seed: int, count: int) -> List[InstanceSpec]:
    """count instâncias divididas entre os shapes, mais um stream na grade dos oráculos."""
    n = min(max_n, 3)
    share, rest = divmod(count, len(RANDOM_SHAPES))
    specs = []
    for k, shape in enumerate(RANDOM_SHAPES):
        size = share + (rest if k == 0 else 0)
        if size:
            specs.append(
                InstanceSpec("cap", n, DEFAULT_GRID, "random", _stream_seed(seed, k), size, shape)
            )
    oracle_count = count // ORACLE_STREAM_DIVISOR
    if oracle_count:
        specs.append(
            InstanceSpec(
                "cap", n, ORACLE_GRID, "random",
                _stream_seed(seed, len(RANDOM_SHAPES)), oracle_count, "table",
            )
        )
    return specs


def cap_random_n4_specs(seed: int, count: int) -> List[InstanceSpec]:
    share, rest = divmod(count, 2)
    specs = []
    for k, (shape, size) in enumerate((("table", share + rest), ("prap", share))):
        if size:
            specs.append(InstanceSpec("cap", 4, DEFAULT_GRID, "random", _stream_seed(seed, 10 + k), size, shape))
    return specs


def _fixtures(max_n: int, seed: int, count: Optional[int]) -> Iterator[Instance]:
    return iter(fixture_instances())


def _conv_exhaustive(max_n: int, seed: int, count: Optional[int]) -> Iterator[Instance]:
    return _chain(conv_exhaustive_specs(max_n, seed))


def _cap_exhaustive(max_n: int, seed: int, count: Optional[int]) -> Iterator[Instance]:
    return _chain(cap_exhaustive_specs(max_n, seed))


def _cap_random(max_n: int, seed: int, count: Optional[int]) -> Iterator[Instance]:
    return _chain(cap_random_specs(max_n, seed, count or DEFAULT_RANDOM_COUNT))


def _cap_random_n4(max_n: int, seed: int, count: Optional[int]) -> Iterator[Instance]:
    return _chain(cap_random_n4_specs(seed, count or DEFAULT_N4_COUNT))


def _all(max_n: int, seed: int, count: Optional[int]) -> Iterator[Instance]:
    fixtures = fixture_instances()
    yield from fixtures
    specs = conv_exhaustive_specs(max_n, seed) + cap_exhaustive_specs(max_n, seed)
    specs += cap_random_specs(max_n, seed, count or DEFAULT_RANDOM_COUNT)
    if max_n >= 4:
        specs += cap_random_n4_specs(seed, DEFAULT_N4_COUNT)
    yield from _chain(specs, start=len(fixtures))


SCENARIOS: Dict[str, Callable[[int, int, Optional[int]], Iterator[Instance]]] = {
    "fixtures": _fixtures,
    "conv-exhaustive": _conv_exhaustive,
    "cap-exhaustive": _cap_exhaustive,
    "cap-random": _cap_random,
    "cap-random-n4": _cap_random_n4,
    "all": _all,
}


def scenario_instances(name: str, seed: int = 0, max_n: int = 3, count: Optional[int] = None) -> Iterator[Instance]:
    try:
        build = SCENARIOS[name]
    except KeyError:
        raise InputError(f"suíte desconhecida: {name!r} (use {', '.join(SCENARIOS)})")
    if max_n < 1:
        raise InputError("max_n precisa ser ≥ 1")
    return build(max_n, seed, count)


def run_scenario(
    name: str,
    seed: int = 0,
    max_n: int = 3,
    count: Optional[int] = None,
    checks: Optional[Sequence[str]] = None,
) -> SuiteResult:
    parameters = {
        "suite": name,
        "max_n": max_n,
        "count": count,
        "checks": sorted(checks) if checks else None,
    }
    instances = scenario_instances(name, seed, max_n, count)
    logger.info("suíte %s: seed=%d max_n=%d", name, seed, max_n)
    return run_suite(instances, checks, name=name, parameters=parameters, seed=seed)
