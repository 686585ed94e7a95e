"""
Geradores de instâncias.

Modo exhaustive enumera todas as estruturas que satisfazem os axiomas (conv até
n=3, cap até n=2 com grades pequenas); modo random sorteia tabelas monótonas por
atribuição ordenada de valores, com um Random por índice de instância, de modo
que a instância i não depende de quantas vieram antes.
"""
import logging
from dataclasses import asdict, dataclass
from itertools import permutations, product
from random import Random
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..cap import CapSpace, Completion, Row
from ..config import ensure_base_size
from ..conv import ConvSpace
from ..errors import InputError, SizeLimitError
from ..frames import d_closure
from ..setcalc import Carrier, points
from ..values import ZERO, Value, format_value, parse_value
from .core import Instance

logger = logging.getLogger(__name__)

DEFAULT_GRID: Tuple[str, ...] = ("0", "1/2", "1", "2", "inf")
SMALL_GRID: Tuple[str, ...] = ("0", "1", "inf")

MAX_EXHAUSTIVE_CONV_N = 3
MAX_EXHAUSTIVE_CAP_N = 2
MAX_EXHAUSTIVE_CAP_GRID = 4

SEED_STRIDE = 1_000_003
KERNEL_KEEP_PROBABILITY = 0.35

KINDS = ("conv", "cap")
MODES = ("exhaustive", "random")
SHAPES = ("table", "prap", "quasimetric")


@dataclass(frozen=True)
class InstanceSpec:
    kind: str
    n: int
    value_grid: Tuple[str, ...] = DEFAULT_GRID
    mode: str = "random"
    seed: int = 0
    count: int = 1
    shape: str = "table"
    centered: bool = True
    dedup: bool = False

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise InputError(f"kind desconhecido: {self.kind!r}")
        if self.mode not in MODES:
            raise InputError(f"modo de geração desconhecido: {self.mode!r}")
        if self.shape not in SHAPES:
            raise InputError(f"shape desconhecido: {self.shape!r}")
        if self.n < 1:
            raise InputError("n precisa ser ≥ 1")
        ensure_base_size(self.n)
        if self.mode == "random" and self.count < 1:
            raise InputError("count precisa ser ≥ 1")
        if self.kind == "cap" and not self.grid():
            raise InputError("grade de valores vazia")
        if self.mode == "exhaustive":
            if self.kind == "conv" and self.n > MAX_EXHAUSTIVE_CONV_N:
                raise SizeLimitError(f"enumeração exaustiva conv só até n={MAX_EXHAUSTIVE_CONV_N}")
            if self.kind == "cap" and (
                self.n > MAX_EXHAUSTIVE_CAP_N or len(self.grid()) > MAX_EXHAUSTIVE_CAP_GRID
            ):
                raise SizeLimitError(
                    f"enumeração exaustiva cap só até n={MAX_EXHAUSTIVE_CAP_N} "
                    f"com grade de até {MAX_EXHAUSTIVE_CAP_GRID} valores"
                )

    def grid(self) -> Tuple[Value, ...]:
        return tuple(sorted({parse_value(v) for v in self.value_grid}))

    def to_dict(self) -> Dict:
        out = asdict(self)
        out["value_grid"] = list(self.value_grid)
        return out


def instance_seed(spec: InstanceSpec, index: int) -> int:
    return spec.seed * SEED_STRIDE + index


def carrier_for(n: int) -> Carrier:
    return Carrier(tuple("abcdefgh"[:n]))


# --- conv ---------------------------------------------------------------


def _kernels_by_size(carrier: Carrier) -> List[int]:
    return sorted(carrier.nonempty_subsets(), key=lambda b: (b.bit_count(), b))


def _down_sets(carrier: Carrier, x: int, centered: bool) -> List[int]:
    """
    Conjuntos de núcleos {B : x ∈ lim B} admissíveis para o ponto x: fechados
    para sub-núcleos não vazios e contendo {x} se centrado. Codificados como
    bitmask sobre os índices de núcleo.
    """
    kernels = list(carrier.nonempty_subsets())
    out = []
    for choice in range(1 << len(kernels)):
        chosen = {kernels[i] for i in points(choice)}
        if centered and (1 << x) not in chosen:
            continue
        if all(
            (b & ~(1 << t)) == 0 or (b & ~(1 << t)) in chosen
            for b in chosen for t in points(b)
        ):
            out.append(choice)
    return out


def _conv_from_choice(carrier: Carrier, per_point: Sequence[int], centered: bool, name: str) -> ConvSpace:
    kernels = list(carrier.nonempty_subsets())
    table = [0] * (1 << carrier.n)
    for x, choice in enumerate(per_point):
        for i in points(choice):
            table[kernels[i]] |= 1 << x
    return ConvSpace(carrier, tuple(table), centered, name)


def _conv_exhaustive(spec: InstanceSpec) -> Iterator[ConvSpace]:
    carrier = carrier_for(spec.n)
    options = [_down_sets(carrier, x, spec.centered) for x in range(spec.n)]
    logger.debug("conv exhaustive n=%d: %s escolhas por ponto", spec.n, [len(o) for o in options])
    for i, per_point in enumerate(product(*options)):
        yield _conv_from_choice(carrier, per_point, spec.centered, f"conv-n{spec.n}-{i}")


def _conv_random(carrier: Carrier, rng: Random, centered: bool, name: str) -> ConvSpace:
    table = [0] * (1 << carrier.n)
    ordered = list(reversed(_kernels_by_size(carrier)))
    for x in range(carrier.n):
        chosen = set()
        for b in ordered:
            supers = (b | 1 << y for y in range(carrier.n) if not b >> y & 1)
            if any(s in chosen for s in supers) or rng.random() < KERNEL_KEEP_PROBABILITY:
                chosen.add(b)
        if centered:
            chosen.add(1 << x)
        for b in chosen:
            table[b] |= 1 << x
    return ConvSpace(carrier, tuple(table), centered, name)


# --- cap ----------------------------------------------------------------


def _cells(carrier: Carrier) -> List[Tuple[int, int]]:
    return [(b, x) for b in _kernels_by_size(carrier) for x in range(carrier.n)]


def _lower_bound(table: Dict[int, List[Value]], b: int, x: int) -> Value:
    bound: Value = ZERO
    for t in points(b):
        sub = b & ~(1 << t)
        if sub and table[sub][x] > bound:
            bound = table[sub][x]
    return bound


def _fixed_cell(b: int, x: int, centered: bool) -> Optional[Value]:
    return ZERO if centered and b == 1 << x else None


def _table_space(carrier: Carrier, table: Dict[int, List[Value]], name: str) -> CapSpace:
    rows: List[Row] = [()] + [tuple(table[b]) for b in carrier.nonempty_subsets()]
    return CapSpace(carrier, tuple(rows), Completion.EXPLICIT, name)


def _cap_tables(carrier: Carrier, grid: Sequence[Value], centered: bool) -> Iterator[Dict[int, List[Value]]]:
    """Todas as tabelas monótonas com valores na grade (backtracking em ordem de célula)."""
    cells = _cells(carrier)
    table: Dict[int, List[Value]] = {b: [ZERO] * carrier.n for b in carrier.nonempty_subsets()}

    def walk(k: int) -> Iterator[Dict[int, List[Value]]]:
        if k == len(cells):
            yield table
            return
        b, x = cells[k]
        fixed = _fixed_cell(b, x, centered)
        lb = _lower_bound(table, b, x)
        choices = [fixed] if fixed is not None else [v for v in grid if v >= lb]
        for v in choices:
            if v < lb:
                continue
            table[b][x] = v
            yield from walk(k + 1)

    yield from walk(0)


def _singleton_tables(n: int, grid: Sequence[Value], centered: bool) -> Iterator[List[List[Value]]]:
    cells = [(t, x) for t in range(n) for x in range(n) if not (centered and t == x)]
    for values in product(grid, repeat=len(cells)):
        d = [[ZERO] * n for _ in range(n)]
        for (t, x), v in zip(cells, values):
            d[t][x] = v
        yield d


def _satisfies_triangle(d: Sequence[Sequence[Value]]) -> bool:
    n = len(d)
    return all(
        d[t][x] <= d[t][k] + d[k][x]
        for t in range(n) for x in range(n) for k in range(n)
    )


def _cap_exhaustive(spec: InstanceSpec) -> Iterator[CapSpace]:
    carrier = carrier_for(spec.n)
    grid = spec.grid()
    i = 0
    if spec.shape == "table":
        for table in _cap_tables(carrier, grid, spec.centered):
            yield _table_space(carrier, table, f"cap-n{spec.n}-table-{i}")
            i += 1
        return
    for d in _singleton_tables(spec.n, grid, spec.centered):
        if spec.shape == "quasimetric" and not _satisfies_triangle(d):
            continue
        yield CapSpace.from_singletons(carrier, d, f"cap-n{spec.n}-{spec.shape}-{i}")
        i += 1


def _cap_random(spec: InstanceSpec, carrier: Carrier, rng: Random, name: str) -> CapSpace:
    grid = spec.grid()
    if spec.shape == "table":
        table: Dict[int, List[Value]] = {b: [ZERO] * carrier.n for b in carrier.nonempty_subsets()}
        for b, x in _cells(carrier):
            fixed = _fixed_cell(b, x, spec.centered)
            if fixed is not None:
                table[b][x] = fixed
                continue
            lb = _lower_bound(table, b, x)
            table[b][x] = rng.choice([v for v in grid if v >= lb])
        return _table_space(carrier, table, name)

    n = carrier.n
    d = [
        [ZERO if spec.centered and t == x else rng.choice(grid) for x in range(n)]
        for t in range(n)
    ]
    space = CapSpace.from_singletons(carrier, d, name)
    if spec.shape == "quasimetric":
        space = CapSpace.from_singletons(carrier, d_closure(space), name)
    return space


# --- isomorfismo ---------------------------------------------------------


def _permute_mask(mask: int, perm: Sequence[int]) -> int:
    return sum(1 << perm[t] for t in points(mask))


def canonical_form(space) -> Tuple:
    """Menor serialização da tabela sob reetiquetagem dos pontos."""
    n = space.n
    best = None
    for perm in permutations(range(n)):
        if isinstance(space, ConvSpace):
            image = [0] * (1 << n)
            for b in space.carrier.nonempty_subsets():
                image[_permute_mask(b, perm)] = _permute_mask(space.lim_table[b], perm)
            key = tuple(image)
        else:
            rows: List[Tuple[str, ...]] = [()] * (1 << n)
            for b in space.carrier.nonempty_subsets():
                row = [""] * n
                for x in range(n):
                    row[perm[x]] = format_value(space.table[b][x])
                rows[_permute_mask(b, perm)] = tuple(row)
            key = tuple(rows)
        if best is None or key < best:
            best = key
    return best


# --- stream ---------------------------------------------------------------


def _raw_stream(spec: InstanceSpec) -> Iterator[Tuple[object, int]]:
    if spec.mode == "exhaustive":
        source = _conv_exhaustive(spec) if spec.kind == "conv" else _cap_exhaustive(spec)
        for i, space in enumerate(source):
            yield space, instance_seed(spec, i)
        return
    carrier = carrier_for(spec.n)
    for i in range(spec.count):
        seed = instance_seed(spec, i)
        rng = Random(seed)
        if spec.kind == "conv":
            space = _conv_random(carrier, rng, spec.centered, f"conv-n{spec.n}-r{i}")
        else:
            space = _cap_random(spec, carrier, rng, f"cap-n{spec.n}-{spec.shape}-r{i}")
        yield space, seed


def generate(spec: InstanceSpec, start: int = 0) -> Iterator[Instance]:
    """
    Stream de instâncias validadas. Com dedup, só o primeiro representante de
    cada classe de isomorfismo é emitido. `start` desloca o índice global.
    """
    spec.validate()
    seen = set()
    index = start
    for space, seed in _raw_stream(spec):
        if spec.dedup:
            key = canonical_form(space)
            if key in seen:
                continue
            seen.add(key)
        yield Instance(spec.kind, index, space.name, space, seed)
        index += 1
    logger.info("gerador %s/%s n=%d: %d instâncias", spec.kind, spec.mode, spec.n, index - start)


def fixture_instances(start: int = 0) -> List[Instance]:
    from ..document import parse_space
    from ..filesystem import list_fixtures, read_fixture

    out = []
    for i, name in enumerate(list_fixtures()):
        space = parse_space(read_fixture(name))
        kind = "conv" if isinstance(space, ConvSpace) else "cap"
        out.append(Instance(kind, start + i, name, space, 0))
    return out

