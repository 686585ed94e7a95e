"""
Espaços de convergência finitos.

Um `ConvSpace` guarda a tabela de limites núcleo → subconjunto, indexada pelo
próprio bitmask do núcleo (a posição 0 não é usada). Daqui saem abertos,
fechados, aderência, os refletores T/S₀/S e as convergências de hiperespaço
(Kuratowski superior/inferior, Vietoris inferior, Fell superior, Fell).
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from .config import SELECTOR_ENUMERATION_LIMIT
from .errors import AxiomError, InputError, SizeLimitError
from .setcalc import (
    Carrier,
    Kernel,
    SetFamily,
    contour_kernel,
    is_subset,
    minimal_transversals,
    points,
    rdc,
)

logger = logging.getLogger(__name__)


class CarrierMode(str, Enum):
    CLOSED = "closed"
    ALL = "all"
    RCLOSED = "rclosed"


def check_monotone_limits(carrier: Carrier, table: Tuple[int, ...]) -> None:
    """
    A ⊆ B ⟹ lim(B) ⊆ lim(A). Basta comparar cada núcleo com os sub-núcleos
    que perdem um ponto.
    """
    for b in carrier.nonempty_subsets():
        for t in points(b):
            a = b & ~(1 << t)
            if a and not is_subset(table[b], table[a]):
                raise AxiomError(
                    "monotone",
                    f"lim({carrier.format_mask(b)}) ⊄ lim({carrier.format_mask(a)})",
                    {"kernel": carrier.labels_of(b), "subkernel": carrier.labels_of(a)},
                )


def check_centered_limits(carrier: Carrier, table: Tuple[int, ...]) -> None:
    for x in range(carrier.n):
        if not table[1 << x] >> x & 1:
            raise AxiomError(
                "centered",
                f"{carrier.labels[x]} ∉ lim({{{carrier.labels[x]}}})",
                {"point": carrier.labels[x]},
            )


@dataclass(frozen=True)
class ConvSpace:
    carrier: Carrier
    lim_table: Tuple[int, ...]
    centered: bool = True
    name: str = field(default="", compare=False)
    _cache: Dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        table = tuple(self.lim_table)
        object.__setattr__(self, "lim_table", table)
        if len(table) != 1 << self.carrier.n:
            raise InputError(
                f"tabela de limites com {len(table)} entradas; esperado {1 << self.carrier.n}"
            )
        full = self.carrier.full
        if table[0] != 0:
            raise InputError("o núcleo vazio não tem limite")
        if any(not is_subset(v, full) for v in table):
            raise InputError("limite fora do carrier")
        check_monotone_limits(self.carrier, table)
        if self.centered:
            check_centered_limits(self.carrier, table)

    @property
    def n(self) -> int:
        return self.carrier.n

    def lim(self, kernel: Kernel) -> int:
        if not kernel or kernel > self.carrier.full:
            raise InputError(f"núcleo inválido: {kernel}")
        return self.lim_table[kernel]

    @classmethod
    def from_limits(
        cls,
        carrier: Carrier,
        limits: Mapping[int, int],
        centered: bool = True,
        name: str = "",
    ) -> "ConvSpace":
        """Todos os núcleos não vazios precisam aparecer em `limits`."""
        table = [0] * (1 << carrier.n)
        for b in carrier.nonempty_subsets():
            if b not in limits:
                raise InputError(f"limite ausente para o núcleo {carrier.format_mask(b)}")
            table[b] = limits[b]
        return cls(carrier, tuple(table), centered, name)

    @classmethod
    def from_vicinities(cls, carrier: Carrier, vicinity: Mapping[int, int], name: str = "") -> "ConvSpace":
        """
        Pretopologia dada pelos núcleos de vizinhança: x ∈ lim(B) ⟺ B ⊆ v(x).
        `vicinity` é indexado pelo índice do ponto.
        """
        table = [0] * (1 << carrier.n)
        for b in carrier.nonempty_subsets():
            table[b] = sum(1 << x for x in range(carrier.n) if is_subset(b, vicinity[x]))
        return cls(carrier, tuple(table), True, name)

    @classmethod
    def discrete(cls, carrier: Carrier) -> "ConvSpace":
        table = [0] * (1 << carrier.n)
        for x in range(carrier.n):
            table[1 << x] = 1 << x
        return cls(carrier, tuple(table), True, "discrete")

    @classmethod
    def antidiscrete(cls, carrier: Carrier) -> "ConvSpace":
        table = [carrier.full] * (1 << carrier.n)
        table[0] = 0
        return cls(carrier, tuple(table), True, "antidiscrete")


def _cached(space, key, compute: Callable):
    cache = space._cache
    if key not in cache:
        cache[key] = compute()
    return cache[key]


def adh_conv(space: ConvSpace, family: Iterable[int]) -> int:
    """
    Aderência de uma família: ⋃ dos limites dos núcleos que malham com ela.
    Como lim é antítono, basta percorrer as transversais minimais.
    """
    out = 0
    for k in minimal_transversals(family, space.carrier):
        out |= space.lim_table[k]
    return out


def adh_set(space: ConvSpace, A: int) -> int:
    """adh A = ⋃_{t∈A} lim({t})."""
    out = 0
    for t in points(A):
        out |= space.lim_table[1 << t]
    return out


def closed_sets(space: ConvSpace) -> Tuple[int, ...]:
    """
    A é fechado se lim(B) ⊆ A para todo núcleo B que malha com {A}.
    Sempre inclui ∅ e X.
    """
    def compute():
        table = space.lim_table
        kernels = space.carrier.nonempty_subsets()
        return tuple(
            a for a in space.carrier.subsets()
            if all(is_subset(table[b], a) for b in kernels if b & a)
        )

    return _cached(space, "closed", compute)


def open_sets(space: ConvSpace) -> Tuple[int, ...]:
    """O é aberto se lim(B)∩O ≠ ∅ implica B ⊆ O."""
    def compute():
        table = space.lim_table
        kernels = space.carrier.nonempty_subsets()
        return tuple(
            o for o in space.carrier.subsets()
            if all(is_subset(b, o) for b in kernels if table[b] & o)
        )

    return _cached(space, "open", compute)


def closure(space: ConvSpace, A: int) -> int:
    """Menor fechado que contém A (fecho na topologia 𝒪_ξ)."""
    out = space.carrier.full
    for c in closed_sets(space):
        if is_subset(A, c):
            out &= c
    return out


def vicinity(space: ConvSpace, x: int) -> int:
    """Núcleo do filtro de vizinhança: ⋃ dos núcleos que convergem a x (0 se nenhum)."""
    out = 0
    for b in space.carrier.nonempty_subsets():
        if space.lim_table[b] >> x & 1:
            out |= b
    return out


def _from_point_sets(space: ConvSpace, point_sets: List[int], name: str) -> ConvSpace:
    # lim(B) = ⋂_{t∈B} point_sets[t]
    table = [0] * (1 << space.n)
    for b in space.carrier.nonempty_subsets():
        acc = space.carrier.full
        for t in points(b):
            acc &= point_sets[t]
        table[b] = acc
    return ConvSpace(space.carrier, tuple(table), space.centered, name)


def reflect_S0(space: ConvSpace) -> ConvSpace:
    """
    Refletor pretopológico: lim(𝓕) = ⋂_{A∈𝓕^#} adh A. Como adh é isótona e os
    membros da grelha de B↑ contêm singletons de B, o ínfimo é ⋂_{t∈B} adh{t}.
    """
    return _from_point_sets(
        space, [adh_set(space, 1 << t) for t in range(space.n)], "S0"
    )


def reflect_S(space: ConvSpace) -> ConvSpace:
    """Refletor pseudotopológico pela fórmula dos ultrafiltros: ⋂_{t∈B} lim({t})."""
    return _from_point_sets(
        space, [space.lim_table[1 << t] for t in range(space.n)], "S"
    )


def reflect_T(space: ConvSpace) -> ConvSpace:
    """Refletor topológico: lim(𝓕) = ⋂_{A∈𝓕^#} cl A = ⋂_{t∈B} cl{t}."""
    return _from_point_sets(
        space, [closure(space, 1 << t) for t in range(space.n)], "T"
    )


def is_pretopological(space: ConvSpace) -> bool:
    return reflect_S0(space).lim_table == space.lim_table


def is_topological(space: ConvSpace) -> bool:
    return reflect_T(space).lim_table == space.lim_table


def is_finer(a: ConvSpace, b: ConvSpace) -> bool:
    """a ≥ b: todo limite em a também é limite em b."""
    return all(is_subset(x, y) for x, y in zip(a.lim_table, b.lim_table))


def conv_supremum(a: ConvSpace, b: ConvSpace) -> ConvSpace:
    """Supremo (a mais grossa das mais finas): lim = lim_a ∩ lim_b."""
    if a.carrier != b.carrier:
        raise InputError("supremo exige o mesmo carrier")
    table = tuple(x & y for x, y in zip(a.lim_table, b.lim_table))
    return ConvSpace(a.carrier, table, a.centered and b.centered, "sup")


def convergent_kernels(space: ConvSpace, x: int) -> List[int]:
    return [b for b in space.carrier.nonempty_subsets() if space.lim_table[b] >> x & 1]


def is_diagonal(space: ConvSpace) -> bool:
    """
    Axioma diagonal: se y ∈ lim 𝒢(y) para todo y e x ∈ lim 𝓕, então x ∈ lim 𝒢(𝓕).
    Enumeração de seletores, limitada por SELECTOR_ENUMERATION_LIMIT.
    """
    choices = [convergent_kernels(space, y) for y in range(space.n)]
    if any(not c for c in choices):
        return True
    total = 1
    for c in choices:
        total *= len(c)
    if total > SELECTOR_ENUMERATION_LIMIT:
        raise SizeLimitError(f"{total} seletores excedem o limite de enumeração")
    for g in product(*choices):
        for f in space.carrier.nonempty_subsets():
            if not is_subset(space.lim_table[f], space.lim_table[contour_kernel(g, f)]):
                return False
    return True


def topology_from_subbase(carrier: Carrier, subbase: Iterable[int], name: str = "") -> ConvSpace:
    """
    Convergência da topologia gerada por uma sub-base: a vizinhança mínima de p
    é a interseção dos membros da sub-base que contêm p.
    """
    members = tuple(subbase)
    vic = {}
    for p in range(carrier.n):
        acc = carrier.full
        for s in members:
            if s >> p & 1:
                acc &= s
        vic[p] = acc
    return ConvSpace.from_vicinities(carrier, vic, name)


def compact_sets(space: ConvSpace) -> Tuple[int, ...]:
    """K é compacto se todo ultrafiltro que contém K tem limite em K: lim({t})∩K ≠ ∅ ∀t∈K."""
    return tuple(
        k for k in space.carrier.subsets()
        if all(space.lim_table[1 << t] & k for t in points(k))
    )


# --- hiperespaço ---------------------------------------------------------


def _format_set(base: Carrier, mask: int) -> str:
    return base.format_mask(mask)


@dataclass(frozen=True)
class HyperCarrier:
    """
    Pontos do hiperespaço (subconjuntos de X) com a codificação de famílias
    como bitmasks sobre os índices desses pontos.
    """
    base: Carrier
    sets: Tuple[int, ...]
    mode: CarrierMode
    carrier: Carrier = field(init=False, compare=False)
    _index: Dict[int, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        sets = tuple(sorted(set(self.sets), key=lambda s: (s.bit_count(), s)))
        object.__setattr__(self, "sets", sets)
        object.__setattr__(self, "carrier", Carrier(tuple(_format_set(self.base, s) for s in sets)))
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(sets)})

    @property
    def size(self) -> int:
        return len(self.sets)

    def __contains__(self, A: int) -> bool:
        return A in self._index

    def index_of(self, A: int) -> int:
        try:
            return self._index[A]
        except KeyError:
            raise InputError(f"{self.base.format_mask(A)} não é ponto do hiperespaço ({self.mode.value})")

    def encode(self, family: Iterable[int]) -> int:
        out = 0
        for A in family:
            out |= 1 << self.index_of(A)
        return out

    def decode(self, mask: int) -> SetFamily:
        return frozenset(self.sets[i] for i in points(mask))


def hyper_carrier(space: ConvSpace, mode: CarrierMode = CarrierMode.CLOSED) -> HyperCarrier:
    if mode is CarrierMode.CLOSED:
        return _cached(space, ("hc", mode), lambda: HyperCarrier(space.carrier, closed_sets(space), mode))
    if mode is CarrierMode.ALL:
        return _cached(space, ("hc", mode), lambda: HyperCarrier(space.carrier, tuple(space.carrier.subsets()), mode))
    raise InputError(f"modo de carrier {mode.value!r} não se aplica a um ConvSpace")


@dataclass(frozen=True)
class HyperFilter:
    """Filtro principal num hiperespaço, guardado pela família-núcleo 𝒜."""
    kernel_family: FrozenSet[int]
    mode: CarrierMode = CarrierMode.CLOSED

    def __post_init__(self):
        object.__setattr__(self, "kernel_family", frozenset(self.kernel_family))
        if not self.kernel_family:
            raise InputError("hiper-filtro com família-núcleo vazia")

    def validate(self, closed: Iterable[int]) -> None:
        if self.mode is CarrierMode.ALL:
            return
        allowed = set(closed)
        for C in self.kernel_family:
            if C not in allowed:
                raise InputError(f"membro não fechado em hiper-filtro no modo {self.mode.value}: {C}")

    @property
    def reduction(self) -> Kernel:
        return rdc(self.kernel_family)


def _check_limit(space: ConvSpace, F: HyperFilter, A: int) -> None:
    if F.mode is CarrierMode.CLOSED and A not in closed_sets(space):
        raise InputError(f"{space.carrier.format_mask(A)} não é fechado")


def hyper_lim_uK(space: ConvSpace, F: HyperFilter, A: int) -> bool:
    """A ∈ lim_uK 𝔉 ⟺ adh(rdc 𝔉) ⊆ A."""
    _check_limit(space, F, A)
    return is_subset(adh_conv(space, [F.reduction]), A)


def hyper_lim_lK(space: ConvSpace, F: HyperFilter, A: int) -> bool:
    """
    A ∈ lim_lK 𝔉 ⟺ A ⊆ adh(rdc 𝔉^#). Os núcleos que malham com rdc 𝔉^# são
    as transversais de 𝒜, logo adh(rdc 𝔉^#) = adh 𝒜.
    """
    _check_limit(space, F, A)
    return is_subset(A, adh_conv(space, F.kernel_family))


def hyper_lim_K(space: ConvSpace, F: HyperFilter, A: int) -> bool:
    return hyper_lim_uK(space, F, A) and hyper_lim_lK(space, F, A)


def hyper_lim_lV(space: ConvSpace, F: HyperFilter, A: int) -> bool:
    """A ∈ lim_lV 𝔉 ⟺ para todo aberto O com O∩A≠∅, O⁻ ⊇ 𝒜."""
    _check_limit(space, F, A)
    return all(
        all(C & O for C in F.kernel_family)
        for O in open_sets(space)
        if O & A
    )


HYPER_LIMITS: Dict[str, Callable[[ConvSpace, HyperFilter, int], bool]] = {
    "uK": hyper_lim_uK,
    "lK": hyper_lim_lK,
    "K": hyper_lim_K,
    "lV": hyper_lim_lV,
}


def hyper_convergence(space: ConvSpace, kind: str, mode: CarrierMode = CarrierMode.CLOSED) -> ConvSpace:
    """
    Materializa lim_uK / lim_lK / lim_K / lim_lV como ConvSpace sobre o carrier
    do hiperespaço. O flag `centered` reflete o que a tabela de fato satisfaz.
    """
    if kind not in HYPER_LIMITS:
        raise InputError(f"convergência de hiperespaço desconhecida: {kind!r}")

    def compute():
        hc = hyper_carrier(space, mode)
        sets = hc.sets
        table = [0] * (1 << hc.size)
        opens = open_sets(space) if kind == "lV" else ()
        for m in hc.carrier.nonempty_subsets():
            family = hc.decode(m)
            up = adh_conv(space, [rdc(family)]) if kind in ("uK", "K") else None
            low = adh_conv(space, family) if kind in ("lK", "K") else None
            acc = 0
            for i, A in enumerate(sets):
                if kind == "uK":
                    ok = is_subset(up, A)
                elif kind == "lK":
                    ok = is_subset(A, low)
                elif kind == "K":
                    ok = is_subset(up, A) and is_subset(A, low)
                else:
                    ok = all(all(C & O for C in family) for O in opens if O & A)
                if ok:
                    acc |= 1 << i
            table[m] = acc
        centered = all(table[1 << i] >> i & 1 for i in range(hc.size))
        logger.debug("hyper_convergence %s sobre %d pontos", kind, hc.size)
        return ConvSpace(hc.carrier, tuple(table), centered, f"lim_{kind}")

    return _cached(space, ("hyperconv", kind, mode), compute)


def upper_fell_topology(space: ConvSpace) -> ConvSpace:
    """
    Topologia cocompacta (Fell superior) sobre os fechados: sub-base
    K⁺ = {A : A∩K = ∅} para K compacto.
    """
    hc = hyper_carrier(space, CarrierMode.CLOSED)
    subbase = [
        hc.encode(A for A in hc.sets if not A & k)
        for k in compact_sets(space)
    ]
    return topology_from_subbase(hc.carrier, subbase, "upper-Fell")


def lower_vietoris_topology(space: ConvSpace) -> ConvSpace:
    """Vietoris inferior: sub-base O⁻ = {C : C∩O ≠ ∅} para O aberto."""
    hc = hyper_carrier(space, CarrierMode.CLOSED)
    subbase = [hc.encode(C for C in hc.sets if C & o) for o in open_sets(space)]
    return topology_from_subbase(hc.carrier, subbase, "lower-Vietoris")


def fell_topology(space: ConvSpace) -> ConvSpace:
    """Fell = supremo de Fell superior e Vietoris inferior."""
    out = conv_supremum(upper_fell_topology(space), lower_vietoris_topology(space))
    return ConvSpace(out.carrier, out.lim_table, out.centered, "Fell")
