"""
Estruturas de aproximação de convergência no hiperespaço dos fechados de c(λ):
Kuratowski superior/inferior (λ_uK, λ_lK, λ_K), Fell superior (λ_uF), as duas
combinações de Fell e as torres de ε-convergência.
"""
import logging
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List

from .cap import CapSpace, Completion, Row, adh_cap, adh_set, coreflect_c, reflect_r
from .config import ensure_hyper_size
from .conv import (
    CarrierMode,
    ConvSpace,
    HyperCarrier,
    HyperFilter,
    _cached,
    closed_sets,
)
from .errors import InputError
from .setcalc import is_subset, points, submasks
from .values import INF, ONE, ZERO, Value, oslash, vinf, vsup

logger = logging.getLogger(__name__)


class Structure(str, Enum):
    UK = "uK"
    LK = "lK"
    K = "K"
    UF = "uF"
    FBAR = "Fbar"
    F = "F"
    LV = "lV"
    UV = "uV"
    LUF = "LuF"


class HyperSpace:
    """
    Hiperespaço sobre uma base CAP. O carrier é 𝒞_{c(λ)} (padrão), 𝒞_{r(λ)}
    (modo rclosed) ou ℙX (modo all). Guarda caches de aderência por família.
    """

    def __init__(self, base: CapSpace, mode: CarrierMode = CarrierMode.CLOSED):
        ensure_hyper_size(base.n)
        self.base = base
        self.mode = mode
        if mode is CarrierMode.CLOSED:
            sets = closed_sets(coreflect_c(base))
        elif mode is CarrierMode.RCLOSED:
            sets = closed_sets(reflect_r(base))
        else:
            sets = tuple(base.carrier.subsets())
        self.carrier = HyperCarrier(base.carrier, tuple(sets), mode)
        self._lower: Dict[FrozenSet[int], Row] = {}
        self._tables: Dict[Structure, CapSpace] = {}

    @classmethod
    def over(cls, base: CapSpace, mode: CarrierMode = CarrierMode.CLOSED) -> "HyperSpace":
        return cls(base, mode)

    @property
    def sets(self):
        return self.carrier.sets

    def filter(self, family: Iterable[int]) -> HyperFilter:
        F = HyperFilter(frozenset(family), self.mode)
        self.check_filter(F)
        return F

    def check_filter(self, F: HyperFilter) -> None:
        if F.mode is CarrierMode.ALL:
            return
        for C in F.kernel_family:
            if C not in self.carrier:
                raise InputError(
                    f"{self.base.carrier.format_mask(C)} não pertence ao carrier do hiperespaço ({self.mode.value})"
                )

    def check_point(self, A: int) -> None:
        if A not in self.carrier:
            raise InputError(
                f"{self.base.carrier.format_mask(A)} não é ponto do hiperespaço ({self.mode.value})"
            )

    def upper_adherence(self, F: HyperFilter) -> Row:
        """adh_λ(rdc 𝔉) = adh_λ(⋃𝒜); ≡ ∞ na redução degenerada."""
        return adh_set(self.base, F.reduction)

    def lower_adherence(self, F: HyperFilter) -> Row:
        """adh_λ(rdc 𝔉^#): ínfimo sobre as transversais de 𝒜."""
        key = F.kernel_family
        if key not in self._lower:
            self._lower[key] = adh_cap(self.base, key)
        return self._lower[key]


def _prepare(h: HyperSpace, F: HyperFilter, A: int) -> None:
    h.check_point(A)
    h.check_filter(F)


def lambda_uK(h: HyperSpace, F: HyperFilter, A: int) -> Value:
    """λ_uK 𝔉(A) = ⋁_{x∉A} 1 ⊘ adh(rdc 𝔉)(x)."""
    _prepare(h, F, A)
    row = h.upper_adherence(F)
    outside = h.base.carrier.full & ~A
    return vsup(oslash(ONE, row[x]) for x in points(outside))


def lambda_lK(h: HyperSpace, F: HyperFilter, A: int) -> Value:
    """λ_lK 𝔉(A) = ⋁_{x∈A} adh(rdc 𝔉^#)(x)."""
    _prepare(h, F, A)
    row = h.lower_adherence(F)
    return vsup(row[x] for x in points(A))


def lambda_K(h: HyperSpace, F: HyperFilter, A: int) -> Value:
    return max(lambda_uK(h, F, A), lambda_lK(h, F, A))


def measure_compactness(base: CapSpace, H: int) -> Value:
    """m(H) = ⋁_{t∈H} ⋀_{x∈H} d(t,x); m(∅) = 0."""
    def compute():
        pts = points(H)
        return vsup(vinf(base.distance(t, x) for x in pts) for t in pts)

    return _cached(base, ("m", H), compute)


def lambda_uF(h: HyperSpace, F: HyperFilter, A: int) -> Value:
    """λ_uF 𝔉(A) = ⋁ {1 ⊘ m(H) : H ⊆ X∖A, H ∩ rdc 𝔉 ≠ ∅}."""
    _prepare(h, F, A)
    reduction = F.reduction
    outside = h.base.carrier.full & ~A
    best: Value = ZERO
    for H in submasks(outside):
        if H & reduction:
            value = oslash(ONE, measure_compactness(h.base, H))
            if value > best:
                best = value
                if best is INF:
                    break
    return best


def lambda_fell(h: HyperSpace, F: HyperFilter, A: int, variant: Structure) -> Value:
    """Fbar: λ_uF ∨ λ_lK. F: λ_uF ∨ λ_lV."""
    if variant is Structure.FBAR:
        return max(lambda_uF(h, F, A), lambda_lK(h, F, A))
    if variant is Structure.F:
        from .frames import lambda_lV
        return max(lambda_uF(h, F, A), lambda_lV(h, F, A))
    raise InputError(f"variante de Fell desconhecida: {variant}")


def evaluate(h: HyperSpace, structure: Structure, F: HyperFilter, A: int) -> Value:
    structure = Structure(structure)
    if structure is Structure.UK:
        return lambda_uK(h, F, A)
    if structure is Structure.LK:
        return lambda_lK(h, F, A)
    if structure is Structure.K:
        return lambda_K(h, F, A)
    if structure is Structure.UF:
        return lambda_uF(h, F, A)
    if structure in (Structure.FBAR, Structure.F):
        return lambda_fell(h, F, A, structure)

    from . import frames

    if structure is Structure.LV:
        return frames.lambda_lV(h, F, A)
    if structure is Structure.UV:
        return frames.lambda_uV(h, F, A)
    return frames.lambda_LuF(h, F, A)


def hyper_cap(h: HyperSpace, structure: Structure) -> CapSpace:
    """
    Materializa a estrutura como CapSpace sobre o carrier do hiperespaço
    (uma linha por família-núcleo, codificada em bitmask sobre os pontos).
    """
    structure = Structure(structure)
    if structure in h._tables:
        return h._tables[structure]
    hc = h.carrier
    table: List[Row] = [()]
    for m in hc.carrier.nonempty_subsets():
        F = HyperFilter(hc.decode(m), h.mode)
        table.append(tuple(evaluate(h, structure, F, A) for A in hc.sets))
    logger.debug("hyper_cap %s: %d famílias × %d pontos", structure.value, len(table) - 1, hc.size)
    space = CapSpace(hc.carrier, tuple(table), Completion.EXPLICIT, f"λ_{structure.value}")
    h._tables[structure] = space
    return space


def hyper_tower(h: HyperSpace, structure: Structure, eps: Value) -> ConvSpace:
    """
    Camada ε das torres de Kuratowski:
      lK: A ∈ lim_ε 𝔉 ⟺ A ⊆ {adh rdc 𝔉^# ≤ ε};
      uK: A ∈ lim_ε 𝔉 ⟺ {adh rdc 𝔉 < 1⊘ε} ⊆ A.
    """
    structure = Structure(structure)
    if structure not in (Structure.UK, Structure.LK):
        raise InputError("torres só para uK e lK")
    hc = h.carrier
    n = h.base.n
    table = [0] * (1 << hc.size)
    cut = oslash(ONE, eps) if structure is Structure.UK else None
    for m in hc.carrier.nonempty_subsets():
        F = HyperFilter(hc.decode(m), h.mode)
        if structure is Structure.LK:
            row = h.lower_adherence(F)
            allowed = sum(1 << x for x in range(n) if row[x] <= eps)
            hits = [is_subset(A, allowed) for A in hc.sets]
        else:
            row = h.upper_adherence(F)
            required = sum(1 << x for x in range(n) if row[x] < cut)
            hits = [is_subset(required, A) for A in hc.sets]
        table[m] = sum(1 << i for i, ok in enumerate(hits) if ok)
    centered = all(table[1 << i] >> i & 1 for i in range(hc.size))
    return ConvSpace(hc.carrier, tuple(table), centered, f"{structure.value}≤{eps}")


def hyper_cut(h: HyperSpace, structure: Structure, eps: Value) -> ConvSpace:
    """Corte {λ ≤ ε} da estrutura materializada."""
    space = hyper_cap(h, structure)
    hc = h.carrier
    table = [0] + [
        sum(1 << i for i in range(hc.size) if space.table[m][i] <= eps)
        for m in hc.carrier.nonempty_subsets()
    ]
    centered = all(table[1 << i] >> i & 1 for i in range(hc.size))
    return ConvSpace(hc.carrier, tuple(table), centered, f"cut {structure.value}")
