"""
Combinatória de potências finitas.

Subconjuntos do carrier são bitmasks (`int`): o bit i representa o ponto de
índice i. Todo filtro num conjunto finito é principal, então um filtro é
guardado pelo seu núcleo (a interseção dos membros). Famílias de subconjuntos
são `frozenset[int]`.

Orientação: núcleo maior = filtro mais grosso. a ⊆ b ⟺ b↑ ≤ a↑.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Sequence, Tuple

from .errors import InputError

logger = logging.getLogger(__name__)

Kernel = int
SetFamily = FrozenSet[int]
# imagem de cada ponto (por índice) sob 𝒢: X → 𝔽X
SelectorMap = Tuple[int, ...]


def points(mask: int) -> List[int]:
    """Índices dos bits ligados, em ordem crescente."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def submasks(mask: int) -> Iterator[int]:
    """Todos os subconjuntos de `mask`, incluindo ∅ e o próprio mask."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


@dataclass(frozen=True)
class Carrier:
    labels: Tuple[str, ...]
    _index: Dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        if not labels:
            raise InputError("carrier vazio")
        if len(set(labels)) != len(labels):
            raise InputError(f"rótulos repetidos no carrier: {list(labels)}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(labels)})

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def index(self, label: str) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise InputError(f"ponto desconhecido: {label!r}")

    def mask(self, labels: Iterable[str]) -> int:
        m = 0
        for lab in labels:
            m |= 1 << self.index(lab)
        return m

    def labels_of(self, mask: int) -> List[str]:
        return [self.labels[i] for i in points(mask)]

    def format_mask(self, mask: int) -> str:
        return "{" + ",".join(self.labels_of(mask)) + "}"

    def subsets(self) -> range:
        return range(0, 1 << self.n)

    def nonempty_subsets(self) -> range:
        return range(1, 1 << self.n)


def grill(family: Iterable[int], carrier: Carrier) -> SetFamily:
    """
    𝒜^# = {B ⊆ X : B∩A ≠ ∅ para todo A∈𝒜}, materializada por enumeração de 2^n.
    """
    fam = tuple(family)
    return frozenset(b for b in carrier.subsets() if all(b & a for a in fam))


def mesh(a: Iterable[int], b: Iterable[int]) -> bool:
    """𝒜 # ℬ: todo membro de a intersecta todo membro de b."""
    bb = tuple(b)
    return all(x & y for x in a for y in bb)


def rdc(family: Iterable[int]) -> Kernel:
    """
    Núcleo da redução de um hiper-filtro de núcleo 𝒜: ⋃𝒜 (pode ser ∅).
    """
    out = 0
    for a in family:
        out |= a
    return out


def erect(F: int, closed: Iterable[int]) -> SetFamily:
    """eF = {C fechado : C ⊆ F}."""
    return frozenset(c for c in closed if is_subset(c, F))


def is_saturated(family: Iterable[int], closed: Iterable[int]) -> bool:
    fam = frozenset(family)
    union = rdc(fam)
    return all(c in fam for c in closed if is_subset(c, union))


def contour_kernel(g: Sequence[int], f: Kernel) -> Kernel:
    """
    Núcleo do contorno 𝒢(𝓕) para 𝓕 = f↑: ⋃_{t∈f} g(t).
    """
    if not f:
        raise InputError("contorno de núcleo vazio")
    out = 0
    for t in points(f):
        out |= g[t]
    return out


@lru_cache(maxsize=65536)
def _minimal_transversals(family: FrozenSet[int], full: int) -> FrozenSet[int]:
    if 0 in family:
        return frozenset()
    fam = tuple(family)
    candidates = [k for k in range(1, full + 1) if all(k & a for a in fam)]
    candidates.sort(key=lambda k: k.bit_count())
    minimal: List[int] = []
    for k in candidates:
        if not any(is_subset(m, k) for m in minimal):
            minimal.append(k)
    return frozenset(minimal)


def minimal_transversals(family: Iterable[int], carrier: Carrier) -> SetFamily:
    """
    Os K não vazios, minimais por inclusão, com K∩A≠∅ para todo A∈family.
    Resultado vazio se e só se ∅ ∈ family.
    """
    return _minimal_transversals(frozenset(family), carrier.full)


def isotone_hull(family: Iterable[int], carrier: Carrier) -> SetFamily:
    """𝒜^↑: todos os superconjuntos de membros de 𝒜."""
    fam = tuple(family)
    return frozenset(b for b in carrier.subsets() if any(is_subset(a, b) for a in fam))


def intersection_hull(family: Iterable[int]) -> SetFamily:
    """𝒜^∩: interseções finitas (não vazias de índices) de membros de 𝒜."""
    out = set(family)
    frontier = set(out)
    while frontier:
        new = set()
        for a in frontier:
            for b in out:
                c = a & b
                if c not in out:
                    new.add(c)
        out |= new
        frontier = new
    return frozenset(out)


def kernel_of(family: Iterable[int]) -> Kernel:
    """Interseção dos membros; o núcleo do filtro gerado por uma base."""
    fam = list(family)
    if not fam:
        raise InputError("família vazia não gera filtro")
    out = fam[0]
    for a in fam[1:]:
        out &= a
    return out


def is_filter_base(family: Iterable[int]) -> bool:
    """Base de filtro próprio: não vazia, sem ∅, e dirigida para baixo."""
    fam = frozenset(family)
    if not fam or 0 in fam:
        return False
    return all(any(is_subset(c, a & b) for c in fam) for a in fam for b in fam)
