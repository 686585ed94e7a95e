"""
Versões definicionais (força bruta) das fórmulas otimizadas. Nada aqui é
usado pelo caminho normal; os checks comparam uma coisa com a outra.
"""
from itertools import product
from typing import Iterable, List, Sequence, Set, Tuple

from ..cap import CapSpace, Row
from ..conv import ConvSpace, HyperCarrier
from ..setcalc import Carrier, Kernel, is_subset, points, submasks
from ..values import INF, ONE, ZERO, Value, oslash, trunc_sub, vinf, vsup
from ..frames import FrameFn, frame_members, lower_objective, upper_objective, value_grid


def meshing_kernels(family: Iterable[int], carrier: Carrier) -> List[int]:
    """Todos os núcleos não vazios K com K∩A≠∅ para todo A da família."""
    fam = tuple(family)
    return [k for k in carrier.nonempty_subsets() if all(k & a for a in fam)]


def adh_conv_definitional(space: ConvSpace, family: Iterable[int]) -> int:
    out = 0
    for k in meshing_kernels(family, space.carrier):
        out |= space.lim_table[k]
    return out


def adh_cap_definitional(space: CapSpace, family: Iterable[int]) -> Row:
    ks = meshing_kernels(family, space.carrier)
    return tuple(vinf(space.table[k][x] for k in ks) for x in range(space.n))


def contour_literal(g: Sequence[int], f: Kernel, carrier: Carrier) -> Kernel:
    """
    Contorno 𝒢(𝓕) montado membro a membro: todos os ⋃_{t∈F} G_t com F ⊇ f e
    G_t ⊇ g(t); devolve a interseção, que precisa ser ela mesma um membro.
    """
    full = carrier.full
    members: Set[int] = set()
    for F in (s for s in carrier.subsets() if is_subset(f, s)):
        pts = points(F)
        options = [[s for s in submasks(full) if is_subset(g[t], s)] for t in pts]
        for choice in product(*options):
            union = 0
            for s in choice:
                union |= s
            members.add(union)
    kernel = full
    for m in members:
        kernel &= m
    if kernel not in members:
        raise AssertionError("contorno literal não é principal")
    return kernel


def family_unions(hc: HyperCarrier) -> List[int]:
    """union[m] = ⋃ dos pontos do hiperespaço codificados em m, para toda máscara m."""
    size = hc.size
    union = [0] * (1 << size)
    for m in range(1, 1 << size):
        low = m & -m
        union[m] = union[m ^ low] | hc.sets[low.bit_length() - 1]
    return union


def reduction_literal(hc: HyperCarrier, mask: int, unions: Sequence[int]) -> int:
    """Núcleo de rdc 𝔉: interseção de ⋃𝓑 sobre toda família 𝓑 ⊇ 𝒜."""
    out = hc.base.full
    for m in range(1, 1 << hc.size):
        if m & mask == mask:
            out &= unions[m]
    return out


def grill_reduction_literal(hc: HyperCarrier, mask: int, unions: Sequence[int]) -> Tuple[int, ...]:
    """rdc(𝔉^#) = {⋃𝓗 : 𝓗 ∩ 𝒜 ≠ ∅}, como tupla ordenada de uniões distintas."""
    return tuple(sorted({unions[m] for m in range(1, 1 << hc.size) if m & mask}))


def upper_adherence_literal(base: CapSpace, hc: HyperCarrier, mask: int, unions: Sequence[int]) -> Row:
    """adh da família {⋃𝓑 : 𝓑 ⊇ 𝒜}, isto é, de rdc 𝔉 membro a membro."""
    family = {unions[m] for m in range(1, 1 << hc.size) if m & mask == mask}
    return adh_cap_definitional(base, family)


def lower_adherence_literal(base: CapSpace, hc: HyperCarrier, mask: int, unions: Sequence[int]) -> Row:
    return adh_cap_definitional(base, grill_reduction_literal(hc, mask, unions))


def lambda_uK_literal(row: Row, A: int) -> Value:
    return vsup(oslash(ONE, row[x]) for x in range(len(row)) if not A >> x & 1)


def lambda_lK_literal(row: Row, A: int) -> Value:
    return vsup(row[x] for x in points(A))


def oracle_grid(base: CapSpace) -> Tuple[Value, ...]:
    """Diferenças g ⊖ e de valores da grade: contém todo valor de cone."""
    grid = value_grid(base)
    return tuple(sorted({trunc_sub(g, e) for g in grid for e in grid}))


def frame_sup_lower(members: Sequence[FrameFn], family: Iterable[int], A: int) -> Value:
    fam = tuple(family)
    return vsup(lower_objective(mu, fam, A) for mu in members)


def frame_sup_upper(members: Sequence[FrameFn], family: Iterable[int], A: int) -> Value:
    fam = tuple(family)
    return vsup(upper_objective(mu, fam, A) for mu in members)


def frame_sup_LuF(
    members: Sequence[FrameFn],
    compact: Iterable[int],
    family: Iterable[int],
    A: int,
) -> Value:
    fam = tuple(family)
    best: Value = ZERO
    for B in compact:
        restricted = tuple(C & B for C in fam)
        for mu in members:
            value = upper_objective(mu, restricted, A & B)
            if value > best:
                best = value
                if best is INF:
                    return best
    return best


__all__ = [
    "meshing_kernels",
    "adh_conv_definitional",
    "adh_cap_definitional",
    "contour_literal",
    "family_unions",
    "reduction_literal",
    "grill_reduction_literal",
    "upper_adherence_literal",
    "lower_adherence_literal",
    "lambda_uK_literal",
    "lambda_lK_literal",
    "oracle_grid",
    "frame_members",
    "frame_sup_lower",
    "frame_sup_upper",
    "frame_sup_LuF",
]
