"""
Frames de funções regulares inferiores.

𝓛 = contrações de (X, λ) em ([0,∞], λ_V). É infinito; os supremos sobre 𝓛
usados por λ_lV, λ_uV e λ_LuF são calculados sobre funções-cone, que são as
contrações pontualmente mínimas que fixam o valor no conjunto-alvo. A
adequação é conferida contra a enumeração exaustiva de contrações com valores
numa grade (harness.oracles).
"""
import logging
from itertools import combinations_with_replacement, product
from typing import Iterable, Iterator, List, Sequence, Tuple

from .cap import CapSpace, coreflect_c
from .conv import HyperFilter, _cached, closed_sets
from .errors import InconsistencyError
from .hyper import HyperSpace, _prepare, measure_compactness
from .setcalc import points
from .values import INF, ZERO, Value, lambda_V_eval, trunc_sub, vinf, vsup

logger = logging.getLogger(__name__)

FrameFn = Tuple[Value, ...]
DClosure = Tuple[Tuple[Value, ...], ...]


def is_contraction(base: CapSpace, mu: Sequence[Value]) -> bool:
    """μ(x) ⊖ μ(t) ≤ d(t,x) para todo t, x (isto é, μ(x) ≤ μ(t) + d(t,x))."""
    n = base.n
    return all(
        trunc_sub(mu[x], mu[t]) <= base.distance(t, x)
        for t in range(n) for x in range(n)
    )


def is_contraction_definitional(base: CapSpace, mu: Sequence[Value]) -> bool:
    """λ_V(μ[B↑])(μ(x)) ≤ λ(B↑)(x) para todo núcleo B e todo x."""
    return all(
        lambda_V_eval((mu[t] for t in points(b)), mu[x]) <= base.table[b][x]
        for b in base.carrier.nonempty_subsets()
        for x in range(base.n)
    )


def theta(A: int, n: int) -> FrameFn:
    """Função indicadora θ_A: 0 em A, ∞ fora."""
    return tuple(ZERO if A >> x & 1 else INF for x in range(n))


def d_closure(base: CapSpace) -> DClosure:
    """
    Fecho min-plus (Floyd–Warshall) da tabela d, com diagonal zero.
    """
    def compute():
        n = base.n
        D = [[ZERO if t == x else base.distance(t, x) for x in range(n)] for t in range(n)]
        for k in range(n):
            for i in range(n):
                if D[i][k] is INF:
                    continue
                for j in range(n):
                    via = D[i][k] + D[k][j]
                    if via < D[i][j]:
                        D[i][j] = via
        return tuple(tuple(row) for row in D)

    return _cached(base, "dclosure", compute)


def value_grid(base: CapSpace) -> Tuple[Value, ...]:
    """Somas de até n valores finitos realizados de d, mais {0, ∞}."""
    def compute():
        n = base.n
        finite = sorted({
            base.distance(t, x)
            for t in range(n) for x in range(n)
            if base.distance(t, x) is not INF and base.distance(t, x) > 0
        })
        sums = {ZERO, INF}
        for k in range(1, n + 1):
            for combo in combinations_with_replacement(finite, k):
                sums.add(sum(combo, ZERO))
        return tuple(sorted(sums))

    return _cached(base, "grid", compute)


def mu_up(mu: Sequence[Value], C: int) -> Value:
    """μ^∨(C) = ⋁_{t∈C} μ(t); μ^∨(∅) = 0."""
    return vsup(mu[t] for t in points(C))


def mu_down(mu: Sequence[Value], C: int) -> Value:
    """μ^∧(C) = ⋀_{t∈C} μ(t); μ^∧(∅) = ∞."""
    return vinf(mu[t] for t in points(C))


def constants(base: CapSpace) -> Iterator[FrameFn]:
    for v in value_grid(base):
        yield tuple(v for _ in range(base.n))


def lower_cones(base: CapSpace, A: int) -> Iterator[FrameFn]:
    """μ_{x,v}(t) = v ⊖ D(t,x) para x ∈ A e v na grade."""
    D = d_closure(base)
    for x in points(A):
        for v in value_grid(base):
            yield tuple(trunc_sub(v, D[t][x]) for t in range(base.n))


def upper_cones(base: CapSpace, S: int) -> Iterator[FrameFn]:
    """μ_{S,v}(t) = v ⊖ ⋀_{a∈S} D(t,a); com S = ∅ é a função nula."""
    D = d_closure(base)
    for v in value_grid(base):
        yield tuple(trunc_sub(v, vinf(D[t][a] for a in points(S))) for t in range(base.n))


def _checked(base: CapSpace, candidates: Iterable[FrameFn]) -> Iterator[FrameFn]:
    for mu in candidates:
        if not is_contraction(base, mu):
            raise InconsistencyError(f"candidato não é contração: {mu}")
        yield mu


def cone_candidates(base: CapSpace, A: int, upper: bool = False) -> Tuple[FrameFn, ...]:
    """Cones sobre A (inferiores ou superiores) mais as constantes da grade."""
    def compute():
        cones = upper_cones(base, A) if upper else lower_cones(base, A)
        return tuple(_checked(base, list(cones) + list(constants(base))))

    return _cached(base, ("cones", A, upper), compute)


def lower_objective(mu: Sequence[Value], family: Iterable[int], A: int) -> Value:
    """μ^∨(A) ⊖ ⋀_{C∈𝒜} μ^∨(C), pela redução de λ_V a núcleos finitos."""
    return lambda_V_eval((mu_up(mu, C) for C in family), mu_up(mu, A))


def upper_objective(mu: Sequence[Value], family: Iterable[int], A: int) -> Value:
    return lambda_V_eval((mu_down(mu, C) for C in family), mu_down(mu, A))


def lambda_lV(h: HyperSpace, F: HyperFilter, A: int) -> Value:
    """
    Vietoris inferior via frame: ⋁_{μ∈𝓛} μ^∨(A) ⊖ ⋀_{C∈𝒜} μ^∨(C), com o supremo
    tomado sobre cones e constantes.
    """
    _prepare(h, F, A)
    family = F.kernel_family
    return vsup(lower_objective(mu, family, A) for mu in cone_candidates(h.base, A))


def lambda_uV(h: HyperSpace, F: HyperFilter, A: int) -> Value:
    """Vietoris ∧: como lambda_lV, com μ^∧ e cones sobre o próprio A."""
    _prepare(h, F, A)
    family = F.kernel_family
    return vsup(upper_objective(mu, family, A) for mu in cone_candidates(h.base, A, upper=True))


def compact_closed_sets(base: CapSpace) -> Tuple[int, ...]:
    """Os c(λ)-fechados B com m(B) = 0."""
    return _cached(base, "compact-closed", lambda: tuple(
        B for B in closed_sets(coreflect_c(base))
        if measure_compactness(base, B) == ZERO
    ))


def lambda_LuF(h: HyperSpace, F: HyperFilter, A: int) -> Value:
    """
    Estrutura de Fell superior gerada por {μ_B^∧ : μ ∈ 𝓛, m(B) = 0}:
    ⋁_B ⋁_μ ⋀μ(A∩B) ⊖ ⋀_{C∈𝒜} ⋀μ(C∩B).
    """
    _prepare(h, F, A)
    best: Value = ZERO
    family = F.kernel_family
    for B in compact_closed_sets(h.base):
        restricted = [C & B for C in family]
        for mu in cone_candidates(h.base, A & B, upper=True):
            value = upper_objective(mu, restricted, A & B)
            if value > best:
                best = value
    return best


def frame_members(base: CapSpace, grid: Sequence[Value]) -> List[FrameFn]:
    """Todas as contrações com valores em `grid` (enumeração exaustiva)."""
    members = [
        mu for mu in product(grid, repeat=base.n)
        if is_contraction(base, mu)
    ]
    logger.debug("frame_members: %d de %d funções", len(members), len(grid) ** base.n)
    return members
