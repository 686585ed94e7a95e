"""
Espaços de aproximação de convergência (CAP) em carriers finitos.

A tabela λ é indexada pelo bitmask do núcleo e depois pelo índice do ponto:
`table[B][x] = λ(B↑)(x)`. A linha 0 (núcleo vazio) fica vazia; λ no filtro
degenerado não é definido.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .config import SELECTOR_ENUMERATION_LIMIT
from .conv import ConvSpace, _cached, is_pretopological, vicinity
from .errors import AxiomError, InconsistencyError, InputError, SizeLimitError
from .setcalc import Carrier, Kernel, is_subset, minimal_transversals, points
from .values import INF, ZERO, Value, as_value, format_value, trunc_sub, vinf, vsup

logger = logging.getLogger(__name__)

Row = Tuple[Value, ...]


class Completion(str, Enum):
    EXPLICIT = "explicit"
    PRAP = "prap"


def check_monotone_table(carrier: Carrier, table: Sequence[Row]) -> None:
    """A ⊆ B ⟹ λ(A↑) ≤ λ(B↑) ponto a ponto (núcleo maior converge pior)."""
    for b in carrier.nonempty_subsets():
        for t in points(b):
            a = b & ~(1 << t)
            if not a:
                continue
            for x in range(carrier.n):
                if table[a][x] > table[b][x]:
                    raise AxiomError(
                        "monotone",
                        f"λ({carrier.format_mask(a)})({carrier.labels[x]}) = {format_value(table[a][x])}"
                        f" > λ({carrier.format_mask(b)})({carrier.labels[x]}) = {format_value(table[b][x])}",
                        {
                            "kernel": carrier.labels_of(b),
                            "subkernel": carrier.labels_of(a),
                            "point": carrier.labels[x],
                        },
                    )


def _singleton_sup(table: Sequence[Row], kernel: int, x: int) -> Value:
    return vsup(table[1 << t][x] for t in points(kernel))


@dataclass(frozen=True)
class CapSpace:
    carrier: Carrier
    table: Tuple[Row, ...]
    completion: Completion = Completion.EXPLICIT
    name: str = field(default="", compare=False)
    _cache: Dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        n = self.carrier.n
        table = tuple(tuple(as_value(v) for v in row) for row in self.table)
        object.__setattr__(self, "table", table)
        if len(table) != 1 << n:
            raise InputError(f"tabela λ com {len(table)} linhas; esperado {1 << n}")
        if table[0]:
            raise InputError("λ não é definido no núcleo vazio")
        for b in self.carrier.nonempty_subsets():
            if len(table[b]) != n:
                raise InputError(f"linha de {self.carrier.format_mask(b)} com tamanho errado")
        check_monotone_table(self.carrier, table)
        if self.completion is Completion.PRAP:
            for b in self.carrier.nonempty_subsets():
                for x in range(n):
                    if table[b][x] != _singleton_sup(table, b, x):
                        raise AxiomError(
                            "completion",
                            f"λ({self.carrier.format_mask(b)}) difere do sup dos singletons",
                        )

    @property
    def n(self) -> int:
        return self.carrier.n

    def distance(self, t: int, x: int) -> Value:
        """d(t,x) = λ({t}↑)(x)."""
        return self.table[1 << t][x]

    @classmethod
    def from_singletons(cls, carrier: Carrier, d: Sequence[Sequence[Value]], name: str = "") -> "CapSpace":
        """Completação prap: λ(B↑) = ⋁_{t∈B} d(t,·)."""
        n = carrier.n
        if len(d) != n or any(len(r) != n for r in d):
            raise InputError("tabela d precisa ser n×n")
        dd = [[as_value(v) for v in row] for row in d]
        table: List[Row] = [()]
        for b in range(1, 1 << n):
            table.append(tuple(vsup(dd[t][x] for t in points(b)) for x in range(n)))
        return cls(carrier, tuple(table), Completion.PRAP, name)

    @classmethod
    def from_rows(cls, carrier: Carrier, rows: Mapping[int, Sequence[Value]], name: str = "") -> "CapSpace":
        """Forma explícita: todo núcleo não vazio precisa estar listado."""
        table: List[Row] = [()]
        for b in carrier.nonempty_subsets():
            if b not in rows:
                raise InputError(f"λ ausente para o núcleo {carrier.format_mask(b)} (completion explicit)")
            table.append(tuple(rows[b]))
        return cls(carrier, tuple(table), Completion.EXPLICIT, name)


def cap_eval(space: CapSpace, kernel: Kernel, x: int) -> Value:
    if not kernel or kernel > space.carrier.full:
        raise InputError(f"núcleo inválido: {kernel}")
    if not 0 <= x < space.n:
        raise InputError(f"ponto inválido: {x}")
    return space.table[kernel][x]


def singleton_table(space: CapSpace) -> Tuple[Row, ...]:
    return tuple(space.table[1 << t] for t in range(space.n))


def realized_values(space: CapSpace) -> Tuple[Value, ...]:
    """Valores que aparecem na tabela, ordenados."""
    def compute():
        seen = set()
        for row in space.table[1:]:
            seen.update(row)
        return tuple(sorted(seen))

    return _cached(space, "realized", compute)


def breakpoints(space: CapSpace) -> Tuple[Value, ...]:
    """D ∪ {0,∞}: os únicos ε em que A^(ε) pode mudar."""
    return tuple(sorted(set(realized_values(space)) | {ZERO, INF}))


def adh_cap(space: CapSpace, family: Iterable[int]) -> Row:
    """
    Função de aderência de uma família: ⋀ sobre as transversais minimais K de
    λ(K↑)(x); ⋀ vazio = ∞. Para um único núcleo A isso é ⋀_{t∈A} d(t,x).
    """
    ks = minimal_transversals(family, space.carrier)
    return tuple(vinf(space.table[k][x] for k in ks) for x in range(space.n))


def adh_set(space: CapSpace, A: int) -> Row:
    return _cached(space, ("adh", A), lambda: tuple(
        vinf(space.table[1 << t][x] for t in points(A)) for x in range(space.n)
    ))


def eps_enlarge(space: CapSpace, A: int, eps: Value) -> int:
    """A^(ε) = {x : adh A(x) ≤ ε}."""
    row = adh_set(space, A)
    return sum(1 << x for x in range(space.n) if row[x] <= eps)


def is_centered(space: CapSpace) -> bool:
    return all(space.distance(x, x) == ZERO for x in range(space.n))


def is_precentered(space: CapSpace) -> bool:
    return all(space.distance(x, x) is not INF for x in range(space.n))


def coreflect_c(space: CapSpace) -> ConvSpace:
    """c(λ): lim(B↑) = {x : λ(B↑)(x) = 0}."""
    def compute():
        table = [0] + [
            sum(1 << x for x in range(space.n) if space.table[b][x] == ZERO)
            for b in space.carrier.nonempty_subsets()
        ]
        return ConvSpace(space.carrier, tuple(table), is_centered(space), "c")

    return _cached(space, "c", compute)


def reflect_r(space: CapSpace) -> ConvSpace:
    """r(λ): lim(B↑) = {x : λ(B↑)(x) < ∞}."""
    def compute():
        table = [0] + [
            sum(1 << x for x in range(space.n) if space.table[b][x] is not INF)
            for b in space.carrier.nonempty_subsets()
        ]
        return ConvSpace(space.carrier, tuple(table), is_precentered(space), "r")

    return _cached(space, "r", compute)


def embed_i(space: ConvSpace) -> CapSpace:
    """i(ξ): λ(B↑)(x) = 0 se x ∈ lim(B↑), senão ∞."""
    table: List[Row] = [()]
    for b in space.carrier.nonempty_subsets():
        lim = space.lim_table[b]
        table.append(tuple(ZERO if lim >> x & 1 else INF for x in range(space.n)))
    return CapSpace(space.carrier, tuple(table), Completion.EXPLICIT, f"i({space.name})" if space.name else "i")


def initial_value(functions: Sequence[Sequence[Value]], kernel: Iterable[int], x: int) -> Value:
    """
    Estrutura inicial de uma família de funções para λ_V, na forma binária:
    λ(B↑)(x) = ⋁_μ λ_V(μ[B])(μ(x)) = ⋁_μ μ(x) ⊖ ⋀_{t∈B} μ(t).
    """
    ker = list(kernel)
    return vsup(trunc_sub(mu[x], vinf(mu[t] for t in ker)) for mu in functions)


def initial_structure(carrier: Carrier, functions: Sequence[Sequence[Value]]) -> CapSpace:
    table: List[Row] = [()]
    for b in carrier.nonempty_subsets():
        ker = points(b)
        table.append(tuple(initial_value(functions, ker, x) for x in range(carrier.n)))
    return CapSpace(carrier, tuple(table), Completion.EXPLICIT, "initial")


# --- torres ------------------------------------------------------------


@dataclass(frozen=True)
class Tower:
    """Camadas (ε, convergência) com ε estritamente crescente, terminando em ∞."""
    carrier: Carrier
    levels: Tuple[Tuple[Value, ConvSpace], ...]

    @property
    def thresholds(self) -> Tuple[Value, ...]:
        return tuple(eps for eps, _ in self.levels)

    def layer_at(self, eps: Value) -> ConvSpace:
        """Camada do maior limiar ≤ ε."""
        chosen = None
        for threshold, layer in self.levels:
            if threshold <= eps:
                chosen = layer
            else:
                break
        if chosen is None:
            raise InputError(f"ε={format_value(eps)} abaixo do primeiro limiar da torre")
        return chosen


def _layer(space: CapSpace, eps: Value) -> ConvSpace:
    table = [0] + [
        sum(1 << x for x in range(space.n) if space.table[b][x] <= eps)
        for b in space.carrier.nonempty_subsets()
    ]
    centered = all(space.distance(x, x) <= eps for x in range(space.n))
    return ConvSpace(space.carrier, tuple(table), centered, f"λ≤{format_value(eps)}")


def tower_extract(space: CapSpace) -> Tower:
    """Camada em ε: lim(B↑) = {x : λ(B↑)(x) ≤ ε}, em 0, em cada valor realizado e em ∞."""
    return _cached(space, "tower", lambda: Tower(
        space.carrier, tuple((eps, _layer(space, eps)) for eps in breakpoints(space))
    ))


def validate_tower(tower: Tower) -> None:
    if not tower.levels:
        raise AxiomError("tower", "torre sem camadas")
    thresholds = tower.thresholds
    if any(a >= b for a, b in zip(thresholds, thresholds[1:])):
        raise AxiomError("tower", "limiares não estritamente crescentes")
    if thresholds[-1] is not INF:
        raise AxiomError("tower", "falta a camada ∞")
    full = tower.carrier.full
    top = tower.levels[-1][1]
    if any(top.lim_table[b] != full for b in tower.carrier.nonempty_subsets()):
        raise AxiomError("tower", "camada ∞ não é antidiscreta")
    for (e1, low), (e2, high) in zip(tower.levels, tower.levels[1:]):
        if not all(is_subset(x, y) for x, y in zip(low.lim_table, high.lim_table)):
            raise AxiomError(
                "tower",
                f"camada {format_value(e1)} não é mais fina que a camada {format_value(e2)}",
            )


def tower_assemble(tower: Tower) -> CapSpace:
    """λ(B↑)(x) = menor limiar cuja camada admite x."""
    validate_tower(tower)
    carrier = tower.carrier
    table: List[Row] = [()]
    for b in carrier.nonempty_subsets():
        row = []
        for x in range(carrier.n):
            row.append(next(eps for eps, layer in tower.levels if layer.lim_table[b] >> x & 1))
        table.append(tuple(row))
    return CapSpace(carrier, tuple(table), Completion.EXPLICIT, "assembled")


def tower_is_pretopological(tower: Tower) -> bool:
    return all(is_pretopological(layer) for _, layer in tower.levels)


def tower_is_convergence(tower: Tower) -> bool:
    return all(layer.centered for _, layer in tower.levels)


def tower_diagonal_law(tower: Tower) -> bool:
    """
    Lei diagonal da torre para camadas pretopológicas: se y ∈ lim_ε 𝒮(y) para todo y
    e x ∈ lim_γ 𝓕, então x ∈ lim_{ε+γ} 𝒮(𝓕). Nos piores casos 𝒮(y) e 𝓕 são as
    vizinhanças, e basta percorrer limiares realizados.
    """
    n = tower.carrier.n
    vic = {eps: [vicinity(layer, y) for y in range(n)] for eps, layer in tower.levels}
    for eps in tower.thresholds:
        if not all(vic[eps]):
            # algum ponto sem ε-vizinhança: nenhum seletor satisfaz a premissa
            continue
        for gamma in tower.thresholds:
            target = tower.layer_at(eps + gamma)
            for x in range(n):
                contour = 0
                for t in points(vic[gamma][x]):
                    contour |= vic[eps][t]
                if contour and not target.lim_table[contour] >> x & 1:
                    return False
    return True


# --- diagonalidade e classificação ---------------------------------------


def _best_singleton(space: CapSpace) -> List[Value]:
    # c_t = ⋀_s d(s,t): o menor λ(𝒢(t))(t) possível
    return [vinf(space.distance(s, t) for s in range(space.n)) for t in range(space.n)]


def _reduced_violation(space: CapSpace, f: int, x0: int, join) -> bool:
    """
    Em espaços prap, um seletor violador pode ser tomado com 𝒢(t*) = {s*} para um
    t* ∈ f e os demais pontos mandados a um singleton ótimo.
    """
    n = space.n
    best = _best_singleton(space)
    L = space.table[f][x0]
    for t in points(f):
        others = vsup(best[u] for u in range(n) if u != t)
        for s in range(n):
            bound = join(L, max(space.distance(s, t), others))
            if space.distance(s, x0) > bound:
                return True
    return False


def _plus(a: Value, b: Value) -> Value:
    return a + b


def _vee(a: Value, b: Value) -> Value:
    return max(a, b)


def _selector_violations(space: CapSpace, f: int, join=None) -> int:
    """Força bruta sobre seletores; devolve a máscara dos x₀ violados."""
    join = join or _plus
    n = space.n
    kernels = list(space.carrier.nonempty_subsets())
    fixed = [u for u in range(n) if not f >> u & 1]
    best = _best_singleton(space)
    outside = vsup(best[u] for u in fixed)
    inside = points(f)
    total = len(kernels) ** len(inside)
    if total > SELECTOR_ENUMERATION_LIMIT:
        raise SizeLimitError(f"{total} seletores excedem o limite de enumeração")
    bad = 0
    base = space.table[f]
    for choice in product(kernels, repeat=len(inside)):
        union = 0
        rhs = outside
        for t, k in zip(inside, choice):
            union |= k
            v = space.table[k][t]
            if v > rhs:
                rhs = v
        lhs = space.table[union]
        for x0 in range(n):
            if lhs[x0] > join(base[x0], rhs):
                bad |= 1 << x0
    return bad


def filter_diagonality_points_bruteforce(space: CapSpace, f: int, join=None) -> int:
    return space.carrier.full & ~_selector_violations(space, f, join)


def is_filter_diagonal_at(space: CapSpace, f: Kernel, x0: int) -> bool:
    """x₀ é ponto de 𝓕-diagonalidade, por enumeração de seletores."""
    if not f:
        raise InputError("núcleo vazio")
    return bool(filter_diagonality_points_bruteforce(space, f) >> x0 & 1)


def reduced_diagonality_points(space: CapSpace, f: int, join=None) -> int:
    """Redução exata para espaços prap (ver _reduced_violation)."""
    join = join or _plus
    return sum(
        1 << x0 for x0 in range(space.n)
        if not _reduced_violation(space, f, x0, join)
    )


def diagonality_points(space: CapSpace, f: Kernel) -> int:
    """
    Pontos x₀ de 𝓕-diagonalidade: λ(𝒢(𝓕))(x₀) ≤ λ(𝓕)(x₀) + ⋁_t λ(𝒢(t))(t) para
    todo seletor 𝒢. Redução exata em espaços prap, enumeração caso contrário.
    """
    if not f:
        raise InputError("núcleo vazio")
    if _is_prap(space):
        return reduced_diagonality_points(space, f)
    return filter_diagonality_points_bruteforce(space, f)


def adherence_diagonality_points(space: CapSpace) -> int:
    """x₀ com adh A(x₀) ≤ adh A^(ε)(x₀) + ε para todo A e todo ε em D∪{0,∞}."""
    ok = space.carrier.full
    for A in space.carrier.subsets():
        row = adh_set(space, A)
        for eps in breakpoints(space):
            enlarged = adh_set(space, eps_enlarge(space, A, eps))
            for x0 in points(ok):
                if row[x0] > enlarged[x0] + eps:
                    ok &= ~(1 << x0)
    return ok


def _finite_depth(space: CapSpace) -> bool:
    t = space.table
    kernels = list(space.carrier.nonempty_subsets())
    return all(
        t[a | b][x] == max(t[a][x], t[b][x])
        for a in kernels for b in kernels if a < b
        for x in range(space.n)
    )


def _singleton_law(space: CapSpace) -> bool:
    return all(
        space.table[b][x] == _singleton_sup(space.table, b, x)
        for b in space.carrier.nonempty_subsets()
        for x in range(space.n)
    )


def _is_prap(space: CapSpace) -> bool:
    return _cached(space, "prap", lambda: is_centered(space) and _singleton_law(space))


@dataclass(frozen=True)
class ClassReport:
    centered: bool
    precentered: bool
    finite_depth: bool
    psap: bool
    prap: bool
    approach: bool
    non_archimedean: bool
    diagonality_points: Optional[int]

    def to_dict(self, carrier: Carrier) -> Dict:
        return {
            "centered": self.centered,
            "precentered": self.precentered,
            "finite_depth": self.finite_depth,
            "psap": self.psap,
            "prap": self.prap,
            "approach": self.approach,
            "non_archimedean": self.non_archimedean,
            "diagonality_points": (
                None if self.diagonality_points is None else carrier.labels_of(self.diagonality_points)
            ),
        }


def classify(space: CapSpace, diagonality: bool = True) -> ClassReport:
    """
    Decide cada classe por verificações finitas exatas. Centrado e pré-centrado
    são decididos duas vezes (definição direta e caracterização por A^(ε)) e as
    duas respostas precisam coincidir.
    """
    return _cached(space, ("classify", diagonality), lambda: _classify(space, diagonality))


def _classify(space: CapSpace, diagonality: bool) -> ClassReport:
    subsets = list(space.carrier.subsets())
    centered = is_centered(space)
    centered_eps = all(is_subset(A, eps_enlarge(space, A, ZERO)) for A in subsets) and all(
        is_subset(A, eps_enlarge(space, A, eps)) for A in subsets for eps in breakpoints(space)
    )
    if centered != centered_eps:
        raise InconsistencyError("caracterizações de 'centered' discordam")

    precentered = is_precentered(space)
    precentered_eps = all(
        all(adh_set(space, A)[x] is not INF for x in points(A)) for A in subsets
    )
    if precentered != precentered_eps:
        raise InconsistencyError("caracterizações de 'precentered' discordam")

    finite_depth = _finite_depth(space)
    psap = centered and _singleton_law(space)
    prap = centered and finite_depth
    if psap != prap:
        raise InconsistencyError("psap e prap deveriam coincidir em carriers finitos")

    full = space.carrier.full
    approach = prap and adherence_diagonality_points(space) == full
    non_archimedean = prap and not any(
        _reduced_violation(space, f, x0, _vee)
        for f in space.carrier.nonempty_subsets()
        for x0 in range(space.n)
    )

    diag: Optional[int] = full if diagonality else None
    try:
        for f in space.carrier.nonempty_subsets():
            if not diag:
                break
            diag &= diagonality_points(space, f)
    except SizeLimitError as exc:
        logger.info("diagonalidade não calculada: %s", exc)
        diag = None

    logger.debug("classify %s: prap=%s approach=%s", space.name or "?", prap, approach)
    return ClassReport(
        centered=centered,
        precentered=precentered,
        finite_depth=finite_depth,
        psap=psap,
        prap=prap,
        approach=approach,
        non_archimedean=non_archimedean,
        diagonality_points=diag,
    )
