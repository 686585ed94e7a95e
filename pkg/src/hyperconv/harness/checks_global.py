"""
Checks sem instância: leis da álgebra de valores, combinatória de famílias,
oráculos de fórmulas fechadas e os dois exemplos fixos (P3, Q2).
"""
from itertools import combinations, product
from random import Random

from ..cap import CapSpace, classify, embed_i
from ..conv import (
    CarrierMode,
    ConvSpace,
    closed_sets,
    hyper_carrier,
    hyper_convergence,
    is_pretopological,
    is_topological,
)
from ..document import parse_space
from ..errors import AxiomError
from ..filesystem import read_fixture
from ..frames import d_closure, lambda_lV
from ..hyper import HyperSpace, lambda_lK, lambda_uF, lambda_uK
from ..setcalc import Carrier, contour_kernel, grill, is_subset, isotone_hull, mesh, minimal_transversals
from ..values import (
    INF,
    ONE,
    ZERO,
    lambda_V_definitional,
    lambda_V_eval,
    oslash,
    parse_value,
    trunc_sub,
    vinf,
    vsup,
)
from .core import CheckOutcome, failed, passed
from .oracles import contour_literal, meshing_kernels
from .registry import check

LAW_GRID = tuple(parse_value(v) for v in ("0", "1/2", "1", "2", "inf"))
CONTOUR_SAMPLE = 60


def _small_families(carrier: Carrier):
    subsets = list(carrier.subsets())
    yield frozenset()
    for size in (1, 2):
        for combo in combinations(subsets, size):
            yield frozenset(combo)


@check("values.trunc-sub-laws", "x ⊖ y ≤ z ⟺ x ≤ y + z, com ∞ ⊖ ∞ = 0 e x ⊖ ∞ = 0", "global")
def trunc_sub_laws() -> CheckOutcome:
    fixed = [
        (INF, INF, ZERO),
        (INF, parse_value("1"), INF),
        (parse_value("1"), INF, ZERO),
        (parse_value("2"), parse_value("1/2"), parse_value("3/2")),
        (parse_value("1/2"), parse_value("2"), ZERO),
    ]
    for x, y, expected in fixed:
        got = trunc_sub(x, y)
        if got != expected:
            return failed(x=str(x), y=str(y), expected=str(expected), got=str(got))
    for x, y, z in product(LAW_GRID, repeat=3):
        if (trunc_sub(x, y) <= z) != (x <= y + z):
            return failed(law="galois", x=str(x), y=str(y), z=str(z))
    return passed()


@check(
    "values.oslash-laws",
    "x ⊘ ∞ = 0, x ⊘ 0 = ∞ (x > 0), x ⊘ y ≤ z ⟺ x ≤ y·z, 1⊘⋀A = ⋁(1⊘a) e 1⊘x ≤ y ⟺ 1⊘y ≤ x",
    "global",
)
def oslash_laws() -> CheckOutcome:
    finite = [v for v in LAW_GRID if v is not INF]
    positive = [v for v in finite if v > 0]
    for x in finite:
        if oslash(x, INF) != ZERO:
            return failed(law="inf", x=str(x))
        if x > 0 and oslash(x, ZERO) is not INF:
            return failed(law="zero", x=str(x))
    for x, y, z in product(finite, positive, positive):
        if (oslash(x, y) <= z) != (x <= y * z):
            return failed(law="galois", x=str(x), y=str(y), z=str(z))
    for x, y in product(LAW_GRID, repeat=2):
        if (oslash(ONE, x) <= y) != (oslash(ONE, y) <= x):
            return failed(law="involução", x=str(x), y=str(y))
    for size in range(1, len(LAW_GRID) + 1):
        for A in combinations(LAW_GRID, size):
            if oslash(ONE, vinf(A)) != vsup(oslash(ONE, a) for a in A):
                return failed(law="ínfimo", A=[str(a) for a in A])
    return passed()


@check("oracle.lambda-V", "λ_V no núcleo finito K = v ⊖ min K, contra todas as famílias que malham", "global")
def lambda_V_oracle() -> CheckOutcome:
    for size in range(1, len(LAW_GRID) + 1):
        for kernel in combinations(LAW_GRID, size):
            for v in LAW_GRID:
                fast = lambda_V_eval(kernel, v)
                slow = lambda_V_definitional(kernel, v, LAW_GRID)
                if fast != slow:
                    return failed(kernel=[str(k) for k in kernel], v=str(v), fast=str(fast), slow=str(slow))
    return passed()


@check("setcalc.grill-mesh-laws", "B ∈ 𝒜^# ⟺ {B} # 𝒜, 𝒜^## = 𝒜^↑ e 𝒜 # ℬ ⟺ ℬ ⊆ 𝒜^#", "global")
def grill_mesh_laws() -> CheckOutcome:
    carrier = Carrier(("a", "b", "c"))
    families = list(_small_families(carrier))
    for fam in families:
        g = grill(fam, carrier)
        if g != frozenset(b for b in carrier.subsets() if mesh([b], fam)):
            return failed(law="grill", family=sorted(fam))
        if grill(g, carrier) != isotone_hull(fam, carrier):
            return failed(law="double-grill", family=sorted(fam))
    for fa, fb in product(families[:20], families):
        if mesh(fa, fb) != fb.issubset(grill(fa, carrier)):
            return failed(law="mesh", a=sorted(fa), b=sorted(fb))
    return passed()


@check("oracle.min-transversals", "transversais minimais = minimais entre todos os núcleos que malham", "global")
def transversals_oracle() -> CheckOutcome:
    carrier = Carrier(("a", "b", "c"))
    for fam in _small_families(carrier):
        ks = meshing_kernels(fam, carrier)
        minimal = frozenset(k for k in ks if not any(j != k and is_subset(j, k) for j in ks))
        fast = minimal_transversals(fam, carrier)
        if fast != minimal:
            return failed(family=sorted(fam), fast=sorted(fast), slow=sorted(minimal))
    return passed()


@check("oracle.contour", "núcleo de 𝒢(𝓕) = ⋃_{t∈f} g(t), contra a construção membro a membro", "global")
def contour_oracle() -> CheckOutcome:
    cases = []
    two = Carrier(("a", "b"))
    for g in product(two.nonempty_subsets(), repeat=2):
        cases.extend((two, g, f) for f in two.nonempty_subsets())
    three = Carrier(("a", "b", "c"))
    rng = Random("contour")
    for _ in range(CONTOUR_SAMPLE):
        g = tuple(rng.choice(three.nonempty_subsets()) for _ in range(3))
        cases.append((three, g, rng.choice(three.nonempty_subsets())))
    for carrier, g, f in cases:
        fast = contour_kernel(g, f)
        slow = contour_literal(g, f, carrier)
        if fast != slow:
            return failed(g=[carrier.labels_of(s) for s in g], f=carrier.labels_of(f),
                          fast=carrier.labels_of(fast), slow=carrier.labels_of(slow))
    return passed()


@check("fixtures.p3-reproduction", "P3: fechados {∅,{c},{b,c},X}; para 𝒜={{a}}, lim_lK ∩ 𝒞 = {∅} e 𝒞 ⊆ lim_lV", "global")
def p3_reproduction() -> CheckOutcome:
    p3 = parse_space(read_fixture("P3"))
    carrier = p3.carrier
    a, b, c = (carrier.mask([lab]) for lab in ("a", "b", "c"))
    closed = set(closed_sets(p3))
    if closed != {0, c, b | c, carrier.full}:
        return failed(closed=sorted(carrier.labels_of(s) for s in closed))
    if not is_pretopological(p3) or is_topological(p3):
        return failed(reason="P3 deveria ser pretopológico e não topológico")

    hc = hyper_carrier(p3, CarrierMode.ALL)
    m = hc.encode([a])
    lim_lK = hc.decode(hyper_convergence(p3, "lK", CarrierMode.ALL).lim_table[m])
    if {A for A in lim_lK if A in closed} != {0}:
        return failed(lim_lK=sorted(carrier.labels_of(A) for A in lim_lK))
    lim_lV = hc.decode(hyper_convergence(p3, "lV", CarrierMode.ALL).lim_table[m])
    if not closed <= lim_lV:
        return failed(lim_lV=sorted(carrier.labels_of(A) for A in lim_lV))

    h = HyperSpace(embed_i(p3), CarrierMode.ALL)
    F = h.filter([a])
    lk, lv = lambda_lK(h, F, c), lambda_lV(h, F, c)
    if lk is not INF or lv != ZERO:
        return failed(lambda_lK=str(lk), lambda_lV=str(lv))
    return passed()


@check("fixtures.q2-values", "Q2: λ_uK({{0}})({0}) = 1, λ_lK({{0}})({1}) = 1, λ_uF({{0}})(∅) = ∞, approach", "global")
def q2_values() -> CheckOutcome:
    q2 = parse_space(read_fixture("Q2"))
    zero, one = q2.carrier.mask(["0"]), q2.carrier.mask(["1"])
    h = HyperSpace(q2)
    F = h.filter([zero])
    values = {
        "uK": lambda_uK(h, F, zero),
        "lK": lambda_lK(h, F, one),
        "uF": lambda_uF(h, F, 0),
    }
    expected = {"uK": parse_value("1"), "lK": parse_value("1"), "uF": INF}
    if values != expected:
        return failed(values={k: str(v) for k, v in values.items()})
    if not classify(q2).approach:
        return failed(reason="Q2 deveria ser approach")
    D = d_closure(q2)
    if any(D[t][x] != q2.distance(t, x) for t in range(q2.n) for x in range(q2.n)):
        return failed(reason="fecho min-plus difere de d")
    return passed()


@check("validators.monotone", "tabelas não monótonas são rejeitadas citando o axioma 'monotone'", "global")
def monotone_validators() -> CheckOutcome:
    carrier = Carrier(("a", "b"))
    attempts = {
        "conv": lambda: ConvSpace(carrier, (0, 0b01, 0b10, 0b11)),
        "cap": lambda: CapSpace(carrier, ((), (ZERO, parse_value("1")), (parse_value("1"), ZERO), (ZERO, ZERO))),
    }
    for kind, build in attempts.items():
        try:
            build()
        except AxiomError as exc:
            if exc.axiom != "monotone":
                return failed(kind=kind, axiom=exc.axiom)
        else:
            return failed(kind=kind, reason="tabela não monótona aceita")
    return passed()
