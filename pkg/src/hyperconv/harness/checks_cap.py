"""
Checks sobre a estrutura CAP da instância (o próprio espaço, ou i(ξ)).
"""
from itertools import combinations
from random import Random

from ..cap import (
    _plus,
    _vee,
    adh_cap,
    adh_set,
    adherence_diagonality_points,
    breakpoints,
    classify,
    coreflect_c,
    embed_i,
    eps_enlarge,
    filter_diagonality_points_bruteforce,
    is_centered,
    is_precentered,
    reduced_diagonality_points,
    reflect_r,
    tower_assemble,
    tower_diagonal_law,
    tower_extract,
    tower_is_convergence,
    tower_is_pretopological,
    validate_tower,
)
from ..conv import adh_conv, closed_sets, is_finer
from ..frames import d_closure, is_contraction, is_contraction_definitional, theta, value_grid
from ..setcalc import is_subset, points
from ..values import INF, ONE, ZERO, format_value
from .core import CheckOutcome, Instance, failed, passed, replay, unmet
from .oracles import adh_cap_definitional, adh_conv_definitional
from .registry import check

CONTRACTION_SAMPLE = 20
DIAGONALITY_ORACLE_MAX_N = 3


def _families(inst: Instance):
    """Famílias de teste: cada subconjunto não vazio e cada par deles."""
    nonempty = list(inst.cap.carrier.nonempty_subsets())
    for A in nonempty:
        yield (A,)
    yield from combinations(nonempty, 2)


def _finite_breakpoints(space):
    return [eps for eps in breakpoints(space) if eps is not INF]


@check("cap.classify-characterizations", "as duas caracterizações de centrado e pré-centrado coincidem; psap = prap", "cap")
def classify_characterizations(inst: Instance) -> CheckOutcome:
    classify(inst.cap, diagonality=False)
    return passed()


@check("cap.tower-round-trip", "λ = assemble(extract(λ)) exatamente, e a torre extraída é válida", "cap")
def tower_round_trip(inst: Instance) -> CheckOutcome:
    tower = tower_extract(inst.cap)
    validate_tower(tower)
    if tower_assemble(tower).table != inst.cap.table:
        return failed(**replay(inst))
    return passed()


@check("cap.tower-classes", "camadas pretopológicas e centradas ⟺ λ prap", "cap")
def tower_classes(inst: Instance) -> CheckOutcome:
    tower = tower_extract(inst.cap)
    layered = tower_is_pretopological(tower) and tower_is_convergence(tower)
    prap = classify(inst.cap, diagonality=False).prap
    if layered != prap:
        return failed(**replay(inst, layered=layered, prap=prap))
    return passed()


@check("cap.tower-diagonal", "λ prap: lei diagonal da torre ⟺ λ approach", "cap")
def tower_diagonal(inst: Instance) -> CheckOutcome:
    report = classify(inst.cap, diagonality=False)
    if not report.prap:
        return unmet("não prap")
    law = tower_diagonal_law(tower_extract(inst.cap))
    if law != report.approach:
        return failed(**replay(inst, tower_law=law, approach=report.approach))
    return passed()


@check("cap.two-diagonal-axioms", "λ prap: 𝓕-diagonal em todo ponto para todo 𝓕 ⟺ diagonal de aderência em todo ponto", "cap")
def two_diagonal_axioms(inst: Instance) -> CheckOutcome:
    space = inst.cap
    report = classify(space)
    if not report.prap:
        return unmet("não prap")
    full = space.carrier.full
    by_filters = report.diagonality_points == full
    by_adherence = adherence_diagonality_points(space) == full
    if by_filters != by_adherence:
        return failed(**replay(inst, filters=by_filters, adherence=by_adherence))
    return passed()


@check("oracle.diagonality-reduction", "λ prap: redução a seletores singulares = enumeração de seletores (+ e ∨)", "cap")
def diagonality_reduction(inst: Instance) -> CheckOutcome:
    space = inst.cap
    if space.n > DIAGONALITY_ORACLE_MAX_N:
        return unmet("carrier grande demais para enumerar seletores")
    if not classify(space, diagonality=False).prap:
        return unmet("não prap")
    for f in space.carrier.nonempty_subsets():
        for join in (_plus, _vee):
            fast = reduced_diagonality_points(space, f, join)
            slow = filter_diagonality_points_bruteforce(space, f, join)
            if fast != slow:
                return failed(**replay(
                    inst, join=join.__name__.strip("_"),
                    kernel=space.carrier.labels_of(f),
                    fast=space.carrier.labels_of(fast),
                    slow=space.carrier.labels_of(slow),
                ))
    return passed()


@check("cap.tower-adherence", "A^(ε) = adh_{λ_ε} A e {adh 𝒜 ≤ ε} = adh_{λ_ε} 𝒜", "cap")
def tower_adherence(inst: Instance) -> CheckOutcome:
    space = inst.cap
    tower = tower_extract(space)
    for eps in breakpoints(space):
        layer = tower.layer_at(eps)
        for family in _families(inst):
            row = adh_cap(space, family)
            below = sum(1 << x for x in range(space.n) if row[x] <= eps)
            if below != adh_conv(layer, family):
                return failed(**replay(inst, eps=format_value(eps),
                                       family=[space.carrier.labels_of(A) for A in family]))
            if len(family) == 1 and eps_enlarge(space, family[0], eps) != below:
                return failed(**replay(inst, A=family[0], eps=format_value(eps)))
    return passed()


@check("cap.adherence-attainment", "λ prap: adh 𝓕(x) = λ({t}↑)(x) para algum t do núcleo", "cap")
def adherence_attainment(inst: Instance) -> CheckOutcome:
    space = inst.cap
    if not classify(space, diagonality=False).prap:
        return unmet("não prap")
    for family in _families(inst):
        row = adh_cap(space, family)
        union = 0
        for A in family:
            union |= A
        for x in range(space.n):
            if all(space.table[1 << t][x] != row[x] for t in points(union)):
                return failed(**replay(
                    inst, family=[space.carrier.labels_of(A) for A in family],
                    x=space.carrier.labels[x], adherence=format_value(row[x]),
                ))
    return passed()


@check("cap.r-c-adherence", "adh_{r(λ)} A = {adh A < ∞} e adh_{c(λ)} A = {adh A = 0}", "cap")
def r_c_adherence(inst: Instance) -> CheckOutcome:
    space = inst.cap
    r, c = reflect_r(space), coreflect_c(space)
    for A in space.carrier.nonempty_subsets():
        row = adh_set(space, A)
        finite = sum(1 << x for x in range(space.n) if row[x] is not INF)
        zero = sum(1 << x for x in range(space.n) if row[x] == ZERO)
        if adh_conv(r, [A]) != finite:
            return failed(**replay(inst, A=A, reflection="r"))
        if adh_conv(c, [A]) != zero:
            return failed(**replay(inst, A=A, reflection="c"))
    return passed()


@check("cap.closed-enlargement", "λ centrado: A r-fechado ⟺ A^(ε) = A para ε finito; λ prap: A c-fechado ⟺ A^(0) = A", "cap")
def closed_enlargement(inst: Instance) -> CheckOutcome:
    space = inst.cap
    if not is_centered(space):
        return unmet("não centrado")
    rclosed = set(closed_sets(reflect_r(space)))
    finite = _finite_breakpoints(space)
    for A in space.carrier.subsets():
        stable = all(eps_enlarge(space, A, eps) == A for eps in finite)
        if stable != (A in rclosed):
            return failed(**replay(inst, A=A, reflection="r"))
    if classify(space, diagonality=False).prap:
        cclosed = set(closed_sets(coreflect_c(space)))
        for A in space.carrier.subsets():
            if (eps_enlarge(space, A, ZERO) == A) != (A in cclosed):
                return failed(**replay(inst, A=A, reflection="c"))
    return passed()


@check("cap.enlargement-lemma", "λ approach: (A^(ε))^(γ) ⊆ A^(ε+γ)", "cap")
def enlargement_lemma(inst: Instance) -> CheckOutcome:
    space = inst.cap
    if not classify(space, diagonality=False).approach:
        return unmet("não approach")
    bps = breakpoints(space)
    for A in space.carrier.subsets():
        for eps in bps:
            inner = eps_enlarge(space, A, eps)
            for gamma in bps:
                if not is_subset(eps_enlarge(space, inner, gamma), eps_enlarge(space, A, eps + gamma)):
                    return failed(**replay(inst, A=A, eps=format_value(eps), gamma=format_value(gamma)))
    return passed()


def remark_sets(space, B, eps):
    """({adh B < ε})^(0) e {adh B ≤ ε}."""
    row = adh_set(space, B)
    strict = sum(1 << x for x in range(space.n) if row[x] < eps)
    loose = sum(1 << x for x in range(space.n) if row[x] <= eps)
    return eps_enlarge(space, strict, ZERO), loose


def remark_thresholds(space):
    """Limiares positivos: pontos de quebra, pontos médios e max + 1."""
    finite = [e for e in _finite_breakpoints(space) if e > 0]
    mids = [(a + b) / 2 for a, b in zip([ZERO] + finite, finite)]
    top = [finite[-1] + ONE] if finite else [ONE]
    return sorted(set(finite) | set(mids) | set(top)) + [INF]


@check("cap.remark-inclusion", "λ approach: {adh 𝓕 < ε}^(0) ⊆ {adh 𝓕 ≤ ε}", "cap")
def remark_inclusion(inst: Instance) -> CheckOutcome:
    space = inst.cap
    if not classify(space, diagonality=False).approach:
        return unmet("não approach")
    for B in space.carrier.nonempty_subsets():
        for eps in remark_thresholds(space):
            closed_strict, loose = remark_sets(space, B, eps)
            if not is_subset(closed_strict, loose):
                return failed(**replay(inst, A=B, eps=format_value(eps)))
    return passed()


@check("cap.theta-contraction", "θ_A é contração ⟺ A r-fechado; λ centrado e A r-fechado ⟹ adh A = θ_A", "cap")
def theta_contraction(inst: Instance) -> CheckOutcome:
    space = inst.cap
    rclosed = set(closed_sets(reflect_r(space)))
    centered = is_centered(space)
    for A in space.carrier.subsets():
        th = theta(A, space.n)
        if is_contraction(space, th) != (A in rclosed):
            return failed(**replay(inst, A=A, law="contração"))
        if centered and A in rclosed and adh_set(space, A) != th:
            return failed(**replay(inst, A=A, law="aderência"))
    return passed()


@check("cap.centered-lemmas", "centrado ⟺ A ⊆ A^(0) para todo A; pré-centrado ⟺ r(λ) centrado", "cap")
def centered_lemmas(inst: Instance) -> CheckOutcome:
    space = inst.cap
    by_enlargement = all(is_subset(A, eps_enlarge(space, A, ZERO)) for A in space.carrier.subsets())
    if is_centered(space) != by_enlargement:
        return failed(**replay(inst, law="centrado"))
    r = reflect_r(space)
    r_centered = all(r.lim_table[1 << x] >> x & 1 for x in range(space.n))
    if is_precentered(space) != bool(r_centered):
        return failed(**replay(inst, law="pré-centrado"))
    return passed()


@check("cap.embedding-round-trip", "c(i(ξ)) = r(i(ξ)) = ξ, com os mesmos fechados", "conv")
def embedding_round_trip(inst: Instance) -> CheckOutcome:
    xi = inst.conv
    embedded = embed_i(xi)
    for label, back in (("c", coreflect_c(embedded)), ("r", reflect_r(embedded))):
        if back.lim_table != xi.lim_table:
            return failed(**replay(inst, reflection=label))
    if closed_sets(coreflect_c(embedded)) != closed_sets(xi):
        return failed(**replay(inst, law="fechados"))
    return passed()


@check("cap.c-finer-than-r", "c(λ) ≥ r(λ)", "cap")
def c_finer_than_r(inst: Instance) -> CheckOutcome:
    if not is_finer(coreflect_c(inst.cap), reflect_r(inst.cap)):
        return failed(**replay(inst))
    return passed()


@check("oracle.adh-cap", "aderência CAP por transversais minimais = ínfimo sobre todos os núcleos que malham", "cap")
def adh_cap_oracle(inst: Instance) -> CheckOutcome:
    space = inst.cap
    for family in _families(inst):
        if adh_cap(space, family) != adh_cap_definitional(space, family):
            return failed(**replay(inst, family=[space.carrier.labels_of(A) for A in family]))
    return passed()


@check("oracle.adh-conv", "aderência de convergência por transversais minimais = união sobre todos os núcleos que malham", "cap")
def adh_conv_oracle(inst: Instance) -> CheckOutcome:
    xi = inst.conv if inst.conv is not None else coreflect_c(inst.cap)
    for family in _families(inst):
        if adh_conv(xi, family) != adh_conv_definitional(xi, family):
            return failed(**replay(inst, family=[xi.carrier.labels_of(A) for A in family]))
    return passed()


@check("oracle.breakpoints", "A^(ε) só muda em D ∪ {0,∞}: pontos médios e max+1 repetem o ponto de quebra abaixo", "cap")
def breakpoints_oracle(inst: Instance) -> CheckOutcome:
    space = inst.cap
    finite = _finite_breakpoints(space)
    samples = [((a + b) / 2, a) for a, b in zip(finite, finite[1:])]
    samples.append((finite[-1] + ONE, finite[-1]))
    for A in space.carrier.subsets():
        for sample, below in samples:
            if eps_enlarge(space, A, sample) != eps_enlarge(space, A, below):
                return failed(**replay(inst, A=A, eps=format_value(sample)))
    return passed()


@check("oracle.contraction", "μ(x) ⊖ μ(t) ≤ d(t,x) ⟺ λ_V(μ[B↑])(μ(x)) ≤ λ(B↑)(x) para todo B", "cap")
def contraction_oracle(inst: Instance) -> CheckOutcome:
    space = inst.cap
    grid = value_grid(space)
    rng = Random(f"{inst.seed}/contraction")
    candidates = [theta(A, space.n) for A in space.carrier.subsets()]
    candidates += [tuple(rng.choice(grid) for _ in range(space.n)) for _ in range(CONTRACTION_SAMPLE)]
    for mu in candidates:
        if is_contraction(space, mu) != is_contraction_definitional(space, mu):
            return failed(**replay(inst, mu=[format_value(v) for v in mu]))
    return passed()


@check("cap.d-closure", "D ≤ d, D(x,x) = 0, D satisfaz a desigualdade triangular; D = d em espaços approach", "cap")
def d_closure_laws(inst: Instance) -> CheckOutcome:
    space = inst.cap
    D = d_closure(space)
    n = space.n
    for t in range(n):
        if D[t][t] != ZERO:
            return failed(**replay(inst, law="diagonal", point=space.carrier.labels[t]))
        for x in range(n):
            if D[t][x] > space.distance(t, x):
                return failed(**replay(inst, law="D ≤ d"))
            if any(D[t][x] > D[t][k] + D[k][x] for k in range(n)):
                return failed(**replay(inst, law="triangular"))
    if classify(space, diagonality=False).approach:
        if any(D[t][x] != space.distance(t, x) for t in range(n) for x in range(n)):
            return failed(**replay(inst, law="D = d"))
    return passed()
