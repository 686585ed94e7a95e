"""
Checks sobre as estruturas de hiperespaço (Kuratowski, Fell, Vietoris, 𝓛_uF).

Estruturas baratas usam a tabela inteira quando a instância é exaustiva; as
de frame (lV, uV, LuF, F) usam uma amostra de filtros, exceto em instâncias
conv, cuja grade de valores é {0, ∞}.
"""
from itertools import combinations, product
from typing import Dict, Optional

from ..cap import (
    CapSpace,
    Row,
    breakpoints,
    classify,
    coreflect_c,
    diagonality_points,
    is_centered,
    reflect_r,
)
from ..config import FRAME_FILTER_SAMPLE, LITERAL_FILTER_SAMPLE, ORACLE_FILTER_SAMPLE, ORACLE_GRID_LIMIT
from ..conv import CarrierMode, adh_conv, closed_sets, hyper_convergence, is_pretopological
from ..errors import SizeLimitError
from ..frames import compact_closed_sets
from ..hyper import Structure, evaluate, hyper_cap, hyper_cut, hyper_tower
from ..setcalc import erect, is_subset, points, rdc
from ..values import INF, ZERO, format_value
from .core import CheckOutcome, Instance, failed, passed, replay, unmet
from .oracles import (
    family_unions,
    frame_members,
    frame_sup_LuF,
    frame_sup_lower,
    frame_sup_upper,
    lambda_lK_literal,
    lambda_uK_literal,
    lower_adherence_literal,
    oracle_grid,
    reduction_literal,
    upper_adherence_literal,
)
from .registry import check

CLOSED = CarrierMode.CLOSED

# enumeração literal de famílias de pontos do hiperespaço: 2^pontos
LITERAL_MAX_POINTS = 8
ORACLE_MAX_N = 3
# famílias dirigidas enumeradas por completo
DIRECTED_MAX_POINTS = 4
DIRECTED_MAX_MEMBERS = 3


def _frame_sample(inst: Instance) -> Optional[int]:
    return None if inst.conv is not None else FRAME_FILTER_SAMPLE


def _require_literal(inst: Instance, mode: CarrierMode = CLOSED) -> None:
    size = inst.hyper(mode).carrier.size
    if size > LITERAL_MAX_POINTS:
        raise SizeLimitError(f"{size} pontos no hiperespaço: enumeração literal acima de {LITERAL_MAX_POINTS}")


def _first_violation(
    inst: Instance,
    big: Dict[int, Row],
    small: Dict[int, Row],
    equal: bool = False,
) -> Optional[Dict]:
    """Primeiro (filtro, ponto) com big < small (ou big ≠ small se `equal`)."""
    h = inst.hyper(CLOSED)
    for m, row in big.items():
        for i, (b, s) in enumerate(zip(row, small[m])):
            if b < s or (equal and b != s):
                return replay(inst, CLOSED, m, h.sets[i], values=[format_value(b), format_value(s)])
    return None


@check("hyper.grill-reduction", "B∩⋃𝒜 ≠ ∅ ⟺ B⁻ ∩ 𝒜 ≠ ∅; B malha rdc 𝔉^# ⟺ 𝒜 ⊆ B⁻", "hyper")
def grill_reduction(inst: Instance) -> CheckOutcome:
    _require_literal(inst)
    h = inst.hyper(CLOSED)
    hc = h.carrier
    unions = family_unions(hc)
    minus = {B: hc.encode(C for C in hc.sets if C & B) for B in inst.cap.carrier.subsets()}
    for m in inst.filters(CLOSED, LITERAL_FILTER_SAMPLE):
        R = rdc(hc.decode(m))
        hit = [unions[k] for k in range(1, 1 << hc.size) if k & m]
        for B, B_minus in minus.items():
            if bool(B & R) != bool(B_minus & m):
                return failed(**replay(inst, CLOSED, m, B, part="união"))
            if all(B & u for u in hit) != is_subset(m, B_minus):
                return failed(**replay(inst, CLOSED, m, B, part="grelha"))
    return passed()


@check("hyper.erected-meet", "para F, G fechados: e(F)∖{∅} e e(G)∖{∅} se intersectam ⟺ F∩G ≠ ∅", "hyper")
def erected_meet(inst: Instance) -> CheckOutcome:
    closed = inst.hyper(CLOSED).sets
    erected = {F: erect(F, closed) - {0} for F in closed}
    for F in closed:
        for G in closed:
            if bool(erected[F] & erected[G]) != bool(F & G):
                return failed(**replay(inst, A=F, G=inst.cap.carrier.labels_of(G)))
    return passed()


@check("oracle.hyper-kuratowski", "rdc, λ_uK e λ_lK contra a construção literal de rdc 𝔉 e rdc 𝔉^#", "hyper")
def kuratowski_oracle(inst: Instance) -> CheckOutcome:
    _require_literal(inst)
    h = inst.hyper(CLOSED)
    hc = h.carrier
    unions = family_unions(hc)
    uk = inst.values(Structure.UK, CLOSED, LITERAL_FILTER_SAMPLE)
    lk = inst.values(Structure.LK, CLOSED, LITERAL_FILTER_SAMPLE)
    for m in inst.filters(CLOSED, LITERAL_FILTER_SAMPLE):
        if reduction_literal(hc, m, unions) != inst.filter(CLOSED, m).reduction:
            return failed(**replay(inst, CLOSED, m, part="rdc"))
        upper = upper_adherence_literal(inst.cap, hc, m, unions)
        lower = lower_adherence_literal(inst.cap, hc, m, unions)
        for i, A in enumerate(hc.sets):
            if lambda_uK_literal(upper, A) != uk[m][i]:
                return failed(**replay(inst, CLOSED, m, A, structure="uK"))
            if lambda_lK_literal(lower, A) != lk[m][i]:
                return failed(**replay(inst, CLOSED, m, A, structure="lK"))
    return passed()


@check("hyper.monotonicity", "A ⊆ B ⟹ λ_uK 𝔉(B) ≤ λ_uK 𝔉(A) e λ_lK 𝔉(A) ≤ λ_lK 𝔉(B)", "hyper")
def monotonicity(inst: Instance) -> CheckOutcome:
    h = inst.hyper(CLOSED)
    sets = h.sets
    pairs = [(i, j) for i, A in enumerate(sets) for j, B in enumerate(sets) if i != j and is_subset(A, B)]
    uk = inst.values(Structure.UK, CLOSED)
    lk = inst.values(Structure.LK, CLOSED)
    for m in uk:
        for i, j in pairs:
            if uk[m][j] > uk[m][i]:
                return failed(**replay(inst, CLOSED, m, sets[i], structure="uK", superset=h.base.carrier.labels_of(sets[j])))
            if lk[m][i] > lk[m][j]:
                return failed(**replay(inst, CLOSED, m, sets[i], structure="lK", superset=h.base.carrier.labels_of(sets[j])))
    return passed()


@check("hyper.structure-lK", "λ_lK é uma estrutura CAP monótona, centrada quando λ é centrado", "hyper")
def structure_lk(inst: Instance) -> CheckOutcome:
    if not inst.exhaustive_hyper:
        return unmet("filtros amostrados")
    table = hyper_cap(inst.hyper(CLOSED), Structure.LK)
    if is_centered(inst.cap) and not is_centered(table):
        return failed(**replay(inst, CLOSED))
    return passed()


@check("hyper.K-is-max", "λ_K = λ_uK ∨ λ_lK", "hyper")
def k_is_max(inst: Instance) -> CheckOutcome:
    uk = inst.values(Structure.UK, CLOSED)
    lk = inst.values(Structure.LK, CLOSED)
    k = inst.values(Structure.K, CLOSED)
    joined = {m: tuple(max(a, b) for a, b in zip(uk[m], lk[m])) for m in uk}
    witness = _first_violation(inst, k, joined, equal=True)
    return failed(**witness) if witness else passed()


@check("hyper.approach-lK", "λ approach ⟹ λ_lK approach", "hyper")
def approach_lk(inst: Instance) -> CheckOutcome:
    if not inst.exhaustive_hyper:
        return unmet("filtros amostrados")
    if not classify(inst.cap, diagonality=False).approach:
        return unmet("base não approach")
    if not classify(hyper_cap(inst.hyper(CLOSED), Structure.LK), diagonality=False).approach:
        return failed(**replay(inst, CLOSED))
    return passed()


@check("hyper.non-archimedean-uF", "λ_uF é não arquimediano", "hyper")
def non_archimedean_uf(inst: Instance) -> CheckOutcome:
    if not inst.exhaustive_hyper:
        return unmet("filtros amostrados")
    if not classify(hyper_cap(inst.hyper(CLOSED), Structure.UF), diagonality=False).non_archimedean:
        return failed(**replay(inst, CLOSED))
    return passed()


@check(
    "hyper.co-reflection",
    "c(λ_lK) = lim_lK c(λ), c(λ_uK) = lim_uK r(λ), r(λ_lK) = lim_lK r(λ); prap: r(λ_uK) = lim_uK c(λ); "
    "i(ξ): c(λ_K) = r(λ_K) = lim_K ξ",
    "hyper",
)
def co_reflection(inst: Instance) -> CheckOutcome:
    if not inst.exhaustive_hyper:
        return unmet("filtros amostrados")
    mode = CarrierMode.ALL
    h = inst.hyper(mode)
    c, r = coreflect_c(inst.cap), reflect_r(inst.cap)
    uk, lk = hyper_cap(h, Structure.UK), hyper_cap(h, Structure.LK)
    statements = [
        ("c(λ_lK)", coreflect_c(lk), hyper_convergence(c, "lK", mode)),
        ("c(λ_uK)", coreflect_c(uk), hyper_convergence(r, "uK", mode)),
        ("r(λ_lK)", reflect_r(lk), hyper_convergence(r, "lK", mode)),
    ]
    if classify(inst.cap, diagonality=False).prap:
        statements.append(("r(λ_uK)", reflect_r(uk), hyper_convergence(c, "uK", mode)))
    if inst.conv is not None:
        k = hyper_cap(h, Structure.K)
        lim_k = hyper_convergence(inst.conv, "K", mode)
        statements += [("c(λ_K)", coreflect_c(k), lim_k), ("r(λ_K)", reflect_r(k), lim_k)]
    for label, got, expected in statements:
        if got.lim_table != expected.lim_table:
            return failed(**replay(inst, mode, statement=label))
    return passed()


@check("hyper.uK-ge-uF", "λ_uK ≥ λ_uF", "hyper")
def uk_ge_uf(inst: Instance) -> CheckOutcome:
    witness = _first_violation(inst, inst.values(Structure.UK, CLOSED), inst.values(Structure.UF, CLOSED))
    return failed(**witness) if witness else passed()


@check("hyper.lK-ge-lV", "λ_lK ≥ λ_lV, com igualdade quando λ é approach", "hyper")
def lk_ge_lv(inst: Instance) -> CheckOutcome:
    sample = _frame_sample(inst)
    lk = inst.values(Structure.LK, CLOSED, sample)
    lv = inst.values(Structure.LV, CLOSED, sample)
    approach = classify(inst.cap, diagonality=False).approach
    witness = _first_violation(inst, lk, lv, equal=approach)
    return failed(**witness) if witness else passed()


@check("hyper.uF-ge-LuF", "λ_uF ≥ estrutura 𝓛_uF", "hyper")
def uf_ge_luf(inst: Instance) -> CheckOutcome:
    sample = _frame_sample(inst)
    witness = _first_violation(
        inst, inst.values(Structure.UF, CLOSED, sample), inst.values(Structure.LUF, CLOSED, sample)
    )
    return failed(**witness) if witness else passed()


@check("hyper.K-ge-Fbar-ge-F", "λ_K ≥ λ_F̄ ≥ λ_F", "hyper")
def k_ge_fbar_ge_f(inst: Instance) -> CheckOutcome:
    sample = _frame_sample(inst)
    k = inst.values(Structure.K, CLOSED, sample)
    fbar = inst.values(Structure.FBAR, CLOSED, sample)
    f = inst.values(Structure.F, CLOSED, sample)
    witness = _first_violation(inst, k, fbar) or _first_violation(inst, fbar, f)
    return failed(**witness) if witness else passed()


@check(
    "hyper.principal-zero",
    "no filtro principal de A: λ_uF, λ_lV, λ_uV, 𝓛_uF valem 0; λ_lK vale 0 se λ é centrado; "
    "λ_uK(A) = 0 ⟺ A r-fechado; λ centrado: λ_K(A) = 0 ⟺ A r-fechado",
    "hyper",
)
def principal_zero(inst: Instance) -> CheckOutcome:
    h = inst.hyper(CLOSED)
    centered = is_centered(inst.cap)
    rclosed = set(closed_sets(reflect_r(inst.cap)))
    always = (Structure.UF, Structure.LV, Structure.UV, Structure.LUF)
    for i, A in enumerate(h.sets):
        F = inst.filter(CLOSED, 1 << i)
        for structure in always:
            if evaluate(h, structure, F, A) != ZERO:
                return failed(**replay(inst, CLOSED, 1 << i, A, structure=structure.value))
        if centered and evaluate(h, Structure.LK, F, A) != ZERO:
            return failed(**replay(inst, CLOSED, 1 << i, A, structure="lK"))
        if (evaluate(h, Structure.UK, F, A) == ZERO) != (A in rclosed):
            return failed(**replay(inst, CLOSED, 1 << i, A, structure="uK"))
        if centered and (evaluate(h, Structure.K, F, A) == ZERO) != (A in rclosed):
            return failed(**replay(inst, CLOSED, 1 << i, A, structure="K"))
    return passed()


@check("oracle.frame-structures", "λ_lV, λ_uV e 𝓛_uF por cones = supremo sobre todas as contrações com valores na grade", "hyper")
def frame_oracle(inst: Instance) -> CheckOutcome:
    base: CapSpace = inst.cap
    grid = oracle_grid(base)
    if base.n > ORACLE_MAX_N or len(grid) > ORACLE_GRID_LIMIT:
        return unmet("grade de oráculo grande demais")
    members = frame_members(base, grid)
    compact = compact_closed_sets(base)
    h = inst.hyper(CLOSED)
    lv = inst.values(Structure.LV, CLOSED, ORACLE_FILTER_SAMPLE)
    uv = inst.values(Structure.UV, CLOSED, ORACLE_FILTER_SAMPLE)
    luf = inst.values(Structure.LUF, CLOSED, ORACLE_FILTER_SAMPLE)
    for m in lv:
        family = h.carrier.decode(m)
        for i, A in enumerate(h.sets):
            expected = {
                "lV": (lv[m][i], frame_sup_lower(members, family, A)),
                "uV": (uv[m][i], frame_sup_upper(members, family, A)),
                "LuF": (luf[m][i], frame_sup_LuF(members, compact, family, A)),
            }
            for label, (fast, slow) in expected.items():
                if fast != slow:
                    return failed(**replay(inst, CLOSED, m, A, structure=label,
                                           values=[format_value(fast), format_value(slow)]))
    return passed()


@check("hyper.directed-family", "(𝔉_A) dirigida em 𝒞_{c(λ)}: λ_uK(⋁𝔉_A)(⋂𝒜) ≤ ⋁ λ_uK(𝔉_A)(A)", "hyper")
def directed_family(inst: Instance) -> CheckOutcome:
    h = inst.hyper(CLOSED)
    if inst.exhaustive_hyper and h.carrier.size <= DIRECTED_MAX_POINTS:
        return _enumerated_directed(inst)
    return _chain_directed(inst)


def _enumerated_directed(inst: Instance) -> CheckOutcome:
    """Todas as famílias 𝒜 com até DIRECTED_MAX_MEMBERS conjuntos e todas as escolhas dirigidas de filtros."""
    h = inst.hyper(CLOSED)
    hc = h.carrier
    rows = inst.values(Structure.UK, CLOSED)
    masks = list(rows)
    for k in range(1, DIRECTED_MAX_MEMBERS + 1):
        for members in combinations(range(hc.size), k):
            meet = h.base.carrier.full
            for i in members:
                meet &= hc.sets[i]
            at = hc.index_of(meet)
            for chosen in product(masks, repeat=k):
                # família finita dirigida: o mais fino é o supremo
                top = next((m for m in chosen if all(is_subset(m, o) for o in chosen)), None)
                if top is None:
                    continue
                bound = max(rows[m][i] for m, i in zip(chosen, members))
                if rows[top][at] > bound:
                    return failed(**replay(
                        inst, CLOSED, top, meet,
                        family=[hc.base.labels_of(hc.sets[i]) for i in members],
                        filters=[inst.family_labels(CLOSED, m) for m in chosen],
                        values=[format_value(rows[top][at]), format_value(bound)],
                    ))
    return passed()


def _chain_directed(inst: Instance) -> CheckOutcome:
    h = inst.hyper(CLOSED)
    sets = h.sets
    size = len(sets)
    for m in inst.filters(CLOSED, LITERAL_FILTER_SAMPLE):
        chain = [m]
        while chain[-1] & (chain[-1] - 1):
            top = 1 << (chain[-1].bit_length() - 1)
            chain.append(chain[-1] & ~top)
        members = [sets[(m + j) % size] for j in range(len(chain))]
        meet = h.base.carrier.full
        for A in members:
            meet &= A
        bound = max(evaluate(h, Structure.UK, inst.filter(CLOSED, k), A) for k, A in zip(chain, members))
        value = evaluate(h, Structure.UK, inst.filter(CLOSED, chain[-1]), meet)
        if value > bound:
            return failed(**replay(inst, CLOSED, chain[-1], meet, values=[format_value(value), format_value(bound)]))
    return passed()


@check("hyper.uK-intersection", "λ_uK 𝔉(A∩B) = λ_uK 𝔉(A) ∨ λ_uK 𝔉(B)", "hyper")
def uk_intersection(inst: Instance) -> CheckOutcome:
    h = inst.hyper(CLOSED)
    hc = h.carrier
    for m, row in inst.values(Structure.UK, CLOSED).items():
        for i, A in enumerate(hc.sets):
            for j, B in enumerate(hc.sets):
                if row[hc.index_of(A & B)] != max(row[i], row[j]):
                    return failed(**replay(inst, CLOSED, m, A, other=hc.base.labels_of(B)))
    return passed()


@check(
    "hyper.kuratowski-towers",
    "{λ_uK ≤ ε} e {λ_lK ≤ ε} são as camadas das torres; a camada lK em ∞ é antidiscreta; "
    "λ approach ⟹ camadas lK pretopológicas",
    "hyper",
)
def kuratowski_towers(inst: Instance) -> CheckOutcome:
    if not inst.exhaustive_hyper:
        return unmet("filtros amostrados")
    h = inst.hyper(CLOSED)
    approach = classify(inst.cap, diagonality=False).approach
    for structure in (Structure.UK, Structure.LK):
        for eps in breakpoints(hyper_cap(h, structure)):
            layer = hyper_tower(h, structure, eps)
            if hyper_cut(h, structure, eps).lim_table != layer.lim_table:
                return failed(**replay(inst, CLOSED, structure=structure.value, eps=format_value(eps)))
            if structure is Structure.LK and approach and not is_pretopological(layer):
                return failed(**replay(inst, CLOSED, law="pretopológica", eps=format_value(eps)))
    top = hyper_tower(h, Structure.LK, INF)
    full = top.carrier.full
    if any(top.lim_table[m] != full for m in top.carrier.nonempty_subsets()):
        return failed(**replay(inst, CLOSED, law="antidiscreta"))
    return passed()


@check("hyper.diagonality", "λ approach e λ_uK prap em 𝒞_{r(λ)}: λ_uK é 𝔉-diagonal em adh_{r(λ)} rdc 𝔉", "hyper")
def diagonality(inst: Instance) -> CheckOutcome:
    if not inst.exhaustive_hyper:
        return unmet("filtros amostrados")
    if not classify(inst.cap, diagonality=False).approach:
        return unmet("base não approach")
    mode = CarrierMode.RCLOSED
    h = inst.hyper(mode)
    uk = hyper_cap(h, Structure.UK)
    if not classify(uk, diagonality=False).prap:
        return unmet("λ_uK não prap")
    r = reflect_r(inst.cap)
    tested = 0
    for m in h.carrier.carrier.nonempty_subsets():
        P = adh_conv(r, [rdc(h.carrier.decode(m))])
        if P not in h.carrier:
            continue
        tested += 1
        if not diagonality_points(uk, m) >> h.carrier.index_of(P) & 1:
            return failed(**replay(inst, mode, m, P))
    return passed() if tested else unmet("nenhum ponto de aderência no carrier")
