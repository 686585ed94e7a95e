"""
Checks sobre espaços de convergência: dualidade fechado/aberto, refletores,
conjuntos erguidos e as convergências de Kuratowski/Vietoris em 𝒞_ξ.
"""
from ..conv import (
    CarrierMode,
    closed_sets,
    fell_topology,
    hyper_carrier,
    hyper_convergence,
    is_finer,
    is_pretopological,
    is_topological,
    lower_vietoris_topology,
    open_sets,
    reflect_S,
    reflect_S0,
    reflect_T,
    upper_fell_topology,
    vicinity,
)
from ..cap import coreflect_c
from ..hyper import Structure, hyper_cap
from ..setcalc import erect, is_saturated, points, rdc
from ..values import ZERO
from .core import CheckOutcome, Instance, failed, passed, replay, unmet
from .registry import check

ZERO_SET_KINDS = {
    "uK": Structure.UK,
    "lK": Structure.LK,
    "K": Structure.K,
    "lV": Structure.LV,
}


@check("conv.closed-open-duality", "A é fechado ⟺ X∖A é aberto", "conv")
def closed_open_duality(inst: Instance) -> CheckOutcome:
    xi = inst.conv
    full = xi.carrier.full
    complements = {full & ~o for o in open_sets(xi)}
    if complements != set(closed_sets(xi)):
        diff = complements ^ set(closed_sets(xi))
        return failed(**replay(inst, sets=[xi.carrier.labels_of(s) for s in sorted(diff)]))
    return passed()


@check("conv.closed-lattice", "os fechados são fechados para ∪ e ∩ finitas", "conv")
def closed_lattice(inst: Instance) -> CheckOutcome:
    closed = set(closed_sets(inst.conv))
    for a in closed:
        for b in closed:
            if a | b not in closed or a & b not in closed:
                return failed(**replay(inst, A=a, B=inst.conv.carrier.labels_of(b)))
    return passed()


@check("conv.reflectors", "Sξ = S₀ξ, S₀ e T idempotentes, ξ ≥ S₀ξ ≥ Tξ e Tξ topológico", "conv")
def reflectors(inst: Instance) -> CheckOutcome:
    xi = inst.conv
    s0, s, t = reflect_S0(xi), reflect_S(xi), reflect_T(xi)
    if s.lim_table != s0.lim_table:
        return failed(**replay(inst, law="S = S0"))
    if reflect_S0(s0).lim_table != s0.lim_table:
        return failed(**replay(inst, law="S0 idempotente"))
    if reflect_T(t).lim_table != t.lim_table:
        return failed(**replay(inst, law="T idempotente"))
    if not is_finer(xi, s0) or not is_finer(s0, t):
        return failed(**replay(inst, law="ξ ≥ S0ξ ≥ Tξ"))
    if not is_topological(t):
        return failed(**replay(inst, law="Tξ topológico"))
    return passed()


@check("setcalc.erect-saturated", "uma família de fechados é saturada ⟺ é o erguido de ⋃𝒜; rdc(e(rdc 𝒜)) = rdc 𝒜", "conv")
def erect_saturated(inst: Instance) -> CheckOutcome:
    closed = closed_sets(inst.conv)
    hc = hyper_carrier(inst.conv, CarrierMode.CLOSED)
    for m in hc.carrier.nonempty_subsets():
        family = hc.decode(m)
        union = rdc(family)
        erected = erect(union, closed)
        if rdc(erected) != union or not is_saturated(erected, closed):
            return failed(**replay(inst, CarrierMode.CLOSED, m, law="erguido"))
        if is_saturated(family, closed) != (family == erected):
            return failed(**replay(inst, CarrierMode.CLOSED, m, law="saturada"))
    return passed()


@check("conv.hyper-zero-sets", "em i(ξ), {λ = 0} de λ_uK, λ_lK, λ_K, λ_lV é lim_uK, lim_lK, lim_K, lim_lV", "conv")
def hyper_zero_sets(inst: Instance) -> CheckOutcome:
    xi = inst.conv
    mode = CarrierMode.CLOSED
    h = inst.hyper(mode)
    for kind, structure in ZERO_SET_KINDS.items():
        lim = hyper_convergence(xi, kind, mode).lim_table
        for m, row in inst.values(structure, mode).items():
            zeros = sum(1 << i for i, v in enumerate(row) if v == ZERO)
            if zeros != lim[m]:
                bad = points(zeros ^ lim[m])[0]
                return failed(**replay(inst, mode, m, h.sets[bad], structure=kind))
    return passed()


@check("conv.vietoris-fell-topologies", "ξ topológico: c(λ_uF) é a Fell superior, c(λ_lV) a Vietoris inferior e c(λ_F) a topologia de Fell", "conv")
def vietoris_fell_topologies(inst: Instance) -> CheckOutcome:
    xi = inst.conv
    if not is_topological(xi):
        return unmet("base não topológica")
    h = inst.hyper(CarrierMode.CLOSED)
    pairs = (
        ("uF", Structure.UF, upper_fell_topology(xi)),
        ("lV", Structure.LV, lower_vietoris_topology(xi)),
        ("F", Structure.F, fell_topology(xi)),
    )
    for label, structure, topology in pairs:
        if coreflect_c(hyper_cap(h, structure)).lim_table != topology.lim_table:
            return failed(**replay(inst, CarrierMode.CLOSED, structure=label))
    return passed()


@check("conv.uK-pretopological-topological", "lim_uK pretopológico ⟹ lim_uK topológico", "conv")
def uk_pretopological_topological(inst: Instance) -> CheckOutcome:
    uk = hyper_convergence(inst.conv, "uK", CarrierMode.CLOSED)
    if not is_pretopological(uk):
        return unmet("lim_uK não pretopológico")
    if not is_topological(uk):
        return failed(**replay(inst, CarrierMode.CLOSED))
    return passed()


@check("conv.uK-pseudotopological", "lim_uK 𝔉 = ⋂ dos limites dos ultrafiltros {A} com A ∈ 𝒜", "conv")
def uk_pseudotopological(inst: Instance) -> CheckOutcome:
    uk = hyper_convergence(inst.conv, "uK", CarrierMode.CLOSED)
    hc = hyper_carrier(inst.conv, CarrierMode.CLOSED)
    table = uk.lim_table
    for m in hc.carrier.nonempty_subsets():
        acc = hc.carrier.full
        for i in points(m):
            acc &= table[1 << i]
        if acc != table[m]:
            return failed(**replay(inst, CarrierMode.CLOSED, m))
    return passed()


@check("conv.lK-pretopological", "ξ pretopológico: lim_lK pretopológico com vizinhança V(A) = ⋂_{x∈A} v(x)⁻", "conv")
def lk_pretopological(inst: Instance) -> CheckOutcome:
    xi = inst.conv
    if not is_pretopological(xi):
        return unmet("base não pretopológica")
    lk = hyper_convergence(xi, "lK", CarrierMode.CLOSED)
    hc = hyper_carrier(xi, CarrierMode.CLOSED)
    if not is_pretopological(lk):
        return failed(**replay(inst, CarrierMode.CLOSED, law="pretopológico"))
    hits = [hc.encode(C for C in hc.sets if C & vicinity(xi, x)) for x in range(xi.n)]
    for i, A in enumerate(hc.sets):
        expected = hc.carrier.full
        for x in points(A):
            expected &= hits[x]
        if vicinity(lk, i) != expected:
            return failed(**replay(inst, CarrierMode.CLOSED, A=A, law="vizinhança"))
    return passed()
