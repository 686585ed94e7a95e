"""
Busca semeada de contraexemplos para as desigualdades estritas.

Cada alvo percorre primeiro as enumerações exaustivas pequenas (n crescente)
e depois, se pedido, um stream aleatório. O resultado é a primeira
testemunha encontrada ou um relatório de exaustão; nenhum dos dois é falha.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple

from ..cap import classify
from ..checkstatus import CheckStatus
from ..conv import CarrierMode, closed_sets, hyper_carrier, hyper_convergence
from ..errors import InputError
from ..frames import lambda_lV
from ..hyper import Structure, evaluate, lambda_lK
from ..setcalc import erect, points
from ..values import format_value
from .checks_cap import remark_sets, remark_thresholds
from .core import Instance, build_report, replay
from .generators import (
    MAX_EXHAUSTIVE_CAP_N,
    MAX_EXHAUSTIVE_CONV_N,
    SMALL_GRID,
    InstanceSpec,
    generate,
)

logger = logging.getLogger(__name__)

DEFAULT_SEARCH_COUNT = 200


class SearchTarget(str, Enum):
    LK_VS_LV = "lK-vs-lV"
    UF_VS_LUF = "uF-vs-LuF"
    STRICT_REMARK = "strict-remark-inclusion"
    GRILL_LITERAL = "grill-literal"


@dataclass
class SearchResult:
    target: SearchTarget
    parameters: Dict[str, Any]
    seed: int
    found: bool = False
    witness: Optional[Dict[str, Any]] = None
    instances_examined: int = 0
    exhausted: List[str] = field(default_factory=list)

    def to_report(self) -> Dict[str, Any]:
        return build_report(
            "search",
            self.parameters,
            self.seed,
            CheckStatus.PASS,
            witness=self.witness,
            summary={
                "target": self.target.value,
                "found": self.found,
                "instances": self.instances_examined,
                "exhausted": self.exhausted,
            },
        )


def _streams(
    kind: str, shape: str, max_n: int, seed: int, count: int
) -> Iterator[Tuple[str, Iterator[Instance]]]:
    """(rótulo, stream): enumerações exaustivas até o limite, depois aleatório em max_n."""
    limit = MAX_EXHAUSTIVE_CONV_N if kind == "conv" else MAX_EXHAUSTIVE_CAP_N
    for n in range(1, min(max_n, limit) + 1):
        spec = InstanceSpec(kind, n, SMALL_GRID, "exhaustive", seed, shape=shape)
        yield f"{kind}/{shape}/exhaustive/n={n}", generate(spec)
    if count and max_n > limit:
        spec = InstanceSpec(kind, max_n, mode="random", seed=seed, count=count, shape=shape)
        yield f"{kind}/{shape}/random/n={max_n}", generate(spec)


def _lk_vs_lv(inst: Instance) -> Optional[Dict[str, Any]]:
    """
    Filtro e ponto com λ_lK > λ_lV em i(ξ), carrier ℙX. Os candidatos vêm das
    tabelas de convergência (bitmask) e são confirmados pelos valores.
    """
    xi = inst.conv
    mode = CarrierMode.ALL
    hc = hyper_carrier(xi, mode)
    lk = hyper_convergence(xi, "lK", mode).lim_table
    lv = hyper_convergence(xi, "lV", mode).lim_table
    h = inst.hyper(mode)
    closed = set(closed_sets(xi))
    for m in hc.carrier.nonempty_subsets():
        strict = lv[m] & ~lk[m]
        # prefere limites fechados, como no exemplo clássico
        ordered = sorted(points(strict), key=lambda i: hc.sets[i] not in closed)
        for i in ordered:
            A = hc.sets[i]
            F = inst.filter(mode, m)
            a, b = lambda_lK(h, F, A), lambda_lV(h, F, A)
            if a > b:
                return replay(inst, mode, m, A, values={"lK": format_value(a), "lV": format_value(b)})
    return None


def _uf_vs_luf(inst: Instance) -> Optional[Dict[str, Any]]:
    mode = CarrierMode.CLOSED
    h = inst.hyper(mode)
    uf = inst.values(Structure.UF, mode)
    for m in inst.filters(mode):
        F = inst.filter(mode, m)
        for i, A in enumerate(h.sets):
            luf = evaluate(h, Structure.LUF, F, A)
            if uf[m][i] > luf:
                return replay(inst, mode, m, A, values={"uF": format_value(uf[m][i]), "LuF": format_value(luf)})
    return None


def _strict_remark(inst: Instance) -> Optional[Dict[str, Any]]:
    space = inst.cap
    if not classify(space, diagonality=False).approach:
        return None
    for B in space.carrier.nonempty_subsets():
        for eps in remark_thresholds(space):
            closed_strict, loose = remark_sets(space, B, eps)
            if closed_strict != loose:
                return replay(
                    inst, A=B, eps=format_value(eps),
                    closure_of_strict=space.carrier.labels_of(closed_strict),
                    loose=space.carrier.labels_of(loose),
                )
    return None


def _grill_literal(inst: Instance) -> Optional[Dict[str, Any]]:
    """Fechados disjuntos F, G com e(F) ∩ e(G) ≠ ∅ (sempre contém ∅)."""
    closed = closed_sets(inst.conv)
    for F in closed:
        for G in closed:
            if erect(F, closed) & erect(G, closed) and not F & G:
                carrier = inst.conv.carrier
                return replay(inst, A=F, other=carrier.labels_of(G))
    return None


Finder = Callable[[Instance], Optional[Dict[str, Any]]]

TARGETS: Dict[SearchTarget, Tuple[str, str, Finder]] = {
    SearchTarget.LK_VS_LV: ("conv", "table", _lk_vs_lv),
    SearchTarget.UF_VS_LUF: ("cap", "prap", _uf_vs_luf),
    SearchTarget.STRICT_REMARK: ("cap", "quasimetric", _strict_remark),
    SearchTarget.GRILL_LITERAL: ("conv", "table", _grill_literal),
}


def search_counterexample(
    target: str,
    max_n: int = 3,
    seed: int = 0,
    count: int = DEFAULT_SEARCH_COUNT,
) -> SearchResult:
    """Primeira testemunha do alvo, ou a lista dos streams esgotados."""
    try:
        target = SearchTarget(target)
    except ValueError:
        raise InputError(f"alvo de busca desconhecido: {target!r}")
    if max_n < 1:
        raise InputError("max_n precisa ser ≥ 1")
    kind, shape, finder = TARGETS[target]
    parameters = {"target": target.value, "max_n": max_n, "count": count}
    result = SearchResult(target, parameters, seed)

    for label, stream in _streams(kind, shape, max_n, seed, count):
        for inst in stream:
            result.instances_examined += 1
            witness = finder(inst)
            if witness is not None:
                result.found = True
                result.witness = witness
                logger.info("busca %s: testemunha em %s (%s)", target.value, label, inst.name)
                return result
        result.exhausted.append(label)
        logger.info("busca %s: %s esgotado", target.value, label)
    return result
