"""
Registro de checks e o executor da suíte.

Cada check tem um id estável, um enunciado curto e um escopo:
  - global: roda uma vez por suíte, sem instância;
  - conv:   só instâncias geradas como espaço de convergência;
  - cap:    toda instância (espaços conv entram via i(ξ));
  - hyper:  toda instância cujo carrier cabe no limite de hiperespaço.
"""
import logging
import time
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence

from ..checkstatus import CheckStatus
from ..config import WITNESS_LIMIT, max_hyper_n
from ..errors import InputError, SizeLimitError
from .core import CheckOutcome, CheckReport, Instance, SuiteResult, replay

logger = logging.getLogger(__name__)

SCOPES = ("global", "conv", "cap", "hyper")


@dataclass(frozen=True)
class Check:
    id: str
    statement: str
    scope: str
    fn: Callable[..., CheckOutcome]


CHECKS: Dict[str, Check] = {}


def check(check_id: str, statement: str, scope: str = "cap"):
    """Decorator: registra a função como check `check_id`."""
    if scope not in SCOPES:
        raise ValueError(f"escopo desconhecido: {scope}")

    def decorator(fn):
        if check_id in CHECKS:
            raise ValueError(f"check registrado duas vezes: {check_id}")
        CHECKS[check_id] = Check(check_id, statement, scope, fn)
        return fn

    return decorator


def all_checks() -> List[Check]:
    """Todos os checks, na ordem de registro (os módulos são importados aqui)."""
    from . import checks_cap, checks_conv, checks_global, checks_hyper  # noqa: F401

    return list(CHECKS.values())


def select_checks(ids: Optional[Sequence[str]] = None) -> List[Check]:
    registered = all_checks()
    if not ids:
        return registered
    known = {c.id: c for c in registered}
    chosen = []
    for check_id in ids:
        if check_id.endswith("*"):
            matches = [c for c in registered if c.id.startswith(check_id[:-1])]
            if not matches:
                raise InputError(f"nenhum check casa com {check_id!r}")
            chosen.extend(m for m in matches if m not in chosen)
        elif check_id in known:
            if known[check_id] not in chosen:
                chosen.append(known[check_id])
        else:
            raise InputError(f"check desconhecido: {check_id!r}")
    return chosen


def _applies(chk: Check, inst: Instance) -> bool:
    if chk.scope == "conv":
        return inst.conv is not None
    return True


def _record(report: CheckReport, outcome: CheckOutcome) -> None:
    if outcome.status is CheckStatus.PASS:
        report.passed += 1
    elif outcome.status is CheckStatus.SKIPPED:
        report.skipped += 1
    else:
        report.failed += 1
        if len(report.witnesses) < WITNESS_LIMIT:
            report.witnesses.append(outcome.witness or {})


def _run_one(chk: Check, inst: Optional[Instance]) -> CheckOutcome:
    try:
        if chk.scope == "global":
            return chk.fn()
        if chk.scope == "hyper" and inst.cap.n > max_hyper_n():
            return CheckOutcome(CheckStatus.SKIPPED, reason="hiperespaço grande demais")
        return chk.fn(inst)
    except SizeLimitError as exc:
        return CheckOutcome(CheckStatus.SKIPPED, reason=str(exc))
    except Exception as exc:
        witness = replay(inst) if inst is not None else {}
        witness["error"] = f"{type(exc).__name__}: {exc}"
        logger.debug("check %s levantou %s", chk.id, witness["error"])
        return CheckOutcome(CheckStatus.FAIL, witness=witness)


def run_suite(
    instances: Iterable[Instance],
    checks: Optional[Sequence[str]] = None,
    name: str = "custom",
    parameters: Optional[Dict] = None,
    seed: Optional[int] = None,
) -> SuiteResult:
    """
    Roda os checks selecionados sobre o stream de instâncias. As instâncias são
    consumidas uma a uma (os caches de cada uma morrem com ela); a agregação
    não depende da ordem.
    """
    selected = select_checks(checks)
    reports = {c.id: CheckReport(c.id, c.statement) for c in selected}
    result = SuiteResult(name, dict(parameters or {}), seed)

    for chk in selected:
        if chk.scope == "global":
            started = time.perf_counter()
            _record(reports[chk.id], _run_one(chk, None))
            reports[chk.id].seconds += time.perf_counter() - started

    per_instance = [c for c in selected if c.scope != "global"]
    for inst in instances:
        result.instances += 1
        for chk in per_instance:
            if not _applies(chk, inst):
                continue
            started = time.perf_counter()
            _record(reports[chk.id], _run_one(chk, inst))
            reports[chk.id].seconds += time.perf_counter() - started
        if result.instances % 100 == 0:
            logger.info("suíte %s: %d instâncias", name, result.instances)

    result.checks = [reports[c.id] for c in selected]
    logger.info(
        "suíte %s: %d instâncias, %d checks, status %s",
        name, result.instances, len(selected), result.status.value,
    )
    return result
