import hashlib
import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from random import Random
from typing import Any, Dict, List, Optional, Union

from .. import REPORT_SCHEMA_VERSION, __version__
from ..cap import CapSpace, Row, embed_i
from ..checkstatus import CheckStatus
from ..config import DEFAULT_HYPER_SAMPLE, EXHAUSTIVE_HYPER_N
from ..conv import CarrierMode, ConvSpace, HyperFilter
from ..document import dump_space, family_labels
from ..filesystem import RESULTS_ROOT
from ..hyper import HyperSpace, Structure, evaluate, hyper_cap

Space = Union[ConvSpace, CapSpace]

# estruturas baratas o bastante para materializar a tabela inteira
TABLE_STRUCTURES = frozenset({Structure.UK, Structure.LK, Structure.K, Structure.UF, Structure.FBAR})


@dataclass
class Instance:
    """
    Um espaço gerado, com caches por instância: o CAP associado (o próprio
    espaço ou i(ξ)), hiperespaços por modo e tabelas de estruturas.
    """
    kind: str
    index: int
    name: str
    space: Space
    seed: int = 0
    _cache: Dict[Any, Any] = field(default_factory=dict, repr=False, compare=False)

    @property
    def conv(self) -> Optional[ConvSpace]:
        return self.space if isinstance(self.space, ConvSpace) else None

    @property
    def cap(self) -> CapSpace:
        if isinstance(self.space, CapSpace):
            return self.space
        if "cap" not in self._cache:
            self._cache["cap"] = embed_i(self.space)
        return self._cache["cap"]

    @property
    def exhaustive_hyper(self) -> bool:
        return self.cap.n <= EXHAUSTIVE_HYPER_N

    def hyper(self, mode: CarrierMode = CarrierMode.CLOSED) -> HyperSpace:
        key = ("hyper", mode)
        if key not in self._cache:
            self._cache[key] = HyperSpace.over(self.cap, mode)
        return self._cache[key]

    def filters(self, mode: CarrierMode = CarrierMode.CLOSED, sample: Optional[int] = None) -> List[int]:
        """
        Máscaras de famílias-núcleo sobre os pontos do hiperespaço: todas até
        EXHAUSTIVE_HYPER_N, senão uma amostra semeada mais os filtros principais.
        Com `sample`, a lista é reduzida a no máximo `sample` famílias além dos
        filtros principais e da família cheia.
        """
        key = ("filters", mode, sample)
        if key in self._cache:
            return self._cache[key]
        size = self.hyper(mode).carrier.size
        total = (1 << size) - 1
        fixed = {1 << i for i in range(size)} | {total}
        if sample is None:
            if self.exhaustive_hyper or total <= DEFAULT_HYPER_SAMPLE + size + 1:
                masks = list(range(1, total + 1))
            else:
                rng = Random(f"{self.seed}/{mode.value}")
                chosen = set(fixed)
                target = len(chosen) + DEFAULT_HYPER_SAMPLE
                while len(chosen) < target:
                    chosen.add(rng.randrange(1, total + 1))
                masks = sorted(chosen)
        else:
            pool = [m for m in self.filters(mode) if m not in fixed]
            if len(pool) > sample:
                pool = Random(f"{self.seed}/{mode.value}/{sample}").sample(pool, sample)
            masks = sorted(fixed | set(pool))
        self._cache[key] = masks
        return masks

    def filter(self, mode: CarrierMode, mask: int) -> HyperFilter:
        h = self.hyper(mode)
        return HyperFilter(h.carrier.decode(mask), mode)

    def values(
        self,
        structure: Structure,
        mode: CarrierMode = CarrierMode.CLOSED,
        sample: Optional[int] = None,
    ) -> Dict[int, Row]:
        """Linha de valores (um por ponto do hiperespaço) para cada filtro de `filters(mode, sample)`."""
        structure = Structure(structure)
        key = ("values", structure, mode, sample)
        if key in self._cache:
            return self._cache[key]
        h = self.hyper(mode)
        masks = self.filters(mode, sample)
        if self.exhaustive_hyper and structure in TABLE_STRUCTURES:
            table = hyper_cap(h, structure).table
            out = {m: table[m] for m in masks}
        else:
            out = {
                m: tuple(evaluate(h, structure, self.filter(mode, m), A) for A in h.sets)
                for m in masks
            }
        self._cache[key] = out
        return out

    def family_labels(self, mode: CarrierMode, mask: int) -> List[List[str]]:
        return family_labels(self.cap.carrier, self.hyper(mode).carrier.decode(mask))

    def to_json(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "index": self.index,
            "name": self.name,
            "seed": self.seed,
            "space": dump_space(self.space),
        }


@dataclass(frozen=True)
class CheckOutcome:
    status: CheckStatus
    witness: Optional[Dict[str, Any]] = None
    reason: str = ""


def passed() -> CheckOutcome:
    return CheckOutcome(CheckStatus.PASS)


def unmet(reason: str) -> CheckOutcome:
    """Hipótese não satisfeita: a instância não conta nem como passe nem como falha."""
    return CheckOutcome(CheckStatus.SKIPPED, reason=reason)


def failed(**witness: Any) -> CheckOutcome:
    return CheckOutcome(CheckStatus.FAIL, witness=witness)


@dataclass
class CheckReport:
    id: str
    statement: str
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    witnesses: List[Dict[str, Any]] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def status(self) -> CheckStatus:
        if self.failed:
            return CheckStatus.FAIL
        if self.passed:
            return CheckStatus.PASS
        return CheckStatus.SKIPPED

    def to_dict(self, timing: bool = False) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "id": self.id,
            "statement": self.statement,
            "status": self.status.value,
            "passed": self.passed,
            "failed": self.failed,
            "skipped": self.skipped,
            "witnesses": self.witnesses,
        }
        if timing:
            out["seconds"] = round(self.seconds, 6)
        return out


@dataclass
class SuiteResult:
    name: str
    parameters: Dict[str, Any]
    seed: Optional[int]
    instances: int = 0
    checks: List[CheckReport] = field(default_factory=list)

    @property
    def status(self) -> CheckStatus:
        statuses = [c.status for c in self.checks]
        if CheckStatus.FAIL in statuses:
            return CheckStatus.FAIL
        if CheckStatus.PASS in statuses:
            return CheckStatus.PASS
        return CheckStatus.SKIPPED

    def check(self, check_id: str) -> CheckReport:
        for c in self.checks:
            if c.id == check_id:
                return c
        raise KeyError(check_id)


def spec_hash(parameters: Dict[str, Any]) -> str:
    """sha256 da forma JSON canônica dos parâmetros."""
    canonical = json.dumps(parameters, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def build_report(
    command: str,
    parameters: Dict[str, Any],
    seed: Optional[int],
    status: CheckStatus,
    **payload: Any,
) -> Dict[str, Any]:
    report: Dict[str, Any] = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "tool": "hyperconv",
        "version": __version__,
        "command": command,
        "spec_hash": spec_hash(parameters),
        "seed": seed,
        "status": CheckStatus(status).value,
        "parameters": parameters,
    }
    report.update(payload)
    return report


def suite_report(result: SuiteResult, timing: bool = False) -> Dict[str, Any]:
    from ..metrics import collect_suite_metrics

    return build_report(
        "verify",
        result.parameters,
        result.seed,
        result.status,
        summary=collect_suite_metrics(result),
        checks=[c.to_dict(timing) for c in result.checks],
    )


def emit_report(report: Dict[str, Any]) -> bytes:
    """Bytes estáveis: chaves ordenadas, indentação fixa, newline final."""
    text = json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False)
    return (text + "\n").encode("utf-8")


def auto_output_path(name: str) -> Path:
    ts = time.strftime("%Y-%m-%d_%H-%M-%S")
    return RESULTS_ROOT / f"{name}_{ts}.json"


def save_result(result: SuiteResult, output: Path, timing: bool = False) -> None:
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_bytes(emit_report(suite_report(result, timing)))


def replay(
    inst: Instance,
    mode: Optional[CarrierMode] = None,
    mask: Optional[int] = None,
    A: Optional[int] = None,
    **extra: Any,
) -> Dict[str, Any]:
    """Testemunha reexecutável: instância completa, filtro e ponto limite."""
    out: Dict[str, Any] = {"instance": inst.to_json()}
    if mode is not None:
        out["carrier_mode"] = mode.value
    if mode is not None and mask is not None:
        out["filter"] = inst.family_labels(mode, mask)
    if A is not None:
        out["point"] = inst.cap.carrier.labels_of(A)
    out.update(extra)
    return out
