"""
Formato JSON dos espaços (SpaceDocument).

  conv: {"kind": "conv", "carrier": [...], "lim": [{"kernel": [...], "limit": [...]}, ...],
         "centered": true, "name": "..."}
  cap:  {"kind": "cap", "carrier": [...], "completion": "explicit" | "prap",
         "lambda": [{"kernel": [...], "values": {"x": "1/2", ...}}, ...], "name": "..."}

Todo núcleo não vazio precisa aparecer (conv e cap explicit); em cap prap só
núcleos unitários podem ser listados. Erros citam o campo (e a linha, para
JSON malformado).
"""
import json
import logging
from typing import Any, Dict, Iterable, List, Union

from .cap import CapSpace, Completion
from .conv import ConvSpace
from .config import ensure_base_size
from .errors import InputError
from .setcalc import Carrier
from .values import format_value, parse_value

logger = logging.getLogger(__name__)

Space = Union[ConvSpace, CapSpace]


def _load_json(doc: Union[bytes, str]) -> Any:
    if isinstance(doc, bytes):
        try:
            doc = doc.decode("utf-8")
        except UnicodeDecodeError as e:
            raise InputError(f"documento não é UTF-8: {e}")
    try:
        return json.loads(doc)
    except json.JSONDecodeError as e:
        raise InputError(f"JSON inválido (linha {e.lineno}, coluna {e.colno}): {e.msg}")


def _require(data: Dict, key: str, kind: type, where: str) -> Any:
    if key not in data:
        raise InputError(f"{where}: campo obrigatório ausente: {key!r}")
    value = data[key]
    if not isinstance(value, kind):
        raise InputError(f"{where}.{key}: tipo inválido ({type(value).__name__})")
    return value


def _labels_mask(carrier: Carrier, labels: Any, where: str) -> int:
    if not isinstance(labels, list):
        raise InputError(f"{where}: esperado lista de rótulos")
    try:
        return carrier.mask(str(x) for x in labels)
    except InputError as e:
        raise InputError(f"{where}: {e}")


def _parse_carrier(data: Dict) -> Carrier:
    labels = _require(data, "carrier", list, "documento")
    try:
        carrier = Carrier(tuple(str(x) for x in labels))
    except InputError as e:
        raise InputError(f"documento.carrier: {e}")
    ensure_base_size(carrier.n)
    return carrier


def _kernel(carrier: Carrier, entry: Any, where: str) -> int:
    if not isinstance(entry, dict):
        raise InputError(f"{where}: esperado objeto")
    kernel = _labels_mask(carrier, _require(entry, "kernel", list, where), f"{where}.kernel")
    if not kernel:
        raise InputError(f"{where}.kernel: núcleo vazio não é filtro")
    return kernel


def _parse_conv(data: Dict, carrier: Carrier, name: str) -> ConvSpace:
    entries = _require(data, "lim", list, "documento")
    centered = data.get("centered", True)
    if not isinstance(centered, bool):
        raise InputError("documento.centered: esperado booleano")
    limits: Dict[int, int] = {}
    for i, entry in enumerate(entries):
        where = f"lim[{i}]"
        kernel = _kernel(carrier, entry, where)
        if kernel in limits:
            raise InputError(f"{where}.kernel: núcleo repetido {carrier.format_mask(kernel)}")
        limits[kernel] = _labels_mask(carrier, _require(entry, "limit", list, where), f"{where}.limit")
    return ConvSpace.from_limits(carrier, limits, centered, name)


def _parse_cap(data: Dict, carrier: Carrier, name: str) -> CapSpace:
    entries = _require(data, "lambda", list, "documento")
    raw_completion = data.get("completion", Completion.EXPLICIT.value)
    try:
        completion = Completion(raw_completion)
    except ValueError:
        raise InputError(f"documento.completion: valor desconhecido {raw_completion!r}")

    rows: Dict[int, List] = {}
    for i, entry in enumerate(entries):
        where = f"lambda[{i}]"
        kernel = _kernel(carrier, entry, where)
        if kernel in rows:
            raise InputError(f"{where}.kernel: núcleo repetido {carrier.format_mask(kernel)}")
        if completion is Completion.PRAP and kernel.bit_count() != 1:
            raise InputError(f"{where}.kernel: completion prap aceita só núcleos unitários")
        values = _require(entry, "values", dict, where)
        missing = [lab for lab in carrier.labels if lab not in values]
        if missing:
            raise InputError(f"{where}.values: faltam pontos {missing}")
        extra = [lab for lab in values if lab not in carrier.labels]
        if extra:
            raise InputError(f"{where}.values: pontos desconhecidos {extra}")
        try:
            rows[kernel] = [parse_value(str(values[lab])) for lab in carrier.labels]
        except ValueError as e:
            raise InputError(f"{where}.values: {e}")

    if completion is Completion.PRAP:
        d = []
        for t in range(carrier.n):
            if 1 << t not in rows:
                raise InputError(f"lambda: falta a linha do núcleo {{{carrier.labels[t]}}}")
            d.append(rows[1 << t])
        return CapSpace.from_singletons(carrier, d, name)
    return CapSpace.from_rows(carrier, rows, name)


def parse_space(doc: Union[bytes, str]) -> Space:
    """Documento JSON → ConvSpace ou CapSpace validado."""
    data = _load_json(doc)
    if not isinstance(data, dict):
        raise InputError("documento: esperado objeto JSON")
    kind = _require(data, "kind", str, "documento")
    carrier = _parse_carrier(data)
    name = str(data.get("name", ""))
    if kind == "conv":
        space: Space = _parse_conv(data, carrier, name)
    elif kind == "cap":
        space = _parse_cap(data, carrier, name)
    else:
        raise InputError(f"documento.kind: esperado 'conv' ou 'cap', recebido {kind!r}")
    logger.debug("documento %r: %s com %d pontos", name, kind, carrier.n)
    return space


def dump_space(space: Space) -> Dict[str, Any]:
    """Inverso de parse_space (forma canônica, chaves e núcleos em ordem fixa)."""
    carrier = space.carrier
    out: Dict[str, Any] = {"kind": "conv" if isinstance(space, ConvSpace) else "cap"}
    if space.name:
        out["name"] = space.name
    out["carrier"] = list(carrier.labels)
    if isinstance(space, ConvSpace):
        out["centered"] = space.centered
        out["lim"] = [
            {"kernel": carrier.labels_of(b), "limit": carrier.labels_of(space.lim_table[b])}
            for b in carrier.nonempty_subsets()
        ]
        return out

    out["completion"] = space.completion.value
    if space.completion is Completion.PRAP:
        kernels: Iterable[int] = (1 << t for t in range(carrier.n))
    else:
        kernels = carrier.nonempty_subsets()
    out["lambda"] = [
        {
            "kernel": carrier.labels_of(b),
            "values": {lab: format_value(space.table[b][x]) for x, lab in enumerate(carrier.labels)},
        }
        for b in kernels
    ]
    return out


def parse_set(text: str, carrier: Carrier) -> int:
    """
    Conjunto de pontos na linha de comando: lista JSON (["a","b"]), "{a,b}",
    "a,b" ou "{}" para o vazio.
    """
    s = text.strip()
    if s.startswith("["):
        return _labels_mask(carrier, _load_json(s), "conjunto")
    s = s.strip("{}").strip()
    if not s:
        return 0
    return carrier.mask(part.strip() for part in s.split(","))


def parse_hyper_filter(text: str, carrier: Carrier) -> List[int]:
    """
    Hiper-filtro na forma {"kernel": [["a"], ["b","c"]]}: a família-núcleo 𝒜,
    cada membro uma lista de rótulos.
    """
    data = _load_json(text)
    if isinstance(data, list):
        data = {"kernel": data}
    if not isinstance(data, dict):
        raise InputError("filtro: esperado objeto JSON")
    members = _require(data, "kernel", list, "filtro")
    if not members:
        raise InputError("filtro.kernel: família vazia")
    return [_labels_mask(carrier, m, f"filtro.kernel[{i}]") for i, m in enumerate(members)]


def format_family(carrier: Carrier, family: Iterable[int]) -> str:
    return "{" + ", ".join(carrier.format_mask(A) for A in sorted(family, key=lambda s: (s.bit_count(), s))) + "}"


def family_labels(carrier: Carrier, family: Iterable[int]) -> List[List[str]]:
    return [carrier.labels_of(A) for A in sorted(family, key=lambda s: (s.bit_count(), s))]
