import os
from typing import Final

from .errors import SizeLimitError

DEFAULT_MAX_BASE_N: Final[int] = 6
DEFAULT_MAX_HYPER_N: Final[int] = 4
HARD_MAX_N: Final[int] = 8

# acima disso os hiper-filtros são amostrados em vez de enumerados
EXHAUSTIVE_HYPER_N: Final[int] = 3
DEFAULT_HYPER_SAMPLE: Final[int] = 48

# amostras menores para checks caros (frames, oráculos, grelhas literais)
FRAME_FILTER_SAMPLE: Final[int] = 24
ORACLE_FILTER_SAMPLE: Final[int] = 12
LITERAL_FILTER_SAMPLE: Final[int] = 24
ORACLE_GRID_LIMIT: Final[int] = 8

WITNESS_LIMIT: Final[int] = 5
SELECTOR_ENUMERATION_LIMIT: Final[int] = 200_000

MAX_N_ENV: Final[str] = "HYPERCONV_MAX_N"


def _env_override() -> int | None:
    raw = os.environ.get(MAX_N_ENV)
    if raw is None or not raw.strip():
        return None
    try:
        value = int(raw)
    except ValueError:
        raise SizeLimitError(f"{MAX_N_ENV} precisa ser inteiro, recebido {raw!r}")
    if value < 1 or value > HARD_MAX_N:
        raise SizeLimitError(f"{MAX_N_ENV}={value} fora de [1, {HARD_MAX_N}]")
    return value


def max_base_n() -> int:
    """Tamanho máximo de carrier para espaços base."""
    override = _env_override()
    return override if override is not None else DEFAULT_MAX_BASE_N


def max_hyper_n() -> int:
    """Tamanho máximo do carrier base quando o hiperespaço é construído."""
    override = _env_override()
    return override if override is not None else DEFAULT_MAX_HYPER_N


def ensure_base_size(n: int) -> None:
    limit = max_base_n()
    if n > limit:
        raise SizeLimitError(f"carrier com {n} pontos excede o máximo {limit} ({MAX_N_ENV})")


def ensure_hyper_size(n: int) -> None:
    limit = max_hyper_n()
    if n > limit:
        raise SizeLimitError(
            f"hiperespaço sobre {n} pontos excede o máximo {limit} ({MAX_N_ENV})"
        )
