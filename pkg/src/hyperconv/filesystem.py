from pathlib import Path
from typing import Final, List


PACKAGE_ROOT: Final[Path] = Path(__file__).resolve().parent

FIXTURES_ROOT: Final[Path] = PACKAGE_ROOT / "fixtures"
SCHEMAS_ROOT: Final[Path] = PACKAGE_ROOT / "schemas"

# relatórios do harness vão para ./results, relativo ao diretório corrente
RESULTS_ROOT: Final[Path] = Path("./results")


def _validate_resource_name(name: str) -> None:
    """Valida o nome de fixture/schema para evitar escapar do diretório do pacote."""
    if "/" in name or "\\" in name or ".." in name:
        raise ValueError(f"Nome de recurso inválido: {name}")

    stem = name[:-5] if name.endswith(".json") else name
    if not stem.replace("-", "_").isidentifier():
        raise ValueError(f"Nome de recurso inválido: {name}")


def _json_name(name: str) -> str:
    return name if name.endswith(".json") else f"{name}.json"


def fixture_path(name: str) -> Path:
    """
    Retorna o caminho de uma fixture embarcada no pacote.
    hyperconv/fixtures/<name>.json
    """
    _validate_resource_name(name)
    path = FIXTURES_ROOT / _json_name(name)
    if not path.exists():
        raise ValueError(f"Fixture não encontrada: {name}")
    return path


def schema_path(name: str) -> Path:
    """
    Retorna o caminho de um JSON schema embarcado.
    hyperconv/schemas/<name>.schema.json
    """
    _validate_resource_name(name)
    path = SCHEMAS_ROOT / f"{name}.schema.json"
    if not path.exists():
        raise ValueError(f"Schema não encontrado: {name}")
    return path


def list_fixtures() -> List[str]:
    """Nomes (sem extensão) das fixtures disponíveis, em ordem."""
    if not FIXTURES_ROOT.exists():
        return []
    return sorted(p.stem for p in FIXTURES_ROOT.glob("*.json"))


def read_fixture(name: str) -> str:
    return fixture_path(name).read_text(encoding="utf-8")


def resolve_space_source(ref: str) -> Path:
    """
    Um argumento FILE da CLI pode ser um caminho existente ou o nome de uma
    fixture embarcada (P3, Q2...).
    """
    path = Path(ref)
    if path.exists():
        return path
    try:
        return fixture_path(ref)
    except ValueError:
        raise ValueError(f"Arquivo não encontrado: {ref}")
