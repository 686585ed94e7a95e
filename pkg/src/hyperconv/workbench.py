from dataclasses import dataclass, field
from typing import Dict, List, Union
import logging
import time

from .cap import CapSpace
from .conv import ConvSpace
from .document import parse_space
from .errors import InputError
from .filesystem import resolve_space_source

logger = logging.getLogger(__name__)

Space = Union[ConvSpace, CapSpace]


@dataclass
class SpaceEntry:
    name: str
    space: Space
    source: str
    loaded_at: float = field(default_factory=time.time)

    @property
    def kind(self) -> str:
        return "conv" if isinstance(self.space, ConvSpace) else "cap"


class Workbench:
    """
    Espaços nomeados de uma sessão da CLI. Um argumento FILE que começa com
    '@' é resolvido aqui; qualquer outro é lido do disco (ou das fixtures).
    """

    def __init__(self):
        self.spaces: Dict[str, SpaceEntry] = {}
        self.loaded_count: int = 0

    def load(self, name: str, ref: str) -> SpaceEntry:
        if name in self.spaces:
            raise ValueError(f"Já existe um espaço chamado {name!r}.")
        if not name.isidentifier():
            raise ValueError(f"Nome de espaço inválido: {name}")

        space = self.read(ref)
        entry = SpaceEntry(name=name, space=space, source=ref)
        self.spaces[name] = entry
        self.loaded_count += 1
        logger.info("espaço %s carregado de %s", name, ref)
        return entry

    def read(self, ref: str) -> Space:
        if ref.startswith("@"):
            return self.get(ref[1:]).space
        path = resolve_space_source(ref)
        try:
            raw = path.read_bytes()
        except OSError as e:
            raise InputError(f"Não foi possível ler {path}: {e.strerror or e}") from e
        return parse_space(raw)

    def get(self, name: str) -> SpaceEntry:
        if name not in self.spaces:
            raise ValueError(f"Nenhum espaço chamado {name!r}.")
        return self.spaces[name]

    def list_spaces(self) -> List[SpaceEntry]:
        return list(self.spaces.values())

    def drop(self, name: str) -> None:
        self.get(name)
        del self.spaces[name]
