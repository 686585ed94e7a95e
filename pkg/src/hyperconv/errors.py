"""
Exceções do hyperconv.

Todas derivam de ValueError ou RuntimeError, que é o que a CLI captura
em um único lugar (dispatch_command).
"""
from typing import Optional


class HyperconvError(Exception):
    """Base comum, só para `except HyperconvError`."""


class InputError(HyperconvError, ValueError):
    """Documento malformado, rótulo desconhecido, literal de valor inválido..."""


class AxiomError(InputError):
    """Um validador rejeitou a estrutura; `axiom` diz qual axioma falhou."""

    def __init__(self, axiom: str, detail: str = "", witness: Optional[dict] = None):
        self.axiom = axiom
        self.detail = detail
        self.witness = witness or {}
        msg = f"axioma '{axiom}' violado"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class SizeLimitError(InputError):
    """Carrier ou enumeração acima dos limites configurados."""


class InconsistencyError(HyperconvError, RuntimeError):
    """Duas computações que deveriam concordar discordaram (bug, não entrada ruim)."""
