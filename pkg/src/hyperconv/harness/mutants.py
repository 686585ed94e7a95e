"""
Mutantes para o teste de fumaça da suíte: cada um troca uma função do núcleo
por uma versão quebrada enquanto o bloco `with` estiver ativo.
"""
import sys
from contextlib import contextmanager
from typing import Callable, Iterator, List, Tuple

from .. import cap, conv, values
from ..values import INF, ZERO, Value
from .registry import all_checks


def _patch_everywhere(name: str, original: Callable, replacement: Callable) -> List[Tuple[object, str]]:
    """Troca o atributo em todo módulo hyperconv* carregado que aponta para `original`."""
    patched = []
    for module_name, module in list(sys.modules.items()):
        if not module_name.startswith("hyperconv") or module is None:
            continue
        if getattr(module, name, None) is original:
            setattr(module, name, replacement)
            patched.append((module, name))
    return patched


@contextmanager
def _mutant(name: str, original: Callable, replacement: Callable) -> Iterator[None]:
    # os módulos de checks precisam estar carregados antes da troca
    all_checks()
    patched = _patch_everywhere(name, original, replacement)
    try:
        yield
    finally:
        for module, attr in patched:
            setattr(module, attr, original)


def _trunc_sub_without_inf_case(x: Value, y: Value) -> Value:
    # ∞ ⊖ ∞ vira ∞
    if x is INF:
        return INF
    if y is INF:
        return ZERO
    return x - y if x > y else ZERO


def _accept_anything(*args, **kwargs) -> None:
    return None


def broken_trunc_sub():
    """⊖ sem o caso x ⊖ ∞ = 0 quando x = ∞."""
    return _mutant("trunc_sub", values.trunc_sub, _trunc_sub_without_inf_case)


@contextmanager
def disabled_monotone_validator() -> Iterator[None]:
    """Os validadores de monotonicidade de conv e cap passam a aceitar qualquer tabela."""
    with _mutant("check_monotone_limits", conv.check_monotone_limits, _accept_anything):
        with _mutant("check_monotone_table", cap.check_monotone_table, _accept_anything):
            yield


MUTANTS = {
    "broken-trunc-sub": broken_trunc_sub,
    "no-monotone-validator": disabled_monotone_validator,
}
