"""
Álgebra exata do reticulado de valores [0,∞].

Valores finitos são `fractions.Fraction` (sempre em termos mínimos, denominador
positivo); o infinito é o singleton `INF`. Não há ponto flutuante em lugar nenhum:
toda igualdade no hyperconv é exata.
"""
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence, Union


class Infinity:
    """O ponto ∞ de [0,∞]: acima de todo racional, absorvente para + e ∨."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __hash__(self):
        return hash("hyperconv.inf")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __reduce__(self):
        return (Infinity, ())

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"


INF = Infinity()
ZERO = Fraction(0)
ONE = Fraction(1)

Value = Union[Fraction, Infinity]


def is_finite(x: Value) -> bool:
    return x is not INF


def as_value(x) -> Value:
    """Normaliza int / Fraction / str / INF para um Value."""
    if x is INF:
        return INF
    if isinstance(x, str):
        return parse_value(x)
    if isinstance(x, bool):
        raise ValueError(f"valor inválido: {x!r}")
    if isinstance(x, (int, Fraction)):
        q = Fraction(x)
        if q < 0:
            raise ValueError(f"valores são não negativos, recebido {x!r}")
        return q
    raise ValueError(f"valor inválido: {x!r}")


def parse_value(text: str) -> Value:
    """
    Forma textual: inteiros decimais, frações "p/q" e o literal "inf".
    """
    s = str(text).strip()
    if s.lower() in {"inf", "∞"}:
        return INF
    try:
        if "/" in s:
            num, den = s.split("/", 1)
            q = Fraction(int(num.strip()), int(den.strip()))
        else:
            q = Fraction(int(s))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"literal de valor inválido: {text!r}")
    if q < 0:
        raise ValueError(f"valores são não negativos, recebido {text!r}")
    return q


def format_value(x: Value) -> str:
    if x is INF:
        return "inf"
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def vsup(values: Iterable[Value]) -> Value:
    """⋁ com ⋁∅ = 0."""
    return max(values, default=ZERO)


def vinf(values: Iterable[Value]) -> Value:
    """⋀ com ⋀∅ = ∞."""
    return min(values, default=INF)


def trunc_sub(x: Value, y: Value) -> Value:
    """
    Diferença truncada x ⊖ y:
      (x−y)∨0 para x, y finitos; ∞ se x=∞ e y≠∞; 0 se y=∞.
    """
    if y is INF:
        return ZERO
    if x is INF:
        return INF
    return x - y if x > y else ZERO


def oslash(x: Value, y: Value) -> Value:
    """
    x ⊘ y para x finito: x/y se y ∉ {0,∞}; 0 se y=∞; ∞ se y=0.
    """
    if x is INF:
        raise ValueError("⊘ só está definido para x finito")
    if y is INF:
        return ZERO
    if y == 0:
        return INF
    return Fraction(x) / y


def lambda_V_eval(kernel: Iterable[Value], v: Value) -> Value:
    """
    λ_V no filtro principal de núcleo finito K, avaliado em v: v ⊖ min K.

    As famílias que malham com K↑ são os A com A∩K≠∅, e o ínfimo de ⋁A sobre
    elas é atingido em singletons de K.
    """
    values = set(kernel)
    if not values:
        raise ValueError("núcleo de valores vazio")
    return trunc_sub(v, min(values))


def lambda_V_definitional(kernel: Iterable[Value], v: Value, grid: Sequence[Value]) -> Value:
    """
    λ_V(K↑)(v) = v ⊖ ⋀{⋁A : A ⊆ grid, A∩K≠∅}, por força bruta sobre os
    subconjuntos de uma grade finita que contém K.
    """
    ker = set(kernel)
    if not ker:
        raise ValueError("núcleo de valores vazio")
    points = sorted(set(grid) | ker)
    best: Value = INF
    for size in range(1, len(points) + 1):
        for subset in combinations(points, size):
            if ker.isdisjoint(subset):
                continue
            best = min(best, max(subset))
    return trunc_sub(v, best)
