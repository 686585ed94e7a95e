import pytest

from hyperconv.conv import (
    CarrierMode,
    ConvSpace,
    closed_sets,
    closure,
    compact_sets,
    conv_supremum,
    fell_topology,
    hyper_carrier,
    hyper_convergence,
    is_finer,
    is_pretopological,
    is_topological,
    lower_vietoris_topology,
    open_sets,
    reflect_S,
    reflect_S0,
    reflect_T,
    topology_from_subbase,
    upper_fell_topology,
    vicinity,
)
from hyperconv.errors import AxiomError, InputError
from hyperconv.setcalc import Carrier

AB = Carrier(("a", "b"))


def test_p3_closed_and_open_sets(p3):
    assert closed_sets(p3) == (0, 0b100, 0b110, 0b111)
    assert open_sets(p3) == (0, 0b001, 0b011, 0b111)


def test_p3_is_pretopological_not_topological(p3):
    assert is_pretopological(p3)
    assert not is_topological(p3)
    assert is_topological(reflect_T(p3))


def test_p3_closure_and_vicinities(p3):
    assert closure(p3, 0b001) == 0b111
    assert closure(p3, 0b010) == 0b110
    assert [vicinity(p3, x) for x in range(3)] == [0b001, 0b011, 0b110]


def test_pretopology_from_vicinities(p3):
    rebuilt = ConvSpace.from_vicinities(p3.carrier, {0: 0b001, 1: 0b011, 2: 0b110})
    assert rebuilt.lim_table == p3.lim_table


def test_reflectors_order(p3):
    s0, t = reflect_S0(p3), reflect_T(p3)
    assert reflect_S(p3).lim_table == s0.lim_table
    assert is_finer(p3, s0)
    assert is_finer(s0, t)


def test_discrete_and_antidiscrete():
    d = ConvSpace.discrete(AB)
    a = ConvSpace.antidiscrete(AB)
    assert is_topological(d) and is_topological(a)
    assert closed_sets(a) == (0, 0b11)
    assert closed_sets(d) == (0, 0b01, 0b10, 0b11)
    assert is_finer(d, a)
    assert conv_supremum(d, a).lim_table == d.lim_table


def test_monotone_violation_names_axiom():
    with pytest.raises(AxiomError) as exc:
        ConvSpace(AB, (0, 0b01, 0b10, 0b11))
    assert exc.value.axiom == "monotone"


def test_centered_violation_names_axiom():
    with pytest.raises(AxiomError) as exc:
        ConvSpace(AB, (0, 0, 0b10, 0))
    assert exc.value.axiom == "centered"
    assert ConvSpace(AB, (0, 0, 0b10, 0), centered=False).lim_table[1] == 0


def test_table_size_is_checked():
    with pytest.raises(InputError):
        ConvSpace(AB, (0, 1, 2))


def test_topology_from_subbase_sierpinski():
    # abertos ∅, {a}, X
    s = topology_from_subbase(AB, [0b01])
    assert is_topological(s)
    assert open_sets(s) == (0, 0b01, 0b11)


def test_compact_sets_of_discrete():
    assert compact_sets(ConvSpace.discrete(AB)) == (0, 1, 2, 3)


def test_hyper_carriers(p3):
    closed = hyper_carrier(p3, CarrierMode.CLOSED)
    assert closed.sets == (0, 0b100, 0b110, 0b111)
    assert hyper_carrier(p3, CarrierMode.ALL).size == 8
    assert closed.decode(closed.encode([0b100, 0b111])) == frozenset({0b100, 0b111})
    with pytest.raises(InputError):
        hyper_carrier(p3, CarrierMode.RCLOSED)
    with pytest.raises(InputError):
        closed.index_of(0b001)


def test_p3_lower_kuratowski_vs_lower_vietoris(p3):
    hc = hyper_carrier(p3, CarrierMode.ALL)
    m = hc.encode([0b001])
    closed = set(closed_sets(p3))
    lim_lK = hc.decode(hyper_convergence(p3, "lK", CarrierMode.ALL).lim_table[m])
    lim_lV = hc.decode(hyper_convergence(p3, "lV", CarrierMode.ALL).lim_table[m])
    assert {A for A in lim_lK if A in closed} == {0}
    assert closed <= lim_lV


def test_unknown_hyper_kind(p3):
    with pytest.raises(InputError):
        hyper_convergence(p3, "xx")


def test_vietoris_and_fell_are_topological(p3):
    t = reflect_T(p3)
    assert is_topological(lower_vietoris_topology(t))
    assert is_topological(fell_topology(t))


def test_upper_fell_of_discrete_space():
    space = ConvSpace.discrete(AB)
    assert compact_sets(space) == (0, 0b01, 0b10, 0b11)
    hc = hyper_carrier(space)
    # pontos: ∅, {a}, {b}, {a,b}
    assert hc.sets == (0, 0b01, 0b10, 0b11)
    fell = upper_fell_topology(space)
    assert is_topological(fell)
    assert [vicinity(fell, i) for i in range(4)] == [0b0001, 0b0011, 0b0101, 0b1111]
    opens = open_sets(fell)
    for k in compact_sets(space):
        assert hc.encode(A for A in hc.sets if not A & k) in opens


def test_p3_upper_fell_has_a_plus_open(p3):
    assert 0b001 in compact_sets(p3)
    hc = hyper_carrier(p3)
    a_plus = hc.encode([0, 0b100, 0b110])
    assert a_plus in open_sets(upper_fell_topology(p3))
    assert 0b111 not in hc.decode(a_plus)
