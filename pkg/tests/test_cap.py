from fractions import Fraction

import pytest

from hyperconv.cap import (
    CapSpace,
    Completion,
    Tower,
    adh_cap,
    adh_set,
    breakpoints,
    classify,
    coreflect_c,
    embed_i,
    eps_enlarge,
    initial_structure,
    is_centered,
    realized_values,
    reflect_r,
    tower_assemble,
    tower_diagonal_law,
    tower_extract,
    validate_tower,
)
from hyperconv.checkstatus import CheckStatus
from hyperconv.conv import ConvSpace
from hyperconv.errors import AxiomError, InputError
from hyperconv.harness.checks_cap import adherence_attainment
from hyperconv.harness.core import Instance
from hyperconv.setcalc import Carrier, points
from hyperconv.values import INF, ONE, ZERO

AB = Carrier(("a", "b"))


def test_q2_singleton_completion(q2):
    assert q2.completion is Completion.PRAP
    assert q2.distance(0, 1) == ONE
    assert q2.distance(1, 0) is INF
    # λ({0,1}↑) = sup dos singletons
    assert q2.table[0b11] == (INF, ONE)


def test_q2_adherence_and_enlargement(q2):
    assert adh_set(q2, 0b01) == (ZERO, ONE)
    assert adh_cap(q2, [0b01]) == (ZERO, ONE)
    assert eps_enlarge(q2, 0b01, Fraction(1, 2)) == 0b01
    assert eps_enlarge(q2, 0b01, ONE) == 0b11
    assert breakpoints(q2) == (ZERO, ONE, INF)
    assert realized_values(q2) == (ZERO, ONE, INF)


def test_q2_classification(q2):
    report = classify(q2)
    assert report.centered
    assert report.prap
    assert report.approach
    assert report.diagonality_points == q2.carrier.full
    assert report.to_dict(q2.carrier)["diagonality_points"] == ["0", "1"]


def test_c_and_r_of_q2(q2):
    c, r = coreflect_c(q2), reflect_r(q2)
    assert c.lim_table == (0, 0b01, 0b10, 0)
    assert r.lim_table == (0, 0b11, 0b10, 0b10)


def test_embedding_round_trip(p3):
    i = embed_i(p3)
    assert is_centered(i)
    assert coreflect_c(i).lim_table == p3.lim_table
    assert reflect_r(i).lim_table == p3.lim_table


def test_i_p3_classes(i_p3):
    report = classify(i_p3, diagonality=False)
    assert report.prap
    assert report.diagonality_points is None


def test_monotone_violation_names_axiom():
    table = ((), (ZERO, ONE), (ONE, ZERO), (ZERO, ZERO))
    with pytest.raises(AxiomError) as exc:
        CapSpace(AB, table)
    assert exc.value.axiom == "monotone"


def test_prap_completion_is_validated():
    table = ((), (ZERO, ONE), (ONE, ZERO), (Fraction(2), Fraction(2)))
    with pytest.raises(AxiomError) as exc:
        CapSpace(AB, table, Completion.PRAP)
    assert exc.value.axiom == "completion"
    assert CapSpace(AB, table).completion is Completion.EXPLICIT


def test_from_rows_requires_every_kernel():
    with pytest.raises(InputError):
        CapSpace.from_rows(AB, {0b01: (ZERO, ONE)})


def test_tower_round_trip(q2):
    tower = tower_extract(q2)
    assert tower.thresholds == (ZERO, ONE, INF)
    assert tower_assemble(tower).table == q2.table
    assert tower.layer_at(Fraction(1, 2)).lim_table == coreflect_c(q2).lim_table
    assert tower.layer_at(ONE).lim_table[0b01] == 0b11


def test_tower_needs_infinite_layer(q2):
    levels = tower_extract(q2).levels[:-1]
    with pytest.raises(AxiomError) as exc:
        validate_tower(Tower(q2.carrier, levels))
    assert exc.value.axiom == "tower"


def test_initial_structure_of_indicator():
    # μ = 0 em a, ∞ em b: λ(B↑)(x) = μ(x) ⊖ min μ[B]
    space = initial_structure(AB, [(ZERO, INF)])
    assert space.table[0b01] == (ZERO, INF)
    assert space.table[0b10] == (ZERO, ZERO)
    assert space.table[0b11] == (ZERO, INF)
    assert coreflect_c(space).lim_table == ConvSpace(AB, (0, 0b01, 0b11, 0b01)).lim_table


@pytest.mark.parametrize("name", ["q2", "i_p3"])
def test_adherence_is_attained_at_a_kernel_point(name, request):
    space = request.getfixturevalue(name)
    assert classify(space, diagonality=False).prap
    for f in space.carrier.nonempty_subsets():
        row = adh_cap(space, [f])
        for x in range(space.n):
            assert row[x] in {space.table[1 << t][x] for t in points(f)}

    inst = Instance("cap", 0, name, space)
    assert adherence_attainment(inst).status is CheckStatus.PASS


def test_tower_diagonal_law_holds_on_q2(q2):
    assert tower_diagonal_law(tower_extract(q2))


def test_tower_diagonal_law_skips_layers_without_selectors():
    abc = Carrier(("a", "b", "c"))
    # c não tem vizinhança na camada 0; o contorno parcial {b,c} não converge a b
    bottom = ConvSpace(abc, (0, 0b010, 0b001, 0, 0b011, 0b010, 0b001, 0), centered=False)
    top = ConvSpace(abc, (0,) + (0b111,) * 7)
    assert tower_diagonal_law(Tower(abc, ((ZERO, bottom), (INF, top))))
