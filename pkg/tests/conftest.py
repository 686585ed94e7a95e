import pytest

from hyperconv.cap import embed_i
from hyperconv.document import parse_space
from hyperconv.filesystem import read_fixture


@pytest.fixture
def p3():
    return parse_space(read_fixture("P3"))


@pytest.fixture
def q2():
    return parse_space(read_fixture("Q2"))


@pytest.fixture
def i_p3(p3):
    return embed_i(p3)
