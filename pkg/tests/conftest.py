from fractions import Fraction

import pytest

from bayent import SymbolTable, WorldModel, parse_formula


@pytest.fixture
def ab():
    return SymbolTable(["a", "b"])


@pytest.fixture
def table1_world(ab):
    # rows (a,b): (0,0)=1/2, (0,1)=1/5, (1,0)=0, (1,1)=3/10
    return WorldModel(ab, [Fraction(1, 2), Fraction(1, 5), 0, Fraction(3, 10)])


@pytest.fixture
def peaked_world(ab):
    # order-preserving for the example structure: index 0 maximal, 2 and 3
    # above 1
    return WorldModel(
        ab, [Fraction(2, 5), Fraction(1, 10), Fraction(3, 10), Fraction(1, 5)]
    )


# edge list of the worked partial order: index 0 above everything, 2 and 3
# above 1, with 2 and 3 incomparable
EXAMPLE_EDGES = [(0, 1), (0, 2), (0, 3), (2, 1), (3, 1)]


@pytest.fixture
def f(ab):
    def parse(text):
        return parse_formula(text, ab)

    return parse
