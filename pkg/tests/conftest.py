from fractions import Fraction

import pytest

from sl2classes.ids import NEG_I, P_MM, P_MP, P_PM, P_PP, I, Elliptic, Hyperbolic

F = Fraction

PARABOLICS = [P_PP, P_PM, P_MP, P_MM]
ELLIPTICS = [Elliptic(F(k, 12)) for k in range(1, 24) if k != 12]
HYPERBOLICS = [Hyperbolic(F(3, 2)), Hyperbolic(F(-3, 2)), Hyperbolic(F(2)), Hyperbolic(F(-2))]
GRID = PARABOLICS + ELLIPTICS + HYPERBOLICS + [I, NEG_I]
NONSCALAR = PARABOLICS + ELLIPTICS + HYPERBOLICS

GPLUS_GRID = [P_PP, P_PM] + [Elliptic(F(k, 12)) for k in range(1, 12)] + [Hyperbolic(F(3, 2)), Hyperbolic(F(2))]


@pytest.fixture
def grid():
    return list(GRID)
