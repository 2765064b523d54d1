import random
from fractions import Fraction
from pathlib import Path

import pytest

from numrange.exactpoly import GaussianRational, TriPoly, parse_poly
from numrange.hermitian import GaussianRationalMatrix, load_matrix

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
GOLDEN = FIXTURES / "golden"

YVARS = ("y0", "y1", "y2")
XVARS = ("x0", "x1", "x2")


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN


def fixture_matrix(name: str) -> GaussianRationalMatrix:
    return load_matrix(FIXTURES / f"{name}.json")


def golden_poly(name: str, vars) -> TriPoly:
    return parse_poly((GOLDEN / name).read_text().strip(), vars)


def random_gaussian_matrix(n: int, rng: random.Random,
                           complex_entries: bool = True) -> GaussianRationalMatrix:
    def entry():
        re = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        im = Fraction(rng.randint(-4, 4), rng.randint(1, 3)) if complex_entries else Fraction(0)
        return GaussianRational(re, im)

    return GaussianRationalMatrix([[entry() for _ in range(n)] for _ in range(n)])


def random_tripoly(rng: random.Random, vars=YVARS, max_deg: int = 3,
                   terms: int = 4) -> TriPoly:
    t = {}
    for _ in range(terms):
        e = [rng.randint(0, max_deg) for _ in range(3)]
        while sum(e) > max_deg:
            e[rng.randrange(3)] = max(0, e[rng.randrange(3)] - 1)
        t[tuple(e)] = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
    return TriPoly(vars, t)
