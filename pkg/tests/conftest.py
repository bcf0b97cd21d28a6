import random

import pytest

from tamagawa.curve import Curve, SingularCurveError


@pytest.fixture(scope="session")
def pari():
    cypari2 = pytest.importorskip("cypari2")
    return cypari2.Pari()


def random_curves(seed: int, n: int, bound: int = 50) -> list[Curve]:
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        try:
            out.append(Curve(*(rng.randint(-bound, bound) for _ in range(5))))
        except SingularCurveError:
            pass
    return out
