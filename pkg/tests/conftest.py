import numpy as np
import pytest

from strata.extension import build_split_extension
from strata.linalg import Field
from strata.presentation import build_algebra
from strata.repcat import Representation, projective, simple

EJ2 = """algebra ej2 over Q {
  vertices: 1 2 3;
  arrows: b: 3->1, a: 1->2;
  relations: a*b;
}"""

SIX = """algebra six over Q {
  vertices: 1 2 3 4 5 6;
  arrows: a: 1->3, s: 1->2, b: 2->3, g: 2->4, d: 3->6, e: 3->5, l: 4->5;
  relations: d*b, e*b - l*g;
}"""

SIX_NO_SIGMA = """algebra six2 over Q {
  vertices: 1 2 3 4 5 6;
  arrows: a: 1->3, b: 2->3, g: 2->4, d: 3->6, e: 3->5, l: 4->5;
  relations: d*b, e*b - l*g;
}"""

KRONECKER = "algebra kr over Q { vertices: 1 2; arrows: x: 1->2, y: 1->2; }"


def module(A, dims, maps=None, name=None):
    return Representation.from_labels(A, {v: d for v, d in zip(A.vertices, dims)}, maps or {}, name=name)


@pytest.fixture(scope="session")
def ej2():
    return build_split_extension(EJ2, "b")


@pytest.fixture(scope="session")
def six():
    return build_split_extension(SIX, "b,g")


@pytest.fixture(scope="session")
def six2():
    return build_split_extension(SIX_NO_SIGMA, "b,g")


@pytest.fixture(scope="session")
def six_thetas(six):
    L = six.lam
    return [
        module(L, [1, 0, 1, 0, 0, 0], {"a": [[1]]}),
        module(L, [0, 0, 1, 1, 1, 0], {"e": [[1]], "l": [[1]]}),
        module(L, [0, 0, 0, 1, 0, 0]),
        module(L, [0, 1, 0, 0, 0, 0]),
    ]


@pytest.fixture(scope="session")
def six2_thetas(six2):
    L = six2.lam
    return [
        module(L, [1, 0, 1, 1, 1, 0], {"a": [[1]], "e": [[1]], "l": [[1]]}),
        module(L, [0, 1, 0, 0, 0, 0]),
        module(L, [0, 0, 0, 0, 0, 1]),
    ]


@pytest.fixture(scope="session")
def ej2_delta(ej2):
    return [simple(ej2.lam, i) for i in range(3)]


@pytest.fixture(scope="session")
def psi(ej2):
    G = ej2.gamma
    return [simple(G, 1), projective(G, 0), simple(G, 2)]


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture(scope="session")
def F2():
    return Field(2)


def random_monomial_text(rng, n_max=4, arrows_max=5, zeros_max=3):
    """Presentation text of a random acyclic monomial algebra."""
    n = int(rng.integers(2, n_max + 1))
    pairs = [(s, t) for s in range(n) for t in range(s + 1, n)]
    k = int(rng.integers(1, arrows_max + 1))
    arrows = [(f"a{c}", *pairs[int(rng.integers(0, len(pairs)))]) for c in range(k)]
    composable = [(x[0], y[0]) for x in arrows for y in arrows if y[2] == x[1]]
    zeros = []
    if composable:
        for c in rng.permutation(len(composable))[: int(rng.integers(0, zeros_max + 1))]:
            zeros.append(composable[int(c)])
    rel = (" relations: " + ", ".join(f"{x}*{y}" for x, y in zeros) + ";") if zeros else ""
    return "algebra r over Q { vertices: %s; arrows: %s;%s }" % (
        " ".join(str(v + 1) for v in range(n)), ", ".join(f"{a}: {s + 1}->{t + 1}" for a, s, t in arrows), rel)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.VERDICTS):
            terminalreporter.write_line(line)
