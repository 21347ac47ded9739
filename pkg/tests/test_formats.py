import pytest

from strata.formats import FormatError, format_module, parse_modules, parse_system
from strata.repcat import projective

MODS = """
# two modules
module T1 over lambda {
  dims: 1 0 1 0 0 0;
  map a = [[1]];
}
module T2 over lambda { dims: 0 0 1 1 1 0; map e = [[1]]; map l = [[1]]; }
"""


@pytest.fixture
def algs(six):
    return {"lambda": six.lam, "gamma": six.gamma}


def test_parse_modules(algs, six_thetas):
    mods = parse_modules(MODS, algs)
    assert list(mods) == ["T1", "T2"]
    assert mods["T1"].dims == six_thetas[0].dims
    assert all((a == b).all() for a, b in zip(mods["T2"].maps, six_thetas[1].maps))


def test_module_round_trip(algs, six):
    for M in [projective(six.lam, i) for i in range(6)]:
        text = format_module(M, "X", "lambda")
        N = parse_modules(text, algs)["X"]
        assert N.dims == M.dims and all((a == b).all() for a, b in zip(N.maps, M.maps))


@pytest.mark.parametrize("text", [
    "module A over nowhere { dims: 1 0 0 0 0 0; }",
    "module A over lambda { dims: 1 0; }",
    "module A over lambda { dims: 1 0 1 0 0 0; map a = [[1]; }",
    "module A over lambda { dims: 1 0 0 0 0 0; colour: red; }",
    "stray text module A over lambda { dims: 1 0 0 0 0 0; }",
    "module A over lambda { dims: 1 0 0 0 0 0; } module A over lambda { dims: 1 0 0 0 0 0; }",
])
def test_module_format_errors(algs, text):
    with pytest.raises(FormatError):
        parse_modules(text, algs)


def test_parse_system_with_builtins(algs):
    mods = parse_modules(MODS, algs)
    name, A, thetas, order = parse_system(
        "system theta over lambda { modules: T1 T2 S4 S2; order: 2 1 3 4; }", algs, mods)
    assert name == "theta" and A is algs["lambda"]
    assert order == [1, 0, 2, 3]
    assert thetas[2].dims == (0, 0, 0, 1, 0, 0)


@pytest.mark.parametrize("text", [
    "system s over lambda { modules: T9; }",
    "system s over lambda { modules: S1 S2; order: 1 1; }",
    "system s over lambda { order: 1; }",
    "system s over gamma { modules: T1; }",
])
def test_system_errors(algs, text):
    mods = parse_modules(MODS, algs)
    with pytest.raises(FormatError):
        parse_system(text, algs, mods)
