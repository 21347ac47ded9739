import pytest

from strata.fixtures import FIXTURES, FixtureMismatch, load_fixture, run_fixture, tampered
from strata.report import Report, validate_report


@pytest.mark.parametrize("fid", FIXTURES)
def test_fixture_manifests_hold(fid):
    rep = run_fixture(fid, seed=0)
    assert rep.status == "pass"
    d = rep.to_dict()
    validate_report(d)
    assert Report.from_json(rep.to_json()).to_dict() == d


@pytest.mark.parametrize("fid", FIXTURES)
def test_tampered_manifest_is_detected(fid):
    with pytest.raises(FixtureMismatch) as info:
        run_fixture(fid, manifest=tampered(fid))
    assert info.value.report.status == "fail"
    assert run_fixture(fid, manifest=tampered(fid), strict=False).status == "fail"


def test_reports_are_deterministic():
    a = run_fixture("six_vertex_no_sigma", seed=3).to_json()
    b = run_fixture("six_vertex_no_sigma", seed=3).to_json()
    assert a == b


def test_fixture_over_finite_field():
    from strata.linalg import Field

    fx = load_fixture("ej2", field=Field(3))
    assert fx.ext.field == Field(3) and fx.ext.gamma.dim == 5


def test_unknown_fixture():
    with pytest.raises(KeyError):
        load_fixture("nope")


def test_status_combination():
    from strata.report import combine_status

    assert combine_status([]) == "pass"
    assert combine_status(["pass", "hypothesis_failed"]) == "hypothesis_failed"
    assert combine_status(["hypothesis_failed", "fail", "pass"]) == "fail"
    assert combine_status(["fail", "error"]) == "error"


def test_schema_rejects_bad_status():
    import jsonschema

    d = run_fixture("ej2").to_dict()
    d["status"] = "maybe"
    with pytest.raises(jsonschema.ValidationError):
        validate_report(d)
