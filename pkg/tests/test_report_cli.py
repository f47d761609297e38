import json

import pytest

from invlat.catalog import catalog_names, get_entry
from invlat.cli import main
from invlat.report import analyze, render_json

TOP_KEYS = {
    "schema", "input", "group", "profile", "verdict",
    "lattices", "split", "reflection", "quaternion", "structure",
}


@pytest.fixture(scope="module")
def reports():
    return {name: analyze(name) for name in catalog_names()}


def test_schema_shape(reports):
    for name, rep in reports.items():
        assert set(rep) == TOP_KEYS
        assert rep["schema"] == "torus-report/1"
        assert rep["input"]["name"] == name


def test_decision_table(reports):
    expected = {
        "S3-standard": ("c-i", True, True),
        "S4-standard": ("c-i", True, True),
        "WeylA2": ("c-i", True, True),
        "WeylB2": ("c-i", True, True),
        "G4": ("c-i", False, True),
        "Q8": ("c-ii", False, True),
        "C3-zeta3": ("c-i", False, True),
        "C4-zeta4": ("c-i", False, True),
        "C5-zeta5": ("none", False, False),
    }
    for name, (clause, rank_n, rank_2n) in expected.items():
        verdict = reports[name]["verdict"]
        assert verdict["clause"] == clause, name
        assert verdict["exists_rank_n"] == rank_n, name
        assert verdict["exists_rank_2n"] == rank_2n, name


def test_recipes_follow_clause(reports):
    assert [e["recipe"] for e in reports["S3-standard"]["lattices"]] == ["Zn", "ds"]
    assert [e["recipe"] for e in reports["G4"]["lattices"]] == ["O", "saturate"]
    assert [e["recipe"] for e in reports["Q8"]["lattices"]] == ["ds"]
    assert reports["C5-zeta5"]["lattices"] == []
    for rep in reports.values():
        for entry in rep["lattices"]:
            assert entry["invariant"] is True


def test_structure_tags(reports):
    assert reports["G4"]["structure"]["tags"] == ["nonrationalT", "main2", "geom"]
    assert reports["Q8"]["structure"]["tags"] == ["ratL"]
    assert reports["S3-standard"]["structure"]["tags"] == ["geom"]
    assert reports["example-non-generic"]["structure"]["tags"] == ["deform", "ratL"]
    assert reports["C5-zeta5"]["structure"]["tags"] == []


def test_abelian_conclusions(reports):
    assert reports["S3-standard"]["structure"]["abelian"] is True
    assert reports["G4"]["structure"]["abelian"] is True
    assert reports["Q8"]["structure"]["abelian"] is True
    assert reports["C5-zeta5"]["structure"]["abelian"] is None
    assert reports["example-non-generic"]["structure"]["abelian"] is False
    assert reports["example-non-ci"]["structure"]["abelian"] is True


def test_quaternion_section(reports):
    generic = reports["example-non-generic"]["quaternion"]
    assert generic["endomorphisms"]["rank"] == 4
    assert generic["endomorphisms"]["structure_tag"] == "order-in-definite-quaternion"
    ci = reports["example-non-ci"]["quaternion"]
    assert ci["endomorphisms"]["rank"] == 8
    assert ci["endomorphisms"]["center_discriminant"] == -4
    for rep_name in ["example-non-generic", "example-non-ci"]:
        sub = reports[rep_name]["quaternion"]["subfield"]
        assert sub["t"] == "-1"


def test_reflection_sections(reports):
    s3_geo = reports["S3-standard"]["reflection"]
    assert s3_geo["tags"] == ["geom-i", "geom-ii"]
    assert s3_geo["weyl_like"] is True
    g4_geo = reports["G4"]["reflection"]
    assert g4_geo["tags"] == ["geom-i", "geom-ii", "geom-iii"]
    assert g4_geo["cm"]["value"] == "1 - z3"
    assert reports["Q8"]["reflection"] is None
    assert reports["C5-zeta5"]["reflection"] is None


def test_split_sections(reports):
    q8_split = reports["Q8"]["split"]
    assert q8_split["module_rank"] == 2
    assert q8_split["order"]["discriminant"] == -4
    assert len(q8_split["factors"]) == 2
    assert q8_split["factor_isogenies"][0]["scalar"] is not None
    g4_split = reports["G4"]["split"]
    assert g4_split["order"]["discriminant"] == -3


def test_render_is_deterministic():
    a = render_json(analyze("G4"))
    b = render_json(analyze("G4"))
    assert a == b
    parsed = json.loads(a)
    assert parsed["schema"] == "torus-report/1"


def test_analyze_inline_group_dict():
    rep = analyze({
        "dimension": 2,
        "conductor": 1,
        "generators": [[-1, 1, 0, 1], [1, 0, 1, -1]],
    })
    assert rep["verdict"]["clause"] == "c-i"
    assert rep["input"]["name"] is None


# command-line entry point


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cli_analyze_human(capsys):
    code, out, err = run_cli(capsys, "analyze", "S3-standard")
    assert code == 0
    assert "verdict" in out
    assert "c-i" in out
    assert err == ""


def test_cli_analyze_json(capsys):
    code, out, _ = run_cli(capsys, "analyze", "Q8", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["verdict"]["clause"] == "c-ii"


def test_cli_analyze_group_file(tmp_path, capsys):
    path = tmp_path / "group.json"
    path.write_text(json.dumps({
        "dimension": 1,
        "conductor": 4,
        "generators": [[{"conductor": 4, "coeffs": [["0", "1"], ["1", "1"]]}]],
    }))
    code, out, _ = run_cli(capsys, "analyze", str(path), "--json")
    assert code == 0
    assert json.loads(out)["verdict"]["clause"] == "c-i"


def test_cli_catalog(capsys):
    code, out, _ = run_cli(capsys, "catalog")
    assert code == 0
    for name in catalog_names():
        assert name in out


def test_cli_construct(capsys):
    code, out, _ = run_cli(capsys, "construct", "S3-standard", "--recipe", "Zn")
    assert code == 0
    assert "rank" in out
    code, out, _ = run_cli(
        capsys, "construct", "G4", "--recipe", "O", "--json"
    )
    assert code == 0
    assert json.loads(out)["recipe"] == "O"


def test_cli_construct_custom_scalar(capsys):
    code, out, _ = run_cli(
        capsys, "construct", "S3-standard", "--recipe", "ds", "--c", "z3", "--json"
    )
    assert code == 0
    entry = json.loads(out)
    assert entry["scalar"] == "z3"
    assert entry["rank"] == 4


def test_cli_decompose(capsys):
    code, out, _ = run_cli(capsys, "decompose", "WeylB2")
    assert code == 0
    assert "line 0" in out
    assert "line 1" in out


def test_cli_exit_codes(capsys):
    code, _, err = run_cli(capsys, "analyze", "nosuch-entry")
    assert code == 2
    assert "unknown catalog name" in err

    code, _, err = run_cli(capsys, "construct", "C5-zeta5", "--recipe", "Zn")
    assert code == 2

    code, _, err = run_cli(capsys, "decompose", "Q8")
    assert code == 2

    code, _, err = run_cli(capsys, "analyze", "example-non-ci", "--cap", "3")
    assert code == 3  # the reference group closure exceeds a tiny cap


def test_cli_cap_propagates(capsys):
    code, _, err = run_cli(capsys, "analyze", "S4-standard", "--cap", "10")
    assert code == 3
    assert err != ""
