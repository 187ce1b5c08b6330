import json

import pytest

from mobconj import catalog
from mobconj.cli import main


@pytest.fixture(scope="module")
def files(tmp_path_factory):
    root = tmp_path_factory.mktemp("inputs")
    out = {}
    for name, A in catalog.arrangements().items():
        p = root / f"{name}.json"
        p.write_text(json.dumps(A.to_json()))
        out[name] = str(p)
    for name, M in catalog.matroids().items():
        p = root / f"m-{name}.json"
        p.write_text(json.dumps(M.to_json()))
        out[name] = str(p)
    (root / "k3.json").write_text(json.dumps({"graph": {"vertices": 3, "edges": [[0, 1], [1, 2], [0, 2]]}}))
    out["k3-graph"] = str(root / "k3.json")
    (root / "coincide.json").write_text(json.dumps({"n": 1, "hyperplanes": [{"a": [1], "b": 0}, {"a": [1], "b": 3}]}))
    out["coincide"] = str(root / "coincide.json")
    (root / "bad.json").write_text('{"n": 2,\n "hyperplanes": [ oops ]}')
    out["bad"] = str(root / "bad.json")
    (root / "poset.json").write_text(json.dumps({"size": 4, "relations": [[0, 1], [0, 2], [1, 3], [2, 3]]}))
    out["poset"] = str(root / "poset.json")
    (root / "corrupt.json").write_text(json.dumps({"rank_table": {"n": 2, "ranks": [0, 0, 0, 1]}}))
    out["corrupt"] = str(root / "corrupt.json")
    return out


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_charpoly(capsys, files):
    assert run(capsys, "charpoly", files["triangle"])[:2] == (0, "t^2 - 3*t + 3\n")
    assert run(capsys, "charpoly", files["empty-3"])[1] == "t^3\n"
    assert run(capsys, "charpoly", files["coordinate-2"])[1] == "t^2 - 2*t + 1\n"


def test_regions(capsys, files):
    assert run(capsys, "regions", files["triangle"])[1] == "r=7, b=1\n"
    assert run(capsys, "regions", files["empty-2"])[1] == "r=1, b=1\n"
    code, out, _ = run(capsys, "regions", "--json", files["coordinate-2"])
    data = json.loads(out)
    assert (data["schema"], data["regions"], data["bounded_regions"]) == (1, 4, 0)


def test_tutte_and_sc(capsys, files):
    assert run(capsys, "tutte", files["k3-graph"])[1] == "x^2 + x + y\n"
    assert run(capsys, "sc", files["U(1,1)"])[1] == "lambda + x_0\n"


def test_verify_reciprocity(capsys, files):
    code, out, _ = run(capsys, "verify", "reciprocity", "--q", "7,5", "--json", files["triangle"])
    assert code == 0
    data = json.loads(out)
    assert data["pass"] and [r["q"] for r in data["reports"]] == [5, 7]
    assert [r["chi_bar"] for r in data["reports"]] == [43, 73]
    r7 = data["reports"][1]
    for key, val in {"q": 7, "chi_at_q": 31, "complement_count": 31, "chi_bar": 73,
                     "chi_at_minus_q_signed": 73, "prop5_sum": 73, "pass": True}.items():
        assert r7[key] == val


def test_verify_krs_text(capsys, files):
    code, out, _ = run(capsys, "verify", "krs", files["k3-graph"])
    assert code == 0 and "x^2 + x + y = " in out and out.startswith("[PASS] krs")


@pytest.mark.parametrize("kind,name", [("arr-conv", "braid-3"), ("region-conv", "rank-deficient-3"),
                                       ("kung1", "K4"), ("kung5", "multigraph-with-loop"),
                                       ("conjugation", "poset")])
def test_verify_kinds_pass(capsys, files, kind, name):
    assert run(capsys, "verify", kind, files[name])[0] == 0


def test_finite_field_guard_exit_2(capsys, files):
    code, _, err = run(capsys, "verify", "finite-field", "--q", "3", files["coincide"])
    assert code == 2 and "lattice not isomorphic at q=3" in err
    assert run(capsys, "verify", "finite-field", "--q", "5,7", files["coincide"])[0] == 0


def test_input_errors_exit_2(capsys, files):
    code, _, err = run(capsys, "charpoly", files["bad"])
    assert code == 2 and "line 2" in err
    code, _, err = run(capsys, "tutte", files["corrupt"])
    assert code == 2 and "submodularity" in err and "[0]" in err
    assert run(capsys, "verify", "reciprocity", files["triangle"])[0] == 2
    assert run(capsys, "charpoly", "/nonexistent.json")[0] == 2


def test_identity_failure_exit_1(capsys, files, monkeypatch):
    import mobconj.cli as cli
    from mobconj.report import VerificationReport

    monkeypatch.setattr(cli, "verify_region_convolution",
                        lambda A: VerificationReport("region-convolutions", False, {"a": 1, "b": 2}))
    assert run(capsys, "verify", "region-conv", files["triangle"])[0] == 1


def test_json_is_deterministic_across_workers(capsys, files):
    outs = {run(capsys, "verify", "reciprocity", "--q", "5,7", "--json", "--workers", w, files["braid-3"])[1]
            for w in ("1", "2")}
    assert len(outs) == 1
    a = run(capsys, "verify", "conjugation", "--seed", "4", "--json", files["poset"])[1]
    b = run(capsys, "verify", "conjugation", "--seed", "4", "--json", files["poset"])[1]
    assert a == b


def test_catalog_command(capsys, tmp_path):
    assert main(["catalog", "--out", str(tmp_path)]) == 0
    capsys.readouterr()
    assert (tmp_path / "arrangements" / "triangle.json").exists()
    assert run(capsys, "charpoly", str(tmp_path / "arrangements" / "braid-3.json"))[1] == "t^3 - 3*t^2 + 2*t\n"
