import json

from liefact.cli import main
from liefact.exactmath import Field
from liefact import liecore, matched

Q = Field.rationals()


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_l3(tmp_path):
    path = tmp_path / "l3.json"
    liecore.dump_algebra(matched.make_l(1, Q), path)
    return str(path)


def test_validate_ok(tmp_path, capsys):
    path = write_l3(tmp_path)
    code, out, _ = run(capsys, "validate", path)
    assert code == 0
    assert "Jacobi: OK" in out and "dim 3" in out and "[3, 2, 0]" in out


def test_validate_jacobi_failure(tmp_path, capsys):
    bad = {
        "field": {"kind": "Q"},
        "dim": 3,
        "basis": ["e1", "e2", "e3"],
        "brackets": [
            {"lhs": "e1", "rhs": "e2", "out": [["e3", "1"]]},
            {"lhs": "e1", "rhs": "e3", "out": [["e1", "1"]]},
        ],
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, out, _ = run(capsys, "validate", str(path))
    assert code == 1
    assert "FAIL" in out


def test_parse_error_exit_code(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "validate", str(path))
    assert code == 2
    assert "line" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "validate", "/nonexistent/file.json")
    assert code == 2


def test_families_roundtrip(tmp_path, capsys):
    out_path = tmp_path / "L6.json"
    code, _, _ = run(capsys, "families", "--make", "L", "--n", "2", "--field", "Q", "--out", str(out_path))
    assert code == 0
    code, out, _ = run(capsys, "validate", str(out_path))
    assert code == 0 and "Jacobi: OK" in out
    assert liecore.load_algebra(out_path) == matched.make_L(2, Q)


def test_families_requires_params(capsys):
    code, _, err = run(capsys, "families", "--make", "l1", "--field", "Q")
    assert code == 2 and "lambda0" in err
    code, _, err = run(capsys, "families", "--make", "nosuch")
    assert code == 2


def test_info_json(tmp_path, capsys):
    path = write_l3(tmp_path)
    code, out, _ = run(capsys, "info", path, "--json")
    assert code == 0
    data = json.loads(out)
    assert data["derived_dims"] == [3, 2, 0]
    assert data["perfect"] is False
    assert data["solvable_length"] == 2


def test_derivations_cli(tmp_path, capsys):
    h5 = tmp_path / "h5.json"
    run(capsys, "families", "--make", "h5", "--field", "Q", "--out", str(h5))
    code, out, _ = run(capsys, "derivations", str(h5), "--json")
    assert code == 0
    assert json.loads(out)["dim"] == 6


def test_twisted_derivations_cli(tmp_path, capsys):
    path = write_l3(tmp_path)
    code, out, _ = run(capsys, "twisted-derivations", path, "--lambda", "G=1", "--json")
    assert code == 0
    assert json.loads(out)["dim"] == 3
    code, _, err = run(capsys, "twisted-derivations", path, "--lambda", "E=1")
    assert code == 1  # inadmissible covector is a mathematical failure


def test_pair_commands(tmp_path, capsys):
    pair = tmp_path / "pair.json"
    code, _, _ = run(
        capsys, "families", "--make", "pair-L", "--n", "1", "--field", "Fp", "--p", "5",
        "--out", str(pair),
    )
    assert code == 0
    code, out, _ = run(capsys, "matched-check", "--pair", str(pair))
    assert code == 0 and "OK" in out

    code, out, _ = run(capsys, "deform-maps", "--pair", str(pair), "--json")
    assert code == 0 and json.loads(out)["count"] == 29

    code, out, _ = run(capsys, "complements", "--pair", str(pair), "--json")
    assert code == 0
    data = json.loads(out)
    assert data["index"] == "3" and sorted(data["class_sizes"]) == [1, 4, 24]

    out_alg = tmp_path / "L4.json"
    code, _, _ = run(capsys, "bicrossed", "--pair", str(pair), "--out", str(out_alg))
    assert code == 0
    loaded = liecore.load_algebra(out_alg)
    assert loaded.permuted([1, 2, 3, 0]).same_brackets(matched.make_L(1, Field.gf(5)))


def test_bicrossed_rejects_bad_pair(tmp_path, capsys):
    pair = tmp_path / "pair.json"
    run(capsys, "families", "--make", "pair-L", "--n", "1", "--field", "Q", "--out", str(pair))
    data = json.loads(pair.read_text())
    data["left_action"] = [{"x": "G", "g": "H", "out": [["H", "-1"]]}]
    bad = tmp_path / "bad_pair.json"
    bad.write_text(json.dumps(data))
    code, out, _ = run(capsys, "bicrossed", "--pair", str(bad))
    assert code == 1
    assert "compat" in out or "module" in out


def test_iso_and_aut_cli(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    run(capsys, "families", "--make", "Lalpha", "--alpha", "2", "--field", "Fp", "--p", "7", "--out", str(a))
    run(capsys, "families", "--make", "Lalpha", "--alpha", "4", "--field", "Fp", "--p", "7", "--out", str(b))
    code, out, _ = run(capsys, "iso", "--a", str(a), "--b", str(b), "--json")
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "yes" and data["witness"] is not None

    ab2 = tmp_path / "ab2.json"
    liecore.dump_algebra(liecore.LieAlgebra.abelian(Field.gf(3), 2), ab2)
    code, out, _ = run(capsys, "aut", "--algebra", str(ab2), "--json")
    assert code == 0 and json.loads(out)["count"] == 48


def test_aut_triples_cli(tmp_path, capsys):
    sl2 = tmp_path / "sl2.json"
    run(capsys, "families", "--make", "sl2", "--field", "Fp", "--p", "3", "--out", str(sl2))
    alg = matched.make_sl2(Field.gf(3))
    delta_file = tmp_path / "delta.json"
    delta_file.write_text(json.dumps(alg.ad((Field.gf(3).one, Field.gf(3).zero, Field.gf(3).zero)).to_json()))
    code, out, _ = run(capsys, "aut", "--algebra", str(sl2), "--delta", str(delta_file), "--json")
    assert code == 0
    assert json.loads(out)["count"] == 48


def test_paper_verify_cli(capsys):
    code, out, _ = run(capsys, "paper-verify", "h5-der-dim")
    assert code == 0 and "PASS h5-der-dim" in out
    code, out, _ = run(capsys, "paper-verify", "m4-index", "--p", "7")
    assert code == 0 and "expected 4, got 4" in out
    code, _, err = run(capsys, "paper-verify", "no-such-scenario")
    assert code == 2
    code, _, err = run(capsys, "paper-verify", "h5-der-dim", "--p", "5")
    assert code == 2  # rationals-only scenario rejects --p


def test_json_output_stable(tmp_path, capsys):
    pair = tmp_path / "pair.json"
    run(capsys, "families", "--make", "pair-m", "--field", "Fp", "--p", "5", "--out", str(pair))
    code, out1, _ = run(capsys, "complements", "--pair", str(pair), "--json")
    code2, out2, _ = run(capsys, "complements", "--pair", str(pair), "--json")
    assert code == code2 == 0
    assert out1 == out2

    code, v1, _ = run(capsys, "paper-verify", "defmaps-m", "--json")
    code2, v2, _ = run(capsys, "paper-verify", "defmaps-m", "--json")
    assert code == code2 == 0
    assert v1 == v2


def test_complements_cli_infinite_index(tmp_path, capsys):
    pair = tmp_path / "pairQ.json"
    run(capsys, "families", "--make", "pair-m", "--field", "Q", "--out", str(pair))
    code, out, _ = run(capsys, "complements", "--pair", str(pair), "--json")
    assert code == 0
    data = json.loads(out)
    assert data["index"] == "infinite" and data["deformation_count"] is None
