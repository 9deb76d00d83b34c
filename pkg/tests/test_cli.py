import json

import pytest

from planar_bases.cli import main


def run(capsys, *argv):
    code = main(list(argv) + ["--no-cache"])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_stacked_mrose(capsys):
    code, out, _ = run(capsys, "construct", "--kind", "stacked-mrose", "--sy", "2", "--t", "10", "--verify")
    assert code == 0
    assert out.splitlines() == ["kind=stacked-mrose k=237 target=4599x2", "VERIFIED"]


def test_min_and_save(capsys, tmp_path):
    path = tmp_path / "sols.jsonl"
    code, out, _ = run(capsys, "min", "--rect", "3x3", "--save", str(path))
    assert code == 0 and out.strip() == "rect=3x3 k=7 m=15 m_u=10"
    lines = path.read_text().splitlines()
    assert len(lines) == 15
    code, out, _ = run(capsys, "canonical-count", "--rect", "3x3", "--input", str(path))
    assert out.strip() == "m=15 m_u=10"
    code, out, _ = run(capsys, "verify", "--rect", "3x3", "--input", str(path))
    assert code == 0 and out.splitlines()[-1] == "checked=15 failed=0"


def test_verify_rejects_non_basis(capsys, tmp_path):
    path = tmp_path / "a.csv"
    path.write_text("0,0\n1,1\n")
    code, out, _ = run(capsys, "verify", "--rect", "1x1", "--input", str(path))
    assert code == 1 and "is_basis=false" in out


def test_search_show_json(capsys):
    code, out, _ = run(capsys, "search", "--rect", "1x1", "--k", "3", "--show", "json")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("rect=1x1 k=3 m=1 m_u=1")
    assert json.loads(lines[1])["points"] == [[0, 0], [1, 0], [0, 1]]


def test_mim_stats(capsys):
    code, out, _ = run(capsys, "mim", "--rect", "10x10", "--k", "20", "--stats")
    assert code == 0
    assert out.splitlines()[0] == "restricted rect=10x10 k=20 m=17 m_u=4"
    assert "allocation=(5, 5, 5, 5)" in out


def test_min_restricted(capsys):
    code, out, _ = run(capsys, "min-restricted", "--rect", "14x2")
    assert out.strip() == "restricted rect=14x2 k*=12 m=16 m_u=7"


def test_tables(capsys):
    code, out, _ = run(capsys, "table", "--name", "squares", "--max-s", "3", "--format", "csv")
    assert out == "s,k,m,m_u\n0,1,1,1\n1,3,1,1\n2,4,1,1\n3,7,15,10\n"
    code, out, _ = run(capsys, "table", "--name", "restricted-sy2", "--max-s", "6", "--format", "csv")
    assert out.splitlines()[0] == "s_x,k*,m_u"


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--constants")
    assert code == 0
    for printed in ("0.4311", "0.4190", "0.3149", "0.3585"):
        assert f"rounds to {printed}" in out
    code, out, _ = run(capsys, "bounds", "--efficiency", "--rect", "7x3", "--k", "10")
    assert "delta_k=-1" in out


@pytest.mark.parametrize("argv", [
    ["search", "--rect", "2x2", "--k", "3"],
    ["min", "--rect", "7y3"],
    ["min", "--rect", "7x3", "--bogus"],
    ["min-restricted", "--rect", "7x4"],
    ["search", "--rect", "5x4", "--k", "6", "--restricted"],
    ["construct", "--kind", "boundary", "--rect", "3x3"],
    ["construct", "--kind", "dense-sparse"],
])
def test_invalid_input_exit_one(capsys, argv):
    assert run(capsys, *argv)[0] == 1


def test_internal_error_exit_two(capsys, monkeypatch):
    import planar_bases.cli as cli

    def boom(*a, **k):
        raise RuntimeError("boom")
    monkeypatch.setattr(cli, "min_k", boom)
    assert run(capsys, "min", "--rect", "2x2")[0] == 2


def test_cache_dir_flag(capsys, tmp_path):
    code = main(["min", "--rect", "4x1", "--cache-dir", str(tmp_path)])
    capsys.readouterr()
    assert code == 0 and list(tmp_path.glob("k_4x1_a.json"))
