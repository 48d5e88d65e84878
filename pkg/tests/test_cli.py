"""Command-line interface: subcommands, formats, exit codes."""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from qalcove.cli import main, table_lines
from qalcove.qbg import QBG

GOLDEN = Path(__file__).parent / "golden"


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


# -- tables ------------------------------------------------------------------


def test_tables_match_golden(capsys):
    code, out, _ = run(["tables", "--rank", "3"], capsys)
    assert code == 0
    expected = "\n\n".join(
        (GOLDEN / f"table{t}.txt").read_text().rstrip("\n") for t in (1, 2, 3))
    assert out.rstrip("\n") == expected


def test_table_lines_per_table_golden():
    qbg = QBG(3)
    for t in (1, 2, 3):
        expected = (GOLDEN / f"table{t}.txt").read_text().rstrip("\n")
        assert "\n".join(table_lines(qbg, t)) == expected


def test_tables_rejects_other_ranks(capsys):
    with pytest.raises(SystemExit):
        main(["tables", "--rank", "2"])


# -- verify ------------------------------------------------------------------


def test_verify_rank2_sweep_passes(capsys):
    code, out, _ = run(["verify", "--rank", "2"], capsys)
    assert code == 0
    assert out.strip().splitlines()[-1].startswith("48/48 verified")


def test_verify_json_single_instance(capsys):
    code, out, _ = run(
        ["verify", "--rank", "2", "--w", "s1", "--m", "1",
         "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["ok"] is True
    assert len(data["reports"]) == 3  # first, second, key
    assert all(r["status"] == "verified" for r in data["reports"])


def test_verify_cf_variant(capsys):
    code, out, _ = run(
        ["verify", "--rank", "2", "--variant", "cf"], capsys)
    assert code == 0
    assert "cancel-free" in out


def test_verify_parallel_matches_serial(capsys):
    _, out1, _ = run(["verify", "--rank", "2", "--format", "json"], capsys)
    _, out2, _ = run(["verify", "--rank", "2", "--format", "json",
                      "--jobs", "2"], capsys)
    inst1 = [r["instance"] for r in json.loads(out1)["reports"]]
    inst2 = [r["instance"] for r in json.loads(out2)["reports"]]
    assert inst1 == inst2 and len(inst1) == 48


def test_verify_sampling_is_seeded(capsys):
    code, out1, _ = run(["verify", "--rank", "2", "--sample", "5",
                         "--seed", "7", "--format", "json"], capsys)
    assert code == 0
    _, out2, _ = run(["verify", "--rank", "2", "--sample", "5",
                      "--seed", "7", "--format", "json"], capsys)
    inst1 = [r["instance"] for r in json.loads(out1)["reports"]]
    inst2 = [r["instance"] for r in json.loads(out2)["reports"]]
    assert inst1 == inst2 and len(inst1) == 5


def test_verify_nonzero_xi(capsys):
    code, out, _ = run(
        ["verify", "--rank", "3", "--w", "s3 s2", "--m", "2",
         "--xi", "1,0,-1", "--variant", "first,second,cf"], capsys)
    assert code == 0
    assert "xi=[1,0,-1]" in out


def test_verify_bad_window_is_exit_2(capsys):
    code, _, err = run(["verify", "--rank", "2", "--w", "[1,2,3]"], capsys)
    assert code == 2
    assert "window rank" in err


def test_verify_unknown_variant(capsys):
    with pytest.raises(SystemExit):
        main(["verify", "--rank", "2", "--variant", "bogus"])


# -- scan-conjecture -----------------------------------------------------------


def test_scan_conjecture_rank2(capsys):
    code, out, _ = run(["scan-conjecture", "--rank", "2",
                        "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["expectation_holds"] is True
    assert data["counterexamples"] == []
    assert len(data["working"]) == 16  # 8 elements x 2 letters
    assert all(entry["l_set"] for entry in data["working"])


def test_scan_conjecture_single_instance(capsys):
    code, out, _ = run(["scan-conjecture", "--rank", "3", "--w", "s3 s2",
                        "--m", "2"], capsys)
    assert code == 0
    assert "l-set=[3]" in out  # l = 2 fails, l = n works here


# -- qbg ------------------------------------------------------------------------


def test_qbg_json_export(capsys):
    code, out, _ = run(["qbg", "--rank", "2", "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert len(data["vertices"]) == 8
    assert len(data["edges"]) == 22
    kinds = {e["kind"] for e in data["edges"]}
    assert kinds == {"B", "Q"}


def test_qbg_text_header(capsys):
    code, out, _ = run(["qbg", "--rank", "2"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "qbg rank 2: 8 vertices, 22 edges"


# -- expand -----------------------------------------------------------------------


def test_expand_direct_form(capsys):
    code, out, _ = run(["expand", "--rank", "2", "--w", "s1", "--k", "1",
                        "--sign", "plus"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 4
    assert all("(lam)" in ln for ln in lines)
    assert any("V[2,1](lam)" in ln for ln in lines)


def test_expand_conj_latex_term_count(capsys):
    code, out, _ = run(["expand", "--rank", "3", "--w", "s3 s2", "--m", "2",
                        "--variant", "conj", "--l", "3",
                        "--format", "latex"], capsys)
    assert code == 0
    assert out.count("\\operatorname{gch}") == 14


def test_expand_json_round_trips(capsys):
    code, out, _ = run(["expand", "--rank", "2", "--m", "1",
                        "--variant", "cf", "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert all({"w", "mu", "numer", "atoms"} <= set(term) for term in data)


def test_expand_needs_k_or_m(capsys):
    with pytest.raises(SystemExit):
        main(["expand", "--rank", "2"])


def test_expand_rejects_xi_on_direct_form(capsys):
    with pytest.raises(SystemExit):
        main(["expand", "--rank", "2", "--k", "1", "--xi", "1,0"])


# -- plumbing ----------------------------------------------------------------------


def test_config_file_defaults(tmp_path, capsys):
    cfg = tmp_path / "cfg"
    cfg.write_text("rank=2\nformat=json\n")
    code, out, _ = run(["--config", str(cfg), "qbg"], capsys)
    assert code == 0
    assert json.loads(out)["rank"] == 2


def test_config_does_not_override_explicit_flag(tmp_path, capsys):
    cfg = tmp_path / "cfg"
    cfg.write_text("rank=3\n")
    code, out, _ = run(["--config", str(cfg), "qbg", "--rank", "2"], capsys)
    assert code == 0
    assert out.splitlines()[0].startswith("qbg rank 2")


def test_out_flag_writes_file(tmp_path, capsys):
    dest = tmp_path / "t.txt"
    code, out, _ = run(["tables", "--rank", "3", "--out", str(dest)], capsys)
    assert code == 0
    assert out == ""
    assert dest.read_text().startswith("table 1 (rank 3)")


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "qalcove.cli", "tables", "--rank", "3"],
        capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.startswith("table 1 (rank 3)")
