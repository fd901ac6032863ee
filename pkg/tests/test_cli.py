import json
import re
import shutil
import subprocess
import sys

import pytest

from chevmod.cli import main, run
from chevmod.tables.dataset import DATA_DIR


def _json(argv):
    code, doc = run(argv + ["--format", "json"])
    return code, json.loads(doc.render())


def test_roots_json():
    code, p = _json(["roots", "E8"])
    assert code == 0
    assert p["schema"] == 1 and p["command"] == "roots"
    assert p["positive_roots"] == 120 and p["dim"] == 248
    assert p["highest_root"] == "23465432"


def test_grade_text_and_json_agree():
    code, p = _json(["grade", "E8", "--node", "4"])
    assert code == 0 and p["dims"] == [30, 30, 20, 15, 6, 5]
    code, doc = run(["grade", "E8", "--node", "4"])
    text = doc.render()
    assert doc.format == "text"
    head = re.search(r"dims ([\d ]+)", text).group(1).split()
    assert list(map(int, head)) == p["dims"]
    piece_dims = [int(x) for x in re.findall(r"u_\d+: dim\s+(\d+)", text)]
    assert piece_dims == p["dims"]


def test_classical_text_and_json_agree():
    code, p = _json(["classical", "bilinear", "3", "6"])
    assert code == 0
    _, doc = run(["classical", "bilinear", "3", "6"])
    text_dims = [int(x) for x in re.findall(r": dim (\d+)", doc.render())]
    assert text_dims == [o["dim"] for o in p["orbits"]]
    assert p["count"] == len(p["orbits"])
    assert sum(1 for o in p["orbits"] if o["split_tag"]) == 2


@pytest.mark.parametrize(
    "argv,count",
    [(["classical", "tensor", "3", "5"], 4), (["classical", "sym2", "4"], 5), (["classical", "ext2", "7"], 4)],
)
def test_classical_counts(argv, count):
    code, p = _json(argv)
    assert code == 0 and p["count"] == count


def test_dynkin():
    code, p = _json(["dynkin", "E7", "--element", "2234321"])
    assert code == 0
    assert p["wdd"] == "1000000" and p["orbit_dim"] == 34 and p["minimal"] is True
    code, doc = run(["dynkin", "E7", "--element", "2234321"])
    assert doc.render() == "1000000 (orbit dim 34), minimal orbit"


def test_orbits_json():
    code, p = _json(["orbits", "E7", "--node", "7"])
    assert code == 0
    rows = p["tables"][0]["rows"]
    assert [r["computed_dim"] for r in rows] == [27, 26, 17, 0]
    assert all(r["status"] == "ok" for r in rows)


def test_verify_group():
    code, p = _json(["verify", "--group", "G2"])
    assert code == 0 and p["ok"] is True and p["records"] == 6


def test_lemma_chain():
    code, p = _json(["lemma-chain", "--n", "5"])
    assert code == 0 and p["passed"] is True


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        [],
        ["roots", "X9"],
        ["grade", "E8"],
        ["grade", "E8", "--node", "9"],
        ["lemma-chain", "--n", "4"],
        ["classical", "bilinear", "2", "5", "--form", "skew"],
        ["dynkin", "E7", "--element", "99"],
        ["orbits", "A3", "--node", "1"],
    ],
)
def test_usage_and_domain_errors(argv):
    code, doc = run(argv)
    assert code == 2
    assert doc.render().startswith("error:")
    code, p = _json(argv)
    assert code == 2 and "error" in p


def test_failure_exit_code(tmp_path):
    shutil.copytree(DATA_DIR, tmp_path / "data")
    f = tmp_path / "data" / "g2_node2.txt"
    f.write_text(f.read_text().replace("orbit 31 dim 2 wdd 01", "orbit 31 dim 3 wdd 01"))
    code, p = _json(["verify", "--group", "G2", "--dataset", str(tmp_path / "data")])
    assert code == 1 and p["ok"] is False and len(p["failures"]) == 1


def test_main_streams(capsys):
    assert main(["roots", "G2"]) == 0
    out = capsys.readouterr()
    assert "G2" in out.out and out.err == ""
    assert main(["roots", "Q2"]) == 2
    out = capsys.readouterr()
    assert out.out == "" and out.err.startswith("error:")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "chevmod", "roots", "C2", "--format", "json"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["roots"] == 8
