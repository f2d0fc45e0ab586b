import json
import subprocess
import sys

import pytest

from kprimitive.cli import main
from kprimitive.corpus import corpus
from kprimitive.primitivity import is_k_primitive


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, lines):
    path = tmp_path / name
    path.write_text("\n".join(lines) + "\n")
    return str(path)


def test_check_violation_and_certificate(tmp_path, capsys):
    code, out, _ = run(capsys, "check", write(tmp_path, "a.txt", ["6", "10", "15"]), "--k", "2")
    data = json.loads(out)
    assert code == 1 and data["schema_version"] == 1
    assert data["certificate"]["a"] == 6 and data["certificate"]["witnesses"] == [10, 15]


def test_check_primes_ok(tmp_path, capsys):
    code, out, _ = run(capsys, "check", write(tmp_path, "p.txt", ["2", "3", "5", "7"]), "--k", "3")
    assert code == 0 and json.loads(out)["ok"]


def test_check_input_errors(tmp_path, capsys):
    code, _, err = run(capsys, "check", write(tmp_path, "bad.txt", ["6", "1"]))
    assert code == 2 and "line 2" in err
    code, _, _ = run(capsys, "check", str(tmp_path / "missing.txt"))
    assert code == 2


def test_reduce(tmp_path, capsys):
    code, out, _ = run(capsys, "reduce", write(tmp_path, "r.txt", ["30030"]))
    assert code == 0 and json.loads(out)["reduced"] == [2]
    code, out, _ = run(capsys, "reduce", write(tmp_path, "s.txt", ["2", "3", "5"]))
    assert json.loads(out)["reduced"] == [2, 3, 5] and json.loads(out)["steps"] == []
    code, _, _ = run(capsys, "reduce", write(tmp_path, "n.txt", ["6", "10", "15"]))
    assert code == 1


def test_search(capsys):
    code, out, _ = run(capsys, "search", "--n", "2", "--k", "2", "--caps", "6")
    data = json.loads(out)
    assert code == 0 and data["cardinality"] == 2 and data["exhaustive"]


def test_search_checkpoint_resume(tmp_path, capsys):
    ck = str(tmp_path / "ck.json")
    argv = ["search", "--n", "3", "--caps", "3", "--checkpoint", ck, "--budget", "40"]
    for _ in range(500):
        code, out, _ = run(capsys, *argv)
        data = json.loads(out)
        if data["exhaustive"]:
            break
    _, ref, _ = run(capsys, "search", "--n", "3", "--caps", "3")
    assert data["best"] == json.loads(ref)["best"]


def test_constants(capsys):
    code, out, _ = run(capsys, "constants", "--name", "egamma")
    assert code == 0 and json.loads(out)["value"].startswith("1.78107241")
    code, out, _ = run(capsys, "constants", "--name", "C", "--limit", "100000", "--tail-mode", "pnt-estimate")
    assert abs(float(json.loads(out)["value"]) - 1.636616) < 1e-3


def test_tables(capsys):
    code, out, _ = run(capsys, "tables", "--section", "3.1")
    assert code == 0 and len(out.strip().splitlines()) == 9
    code, out, _ = run(capsys, "tables", "--section", "smallY", "--format", "json")
    assert json.loads(out)["values"] == ["0.1093463", "0.1631052", "0.1907220", "0.2753295"]
    code, out, _ = run(capsys, "tables", "--section", "3.2", "--format", "json")
    assert code == 0 and json.loads(out)["schema_version"] == 1


def test_construct_roundtrip(tmp_path, capsys):
    path = str(tmp_path / "e38.txt")
    assert run(capsys, "construct", "--kind", "erdos38", "--x", "1000", "-o", path)[0] == 0
    code, out, _ = run(capsys, "check", path, "--k", "2")
    assert code == 0 and json.loads(out)["size"] == 165
    code, out, _ = run(capsys, "construct", "--kind", "steiner", "--v", "9")
    assert len([l for l in out.splitlines() if not l.startswith("#")]) == 12
    code, out, _ = run(capsys, "construct", "--kind", "omega-level", "--x", "16")
    assert [l for l in out.splitlines() if not l.startswith("#")] == ["2", "3", "5", "7", "11", "13"]
    assert run(capsys, "construct", "--kind", "steiner", "--v", "5")[0] == 2
    assert run(capsys, "construct", "--kind", "erdos38")[0] == 2


def test_corpus_seed_is_reproducible(capsys):
    _, a, _ = run(capsys, "--seed", "3", "construct", "--kind", "corpus", "--count", "4")
    _, b, _ = run(capsys, "--seed", "3", "construct", "--kind", "corpus", "--count", "4")
    assert a == b and a.count("# set") == 4


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kprimitive.cli", "tables", "--section", "smallY"], capture_output=True, text=True)
    assert proc.returncode == 0 and "0.2753295" in proc.stdout


@pytest.mark.parametrize("kind", ["random", "smooth", "steiner"])
def test_corpus_generators_are_two_primitive(kind):
    sets = corpus(seed=1, count=15, kind=kind)
    assert sets == corpus(seed=1, count=15, kind=kind)
    assert all(is_k_primitive(A, 2) for A in sets)
