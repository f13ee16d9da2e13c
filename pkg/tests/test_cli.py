import json
import subprocess
import sys

import pytest

from lenscob.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err


def test_reduce(capsys):
    assert run(capsys, "reduce", "L(8,5)#L(2,1)")[:2] == (0, "∅ (bounds a Q-homology ball)")
    assert run(capsys, "reduce", "L(8,5)")[:2] == (0, "L(2,1)")
    code, out, _ = run(capsys, "reduce", "--trace", "--json", "L(8,5)#L(7,2)")
    d = json.loads(out)
    assert d["reduced"] == "L(2,1) # L(7,2)" and d["trace"][0]["rule"] == "Fn-replacement"


def test_negative_term_is_not_an_option(capsys):
    assert run(capsys, "reduce", "-L(7,2)")[:2] == (0, "L(7,3)")
    assert run(capsys, "reduce", "-2*L(5,2)")[:2] == (0, "∅ (bounds a Q-homology ball)")


def test_cw_and_dinv(capsys):
    assert run(capsys, "cw", "3", "1")[:2] == (0, "-1/18")
    code, out, _ = run(capsys, "dinv", "2", "1")
    assert out.splitlines() == ["0: -1/4", "1: 1/4"]
    code, out, _ = run(capsys, "dinv", "5", "4", "--surgery", "--trace", "--json")
    d = json.loads(out)
    assert len(d["d"]) == 5 and "label_map" in d


def test_predicates_exit_codes(capsys):
    assert run(capsys, "bounds", "L(4,1)")[0] == 0
    assert run(capsys, "bounds", "L(3,1)")[0] == 1
    assert run(capsys, "cobordant", "L(8,5)", "L(2,1)")[0] == 0
    assert run(capsys, "cobordant", "L(2,1)", "L(3,1)")[0] == 1
    assert run(capsys, "order", "L(7,1)")[1] == "infinite"
    assert run(capsys, "h1", "L(9,2)#L(3,1)")[1] == "Z/9 + Z/3"
    assert run(capsys, "h1", "--reduced", "L(8,5)")[1] == "Z/2"


def test_obstruct(capsys):
    code, out, _ = run(capsys, "obstruct", "surgery", "--p", "11", "--q", "1", "--v", "1,0",
                       "--g4", "1", "--nu-plus")
    assert code == 1 and out.startswith("obstructed (rule: lens-subgroup)")
    code, out, _ = run(capsys, "obstruct", "surgery", "--p", "5", "--v", "1,0", "--g4", "1",
                       "--nu-plus", "--json")
    assert code == 0 and json.loads(out)["verdict"] == "inconclusive"
    assert run(capsys, "obstruct", "surgery", "--p", "7", "--q", "6", "--v", "1,0")[0] == 1
    assert run(capsys, "obstruct", "homology", "--h1", "3,3", "L(9,1)")[0] == 1
    assert run(capsys, "obstruct", "nonsplit", "--a", "3", "--b", "6", "L(18,1)")[0] == 1
    assert run(capsys, "obstruct", "nonsplit", "--a", "2", "--b", "2", "L(4,1)")[0] == 2
    assert run(capsys, "obstruct", "metabolizer", "L(2,1)#L(2,1)")[0] == 0
    assert run(capsys, "obstruct", "metabolizer", "L(3,1)")[0] == 1


def test_embed(capsys):
    code, out, _ = run(capsys, "embed", "--trace", "L(3,1)#L(3,2)")
    assert code == 0 and out.splitlines()[0] == "found"
    assert run(capsys, "embed", "--rank", "2", "L(3,1)")[:2] == (1, "absent")
    assert run(capsys, "embed", "--node-budget", "3", "L(49,48)")[:2] == (3, "undecided")


def test_detmin(capsys):
    assert run(capsys, "detmin", "L(9,2)#L(9,7)")[1] == "unknot; det = 1"
    assert run(capsys, "detmin", "L(3,1)")[1] == "K(3,1); det = 3"
    assert run(capsys, "detmin", "L(4,1)")[0] == 2


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    code, _, err = run(capsys, "reduce", "L(4,2")
    assert code == 2 and "byte 5" in err
    assert run(capsys, "reduce", "L(4,2)")[0] == 2
    assert run(capsys, "cw", "4", "2")[0] == 2


def test_undecided_membership(capsys):
    assert run(capsys, "reduce", "--node-budget", "1", "L(144,143)")[0] == 3


def test_output_identical_across_worker_counts(capsys):
    expr = "L(17,5)#L(17,12)#L(9,2)#L(9,7)"
    outs = {run(capsys, "embed", "--json", "--trace", "--jobs", str(j), expr)[1] for j in (1, 2)}
    assert len(outs) == 1


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "lenscob", "cw", "3", "1"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "-1/18"
