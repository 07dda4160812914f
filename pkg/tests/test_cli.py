import json
import subprocess
import sys

import pytest

from isingog.cli import main, parse_input
from isingog.errors import NotSymmetric, ParseError
from conftest import hub


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


SINGLE = {"n": 2, "vertices": ["b1", "b2"], "boundary": ["b1", "b2"],
          "edges": [{"u": "b1", "v": "b2", "x": "2/4"}], "rotations": {"b1": [0], "b2": [0]}}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out else None), err


def test_parse_normalizes(tmp_path):
    net = parse_input(write(tmp_path, "net.json", SINGLE))
    assert net.n == 2 and str(net.x[0]) == "1/2"


def test_parse_errors(tmp_path):
    with pytest.raises(NotSymmetric):
        parse_input(write(tmp_path, "m.json", {"n": 2, "entries": [["1", "1/2"], ["1/3", "1"]]}))
    with pytest.raises(ParseError, match="line 1"):
        parse_input(write(tmp_path, "bad.json", "{oops"))
    with pytest.raises(ParseError):
        parse_input(write(tmp_path, "other.json", {"what": 1}))


def test_correlations_and_round_trip(tmp_path, capsys):
    net = write(tmp_path, "net.json", SINGLE)
    code, m, _ = run(capsys, "correlations", net)
    assert code == 0 and m == {"n": 2, "entries": [["1/1", "1/2"], ["1/2", "1/1"]]}
    mpath = write(tmp_path, "m.json", json.dumps(m, indent=2) + "\n")
    _, emb, _ = run(capsys, "embed", mpath)
    assert emb["pluecker"]["1,4"] == "3/4"
    epath = write(tmp_path, "e.json", emb)
    main(["check", "--recover", epath])
    assert capsys.readouterr().out == open(mpath).read()


def test_check_certificate(tmp_path, capsys):
    code, doc, _ = run(capsys, "check", write(tmp_path, "net.json", SINGLE))
    assert code == 0 and doc["og"] and doc["tnn"]
    assert doc["cell"]["pairing"] == [[1, 3], [2, 4]]


def test_check_not_og(tmp_path, capsys):
    point = {"matrix": [["1", "0", "1", "0"], ["0", "1", "0", "1"]]}
    code, doc, _ = run(capsys, "check", write(tmp_path, "p.json", point))
    assert code == 0 and not doc["og"]


def test_dual(tmp_path, capsys):
    code, doc, _ = run(capsys, "dual", write(tmp_path, "net.json", SINGLE))
    assert doc["network"]["edges"][0]["x"] == "1/3" and doc["cyclic_shift_match"] is True


def test_inverse(tmp_path, capsys):
    net = write(tmp_path, "net.json", SINGLE)
    m = write(tmp_path, "m.json", {"n": 2, "entries": [["1", "1/2"], ["1/2", "1"]]})
    code, doc, _ = run(capsys, "inverse", net, m)
    assert code == 0 and doc["edges"] == {"0": "1/2"}
    assert doc["trace"][0]["c"] == "4/5"


def test_inverse_inconsistent_exit_2(tmp_path, capsys):
    net = write(tmp_path, "net.json", SINGLE)
    m = write(tmp_path, "m.json", {"n": 2, "entries": [["1", "0"], ["0", "1"]]})
    code, doc, err = run(capsys, "inverse", net, m)
    assert code == 2 and doc is None and json.loads(err)["error"] == "Inconsistent"


STAR = {"n": 3, "vertices": ["b1", "b2", "b3", "v"], "boundary": ["b1", "b2", "b3"],
        "edges": [{"u": "v", "v": f"b{i}"} for i in (1, 2, 3)],
        "rotations": {"b1": [0], "b2": [1], "b3": [2], "v": [0, 1, 2]}}


def test_inverse_approx(tmp_path, capsys):
    # m_ij = x_i x_j = 1/2 forces x = 1/sqrt(2) on every spike
    net = write(tmp_path, "star.json", STAR)
    half = "1/2"
    m = write(tmp_path, "m.json", {"n": 3, "entries": [["1", half, half], [half, "1", half],
                                                     [half, half, "1"]]})
    code, _, err = run(capsys, "inverse", net, m)
    assert code == 2 and "square" in json.loads(err)["message"]
    code, doc, _ = run(capsys, "inverse", net, m, "--approx")
    assert code == 0 and doc["approx"] is True
    assert all(abs(x - 2 ** -0.5) < 1e-12 for x in doc["edges"].values())


def test_validation_exit_1(tmp_path, capsys):
    code, _, err = run(capsys, "correlations", str(tmp_path / "missing.json"))
    assert code == 1 and json.loads(err)["error"] == "ParseError"
    bad = dict(SINGLE, edges=[{"u": "b1", "v": "b2", "x": "3/2"}])
    code, _, err = run(capsys, "correlations", write(tmp_path, "bad.json", bad))
    assert code == 1 and json.loads(err)["error"] == "CouplingOutOfRange"


def test_griffiths(tmp_path, capsys):
    net = write(tmp_path, "net.json", SINGLE)
    code, doc, _ = run(capsys, "griffiths", net, "--A", "1,2", "--B", "1,2")
    assert doc["second"]["lhs"] == doc["second"]["rhs"] == "3/4"
    code, doc, _ = run(capsys, "griffiths", net, "--A", "1", "--B", "")
    assert doc["odd_symmetric_difference"] and doc["second"]["rhs"] == "0/1"
    code, _, _ = run(capsys, "griffiths", net, "--A", "1,x")
    assert code == 1


def test_flows(tmp_path, capsys):
    code, doc, _ = run(capsys, "flows", write(tmp_path, "net.json", SINGLE), "--a", "1", "--b", "2")
    assert doc["pairs"][0]["correlation"] == "1/2"


def test_cell(tmp_path, capsys):
    net = write(tmp_path, "net.json", hub().to_json())
    code, doc, _ = run(capsys, "cell", net)
    assert doc["xing"] == 9 and doc["reduced"]
    assert doc["pairing"] == [[1, 4], [2, 11], [3, 8], [5, 9], [6, 10], [7, 12]]


def test_x0(capsys):
    code, doc, _ = run(capsys, "x0", "2")
    assert doc["approx"] is True
    assert abs(doc["correlations"][0][1] - (2 ** 0.5 - 1)) < 1e-12


def test_poset(capsys):
    code, doc, _ = run(capsys, "poset", "3")
    assert doc["size"] == 15 and doc["rank_sizes"] == {"0": 5, "1": 6, "2": 3, "3": 1}
    assert len(doc["covers"]) == 27
    assert run(capsys, "poset", "5")[0] == 1


def test_module_entry_point_is_deterministic(tmp_path):
    net = write(tmp_path, "net.json", hub().to_json())
    outs = [subprocess.run([sys.executable, "-m", "isingog", "embed", net],
                           capture_output=True, check=True).stdout for _ in range(2)]
    assert outs[0] == outs[1] and outs[0]
