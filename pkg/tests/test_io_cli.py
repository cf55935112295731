import json
import subprocess
import sys

import pytest

from npcx import errors, io
from npcx.builders import named_graph
from npcx.cli import main, run
from npcx.cog import bourdon_polygon
from npcx.cubical import grid_complex
from npcx.curvature import SimplicialComplex2
from npcx.groups import CoxeterSystem

from conftest import torus_complex


@pytest.fixture(scope="module")
def inputs(tmp_path_factory):
    d = tmp_path_factory.mktemp("inputs")
    tri = SimplicialComplex2.create([0, 1, 2], [(0, 1), (1, 2), (0, 2)])
    docs = {
        "torus.cplx": io.complex_to_json(torus_complex()),
        "grid.ccx": io.cube_complex_to_json(grid_complex(2, 1)),
        "hollow.scx": io.simplicial_to_json(tri),
        "heawood.graph": io.graph_to_json(named_graph("heawood")),
        "ipq53.pog": io.pog_to_json(bourdon_polygon(5, 3)),
        "nerve.cox": io.coxeter_to_json(
            CoxeterSystem.from_graph(list("abcde"), list(zip("abcde", "bcdea")), 2), [3] * 5),
    }
    for name, doc in docs.items():
        io.save(d / name, doc)
    return d


def _cli(*argv):
    res = run([str(a) for a in argv])
    return res.code, res.report


def test_round_trip_inputs(inputs):
    dump = {".cplx": io.complex_to_json, ".ccx": io.cube_complex_to_json,
            ".scx": io.simplicial_to_json, ".graph": io.graph_to_json,
            ".pog": io.pog_to_json}
    for path in sorted(inputs.iterdir()):
        obj = io.load(path)
        if path.suffix == ".cox":
            doc = io.coxeter_to_json(*obj)
        else:
            doc = dump[path.suffix](obj)
        assert io.dumps(doc) == path.read_text()


@pytest.mark.parametrize("argv", [
    ["kl", "--k", "6", "--link", "K4", "--holonomy", "nontrivial", "--radius", "2"],
    ["sl2-tree", "--prime", "3", "--radius", "2"],
    ["davis-moussong", "--k", "2", "--link", "C4", "--radius", "2"],
    ["bourdon", "--p", "5", "--q", "3", "--radius", "1"],
])
def test_builder_output_round_trips(tmp_path, argv):
    out = tmp_path / "out.cplx"
    code, _ = _cli("build", *argv, "-o", out)
    assert code == 0
    text = out.read_text()
    doc = json.loads(text)
    X = io.load(out)
    assert io.dumps(io.complex_to_json(X, doc.get("annotations"))) == text


def test_sl3_link_round_trips(tmp_path):
    out = tmp_path / "link.graph"
    assert _cli("build", "sl3-link", "--prime", "2", "-o", out)[0] == 0
    G = io.load(out)
    assert len(G.nodes) == 14 and len(G.edges) == 21
    assert _cli("check", "mgon", out, "--m", "3")[0] == 0


def test_check_commands(inputs):
    code, rep = _cli("check", "link-condition", inputs / "torus.cplx")
    assert code == 0
    assert all(v["total"] == "2π" for v in rep["vertices"])
    code, rep = _cli("check", "flag", inputs / "hollow.scx")
    assert code == 1 and rep["witness"] == [0, 1, 2]
    assert _cli("check", "mgon", "--m", "3", inputs / "heawood.graph")[0] == 0
    assert _cli("check", "mgon", "--m", "4", inputs / "heawood.graph")[0] == 1
    code, rep = _cli("check", "cat0-cubical", inputs / "grid.ccx")
    assert code == 0
    assert sorted(sorted(h["sizes"]) for h in rep["hyperplanes"]) == [[2, 4], [2, 4], [3, 3]]
    assert _cli("check", "link-condition", inputs / "ipq53.pog")[0] == 0


def test_build_commands(tmp_path):
    code, rep = _cli("build", "sl2-tree", "--prime", "2", "--radius", "3",
                     "-o", tmp_path / "t.cplx")
    assert code == 0 and rep["summary"]["vertices"] == 22
    code, rep = _cli("build", "kl", "--k", "5", "--link", "K23", "--radius", "1")
    assert code == 3 and rep["error"] == "LocalObstruction"
    assert _cli("build", "kl", "--link", "K4")[0] == 2
    assert _cli("build", "kl", "--k", "6", "--holonomy", "sideways")[0] == 2


def test_measure_commands(inputs, tmp_path):
    assert _cli("measure", "covolume", inputs / "ipq53.pog") == (0, {"covolume": "5/9"})
    assert _cli("measure", "covolume", "--orders", "2,3")[1]["covolume"] == "5/6"
    a, b = tmp_path / "a.cplx", tmp_path / "b.cplx"
    for path, h in ((a, "trivial"), (b, "nontrivial")):
        _cli("build", "kl", "--k", "6", "--link", "K4", "--holonomy", h, "--radius", "2",
             "-o", path)
    code, rep = _cli("measure", "holonomy", a, "--face", 0)
    assert code == 0 and rep["holonomy"] == "trivial"
    assert _cli("measure", "holonomy", b, "--face", 0)[1]["holonomy"] == "nontrivial"
    assert _cli("measure", "isomorphic", a, b) == (1, {"isomorphic": False, "bijection": None})
    assert _cli("measure", "isomorphic", a, a)[0] == 0
    assert _cli("measure", "index", "<a, b, c | abABB, bcBCC, caCAA>")[1] == {"index": 1}
    assert _cli("measure", "index", "<a, b | abAbb>", "--budget", "50")[0] == 3
    code, rep = _cli("measure", "girth", inputs / "torus.cplx", "--vertex", 0)
    assert code == 0 and rep["girth"] == "2"


def test_develop_matches_bourdon(inputs, tmp_path):
    out1, out2 = tmp_path / "d.cplx", tmp_path / "b.cplx"
    assert _cli("build", "develop", inputs / "nerve.cox", "--radius", "1", "-o", out1)[0] == 0
    assert _cli("build", "bourdon", "--q", "3", "--radius", "1", "-o", out2)[0] == 0
    assert _cli("measure", "isomorphic", out1, out2)[0] == 0


def test_input_errors(tmp_path):
    bad = tmp_path / "bad.cplx"
    bad.write_text("{not json")
    assert _cli("check", "link-condition", bad)[0] == 2
    bad.write_text('{"format_version": 2, "kind": "polygonal_complex"}')
    assert _cli("check", "link-condition", bad)[0] == 2
    assert _cli("check", "link-condition", tmp_path / "missing.cplx")[0] == 2
    with pytest.raises(errors.InvalidInput):
        io.load(tmp_path / "x.txt")


def test_human_and_dot(inputs, tmp_path, capsys):
    dot = tmp_path / "t.dot"
    assert main(["check", "link-condition", str(inputs / "torus.cplx"), "--human",
                 "--dot", str(dot)]) == 0
    out = capsys.readouterr().out
    assert not out.startswith("{")
    assert dot.read_text().startswith("graph")


def test_cli_deterministic(tmp_path):
    outs = []
    for n in range(2):
        path = tmp_path / f"s{n}.cplx"
        code = main(["build", "kl", "--k", "6", "--link", "K4", "--holonomy", "seed:7",
                     "--radius", "2", "-o", str(path)])
        assert code == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_module_entry_point(inputs):
    proc = subprocess.run([sys.executable, "-m", "npcx", "measure", "covolume",
                           str(inputs / "ipq53.pog"), "--human"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "5/9"
