import json
import random
from fractions import Fraction

import pytest

from stairdist import io as mio
from stairdist.cli import main
from stairdist.generate import random_presentation, random_staircase
from stairdist.geometry import point

from conftest import square

SQ04 = {"lower": [[0, 0]], "upper": [[4, 4]]}
SQ13 = {"lower": [[1, 1]], "upper": [[3, 3]]}
THICK_L = {"lower": [[0, 0]], "upper": [[3, 4], [4, 3]]}
THIN_L = {"lower": [[0, 0]], "upper": [[1, 3], [3, 1]]}
QUAD0 = {"row_grades": [[0, 0]], "col_grades": [], "nonzeros": []}
QUAD1 = {"row_grades": [[1, 1]], "col_grades": [], "nonzeros": []}


@pytest.fixture
def run(tmp_path, capsys):
    def go(command, *inputs, args=(), code=0):
        paths = []
        for k, obj in enumerate(inputs):
            p = tmp_path / ("in%d.json" % k)
            p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
            paths.append(str(p))
        rc = main([command] + paths + list(args))
        out = capsys.readouterr().out
        assert rc == code
        return json.loads(out) if code == 0 and out else out

    return go


class TestIntervalDi:
    def test_nested_squares(self, run):
        rep = run("interval-di", SQ04, SQ13)
        assert rep["delta"] == {"exact": "1", "decimal": 1.0}

    def test_identical(self, run):
        rep = run("interval-di", THICK_L, THICK_L)
        assert rep["delta"]["exact"] == "0"

    def test_explain(self, run):
        rep = run("interval-di", SQ04, SQ13, args=["--explain"])
        assert rep["report"]["accepted"] is True
        assert rep["report"]["diag_distance"]["exact"] == "1"

    def test_malformed_json(self, run):
        run("interval-di", "{not json", SQ13, code=2)

    def test_bad_interval(self, run):
        bad = {"lower": [[3, 3]], "upper": [[1, 1]]}
        run("interval-di", bad, SQ13, code=3)

    def test_multi_summand_rejected(self, run):
        two = {"summands": [SQ04, SQ13]}
        run("interval-di", two, SQ13, code=3)


class TestRectApprox:
    def test_thick_l_optimal(self, run):
        rep = run("rect-approx", THICK_L)
        assert rep["rect"] == [["0", "0"], ["7/2", "7/2"]]
        assert rep["epsilon"] == {"exact": "1/2", "decimal": 0.5}

    def test_thin_l_construction(self, run):
        rep = run("rect-approx", THIN_L, args=["--method", "construction1"])
        assert rep["rect"] is None
        assert rep["epsilon"]["exact"] == "1/2"

    def test_module_aggregate(self, run):
        rep = run("rect-approx", {"summands": [THICK_L, THIN_L]})
        assert rep["epsilon"]["exact"] == "1/2"
        assert len(rep["summands"]) == 2
        assert "rect" not in rep

def test_csv_flattening(tmp_path, capsys):
    p = tmp_path / "m.json"
    p.write_text(json.dumps(THICK_L))
    assert main(["rect-approx", str(p), "--output", "csv"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "key,value"
    assert "epsilon,0.5" in lines


class TestBottleneck:
    def test_nested_squares(self, run):
        rep = run("bottleneck", SQ04, SQ13)
        assert rep["d_B"]["exact"] == "1"
        assert rep["matching"] == [[0, 0]]

    def test_unmatched_reported(self, run):
        M = {"summands": [SQ04, {"lower": [[10, 10]], "upper": [[11, 11]]}]}
        rep = run("bottleneck", M, SQ13)
        assert rep["d_B"]["exact"] == "1"
        assert rep["unmatched_M"] == [[1, "1/2"]]


class TestLowerBound:
    def test_nested_squares(self, run):
        rep = run("lower-bound", SQ04, SQ13)
        assert rep["d_B"]["exact"] == "1"
        assert rep["lower_bound"] == {"exact": "1/3",
                                      "decimal": pytest.approx(1 / 3)}

    def test_clamped_at_zero(self, run):
        box = {"lower": [[0, 0]], "upper": [["7/2", "7/2"]]}
        rep = run("lower-bound", THICK_L, box)
        assert rep["raw"]["exact"] == "-1/2"
        assert rep["lower_bound"]["exact"] == "0"


class TestGmd:
    def test_quadrants(self, run):
        rep = run("gmd", QUAD0, QUAD1)
        assert rep["value"]["exact"] == "1"
        assert rep["bands"] == 1

    def test_explain_table(self, run):
        rep = run("gmd", QUAD0, QUAD1, args=["--directions", "4",
                                             "--explain"])
        assert len(rep["table"]) == 4

    def test_grade_violation(self, run):
        bad = {"row_grades": [[3, 0]], "col_grades": [[2, 2]],
               "nonzeros": [[0, 0]]}
        run("gmd", bad, QUAD0, code=3)

    def test_missing_field(self, run):
        run("gmd", {"row_grades": [[0, 0]]}, QUAD0, code=2)


class TestDmatch:
    def test_quadrants(self, run):
        rep = run("dmatch", QUAD0, QUAD1)
        assert rep["value"]["exact"] == "1"
        assert rep["directions"] == 16

    def test_identical(self, run):
        rep = run("dmatch", QUAD0, QUAD0)
        assert rep["value"]["exact"] == "0"


class TestGenerate:
    def test_deterministic(self, capsys):
        assert main(["generate", "--seed", "7"]) == 0
        first = capsys.readouterr().out
        assert main(["generate", "--seed", "7"]) == 0
        assert capsys.readouterr().out == first
        assert main(["generate", "--seed", "8"]) == 0
        assert capsys.readouterr().out != first

    def test_kinds_parse_back(self, capsys):
        for kind, parse in (("staircase", mio.parse_module),
                            ("rectangles", mio.parse_module),
                            ("presentation", mio.parse_presentation)):
            assert main(["generate", "--kind", kind, "--seed", "3"]) == 0
            parse(json.loads(capsys.readouterr().out))


class TestRoundTrip:
    def test_module(self, rng):
        mods = [random_staircase(rng, size=6) for _ in range(3)]
        back = mio.parse_module(
            json.loads(json.dumps(mio.serialize_module(mods))))
        assert back == mods

    def test_interval_with_infinities(self):
        from stairdist.geometry import StaircaseInterval
        from stairdist.scalars import INF
        Q = StaircaseInterval.from_antichains([point(0, 0)],
                                              [point(INF, INF)])
        assert mio.parse_module(mio.serialize_module([Q])) == [Q]

    def test_presentation(self, rng):
        P = random_presentation(rng, size=4)
        back = mio.parse_presentation(
            json.loads(json.dumps(mio.serialize_presentation(P))))
        assert back.row_grades == P.row_grades
        assert back.col_grades == P.col_grades
        assert back.nonzeros == P.nonzeros

    def test_fraction_strings(self):
        obj = {"lower": [["1/2", "-3/2"]], "upper": [["7/2", "inf"]]}
        I = mio.parse_interval(obj)
        assert I.mins == (point(Fraction(1, 2), Fraction(-3, 2)),)
