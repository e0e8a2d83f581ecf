import io
import json
import subprocess
import sys
from fractions import Fraction as F

import pytest
from hypothesis import given

from monstertower.cli import SCHEMA, ParseError, RunDocument, main, parse_germ, render_germ
from monstertower.germ import DimensionError, GermError
from strategies import polynomial_germs


def coeffs(g):
    return [c.coeffs for c in g.coords]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestParse:
    def test_examples(self):
        assert coeffs(parse_germ("t^2, t^3")) == [{2: 1}, {3: 1}]
        assert coeffs(parse_germ("t^4, t^6 + t^7, 0")) == [{4: 1}, {6: 1, 7: 1}, {}]
        assert coeffs(parse_germ("3/2*t^2, -t^5")) == [{2: F(3, 2)}, {5: -1}]

    def test_whitespace_and_like_terms(self):
        g = parse_germ("  t ,\n 2*t^3 -  t^3 + 4/6 * t^2 ")
        assert coeffs(g) == [{1: 1}, {2: F(2, 3), 3: 1}]

    def test_exact(self):
        assert parse_germ("t^2, t^3").exact

    @pytest.mark.parametrize(
        "text, line, column",
        [("t^2, t^", 1, 8), ("t^2,\nt^3 $", 2, 5), ("t^2 t^3", 1, 5), ("1/0*t, t^2", 1, 3), ("", 1, 1)],
    )
    def test_errors_have_position(self, text, line, column):
        with pytest.raises(ParseError) as info:
            parse_germ(text)
        assert (info.value.line, info.value.column) == (line, column)

    def test_domain_errors(self):
        with pytest.raises(DimensionError):
            parse_germ("t^2")
        with pytest.raises(GermError):
            parse_germ("1 + t, t^2")


@given(polynomial_germs())
def test_render_round_trip(g):
    assert coeffs(parse_germ(render_germ(g))) == coeffs(g)


def test_render_signs():
    assert render_germ(parse_germ("-t^2 + 3/4*t^3, t - t^5")) == "-t^2 + 3/4*t^3, t - t^5"


class TestCommands:
    def test_code(self, capsys):
        assert run(capsys, "code", "--germ", "t^3,t^4,t^5", "--levels", "3")[:2] == (0, "RVT\n")

    def test_orbits(self, capsys):
        code, out, _ = run(capsys, "orbits", "--dim", "3", "--depth", "5")
        assert code == 0
        assert out.splitlines()[0] == "1 2 6 23 98"
        assert "lower bounds" in out

    def test_orbits_dot(self, capsys):
        code, out, _ = run(capsys, "orbits", "--dim", "2", "--depth", "3", "--dot")
        assert code == 0 and out.startswith("digraph")

    def test_enriques(self, capsys):
        code, out, _ = run(capsys, "enriques", "--germ", "t^2,t^3", "--levels", "6")
        assert code == 0
        assert "p0: 2 = 1 + 1  [pass]" in out
        assert out.rstrip().endswith("all identities pass")

    def test_mult_seq(self, capsys):
        assert run(capsys, "mult-seq", "--germ", "t^4, t^6, t^7", "--levels", "4")[1] == "4 2 1 1 1\n"

    def test_regularize(self, capsys):
        assert run(capsys, "regularize", "--germ", "t^2, t^7")[1] == "4\n"

    def test_classify(self, capsys):
        code, out, _ = run(capsys, "classify", "--germ", "t^3, t^4, t^5", "--levels", "3")
        assert code == 0
        assert out.startswith("RsVT(s=1)")
        assert "spatial: purely_spatial" in out

    def test_prolong_points_are_rational(self, capsys):
        code, out, _ = run(capsys, "prolong", "--germ", "t^2, t^3, 7*t^4", "--levels", "3")
        assert code == 0
        assert "u3_1=8/9" in out and "u3_2=112/9" in out

    def test_census(self, capsys):
        code, out, _ = run(capsys, "census", "--s", "3", "--q", "19")
        assert code == 0 and len(out.splitlines()) == 10


class TestExitCodes:
    def test_not_well_parameterized(self, capsys):
        code, out, err = run(capsys, "code", "--germ", "t^2, t^4")
        assert code == 1 and "NotWellParameterized" in err and not out

    def test_parse_error(self, capsys):
        code, _, err = run(capsys, "code", "--germ", "t^2, t^3 )")
        assert code == 2 and "column 10" in err

    def test_usage(self, capsys):
        assert run(capsys, "frobnicate")[0] == 2
        assert run(capsys, "code")[0] == 2
        assert run(capsys, "orbits", "--depth", "0")[0] == 2

    def test_horizon_is_domain_error(self, capsys):
        code, _, err = run(capsys, "regularize", "--germ", "t^2, t^11", "--horizon", "2")
        assert code == 1 and "HorizonExceeded" in err


class TestDocument:
    def test_json_round_trip(self, capsys):
        code, out, _ = run(capsys, "classify", "--germ", "t^4, t^6, t^7", "--levels", "3", "--format", "json")
        assert code == 0
        doc = RunDocument.from_text(out)
        assert doc.schema_version == SCHEMA
        assert doc.classification["family"] == "RsVL"
        assert doc.to_text() + "\n" == out
        level3 = doc.levels[3]
        assert level3["letter"] == "L"
        assert all("/" in v or v.lstrip("-").isdigit() for _, v in level3["point"])

    def test_determinism(self, capsys):
        argv = ["enriques", "--germ", "t^3, t^5 + t^6, t^7", "--levels", "5", "--format", "json"]
        first = run(capsys, *argv)[1]
        assert run(capsys, *argv)[1] == first

    def test_rejects_other_schema(self):
        with pytest.raises(ValueError):
            RunDocument.from_text(json.dumps({"schema_version": "other/9", "command": "x", "input": {}}))


def test_batch_keeps_input_order(monkeypatch, capsys):
    lines = "t^2, t^3\n# comment\nt^3, t^4, t^5\nt^2, t^4\nt^4, t^6, t^7\n"
    monkeypatch.setattr(sys, "stdin", io.StringIO(lines))
    code = main(["code", "--stdin", "--levels", "3", "--jobs", "2"])
    out = capsys.readouterr().out.splitlines()
    assert code == 1
    assert [ln.split("\t")[1] for ln in out][:2] == ["RVR", "RVT"]
    assert "NotWellParameterized" in out[2]
    assert out[3].endswith("RVL")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "monstertower", "code", "--germ", "t^2,t^3", "--levels", "3"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == "RVR\n"
