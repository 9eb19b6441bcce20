"""The command line is a thin adapter: outputs equal library results, bytes stable."""

import pytest

from jetlift.cli import main

FLAGSHIP = """\
[y]        charts z w ; transition w = 1/z
[x]        vars x ; charts 2 ; transition x -> 1/x ; jacobian -x^-2
[f]        chart0: x = z ; chart1: x = w
[sheaf]    gen chart0: x ; gen chart1: -x
[sigma]    chart0: 1 ; chart1: 1
[window]   -8 8
[order]    4
"""


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestCommands:
    def test_bracket(self, capsys):
        code, out = run(capsys, "bracket", "--vars", "x,y",
                        "--f1", "1,0", "--f2", "0,x")
        assert code == 0 and out == "0, 1\n"

    def test_iterbracket(self, capsys):
        code, out = run(capsys, "iterbracket", "--vars", "x,y",
                        "--f1", "1,0", "--f2", "0,x^2", "--n", "3")
        assert code == 0 and out == "0, 2\n"

    def test_flowjet(self, capsys):
        code, out = run(capsys, "flowjet", "--vars", "x,y", "--field", "y, -x",
                        "--point", "1,0", "--order", "2")
        assert code == 0 and out == "((1,0),(0,-1),(-1,0))\n"

    def test_defect(self, capsys):
        code, out = run(capsys, "defect", "--vars", "x,y", "--f1", "1,0",
                        "--f2", "1,x", "--point", "0,0", "--n", "1")
        assert code == 0 and out == "(0,1)\n"

    def test_defect_precondition_refuted(self, capsys):
        code, out = run(capsys, "defect", "--vars", "x,y", "--f1", "1,0",
                        "--f2", "1,x", "--point", "0,0", "--n", "2")
        assert code == 1 and out.startswith("REFUTED")

    def test_verify_dj(self, capsys):
        code, out = run(capsys, "verify-dj", "--vars", "x,y", "--f1", "1,0",
                        "--f2", "1,x^2", "--point", "0,0", "--n", "2")
        assert code == 0
        assert "agree" in out and "(0,2)" in out

    def test_rank(self, capsys):
        code, out = run(capsys, "rank", "--vars", "x,y", "--gens", "x,0; 0,x",
                        "--point", "1,0")
        assert code == 0 and out == "2\n"

    def test_involutive_certificate(self, capsys):
        code, out = run(capsys, "involutive", "--vars", "x,y",
                        "--gens", "x,0; 0,x", "--degree", "0")
        assert code == 0 and "CERTIFIED" in out

    def test_involutive_refuted(self, capsys):
        code, out = run(capsys, "involutive", "--vars", "x,y",
                        "--gens", "1,0; 0,x", "--degree", "0")
        assert code == 1 and "(0,0)" in out

    def test_strata(self, capsys):
        code, out = run(capsys, "strata", "--vars", "x,y", "--gens", "x,0; 0,x",
                        "--grid", "x=-1:1:1, y=-1:1:1")
        assert code == 0
        assert out.splitlines()[0].startswith("rank 0:")
        assert "rank 2:" in out

    def test_invariance_ok(self, capsys):
        code, out = run(capsys, "invariance", "--vars", "x,y,z",
                        "--gens", "1,0,0; 0,0,y", "--combo", "1; 0",
                        "--point", "0,0,0", "--order", "10")
        assert code == 0 and "all vanish" in out

    def test_invariance_violated(self, capsys):
        code, out = run(capsys, "invariance", "--vars", "x,y",
                        "--gens", "1,0; 0,x", "--combo", "1; 0",
                        "--point", "0,0", "--order", "10")
        assert code == 1 and "VIOLATION" in out

    def test_cohomology_split(self, capsys):
        code, out = run(capsys, "cohomology", "--transition", "1",
                        "--nu", "z + 1 + z^-1", "--window", "-4 4")
        assert code == 0
        assert out == "lambda0 = z + 1\nlambda1 = -w\n"

    def test_cohomology_obstructed(self, capsys):
        code, out = run(capsys, "cohomology", "--transition", "z^-2",
                        "--nu", "z^-1", "--window", "-4 4")
        assert code == 0 and "OBSTRUCTED" in out and "cokernel_dim 1" in out

    def test_cohomology_expect_unobstructed(self, capsys):
        code, out = run(capsys, "cohomology", "--transition", "z^-2",
                        "--nu", "z^-1", "--window", "-4 4",
                        "--expect-unobstructed")
        assert code == 1

    def test_lift_flagship(self, capsys, tmp_path):
        path = tmp_path / "flagship.scn"
        path.write_text(FLAGSHIP, encoding="utf-8")
        code, out = run(capsys, "lift", "--scenario", str(path))
        assert code == 0
        assert "chart0 x: (z,z,z,z,z)" in out
        assert "chart0 t: (0,1,0,0,0)" in out

    def test_lift_obstructed(self, capsys, tmp_path):
        path = tmp_path / "obstructed.scn"
        path.write_text(FLAGSHIP.replace("gen chart0: x ; gen chart1: -x",
                                         "gen chart0: x^4 ; gen chart1: -1")
                        .replace("chart0: 1 ; chart1: 1",
                                 "chart0: 0 ; chart1: 0")
                        .replace("[window]   -8 8",
                                 "[perturb]  chart1: -t*x^3\n[window]   -4 4"),
                        encoding="utf-8")
        code, out = run(capsys, "lift", "--scenario", str(path))
        assert code == 1
        assert "LIFT OBSTRUCTED" in out and "cokernel dimension 1" in out

    def test_parse_error_exit_code(self, capsys):
        code = main(["rank", "--vars", "x,y", "--gens", "x,0; 0,q",
                     "--point", "0,0"])
        err = capsys.readouterr().err
        assert code == 2 and "parse error" in err

    def test_usage_error_exit_code(self):
        with pytest.raises(SystemExit) as err:
            main(["bracket", "--vars", "x,y"])
        assert err.value.code == 2


class TestDeterminism:
    def test_byte_identical_reruns(self, capsys):
        argv = ["strata", "--vars", "x,y", "--gens", "x,0; 0,x",
                "--grid", "x=-1:1:1/2, y=0:1:1"]
        _, first = run(capsys, *argv)
        _, second = run(capsys, *argv)
        assert first == second

    def test_adapter_matches_library(self, capsys):
        from jetlift.flows import flow_jet
        from jetlift.parsing import parse_field, parse_point
        names = ["x", "y"]
        field = parse_field("y, -x", names)
        point = parse_point("1,0", 2)
        _, out = run(capsys, "flowjet", "--vars", "x,y", "--field", "y, -x",
                     "--point", "1,0", "--order", "3")
        assert out.strip() == flow_jet(field, point, 3).render()
