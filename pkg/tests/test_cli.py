import json
import subprocess
import sys
from fractions import Fraction

import pytest

from problogic.cli import decimal6, main
from problogic.conditional import make_conditional as cond
from problogic.dsl import parse_problem
from problogic.errors import ContradictoryAntecedent, FormulaSyntaxError, InvalidAssessment
from problogic.events import VERUM, And, Atom, Not

from samples import header, run_sample, sample_paths

Fr = Fraction
A, B, C = Atom("A"), Atom("B"), Atom("C")
JSON_KEYS = {"coherent", "lower", "upper", "lower_decimal", "upper_decimal", "non_informative",
             "certificate"}


class TestParseProblem:
    def test_statements_and_query(self):
        pf = parse_problem("# comment\np(B) = 0.9\np(C | B) in [3/4, 1];\n? p(C)\n")
        a = pf.assessment()
        assert a.events == (cond(B), cond(C, B))
        assert (a[0].lower, a[0].upper) == (Fr(9, 10), Fr(9, 10))
        assert (a[1].lower, a[1].upper) == (Fr(3, 4), 1)
        assert pf.query == cond(C)
        assert [s.line for s in pf.premises] == [2, 3]

    def test_separators(self):
        pf = parse_problem("p(A)=1/2; p(B)=1/3, p(C)=0 ; ? p(A and B)")
        assert len(pf.premises) == 3
        assert pf.query == cond(And(A, B))

    def test_decimals_are_exact(self):
        pf = parse_problem("p(A) = 0.1\np(B) = .25\np(C) = 1")
        assert [s.lower for s in pf.premises] == [Fr(1, 10), Fr(1, 4), 1]

    def test_bar_splits_consequent_from_antecedent(self):
        pf = parse_problem("p(not B or C | A and not C) = 0")
        ev = pf.premises[0].event
        assert ev.antecedent == And(A, Not(C))

    def test_verum_antecedent(self):
        assert parse_problem("p(A | T) = 1").premises[0].event == cond(A, VERUM)

    def test_empty_file(self):
        pf = parse_problem("# nothing here\n")
        assert pf.premises == () and pf.query is None

    @pytest.mark.parametrize("text, line, column", [
        ("p(A) = ", 1, 8),
        ("p(A) 1/2", 1, 6),
        ("p(A) = 1/2\nq(B) = 1", 2, 1),
        ("p(A) in [1/4 1/2]", 1, 14),
        ("? p(A)\n? p(B)", 2, 1),
        ("p(A | B | C) = 1", 1, 9),
    ])
    def test_syntax_errors(self, text, line, column):
        with pytest.raises(FormulaSyntaxError) as info:
            parse_problem(text)
        assert (info.value.line, info.value.column) == (line, column)

    def test_contradictory_antecedent_located(self):
        with pytest.raises(ContradictoryAntecedent, match="line 2, column 2"):
            parse_problem("p(A) = 1\np(B | A and not A) = 1/2")

    def test_bad_values_reported_with_line(self):
        with pytest.raises(InvalidAssessment, match="line 2"):
            parse_problem("p(A) = 1\np(B) = 3/2").assessment()
        with pytest.raises(InvalidAssessment, match="already assessed on line 1"):
            parse_problem("p(A) = 1\np(A) = 1").assessment()


@pytest.mark.parametrize("path", sample_paths(), ids=lambda p: p.stem)
def test_sample_round_trip(path):
    text, code = run_sample(path)
    assert code == header(path)[1]
    assert text == path.with_suffix(".expected").read_text(encoding="utf-8")


def write(tmp_path, text, name="problem.prob"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestCommands:
    def test_check_exit_codes(self, tmp_path, capsys):
        assert main(["check", write(tmp_path, "p(B|A)=3/5; p(not B|A)=2/5")]) == 0
        assert capsys.readouterr().out.startswith("coherent")
        assert main(["check", write(tmp_path, "p(B|A)=3/5; p(not B|A)=3/5")]) == 1
        out = capsys.readouterr().out
        assert "stake 1 on p(B | A) at price 3/5" in out
        assert main(["check", write(tmp_path, "p(B | A and not A)=1/2")]) == 2
        assert "ContradictoryAntecedent" in capsys.readouterr().err

    def test_propagate_spec_examples(self, tmp_path, capsys):
        assert main(["propagate", write(tmp_path, "p(B)=1 ; ? p(B|A)")]) == 0
        out = capsys.readouterr().out
        assert "lower: 0 (0.000000)" in out and "upper: 1 (1.000000)" in out
        assert "NON-INFORMATIVE" in out
        main(["propagate", write(tmp_path, "p(B|A)=7/10 ; ? p(not B|A)")])
        out = capsys.readouterr().out
        assert "lower: 3/10 (0.300000)" in out and "upper: 3/10 (0.300000)" in out

    def test_propagate_needs_query_and_premises(self, tmp_path, capsys):
        assert main(["propagate", write(tmp_path, "p(A)=1/2")]) == 2
        assert "no query" in capsys.readouterr().err
        assert main(["propagate", write(tmp_path, "? p(A)")]) == 2
        assert "no premises" in capsys.readouterr().err

    def test_check_needs_premises(self, tmp_path, capsys):
        assert main(["check", write(tmp_path, "# empty")]) == 2

    def test_missing_file(self, tmp_path, capsys):
        assert main(["check", str(tmp_path / "absent.prob")]) == 2
        assert "cannot read" in capsys.readouterr().err

    def test_dutchbook_on_coherent(self, tmp_path, capsys):
        assert main(["dutchbook", write(tmp_path, "p(A)=1/2; p(not A)=1/2")]) == 0
        assert "no Dutch book" in capsys.readouterr().out

    @pytest.mark.parametrize("argv", [
        ["--json", "propagate"], ["propagate", "--json"]])
    def test_json_flag_either_side(self, tmp_path, capsys, argv):
        path = write(tmp_path, "p(B)=1/2, p(C|B)=1/2 ; ? p(C)")
        assert main(argv + [path]) == 0
        data = json.loads(capsys.readouterr().out)
        assert set(data) == JSON_KEYS
        assert (data["lower"], data["upper"]) == ("1/4", "3/4")
        assert (data["lower_decimal"], data["upper_decimal"]) == ("0.250000", "0.750000")
        assert data["non_informative"] is False and data["certificate"] is None

    def test_json_incoherent_has_certificate(self, tmp_path, capsys):
        assert main(["--json", "check", write(tmp_path, "p(A)=3/5; p(not A)=3/5")]) == 1
        data = json.loads(capsys.readouterr().out)
        assert set(data) == JSON_KEYS
        assert data["coherent"] is False
        assert data["certificate"]["stakes"] == ["1", "1"]
        assert data["certificate"]["max_gain"] == "-1/5"

    def test_rule_json_keeps_common_keys(self, capsys):
        assert main(["rule", "MP", "--x", "1/2", "--y", "1/2", "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert JSON_KEYS <= set(data)
        assert (data["lower"], data["upper"]) == ("1/4", "3/4")

    def test_rule_param_forms(self, capsys):
        assert main(["rule", "mp", "--x=0.5", "--y", "0.5"]) == 0
        assert "[1/4, 3/4]" in capsys.readouterr().out

    @pytest.mark.parametrize("argv, message", [
        (["rule", "MP", "--x", "1/2"], "MissingParam"),
        (["rule", "MP", "--x", "1/2", "--y", "abc"], "not a rational"),
        (["rule", "MP", "--x", "1/2", "--y"], "needs a value"),
        (["rule", "MP", "--x", "1/2", "--y", "2"], "ValueOutOfRange"),
        (["rule", "MP", "--q", "1", "--x", "1", "--y", "1"], "UnknownParam"),
        (["rule", "NOPE"], "UnknownRule"),
        (["pttt", "--x1", "1/2", "--x2", "1/2", "--x3", "1/2", "--x4", "0"], "NotADistribution"),
        (["pttt", "--x1", "1"], "needs"),
    ])
    def test_rule_errors(self, capsys, argv, message):
        assert main(argv) == 2
        assert message in capsys.readouterr().err

    def test_usage_errors(self, capsys):
        with pytest.raises(SystemExit) as info:
            main([])
        assert info.value.code == 2
        with pytest.raises(SystemExit) as info:
            main(["check", "a.prob", "--bogus"])
        assert info.value.code == 2

    def test_rule_verify_connexive(self, capsys):
        assert main(["rule", "AT2", "--verify"]) == 0
        assert "EQUAL" in capsys.readouterr().out
        assert main(["rule", "BT2", "--x", "1/3"]) == 0
        assert "holds" in capsys.readouterr().out

    def test_module_entry_point(self, tmp_path):
        path = write(tmp_path, "p(B|A)=3/5; p(not B|A)=3/5")
        proc = subprocess.run([sys.executable, "-m", "problogic", "check", path],
                              capture_output=True, text=True)
        assert proc.returncode == 1
        assert proc.stdout.startswith("incoherent")


@pytest.mark.parametrize("q, text", [
    (Fr(1, 3), "0.333333"), (Fr(2, 3), "0.666667"), (Fr(1), "1.000000"), (Fr(0), "0.000000"),
    (Fr(1, 2_000_000), "0.000000"), (Fr(3, 2_000_000), "0.000002"), (Fr(-1, 4), "-0.250000")])
def test_decimal_rendering(q, text):
    assert decimal6(q) == text
