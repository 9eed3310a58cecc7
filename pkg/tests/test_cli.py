import json
import shutil
from pathlib import Path

import jsonschema

from qcontract.cli import main
from qcontract.reports import REPORT_SCHEMA

DATA = Path(__file__).parent.parent / "src" / "qcontract" / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestNf:
    def test_q_commutation(self, capsys):
        code, out, _ = run(capsys, "nf", "-p", "builtin:suq2", "a*b")
        assert code == 0
        assert out.strip() == "q*b*a"

    def test_square_relation(self, capsys):
        code, out, _ = run(capsys, "nf", "-p", "builtin:ekappa2-klmn", "M^2")
        assert code == 0
        assert out.strip() == "K^2 - 1"

    def test_already_normal(self, capsys):
        code, out, _ = run(capsys, "nf", "-p", "builtin:suq2", "a")
        assert code == 0
        assert out.strip() == "a"

    def test_parse_error_exits_2(self, capsys):
        code, _, err = run(capsys, "nf", "-p", "builtin:suq2", "a*$")
        assert code == 2
        assert "line 1" in err

    def test_unknown_symbol_exits_2(self, capsys):
        code, _, err = run(capsys, "nf", "-p", "builtin:suq2", "a*zz")
        assert code == 2

    def test_step_limit_exits_3(self, capsys):
        code, _, err = run(capsys, "nf", "-p", "builtin:suq2",
                           "--step-limit", "2", "d*d*d*a*a*a")
        assert code == 3

    def test_file_presentation(self, capsys, tmp_path):
        src = tmp_path / "toy.preso"
        src.write_text("[generators]\nx y\n\n[rules]\ny*x -> x*y\n")
        code, out, _ = run(capsys, "nf", "-p", str(src), "y*x*y")
        assert code == 0
        assert out.strip() == "x*y^2"


class TestConfluence:
    def test_builtins_pass(self, capsys):
        for name in ("suq2", "ekappa2-klmn", "ekappa2-final"):
            code, out, _ = run(capsys, "confluence", "-p", f"builtin:{name}")
            assert code == 0
            assert "failed: 0" in out

    def test_non_confluent_file_fails(self, capsys, tmp_path):
        src = tmp_path / "bad.preso"
        src.write_text(
            "[generators]\nc b a\n\n[rules]\na*b -> 1\nb*c -> 1\n")
        code, out, _ = run(capsys, "confluence", "-p", str(src))
        assert code == 1
        assert "a*b*c" in out


class TestHopfCheck:
    def test_builtins_pass(self, capsys):
        for name in ("suq2", "ekappa2-klmn", "ekappa2-final"):
            code, out, _ = run(capsys, "hopf-check", "-p", f"builtin:{name}")
            assert code == 0, name

    def test_bare_presentation_is_usage_error(self, capsys, tmp_path):
        src = tmp_path / "toy.preso"
        src.write_text("[generators]\nx y\n\n[rules]\ny*x -> x*y\n")
        code, _, err = run(capsys, "hopf-check", "-p", str(src))
        assert code == 2


class TestContractCommand:
    def test_passes(self, capsys):
        code, out, _ = run(capsys, "contract")
        assert code == 0
        assert "failed: 0" in out

    def test_lam_zero(self, capsys):
        code, out, _ = run(capsys, "contract", "--lam-zero")
        assert code == 0


class TestSolveCommutator:
    def test_solution_displayed(self, capsys):
        code, out, _ = run(capsys, "solve-commutator")
        assert code == 0
        assert "coefficient[eta]  [Eq. (35)]  = lam" in out
        assert "coefficient[etabar]  [Eq. (35)]  = lam" in out

    def test_ln_mode(self, capsys):
        code, out, _ = run(capsys, "solve-commutator", "--ln")
        assert code == 0
        assert "coefficient[K*N]  = lam" in out

    def test_json_output(self, capsys):
        code, out, _ = run(capsys, "solve-commutator", "--output", "json")
        assert code == 0
        doc = json.loads(out)
        jsonschema.validate(doc, REPORT_SCHEMA)
        by_name = {c["name"]: c for c in doc["checks"]}
        assert by_name["solver/eta-etabar/coefficient[eta]"]["residual"] == "lam"


class TestReport:
    def test_default_run_passes(self, capsys):
        code, out, _ = run(capsys, "report")
        assert code == 0
        assert "failed: 0" in out

    def test_json_output_validates_and_is_deterministic(self, capsys):
        code1, out1, _ = run(capsys, "report", "--output", "json")
        code2, out2, _ = run(capsys, "report", "--output", "json")
        assert code1 == code2 == 0
        assert out1 == out2  # byte-identical across runs
        doc = json.loads(out1)
        jsonschema.validate(doc, REPORT_SCHEMA)
        assert doc["version"]
        assert all(c["status"] == "pass" for c in doc["checks"])
        tags = {c["paper_eq"] for c in doc["checks"] if c["paper_eq"]}
        assert "Eq. (35)" in tags and "Eq. (9)" in tags

    def test_text_output_deterministic(self, capsys):
        _, out1, _ = run(capsys, "report")
        _, out2, _ = run(capsys, "report")
        assert out1 == out2

    def test_corrupted_catalog_names_the_rule(self, capsys, tmp_path):
        bad = tmp_path / "cat"
        bad.mkdir()
        for f in DATA.glob("*.preso"):
            shutil.copy(f, bad / f.name)
        target = bad / "suq2.preso"
        target.write_text(target.read_text().replace(
            "a*b -> q*b*a", "b*a -> q^-1*a*b"))
        code, out, _ = run(capsys, "report", "--catalog-dir", str(bad))
        assert code == 1
        assert "b*a -> q^-1*a*b" in out

    def test_corrupted_coefficient_fails_verification(self, capsys, tmp_path):
        bad = tmp_path / "cat"
        bad.mkdir()
        for f in DATA.glob("*.preso"):
            shutil.copy(f, bad / f.name)
        target = bad / "suq2.preso"
        target.write_text(target.read_text().replace(
            "a*d -> q*b*c + 1", "a*d -> 2*q*b*c + 1"))
        code, out, _ = run(capsys, "report", "--catalog-dir", str(bad))
        assert code == 1

    def test_lam_zero_full_run(self, capsys):
        code, out, _ = run(capsys, "report", "--lam-zero")
        assert code == 0
        assert "failed: 0" in out
