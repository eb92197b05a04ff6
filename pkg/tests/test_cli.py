import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from jtrans.cli import main
from jtrans.formula import parse, pretty

CHAIN2 = "worlds: p, q\norder: q <= p\ndomain:\nq: P\n"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def chain2(tmp_path):
    p = tmp_path / "chain2.km"
    p.write_text(CHAIN2)
    return str(p)


class TestTranslate:
    @pytest.mark.parametrize("argv,expected", [
        (["--scheme", "kuroda", "--nucleus", "dneg", "forall x. P(x)"], "~~(forall x. ~~P(x))"),
        (["--scheme", "gg", "--nucleus", "or[Q]", "P | R"], "((P | Q) | (R | Q)) | Q"),
        (["--scheme", "kuroda-inner", "--nucleus", "dneg", "P -> Q"], "P -> ~~Q"),
        (["--scheme", "classic-kuroda", "--nucleus", "dneg", "--logic", "iqc", "P -> Q"], "~~(P -> Q)"),
    ])
    def test_examples(self, capsys, argv, expected):
        code, out, _ = run(capsys, "translate", *argv)
        assert code == 0 and out.strip() == expected
        assert pretty(parse(out.strip())) == expected

    def test_gate_failure_exits_3(self, capsys):
        code, out, err = run(capsys, "translate", "--scheme", "classic-kuroda", "--nucleus", "dneg",
                             "--logic", "mqc", "P -> Q")
        assert code == 3 and out == "" and "commute" in err

    def test_parse_error_exits_2(self, capsys):
        assert run(capsys, "translate", "--scheme", "gg", "--nucleus", "dneg", "P &")[0] == 2
        assert run(capsys, "translate", "--scheme", "gg", "--nucleus", "bogus", "P")[0] == 2

    def test_file_input_and_records(self, capsys, tmp_path):
        f = tmp_path / "fs.txt"
        f.write_text("# battery\nP\nP -> Q\n")
        code, out, _ = run(capsys, "translate", "--scheme", "kuroda", "--nucleus", "dneg",
                           "--format", "records", str(f))
        recs = [json.loads(line) for line in out.splitlines()]
        assert code == 0 and [r["output"] for r in recs] == ["~~P", "~~(P -> ~~Q)"]
        assert all(r["v"] == 1 and r["scheme"] == "kuroda" and r["nucleus"] == "dneg" for r in recs)
        assert recs[1]["input"] == "P -> Q"


class TestProve:
    def test_ex_falso(self, capsys):
        assert run(capsys, "prove", "--logic", "mqc", "|- _|_ -> P")[0] == 1
        assert run(capsys, "prove", "--logic", "iqc", "|- _|_ -> P")[0] == 0

    def test_countermodel_is_loadable(self, capsys):
        from jtrans.kripke import loads_model, refuting_world
        from jtrans.formula import parse_sequent
        code, out, _ = run(capsys, "prove", "--logic", "iqc", "--countermodel", "|- P | ~P")
        assert code == 1
        m = loads_model(out.split("\n", 1)[1])
        assert refuting_world(m, parse_sequent("|- P | ~P")) is not None

    def test_witness(self, capsys):
        code, out, _ = run(capsys, "prove", "--logic", "iqc", "--witness", "P; P -> Q |- Q")
        assert code == 0 and out.startswith("derivable\n") and len(out.splitlines()) > 1

    def test_out_of_fragment_and_budget(self, capsys):
        assert run(capsys, "prove", "--logic", "iqc", "|- forall x. P(x)")[0] == 2
        assert run(capsys, "prove", "--logic", "iqc", "--budget", "1", "|- ((P -> Q) -> P) -> P")[0] == 2
        assert run(capsys, "prove", "--logic", "iqc", "|- P &")[0] == 2

    def test_usage_error_exits_2(self, capsys):
        with pytest.raises(SystemExit) as e:
            main(["prove", "--logic", "xxx", "|- P"])
        assert e.value.code == 2


class TestKripke:
    def test_eval(self, capsys, chain2):
        code, out, _ = run(capsys, "kripke", "--model", chain2, "--eval", "p |-s ~~P")
        assert code == 0 and out.strip() == "true"
        code, out, _ = run(capsys, "kripke", "--model", chain2, "--eval", "p |- P")
        assert code == 1 and out.strip() == "false"
        code, out, _ = run(capsys, "kripke", "--model", chain2, "--eval", "p |-j P")
        assert out.strip() == "true"

    def test_check(self, capsys, chain2, tmp_path):
        b = tmp_path / "battery.txt"
        b.write_text("P\n~P\n~~P\nP -> Q\n(P -> P) -> P\n")
        code, out, _ = run(capsys, "kripke", "--model", chain2, "--check", "section5", "--battery", str(b))
        assert code == 0 and "(v) ok" in out

    def test_caps(self, capsys, tmp_path):
        big = tmp_path / "big.km"
        big.write_text("worlds: " + ", ".join(f"w{i}" for i in range(9)) + "\n")
        assert run(capsys, "kripke", "--model", str(big), "--eval", "w0 |- P")[0] == 2
        wide = tmp_path / "wide.km"
        wide.write_text("worlds: w\ndomain: a, b, c, d, e\n")
        assert run(capsys, "kripke", "--model", str(wide), "--eval", "w |- P")[0] == 2

    def test_bad_model(self, capsys, tmp_path):
        bad = tmp_path / "bad.km"
        bad.write_text("worlds: p, q\norder: q <= p\np: P\n")
        code, _, err = run(capsys, "kripke", "--model", str(bad), "--eval", "p |- P")
        assert code == 2 and "not monotone" in err


class TestNucleusCheck:
    def test_pass_and_fail(self, capsys):
        assert run(capsys, "nucleus-check", "--nucleus", "or[A]", "--logic", "mqc")[0] == 0
        code, out, _ = run(capsys, "nucleus-check", "--nucleus", "template:HOLE & A")
        assert code == 1 and "[FAIL] inflation" in out


class TestSuite:
    def test_injected_bad_nucleus(self, capsys):
        code, out, _ = run(capsys, "suite", "--claims", "nucleus-axioms", "--nucleus", "template:HOLE & A")
        assert code == 1 and "inflation" in out

    def test_claim_filter(self, capsys):
        code, out, _ = run(capsys, "suite", "--claims", "sec2-commutation", "--format", "records")
        recs = [json.loads(line) for line in out.splitlines()]
        assert code == 0 and [r["id"] for r in recs] == ["commutation"]

    def test_unknown_claim(self, capsys):
        assert run(capsys, "suite", "--claims", "nope")[0] == 2

    def test_records_are_deterministic(self, capsys, monkeypatch):
        argv = ["suite", "--claims", "gg-kuroda-equivalence,strong-forcing", "--formulas", "10",
                "--models", "3", "--sentences", "5", "--format", "records"]
        monkeypatch.setenv("NUCLEUS_SEED", "11")
        a = run(capsys, *argv)[1]
        b = run(capsys, *argv)[1]
        assert a == b and a
        monkeypatch.setenv("NUCLEUS_SEED", "12")
        assert run(capsys, *argv)[1] != a


def test_console_script():
    env = dict(os.environ)
    exe = Path(sys.executable).with_name("jtrans")
    cmd = [str(exe)] if exe.exists() else [sys.executable, "-m", "jtrans.cli"]
    r = subprocess.run(cmd + ["prove", "--logic", "iqc", "|- P -> P"], capture_output=True, text=True, env=env)
    assert r.returncode == 0 and r.stdout.strip() == "derivable"


def test_default_suite_passes(capsys):
    code, out, _ = run(capsys, "suite")
    assert code == 0, out
    assert out.strip().endswith("12/12 claims pass")
