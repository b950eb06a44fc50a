import csv
import json
import subprocess
import sys

import pytest

from mathieu import claims
from mathieu.cli import main, scan

STATUSES = {"verified", "refuted-as-printed", "verified-with-correction", "inconclusive"}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestEval:
    def test_direct(self, capsys):
        code, out, _ = run(capsys, "eval", "F", "direct", "--h", "1", "--tol", "1e-10", "--format", "json")
        d = json.loads(out)
        assert code == 0
        assert abs(d["value"] - 0.39711677137965943) < 1e-10
        assert d["hi"] - d["lo"] <= 2e-10

    def test_alternating(self, capsys):
        code, out, _ = run(capsys, "eval", "S", "direct", "--h", "0", "--tol", "1e-7", "--format", "json")
        assert code == 0 and abs(json.loads(out)["value"] - 0.9015427) < 1e-7

    def test_method_flag_and_text(self, capsys):
        code, out, _ = run(capsys, "eval", "F", "--method", "integral-parts", "--h", "2")
        assert code == 0 and "integral-parts" in out and "enclosure" in out

    def test_generalized(self, capsys):
        code, out, _ = run(capsys, "eval", "Fmu", "--h", "0", "--mu", "3", "--tol", "1e-9", "--format", "json")
        assert code == 0 and abs(json.loads(out)["value"] - 1.0369277551433699) < 1e-9

    @pytest.mark.parametrize(
        "argv",
        [
            ["eval", "F", "expansion", "--h", "1.5"],
            ["eval", "F", "integral", "--h", "0"],
            ["eval", "S", "integral-parts", "--h", "1"],
            ["eval", "Fmu", "integral", "--h", "1", "--mu", "3"],
            ["eval", "Fmu", "--h", "1", "--mu", "1"],
            ["eval", "F", "--h", "1", "--tol", "0.5"],
            ["eval", "F"],
        ],
    )
    def test_usage_errors(self, capsys, argv):
        with pytest.raises(SystemExit) if argv == ["eval", "F"] else _nullcontext():
            code = main(argv)
            assert code == 2
        if argv[:4] == ["eval", "F", "expansion", "--h"]:
            assert "radius" in capsys.readouterr().err

    def test_numeric_failure(self, capsys):
        code, _, err = run(capsys, "eval", "F", "--h", "0", "--tol", "1e-16")
        assert code == 3 and "numeric" in err


class _nullcontext:
    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False


class TestCoeffs:
    def test_order8(self, capsys):
        code, out, _ = run(capsys, "coeffs", "--order", "8")
        assert code == 0
        for line in ["x^5: -1/30", "x^6: -1/30", "x^7: -23/1260", "x^8: -1/140"]:
            assert line in out
        assert "23/42" in out and "23/126" in out and "-1/10" in out and "1/14" in out

    def test_order5_zeros(self, capsys):
        _, out, _ = run(capsys, "coeffs", "--order", "5")
        assert all(f"x^{k}: 0" in out for k in range(5))

    def test_order_too_small(self, capsys):
        assert main(["coeffs", "--order", "4"]) == 2


class TestScan:
    def test_csv_layout(self, tmp_path, capsys):
        path = tmp_path / "s.csv"
        assert main(["scan", "S", "--h-min", "0", "--h-max", "50", "--steps", "200", "--out", str(path)]) == 0
        lines = path.read_text().splitlines()
        assert lines[0] == "h,value,half_width"
        rows = list(csv.reader(lines[1:-1]))
        assert len(rows) == 200
        hs = [float(r[0]) for r in rows]
        assert all(a < b for a, b in zip(hs, hs[1:]))
        assert all(float(r[2]) >= 0 for r in rows)
        assert lines[-1].startswith("# max_upward_jump=")
        assert "certified_upward_jump=false" in lines[-1]

    def test_F_strictly_decreasing(self):
        hs, res = scan("F", 0.1, 10.0, 50, 1e-10)
        assert all(b.enclosure.hi < a.enclosure.lo for a, b in zip(res, res[1:]))

    def test_degenerate(self, capsys):
        assert main(["scan", "S", "--h-min", "1", "--h-max", "1", "--steps", "2"]) == 2
        assert main(["scan", "S", "--h-min", "0", "--h-max", "1", "--steps", "1"]) == 2

    def test_concurrent_order(self):
        a = scan("S", 0.0, 5.0, 40, 1e-10, workers=1)
        b = scan("S", 0.0, 5.0, 40, 1e-10, workers=4)
        assert a == b

    def test_io_error(self, capsys):
        assert main(["scan", "F", "--h-min", "0", "--h-max", "1", "--steps", "3", "--out", "/nonexistent/dir/x.csv"]) == 4


@pytest.fixture(scope="module")
def verdicts():
    return claims.run_claims()


class TestClaims:
    def test_registry_complete(self, verdicts):
        assert [v.id for v in verdicts] == [f"C{i}" for i in range(1, 11)]
        for v in claims._flatten(verdicts):
            assert v.status in STATUSES
            assert v.evidence

    def test_non_inconclusive_have_evidence(self, verdicts):
        for v in claims._flatten(verdicts):
            if v.status != "inconclusive":
                assert any(isinstance(e.value, (tuple, str)) for e in v.evidence)

    @pytest.mark.parametrize("fmt", ["json", "csv", "md"])
    def test_formats(self, tmp_path, fmt):
        path = tmp_path / f"c.{fmt}"
        assert main(["claims", "--format", fmt, "--out", str(path)]) == 0
        text = path.read_text()
        if fmt == "json":
            data = json.loads(text)
            assert len(data) == 10 and {"id", "paper_ref", "status", "evidence"} <= set(data[0])
        elif fmt == "csv":
            rows = list(csv.reader(text.splitlines()))
            assert rows[0] == ["id", "status", "paper_ref", "claim", "evidence"]
            assert {r[0] for r in rows[1:]} >= {f"C{i}" for i in range(1, 11)}
        else:
            assert text.startswith("| id | status |")

    def test_workers_do_not_change_output(self, verdicts):
        par = claims.run_claims(claims.ClaimsConfig(workers=4))
        assert claims.render_json(par) == claims.render_json(verdicts)

    def test_io_error(self):
        assert main(["claims", "--out", "/nonexistent/dir/x.md"]) == 4


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "mathieu", "coeffs", "--order", "6"], capture_output=True, text=True, check=True
    )
    assert "x^6: -1/30" in out.stdout
