import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from axymean.cli import SCAN_COLUMNS, main
from axymean.output import load_schema


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def rows_of(text):
    return list(csv.DictReader(line for line in io.StringIO(text) if not line.startswith("#")))


@pytest.mark.parametrize("a, n, R", [(2, 4, 3), (1, 5, 4), (3, 0, 0)])
def test_count(capsys, a, n, R):
    code, out, _ = run(["count", "--a", str(a), "--n", str(n)], capsys)
    assert code == 0
    assert rows_of(out)[0]["R"] == str(R)


def test_count_verbose_lists_solutions(capsys):
    code, out, _ = run(["count", "--a", "2", "--n", "4", "-v", "--no-timings"], capsys)
    assert code == 0
    assert rows_of(out)[0]["solutions"] == "(1;5) (2;2) (5;1)"


def test_count_generalized(capsys):
    code, out, _ = run(["count", "--a", "1", "--b", "5", "--c", "5", "--n", "0"], capsys)
    assert rows_of(out)[0]["R"] == "3"


def test_sum_methods_agree(capsys):
    _, hyp, _ = run(["sum", "--a", "3", "--N", "5000"], capsys)
    _, brute, _ = run(["sum", "--a", "3", "--N", "5000", "--method", "bruteforce"], capsys)
    assert rows_of(hyp)[0]["S"] == rows_of(brute)[0]["S"]


def test_constant(capsys):
    code, out, _ = run(["constant", "--a", "2", "--a-max", "4", "--no-timings"], capsys)
    rows = rows_of(out)
    assert [r["a"] for r in rows] == ["2", "3", "4"]
    assert float(rows[0]["C_a"]) == pytest.approx(0.30685281944005469, abs=1e-15)


def test_scan_columns_and_first_row(capsys):
    code, out, _ = run(["scan", "--a", "2", "--n-min", "10", "--n-max", "1000", "--points", "3"], capsys)
    assert code == 0
    assert out.splitlines()[0] == ",".join(SCAN_COLUMNS)
    rows = rows_of(out)
    assert len(rows) == 3
    assert rows[0]["N"] == "10" and rows[0]["S"] == "26"
    assert out.splitlines()[-1].startswith("# timings_ms,")


def test_scan_single_row_negative_main(capsys):
    code, out, _ = run(["scan", "--a", "2", "--n-min", "1", "--n-max", "1", "--points", "1"], capsys)
    rows = rows_of(out)
    assert len(rows) == 1 and float(rows[0]["main"]) < 0


def test_scan_warn_flag_for_huge_a(capsys):
    code, out, _ = run(["scan", "--a", "1000000", "--n-min", "10", "--n-max", "100", "--points", "2"], capsys)
    assert code == 0
    assert all(r["warn_a_large"] == "true" for r in rows_of(out))


def test_scan_floats_have_17_digits(capsys):
    _, out, _ = run(["scan", "--a", "3", "--n-min", "100", "--n-max", "100", "--points", "1", "--no-timings"], capsys)
    row = rows_of(out)[0]
    for key in ("C_a", "main", "delta", "bound", "ratio"):
        assert float(row[key]) == float(format(float(row[key]), ".17g"))
        assert len(row[key].lstrip("-").replace(".", "").split("e")[0].lstrip("0")) <= 17


def test_scan_overflow_exit_3(capsys):
    code, _, err = run(["scan", "--a", "4", "--n-min", str(2**62), "--n-max", str(2**62), "--points", "1"], capsys)
    assert code == 3
    assert "overflow" in err


def test_usage_errors_exit_2(capsys):
    assert run(["count", "--a", "0", "--n", "1"], capsys)[0] == 2
    assert run(["scan", "--a", "1"], capsys)[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["count", "--a", "two", "--n", "1"])
    assert exc.value.code == 2


def test_json_validates_against_schema(capsys, tmp_path):
    schema = load_schema()
    for argv in (
        ["scan", "--a", "2", "--n-min", "10", "--n-max", "1000", "--points", "3"],
        ["count", "--a", "2", "--n", "4", "-v"],
        ["constant", "--a", "2", "--a-max", "5"],
        ["verify", "lemma5", "--a-max", "10"],
        ["fit", "--a", "3", "--n-min", "1000", "--n-max", "100000", "--points", "5"],
        ["sum", "--a", "5", "--N", "100"],
    ):
        target = tmp_path / "out.json"
        code = main(argv + ["--format", "json", "--output", str(target)])
        assert code == 0
        doc = json.loads(target.read_text())
        jsonschema.validate(doc, schema)
        assert doc["schema_version"] == "1"
    bad = {"schema_version": "1", "command": "scan", "parameters": {}, "columns": ["a"], "rows": [], "timings": []}
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(bad, schema)


def test_verify_lemma5(capsys):
    code, out, _ = run(["verify", "lemma5", "--a-max", "100", "--no-timings"], capsys)
    rows = rows_of(out)
    assert code == 0
    assert len(rows) == 99 and all(r["passed"] == "true" for r in rows)


def test_verify_mobius_to_1e4(capsys):
    code, out, _ = run(["verify", "mobius", "--a-max", "10000", "--no-timings"], capsys)
    assert code == 0
    assert len(rows_of(out)) == 9999


def test_verify_oracle(capsys):
    code, out, _ = run(["verify", "oracle", "--a-min", "1", "--a-max", "12", "--n-max", "2000"], capsys)
    assert code == 0
    rows = rows_of(out)
    assert all(r["gap"] == "0" for r in rows)


def test_verify_failure_exit_1(capsys):
    code, out, _ = run(["verify", "lemma5", "--a-max", "10", "--tolerance", "lemma5=0"], capsys)
    # a=2 is exact (0 == 0); anything with rounding fails the zero tolerance
    assert code == 1
    assert "false" in out


def test_verify_bad_tolerance_exit_2(capsys):
    assert run(["verify", "lemma5", "--tolerance", "nonsense"], capsys)[0] == 2


def test_fit_command(capsys):
    code, out, _ = run(
        ["fit", "--a", "2", "--n-min", "1000", "--n-max", "10000000", "--points", "9", "--constant", "corrected"],
        capsys,
    )
    row = rows_of(out)[0]
    assert code == 0
    assert float(row["slope"]) < 0.5
    assert row["rows_used"] == "9"


def test_module_entry_point_byte_identical():
    argv = [sys.executable, "-m", "axymean", "scan", "--a", "5", "--n-min", "1000", "--n-max", "1000000",
            "--points", "4", "--no-timings"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and first.startswith(b"a,N,S,")


def test_csv_quotes_cells_with_commas():
    from axymean.output import OutputRecord, render_csv

    record = OutputRecord("verify", {}, ["param", "x"], [{"param": 'b,c "q"', "x": 1.5}], [])
    assert render_csv(record).splitlines()[1] == '"b,c ""q""",1.5'
    parsed = next(csv.reader([render_csv(record).splitlines()[1]]))
    assert parsed == ['b,c "q"', "1.5"]
