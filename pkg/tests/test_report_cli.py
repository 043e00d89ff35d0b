import json

import pytest

from modgon import cli
from modgon.report import (compare_to_golden, parse_golden, render_csv,
                           render_json_lines, render_text, table_rows)

GOLDEN_PATH = "src/modgon/data/table1_golden.txt"


@pytest.fixture(scope="module")
def golden(data_dir):
    return parse_golden((data_dir / "table1_golden.txt").read_text())


def test_golden_comparison_clean(table_ledger, golden):
    cmp = compare_to_golden(table_ledger, golden)
    assert cmp.ok
    assert cmp.matches == 39
    assert len(cmp.flagged) == 1  # the one malformed cell in the source


def test_rows_sorted_and_complete(table_ledger):
    rows = table_rows(table_ledger)
    assert len(rows) == 39
    assert [r.level for r in rows] == sorted(r.level for r in rows)
    assert all(r.rules for r in rows)


def test_renderers_deterministic(table_ledger):
    rows = table_rows(table_ledger)
    assert render_text(rows) == render_text(rows)
    csv_out = render_csv(rows)
    assert csv_out.splitlines()[0].startswith("level,structure,curve")
    for line in render_json_lines(rows).splitlines():
        assert json.loads(line)["genus"] >= 2


def test_cli_report_clean_diff(tmp_path, capsys):
    out = tmp_path / "t.txt"
    code = cli.main(["report", "--level", "21-40", "--diff",
                     "--out", str(out)])
    assert code == 0
    assert out.read_text().startswith("level")


def test_cli_report_diff_detected(tmp_path):
    # a facts file that cannot support the table must produce a diff
    facts = tmp_path / "facts.txt"
    facts.write_text("global_class rational_cusp source=x\n")
    code = cli.main(["report", "--level", "21-40", "--diff",
                     "--facts", str(facts), "--out", str(tmp_path / "o")])
    assert code == 1


def test_cli_lattice(capsys):
    assert cli.main(["lattice", "--level", "41"]) == 0
    out = capsys.readouterr().out
    assert out.count("curve 41:") == 4
    assert "edge" in out


def test_cli_invariants(capsys):
    assert cli.main(["invariants", "--level", "29", "--delta", "12"]) == 0
    out = capsys.readouterr().out
    assert "genus 8" in out
    assert "index 210" in out


def test_cli_input_errors(capsys, tmp_path):
    assert cli.main(["certify", "count", "--model", "nope",
                     "--prime", "3"]) == 2
    assert cli.main(["invariants", "--level", "29", "--delta", "1.5"]) == 2
    assert cli.main(["report", "--level", "0"]) == 2


def test_cli_budget_exit(tmp_path):
    code = cli.main(["certify", "fp-lower", "--model", "g5_tetragonal_f3",
                     "--prime", "3", "--degree", "3", "--budget", "10"])
    assert code == 3


def test_cli_byte_stable_outputs(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for target in (a, b):
        assert cli.main(["report", "--level", "21-40", "--format",
                         "json-lines", "--out", str(target)]) == 0
    assert a.read_bytes() == b.read_bytes()
