from __future__ import annotations

import json
import subprocess
import sys

import pytest

from snapcomplex.cli import main


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_facets_count_prints_the_plain_number(capsys):
    code, out, _ = run(capsys, "facets", "-r", "1,1,1", "--count")
    assert code == 0
    assert out == "13\n"


def test_facets_listing_is_json(capsys):
    code, out, _ = run(capsys, "facets", "-r", "1,1")
    assert code == 0
    assert len(json.loads(out)["facets"]) == 3


def test_build_reports_the_f_vector(capsys):
    code, out, _ = run(capsys, "build", "-r", "2,1")
    assert code == 0
    assert json.loads(out)["f_vector"] == [6, 5]


def test_build_output_is_byte_deterministic(capsys):
    _, first, _ = run(capsys, "build", "-r", "2,1,1")
    _, second, _ = run(capsys, "build", "-r", "2,1,1")
    assert first == second


def test_build_out_writes_the_file(capsys, tmp_path):
    target = tmp_path / "complex.json"
    code, out, _ = run(capsys, "build", "-r", "1,1", "--out", str(target))
    assert code == 0
    assert json.loads(target.read_text())["counter"] == {"0": 1, "1": 1}


def test_verify_selected_checks(capsys):
    code, out, _ = run(
        capsys, "verify", "-r", "2,1,1", "--checks", "pseudomanifold,euler"
    )
    assert code == 0
    report = json.loads(out)
    assert report["ok"]
    assert report["checks"]["euler"]["euler"] == 1
    assert report["checks"]["pseudomanifold"]["status"] == "ok"


def test_verify_rejects_unknown_check(capsys):
    code, _, err = run(capsys, "verify", "-r", "1,1", "--checks", "nope")
    assert code == 2
    assert "unknown checks" in err


def test_verify_skips_inapplicable_checks(capsys):
    code, out, _ = run(capsys, "verify", "-r", "2,1", "--checks", "cone,phi")
    assert code == 0
    report = json.loads(out)
    assert report["checks"]["cone"]["status"] == "skipped"
    assert report["checks"]["phi"]["status"] == "skipped"


def test_strata_intersect_prints_the_closed_form(capsys):
    code, out, _ = run(capsys, "strata", "-r", "2,1,1", "--intersect", "{0}", "{1}")
    assert code == 0
    assert out == "Z_{{0,1}}\n"


def test_strata_intersect_rejects_non_active_processes(capsys):
    code, _, err = run(capsys, "strata", "-r", "1,1", "--intersect", "{9}", "{1}")
    assert code == 2
    assert "not active" in err


def test_strata_list_covers_the_complex(capsys):
    code, out, _ = run(capsys, "strata", "-r", "1,1", "--list")
    assert code == 0
    groups = json.loads(out)["strata"]
    assert sum(g["count"] for g in groups) == 8


def test_strata_nerve_reports_the_cone(capsys):
    code, out, _ = run(capsys, "strata", "-r", "1,1", "--nerve")
    assert code == 0
    assert json.loads(out)["is_cone"]


def test_collapse_full_with_validation(capsys):
    code, out, _ = run(capsys, "collapse", "-r", "1,1,1", "--full", "--validate")
    assert code == 0
    report = json.loads(out)
    assert report["validation"]["ok"]
    assert len(report["steps"]) == 25


def test_collapse_defaults_to_the_least_pivot(capsys):
    code, out, _ = run(capsys, "collapse", "-r", "2,1", "--validate")
    assert code == 0
    report = json.loads(out)
    assert report["kind"] == "relative-boundary"
    assert report["pivot"] == 0
    assert report["validation"]["ok"]


def test_collapse_rejects_pivot_with_full(capsys):
    code, _, err = run(capsys, "collapse", "-r", "1,1", "--full", "--pivot", "0")
    assert code == 2
    assert "--pivot" in err


def test_export_dot_is_a_hasse_diagram(capsys):
    code, out, _ = run(capsys, "export", "-r", "1,1", "--format", "dot")
    assert code == 0
    assert out.startswith("digraph")
    assert '"[[[],[0,1]]]"' in out


def test_export_svg_draws_small_supports_only(capsys):
    code, out, _ = run(capsys, "export", "-r", "1,1,1", "--format", "svg")
    assert code == 0
    assert out.startswith("<svg")

    code, _, err = run(capsys, "export", "-r", "1,1,1,1", "--format", "svg")
    assert code == 2
    assert "svg" in err.lower() or "support" in err.lower()


def test_export_json_round_trips(capsys):
    code, out, _ = run(capsys, "export", "-r", "1,1", "--format", "json")
    assert code == 0
    assert json.loads(out)["counter"] == {"0": 1, "1": 1}


def test_bad_counter_is_a_usage_error(capsys):
    code, _, err = run(capsys, "facets", "-r", "so,so", "--count")
    assert code == 2
    assert "error" in err


def test_cap_exceeded_exits_three(capsys):
    code, _, err = run(capsys, "build", "-r", "1,1,1", "--max-simplices", "5")
    assert code == 3
    assert json.loads(err)["limit"] == 5


def test_module_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "snapcomplex", "facets", "-r", "1,1", "--count"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "3\n"
