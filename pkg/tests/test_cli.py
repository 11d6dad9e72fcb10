import json
import subprocess
import sys

import pytest

from tests.conftest import GOLDEN_DIR, REPO_ROOT

CORPUS_ARGS = [str(p.relative_to(REPO_ROOT))
               for p in sorted((REPO_ROOT / "corpus" / "paper").glob("*.psy"))]


def psysafe(*args, cwd=REPO_ROOT):
    return subprocess.run([sys.executable, "-m", "psysafe", *args],
                          capture_output=True, text=True, cwd=cwd)


def test_psysil_prints_level():
    proc = psysafe("psysil", "S2", "E4", "C1")
    assert proc.returncode == 0
    assert proc.stdout == "PsySIL A\n"
    assert proc.stderr == ""


def test_psysil_blank_cell_prints_qm():
    proc = psysafe("psysil", "S1", "E1", "C1")
    assert proc.returncode == 0
    assert proc.stdout == "QM\n"


def test_psysil_invalid_class_is_usage_error():
    proc = psysafe("psysil", "S9", "E1", "C1")
    assert proc.returncode == 64
    assert proc.stdout == ""
    assert "invalid class" in proc.stderr


def test_unknown_flag_is_usage_error():
    proc = psysafe("check", "--frobnicate", *CORPUS_ARGS)
    assert proc.returncode == 64


def test_missing_subcommand_is_usage_error():
    proc = psysafe()
    assert proc.returncode == 64


def test_check_corpus_warnings_and_exit_codes():
    proc = psysafe("check", *CORPUS_ARGS)
    assert proc.returncode == 0
    assert proc.stdout == ""
    lines = proc.stderr.splitlines()
    assert len(lines) == 6
    assert all("warning[" in line for line in lines)
    assert sum(": error[" in line for line in lines) == 0

    strict = psysafe("check", "--strict", *CORPUS_ARGS)
    assert strict.returncode == 1


def test_check_diagnostics_match_golden():
    golden = (GOLDEN_DIR / "diagnostics.txt").read_text(encoding="utf-8")
    proc = psysafe("check", *CORPUS_ARGS)
    assert proc.stderr == golden


def test_check_unreadable_file_exits_2():
    proc = psysafe("check", "no/such/file.psy")
    assert proc.returncode == 2
    assert "cannot read file" in proc.stderr


def test_check_syntax_error_exits_2(tmp_path):
    bad = tmp_path / "bad.psy"
    bad.write_text('analysis "t" { sae_level = 2 }\nloss L1 violates ST1\n',
                   encoding="utf-8")
    proc = psysafe("check", str(bad))
    assert proc.returncode == 2
    assert "error[PSY000]" in proc.stderr


def test_check_resolution_error_exits_2(tmp_path):
    bad = tmp_path / "bad.psy"
    bad.write_text('analysis "t" { sae_level = 2 }\n'
                   'stakeholder SH1 "s"\n'
                   'stake ST1 "st" of SH1\n'
                   'loss L1 "l" violates ST9\n', encoding="utf-8")
    proc = psysafe("check", str(bad))
    assert proc.returncode == 2
    assert "error[PSY011]" in proc.stderr


def test_check_error_findings_exit_1(tmp_path):
    model = tmp_path / "m.psy"
    model.write_text('analysis "t" { sae_level = 2 }\n'
                     'stakeholder SH1 "s"\n'
                     'stake ST1 "st" of SH1\n'
                     'loss L1 "l" violates ST1\n'
                     'hazard H1 "h" leads_to L1\n', encoding="utf-8")
    proc = psysafe("check", str(model))
    assert proc.returncode == 1  # PSY003 is an error by default
    assert "error[PSY003]" in proc.stderr


def test_check_coverage_table_goes_to_stdout():
    proc = psysafe("check", "--coverage", *CORPUS_ARGS)
    assert proc.returncode == 0
    assert "CA_takeover" in proc.stdout
    assert "UCA3" in proc.stdout
    assert "CA_takeover" not in proc.stderr


def test_config_file_overrides(tmp_path):
    conf = tmp_path / "psysafe.conf"
    conf.write_text("lint { PSY007 = off PSY005 = error }\n",
                    encoding="utf-8")
    args = [str(REPO_ROOT / p) for p in CORPUS_ARGS]
    proc = psysafe("check", "--config", str(conf), *args)
    assert proc.returncode == 1
    assert "error[PSY005]" in proc.stderr
    assert "PSY007" not in proc.stderr


def test_config_discovery_next_to_first_input(tmp_path):
    model = tmp_path / "m.psy"
    model.write_text('analysis "t" { sae_level = 2 }\n'
                     'stakeholder SH1 "s"\n'
                     'stake ST1 "st" of SH1\n'
                     'loss L1 "l" violates ST1\n'
                     'hazard H1 "h" leads_to L1\n', encoding="utf-8")
    (tmp_path / "psysafe.conf").write_text("lint { PSY003 = off }\n",
                                           encoding="utf-8")
    proc = psysafe("check", str(model))
    assert "PSY003" not in proc.stderr


def test_bad_config_exits_2(tmp_path):
    conf = tmp_path / "psysafe.conf"
    conf.write_text("lint { PSY099 = off }\n", encoding="utf-8")
    proc = psysafe("check", "--config", str(conf), *CORPUS_ARGS)
    assert proc.returncode == 2
    assert "unknown lint rule" in proc.stderr


def test_report_json_stdout_is_valid_json_despite_warnings():
    proc = psysafe("report", "--format", "json", *CORPUS_ARGS)
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["schema"] == "1"
    assert len(proc.stderr.splitlines()) == 6


def test_report_out_writes_file(tmp_path):
    out = tmp_path / "report.json"
    proc = psysafe("report", "--format", "json", "--out", str(out),
                   *CORPUS_ARGS)
    assert proc.returncode == 0
    assert proc.stdout == ""
    assert json.loads(out.read_text(encoding="utf-8"))["sae_level"] == 4


def test_report_md_matches_golden():
    golden = (GOLDEN_DIR / "report.md").read_text(encoding="utf-8")
    proc = psysafe("report", "--format", "md", *CORPUS_ARGS)
    assert proc.stdout == golden


def test_report_requires_format():
    proc = psysafe("report", *CORPUS_ARGS)
    assert proc.returncode == 64


def test_trace_prints_tree():
    proc = psysafe("trace", *CORPUS_ARGS, "--from", "H3")
    assert proc.returncode == 0
    assert proc.stdout.startswith("H3 [hazard]\n")
    assert "<- prevents SG3 [goal]" in proc.stdout


def test_trace_unknown_id_exits_2():
    proc = psysafe("trace", *CORPUS_ARGS, "--from", "NOPE")
    assert proc.returncode == 2
    assert "unknown entity ID" in proc.stderr


def test_trace_direction_up():
    proc = psysafe("trace", *CORPUS_ARGS, "--from", "L2", "--dir", "up")
    assert proc.returncode == 0
    assert proc.stdout == "L2 [loss]\n  -> violates ST2 [stake]\n"


def test_fmt_round_trips():
    proc = psysafe("fmt", *CORPUS_ARGS)
    assert proc.returncode == 0
    assert proc.stdout.startswith("analysis ")
    reparsed = psysafe_stdin_fmt(proc.stdout)
    assert reparsed == proc.stdout


def psysafe_stdin_fmt(text):
    import tempfile
    from pathlib import Path
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "canon.psy"
        path.write_text(text, encoding="utf-8")
        proc = psysafe("fmt", str(path))
        assert proc.returncode == 0
        return proc.stdout


@pytest.mark.parametrize("direction", ["up", "down", "both"])
def test_trace_directions_run(direction):
    proc = psysafe("trace", *CORPUS_ARGS, "--from", "SG2",
                   "--dir", direction)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "SG2 [goal]"
