"""End-to-end tests for the command-line surface.

Everything runs in-process through main(argv); stdout and stderr come from
capsys and stores live under tmp_path.
"""

import json

import pytest

from csection import __version__
from csection.catalog import build_group, builtin_battery, parse_group_spec
from csection.cli import emit_report, main, parse_report
from csection.sections import check_hypothesis

S4 = '{"kind":"named","name":"Sym","params":[4]}'
S5 = '{"kind":"named","name":"Sym","params":[5]}'
V4 = '{"kind":"named","name":"ElemAbelian","params":[2,2]}'

REPORT_KEYS = {"subject", "check", "status", "evidence", "completeness", "version"}


def run_json(argv, capsys):
    code = main(argv + ["--json"])
    out, err = capsys.readouterr()
    return code, json.loads(out), err


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_no_command_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 3
    assert "error:" in capsys.readouterr().err


def test_missing_group_argument_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["order"])
    assert exc.value.code == 3
    capsys.readouterr()


def test_order_human_output(capsys):
    code = main(["order", "--group", S4])
    out = capsys.readouterr().out.splitlines()
    subject = parse_group_spec(S4).canonical()
    assert code == 0
    assert out[0] == f"[PASS] order: {subject} (complete=True)"
    assert "  order: 24" in out
    assert "  degree: 4" in out


def test_order_json_output(capsys):
    code, doc, _ = run_json(["order", "--group", S4], capsys)
    assert code == 0
    assert set(doc) == REPORT_KEYS
    assert doc["status"] == "pass"
    assert doc["evidence"] == {"order": 24, "degree": 4}
    assert doc["version"] == __version__


def test_group_spec_from_file(tmp_path, capsys):
    path = tmp_path / "s4.json"
    path.write_text(S4)
    code, doc, _ = run_json(["order", "--group", str(path)], capsys)
    assert code == 0
    assert doc["evidence"]["order"] == 24


@pytest.mark.parametrize("arg", [
    '{"name":',              # malformed JSON
    '{"name": "Sym"}',       # missing params
    "/no/such/spec.json",    # missing file
])
def test_bad_group_inputs_exit_3(arg, capsys):
    assert main(["order", "--group", arg]) == 3
    assert capsys.readouterr().err.startswith("error:")


def test_max_order_cap_enforced(capsys):
    assert main(["order", "--group", S5, "--max-order", "50"]) == 3
    assert "error:" in capsys.readouterr().err


def test_maximals_s4(capsys):
    code, doc, _ = run_json(["maximals", "--group", S4], capsys)
    assert code == 0
    assert doc["completeness"] is True
    assert doc["evidence"]["orders"] == [12, 8, 6]
    assert doc["evidence"]["class_counts"] == [1, 3, 4]
    assert doc["evidence"]["indices"] == [2, 3, 4]


def test_sec_top_maximal_of_s4(capsys):
    code, doc, _ = run_json(
        ["sec", "--group", S4, "--maximal-index", "0", "--verify"], capsys)
    assert code == 0
    ev = doc["evidence"]
    assert ev["maximal_order"] == 12
    assert ev["section_order"] == 1
    assert ev["section_id"] == "1"
    assert ev["supersolvable"] is True
    assert ev["pair"] == {"k_order": 24, "l_order": 12}


def test_sec_index_out_of_range(capsys):
    assert main(["sec", "--group", S4, "--maximal-index", "3"]) == 3
    assert "maximal-index out of range 0..2" in capsys.readouterr().err


def test_hypothesis_exit_codes(capsys):
    assert main(["hypothesis", "--group", S4]) == 0
    assert main(["hypothesis", "--group", S5]) == 1
    out = capsys.readouterr().out
    assert "[PASS] hypothesis:" in out
    assert "[FAIL] hypothesis:" in out


def test_conclusion_fails_on_s5(capsys):
    code, doc, _ = run_json(["conclusion", "--group", S5], capsys)
    assert code == 1
    assert doc["status"] == "fail"
    assert "A5" in doc["evidence"]["factor_ids"]
    assert doc["evidence"]["witnesses"] == ["A5"]


def test_theorem_vacuous_pass_on_s5(capsys):
    code, doc, _ = run_json(["theorem", "--group", S5], capsys)
    assert code == 0
    assert doc["status"] == "pass"
    assert doc["evidence"]["vacuous"] is True
    assert doc["evidence"]["hypothesis"]["status"] == "fail"


def test_verify_lemma1_cli(capsys):
    code, doc, _ = run_json(["verify", "lemma1", "--group", V4], capsys)
    assert code == 0
    assert doc["check"] == "lemma1"
    assert doc["status"] == "pass"


def test_verify_lemma2a_cli(capsys):
    assert main(["verify", "lemma2a", "--n", "5"]) == 0
    assert main(["verify", "lemma2a", "--n", "7"]) == 3
    assert "supported degrees" in capsys.readouterr().err


def test_verify_lemma4_cli(capsys):
    code, doc, _ = run_json(
        ["verify", "lemma4", "--n", "2", "--q", "4", "--trials", "5"], capsys)
    assert code == 0
    assert doc["evidence"]["trials"] == 5
    assert doc["evidence"]["failures"] == 0
    assert main(["verify", "lemma4", "--n", "2", "--q", "5"]) == 3
    capsys.readouterr()


def test_verify_example_cli(capsys):
    code, doc, _ = run_json(["verify", "example", "--p", "7"], capsys)
    assert code == 0
    assert doc["status"] == "pass"
    names = [sub["name"] for sub in doc["evidence"]["sub_checks"]]
    assert names == ["unique_chief_series", "klein_classes_in_K", "fusion_in_G",
                     "sections_supersolvable", "maximals_of_K"]
    assert all(sub["status"] == "pass" for sub in doc["evidence"]["sub_checks"])


def test_verify_example_rejects_bad_p(capsys):
    assert main(["verify", "example", "--p", "5"]) == 3
    assert "prime congruent" in capsys.readouterr().err
    assert main(["verify", "example", "--p", "17"]) == 3
    assert "allow_large" in capsys.readouterr().err


def test_report_round_trip():
    G = build_group(parse_group_spec(S4))
    report = check_hypothesis(G, subject="S4")
    assert parse_report(emit_report(report)) == report


def test_store_appends_once(tmp_path, capsys):
    store = tmp_path / "reports.jsonl"
    for _ in range(2):
        assert main(["hypothesis", "--group", S4, "--store", str(store)]) == 0
    capsys.readouterr()
    lines = [ln for ln in store.read_text().splitlines() if ln]
    assert len(lines) == 1
    rec = json.loads(lines[0])
    assert rec["check"] == "hypothesis"
    assert rec["version"] == __version__
    assert "timestamp" in rec


def test_store_env_fallback_and_flag_override(tmp_path, capsys, monkeypatch):
    env_store = tmp_path / "env.jsonl"
    flag_store = tmp_path / "flag.jsonl"
    monkeypatch.setenv("CSECTION_STORE", str(env_store))
    assert main(["order", "--group", S4]) == 0
    assert main(["order", "--group", S4, "--store", str(flag_store)]) == 0
    capsys.readouterr()
    assert len(env_store.read_text().splitlines()) == 1
    assert len(flag_store.read_text().splitlines()) == 1


def test_scan_small_battery(capsys):
    battery = builtin_battery(30)
    code = main(["scan", "--max-order", "30", "--workers", "1"])
    lines = capsys.readouterr().out.strip().splitlines()
    assert code == 0
    assert len(lines) == len(battery) + 1
    for line, entry in zip(lines, battery):
        assert line == f"[PASS] {entry.label} order={entry.order}"
    assert lines[-1] == (f"scan: {len(battery)} groups, {len(battery)} pass, "
                         "0 fail, 0 inconclusive")


def test_scan_parallel_matches_serial(capsys):
    code1 = main(["scan", "--max-order", "24", "--workers", "1", "--json"])
    out1 = capsys.readouterr().out
    code2 = main(["scan", "--max-order", "24", "--workers", "2", "--json"])
    out2 = capsys.readouterr().out
    assert code1 == code2 == 0
    assert out1 == out2
    docs = [json.loads(ln) for ln in out1.strip().splitlines()]
    assert docs[-1] == {"summary": {"pass": len(docs) - 1, "fail": 0,
                                    "inconclusive": 0}}
    assert all(set(doc) == REPORT_KEYS for doc in docs[:-1])


def test_scan_store_is_idempotent(tmp_path, capsys):
    store = tmp_path / "scan.jsonl"
    battery = builtin_battery(12)
    assert main(["scan", "--max-order", "12", "--workers", "1",
                 "--store", str(store)]) == 0
    first = capsys.readouterr().out
    assert f"store: {len(battery)} new record(s) -> {store}" in first
    assert main(["scan", "--max-order", "12", "--workers", "1",
                 "--store", str(store)]) == 0
    second = capsys.readouterr().out
    assert f"store: 0 new record(s) -> {store}" in second
    records = [json.loads(ln) for ln in store.read_text().splitlines() if ln]
    assert len(records) == len(battery)
    assert {rec["subject"] for rec in records} == {b.label for b in battery}
    for rec in records:
        assert "spec" in rec and "timestamp" in rec
