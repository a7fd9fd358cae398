from __future__ import annotations

import json
import pathlib

import pytest

from rickart_tb.cli.main import EXIT_CAP, EXIT_CONFIRMED, EXIT_NOT_CONFIRMED, EXIT_USAGE, main

pytestmark = pytest.mark.cli


def test_verify_theorem1_emits_a_confirmed_certificate(capsys: pytest.CaptureFixture[str]) -> None:
    code = main(["verify", "--claim", "theorem1", "--kind", "A", "--p", "3", "--json"])

    assert code == EXIT_CONFIRMED
    payload = json.loads(capsys.readouterr().out)
    assert payload["claim"] == "theorem1"
    assert payload["verdict"] is True
    assert "timings" not in payload


def test_verify_text_format_shows_chain_sizes(capsys: pytest.CaptureFixture[str]) -> None:
    code = main(["verify", "--claim", "theorem1", "--kind", "A", "--p", "3"])

    out = capsys.readouterr().out
    assert code == EXIT_CONFIRMED
    assert "verdict: CONFIRMED" in out
    assert "chain sizes per power 9" in out


def test_verify_with_p_equal_two_is_not_confirmed(capsys: pytest.CaptureFixture[str]) -> None:
    code = main(["verify", "--claim", "theorem1", "--kind", "A", "--p", "2"])

    assert code == EXIT_NOT_CONFIRMED
    assert "not confirmed" in capsys.readouterr().err


def test_verify_reports_missing_claim_arguments() -> None:
    assert main(["verify", "--claim", "prop_tn", "--kind", "A", "--p", "3"]) == EXIT_USAGE
    assert main(["verify"]) == EXIT_USAGE


def test_check_expecting_failure(capsys: pytest.CaptureFixture[str]) -> None:
    code = main(["check", "--ring", "GR(A(3),C2)", "--property", "gen-right-pp", "--expect", "fails"])

    out = capsys.readouterr().out
    assert code == EXIT_CONFIRMED
    assert "FAILS" in out
    assert "witness: 0 (degenerate)" in out


def test_check_without_expectation_reports_the_verdict() -> None:
    assert main(["check", "--ring", "Z(4)", "--property", "gen-right-pp"]) == EXIT_CONFIRMED
    assert main(["check", "--ring", "Z(4)", "--property", "right-rickart"]) == EXIT_NOT_CONFIRMED
    assert main(["check", "--ring", "A(3)", "--property", "condition-i", "--m", "3"]) == EXIT_NOT_CONFIRMED


def test_check_in_witness_mode(capsys: pytest.CaptureFixture[str]) -> None:
    code = main([
        "check", "--ring", "XGR(A(3),C2)", "--property", "gen-right-pp",
        "--witness", "e+g", "--expect", "fails", "--json",
    ])

    assert code == EXIT_CONFIRMED
    verdict = json.loads(capsys.readouterr().out)
    assert verdict["mode"] == "witness-only"
    assert verdict["chain_sizes"] == [9]


def test_witness_mode_is_limited_to_two_properties() -> None:
    code = main(["check", "--ring", "XGR(A(3),C2)", "--property", "baer", "--witness", "e+g"])

    assert code == EXIT_USAGE


def test_parse_errors_are_usage_errors(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["check", "--ring", "GR(A(3),", "--property", "abelian"]) == EXIT_USAGE
    assert "col" in capsys.readouterr().err
    assert main(["annihilator", "--ring", "GR(A(3),C2)", "--element", "e+g"]) == EXIT_USAGE
    assert main(["check"]) == EXIT_USAGE


def test_cap_exceeded_has_its_own_exit_code() -> None:
    assert main(["--cap", "16", "idempotents", "--ring", "GR(A(3),C2)"]) == EXIT_CAP


def test_annihilator_chain_output(capsys: pytest.CaptureFixture[str]) -> None:
    code = main(["annihilator", "--ring", "A(3)", "--element", "a"])

    out = capsys.readouterr().out
    assert code == EXIT_CONFIRMED
    assert "r(x^1): 3 elements: 0, 3*a, 6*a" in out
    assert "r(x^2): 9 elements" in out
    assert "stabilized at n = 2" in out


def test_annihilator_inside_the_embedded_ideal(capsys: pytest.CaptureFixture[str]) -> None:
    code = main(["annihilator", "--ring", "XGR(A(3),C2)", "--element", "e+g", "--within-ideal", "--limit", "2"])

    out = capsys.readouterr().out
    assert code == EXIT_CONFIRMED
    assert "annihilators in GR(A(3),C2)" in out
    assert "r(x^1): 9 elements: 0, a*e + 8*a*g, ... (7 more)" in out


def test_idempotents_and_projections(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["idempotents", "--ring", "Z(6)"]) == EXIT_CONFIRMED
    assert capsys.readouterr().out.split() == ["0", "1", "3*1", "4*1"]

    assert main(["projections", "--ring", "T(Z(2),2)"]) == EXIT_CONFIRMED
    assert capsys.readouterr().out.split() == ["0", "E[1,1]", "+", "E[2,2]"]


def test_catalog_json(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["catalog", "--json"]) == EXIT_CONFIRMED
    entries = json.loads(capsys.readouterr().out)

    assert entries[1]["key"] == "A(3)"
    assert entries[1]["orders"] == [9]
    assert entries[1]["cardinality"] == 9


def test_build_then_validate_the_document(tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
    document = tmp_path / "ring.json"

    assert main(["build", "--ring", "GR(A(3),C2)", "--involution", "canonical", "--out", str(document)]) == EXIT_CONFIRMED
    assert "cardinality: 81" in capsys.readouterr().out
    assert main(["axioms", "--ring-file", str(document), "--involution", "document"]) == EXIT_CONFIRMED
    out = capsys.readouterr().out
    assert "ring: GR(A(3),C2)" in out
    assert "involution: document" in out


def test_table_text_ring_file(tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
    table = tmp_path / "a3.txt"
    table.write_text("name: mine\norders: 9\nlabels: a\na*a = 3a  # a^2 = pa\n", encoding="utf-8")

    assert main(["check", "--ring-file", str(table), "--property", "nilpotent"]) == EXIT_CONFIRMED
    assert "nilpotent on mine: HOLDS" in capsys.readouterr().out


def test_iso_commands(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["iso", "--ring", "Z(4)", "--n", "3"]) == EXIT_CONFIRMED
    assert "HOLDS" in capsys.readouterr().out
    assert main(["iso", "--ring", "Z(4)", "--n", "2", "--embedding", "--json"]) == EXIT_CONFIRMED
    assert json.loads(capsys.readouterr().out)["holds"] is True


def test_replay_of_a_written_certificate(tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
    recorded = tmp_path / "cert.json"

    assert main(["verify", "--claim", "prop_artinian", "--ring", "Z(4)", "--n", "2", "--out", str(recorded)]) == EXIT_CONFIRMED
    capsys.readouterr()
    assert main(["verify", "--replay", str(recorded)]) == EXIT_CONFIRMED
    assert "replay of prop_artinian: identical" in capsys.readouterr().out

    tampered = json.loads(recorded.read_text(encoding="utf-8"))
    tampered["steps"][0]["data"]["right_ideals"] = 4
    recorded.write_text(json.dumps(tampered), encoding="utf-8")
    assert main(["verify", "--replay", str(recorded)]) == EXIT_NOT_CONFIRMED
    assert "step base_lattice differs" in capsys.readouterr().out


def test_unreadable_replay_file_is_a_usage_error(tmp_path: pathlib.Path) -> None:
    assert main(["verify", "--replay", str(tmp_path / "missing.json")]) == EXIT_USAGE


def test_bad_config_is_a_usage_error(tmp_path: pathlib.Path) -> None:
    config = tmp_path / "limits.toml"
    config.write_text("[limits]\nunknown_cap = 3\n", encoding="utf-8")

    assert main(["--config", str(config), "catalog"]) == EXIT_USAGE
