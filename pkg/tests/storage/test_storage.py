from __future__ import annotations

import json
import pathlib

import pytest

from rickart_tb.cli.main import EXIT_CONFIRMED, EXIT_USAGE, main
from rickart_tb.domain.models import Certificate, StepRecord
from rickart_tb.storage.db import MigrationError, apply_migrations, get_connection, init_db
from rickart_tb.storage.repositories import CertificateRepository, content_digest

pytestmark = pytest.mark.storage


def _certificate(claim: str = "prop_artinian", passed: bool = True) -> Certificate:
    certificate = Certificate(claim, {"ring": "Z(4)", "n": 2}, notes=["finite"])
    certificate.add_step(StepRecord("base_lattice", "lattice is finite", passed, {"right_ideals": 3}), 0.01)
    return certificate


def test_migrations_apply_once(initialized_db: pathlib.Path, migrations_dir: pathlib.Path) -> None:
    with get_connection(initialized_db) as conn:
        assert apply_migrations(conn, migrations_dir) == []
        versions = [row["version"] for row in conn.execute("SELECT version FROM schema_migrations")]

    assert versions == ["0001_certificates"]


def test_missing_migrations_dir_is_reported(test_db_path: pathlib.Path, tmp_path: pathlib.Path) -> None:
    with pytest.raises(MigrationError):
        init_db(test_db_path, tmp_path / "nowhere")


def test_insert_and_read_back(initialized_db: pathlib.Path) -> None:
    certificate = _certificate()

    with get_connection(initialized_db) as conn:
        repo = CertificateRepository(conn)
        first = repo.insert(certificate)
        second = repo.insert(_certificate("theorem1", passed=False))

        recent = repo.list_recent()
        only = repo.list_recent(claim="prop_artinian")
        stored = repo.get_content(first)

    assert [row["certificate_id"] for row in recent] == [second, first]
    assert [row["verdict"] for row in recent] == [0, 1]
    assert [row["certificate_id"] for row in only] == [first]
    assert stored == json.loads(json.dumps(certificate.content()))


def test_digest_lookup_finds_equal_content(initialized_db: pathlib.Path) -> None:
    with get_connection(initialized_db) as conn:
        repo = CertificateRepository(conn)
        ids = [repo.insert(_certificate()) for _ in range(2)]
        repo.insert(_certificate("theorem1"))

        found = repo.find_by_digest(content_digest(_certificate().content()))
        missing = repo.get_content(999)

    assert found == ids
    assert missing is None


def test_digest_ignores_timings() -> None:
    slow = _certificate()
    slow.timings["base_lattice"] = 12.0

    assert content_digest(slow.content()) == content_digest(_certificate().content())


def test_cli_archives_and_lists_certificates(tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
    db = tmp_path / "archive" / "certs.sqlite"

    assert main(["db-init", "--db", str(db)]) == EXIT_CONFIRMED
    assert main(["verify", "--claim", "prop_artinian", "--ring", "Z(4)", "--n", "2", "--db", str(db)]) == EXIT_CONFIRMED
    capsys.readouterr()

    assert main(["history", "--db", str(db)]) == EXIT_CONFIRMED
    listing = capsys.readouterr().out.strip().splitlines()
    assert len(listing) == 1
    assert listing[0].split("\t")[1:3] == ["prop_artinian", "confirmed"]

    assert main(["history", "--db", str(db), "--show", "1"]) == EXIT_CONFIRMED
    assert json.loads(capsys.readouterr().out)["claim"] == "prop_artinian"
    assert main(["history", "--db", str(db), "--show", "7"]) == EXIT_USAGE


def test_cli_db_init_with_a_bad_migrations_dir(tmp_path: pathlib.Path) -> None:
    code = main(["db-init", "--db", str(tmp_path / "x.sqlite"), "--migrations-dir", str(tmp_path / "missing")])

    assert code == EXIT_USAGE
