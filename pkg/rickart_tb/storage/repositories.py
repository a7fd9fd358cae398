"""Repository layer for the certificate archive."""
from __future__ import annotations

import hashlib
import json
import sqlite3
from typing import Any, Optional

from rickart_tb.domain.models import Certificate
from rickart_tb.reporting.certificates import jsonable
from rickart_tb.storage.db import utc_now


def content_digest(content: dict[str, Any]) -> str:
    return hashlib.sha256(json.dumps(content, sort_keys=True, default=jsonable).encode("utf-8")).hexdigest()


class CertificateRepository:
    def __init__(self, conn: sqlite3.Connection) -> None:
        self._conn = conn

    def insert(self, certificate: Certificate) -> int:
        content = certificate.content()
        cursor = self._conn.execute(
            """
            INSERT INTO certificates (
                claim,
                parameters_json,
                verdict,
                schema,
                content_json,
                content_sha256,
                timings_json,
                created_at
            ) VALUES (?, ?, ?, ?, ?, ?, ?, ?)
            """,
            (
                certificate.claim,
                json.dumps(certificate.parameters, sort_keys=True, default=jsonable),
                int(certificate.verdict),
                certificate.schema,
                json.dumps(content, sort_keys=True, default=jsonable),
                content_digest(content),
                json.dumps(certificate.timings, sort_keys=True),
                utc_now(),
            ),
        )
        return int(cursor.lastrowid)

    def list_recent(self, *, claim: Optional[str] = None, limit: int = 20) -> list[sqlite3.Row]:
        query = (
            "SELECT certificate_id, claim, parameters_json, verdict, content_sha256, created_at "
            "FROM certificates"
        )
        params: list[Any] = []
        if claim is not None:
            query += " WHERE claim = ?"
            params.append(claim)
        query += " ORDER BY certificate_id DESC LIMIT ?"
        params.append(limit)
        return self._conn.execute(query, params).fetchall()

    def get_content(self, certificate_id: int) -> Optional[dict[str, Any]]:
        row = self._conn.execute(
            "SELECT content_json FROM certificates WHERE certificate_id = ?",
            (certificate_id,),
        ).fetchone()
        return None if row is None else json.loads(row["content_json"])

    def find_by_digest(self, digest: str) -> list[int]:
        rows = self._conn.execute(
            "SELECT certificate_id FROM certificates WHERE content_sha256 = ? ORDER BY certificate_id",
            (digest,),
        ).fetchall()
        return [int(row["certificate_id"]) for row in rows]
