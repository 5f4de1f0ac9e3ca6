"""Matrix text format: rows separated by ';' or newlines, entries by whitespace
(commas also accepted).  Surrounding brackets are ignored, so
``[[2,-1],[-1,2]]`` and ``2 -1; -1 2`` parse to the same matrix."""

from __future__ import annotations

import re
from typing import List

from .gcm import Gcm, GcmError, validate


class ParseError(ValueError):
    pass


class ValidationError(ValueError):
    def __init__(self, cause: GcmError):
        super().__init__(str(cause))
        self.cause = cause


_ROW_SPLIT = re.compile(r"\]\s*,?\s*\[|;|\n")


def parse_int_matrix(text: str) -> List[List[int]]:
    body = text.strip()
    if not body:
        raise ParseError("empty matrix text")
    rows = []
    for chunk in _ROW_SPLIT.split(body):
        chunk = chunk.replace("[", " ").replace("]", " ").replace(",", " ").strip()
        if not chunk:
            continue
        try:
            rows.append([int(tok) for tok in chunk.split()])
        except ValueError as exc:
            raise ParseError(f"non-integer entry in row {chunk!r}") from exc
    if not rows:
        raise ParseError("no rows found")
    if any(len(r) != len(rows[0]) for r in rows):
        raise ParseError("rows have different lengths")
    return rows


def parse_matrix(text: str) -> Gcm:
    rows = parse_int_matrix(text)
    try:
        return validate(rows)
    except GcmError as exc:
        raise ValidationError(exc) from exc


def format_matrix(g: Gcm) -> str:
    return "; ".join(" ".join(str(x) for x in row) for row in g.entries)
