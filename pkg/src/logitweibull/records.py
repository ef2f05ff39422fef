"""Verification record: one named quantity, its published value, and the oracle's."""

from __future__ import annotations

from dataclasses import dataclass, asdict


@dataclass(frozen=True)
class VerificationRecord:
    name: str
    paper_value: float
    oracle_value: float
    abs_diff: float
    rel_diff: float
    note: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


def make_record(name: str, paper_value: float, oracle_value: float, note: str = "") -> VerificationRecord:
    abs_diff = abs(paper_value - oracle_value)
    rel_diff = abs_diff / max(1.0, abs(oracle_value))
    return VerificationRecord(name, paper_value, oracle_value, abs_diff, rel_diff, note)
