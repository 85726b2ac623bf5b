"""CSV serialisation of attack traces."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, NamedTuple, TextIO

from .attack import AttackTrace
from .exceptions import ParseError

HEADER = ("strategy", "seed", "q", "removed_node", "lcc_nodes", "lcc_edges", "edge_bound", "vcut_size")


class TraceRow(NamedTuple):
    q: int
    removed_node: int
    lcc_nodes: int
    lcc_edges: int
    edge_bound: float
    vcut_size: int | None


@dataclass(frozen=True)
class TraceRecord:
    strategy: str
    seed: int
    rows: tuple[TraceRow, ...]

    @classmethod
    def from_trace(cls, trace: AttackTrace) -> "TraceRecord":
        # the CSV carries six decimals; rounding here keeps a round trip exact
        rows = tuple(
            TraceRow(s.q, s.removed_node, s.lcc_nodes, s.lcc_edges, float(f"{s.edge_bound:.6f}"), s.vcut_size)
            for s in trace.steps
        )
        return cls(trace.strategy, trace.seed, rows)


def write_csv(records: Iterable[TraceRecord], fh: TextIO) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(HEADER)
    for rec in records:
        for r in rec.rows:
            w.writerow(
                [
                    rec.strategy,
                    rec.seed,
                    r.q,
                    r.removed_node,
                    r.lcc_nodes,
                    r.lcc_edges,
                    f"{r.edge_bound:.6f}",
                    "" if r.vcut_size is None else r.vcut_size,
                ]
            )


def to_csv(records: Iterable[TraceRecord]) -> str:
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()


def read_csv(text: str | TextIO) -> list[TraceRecord]:
    """Parse a trace CSV back into records, grouped by ``(strategy, seed)`` in file order."""
    fh = io.StringIO(text) if isinstance(text, str) else text
    reader = csv.reader(fh)
    try:
        header = tuple(next(reader))
    except StopIteration:
        raise ParseError("empty trace file") from None
    if header != HEADER:
        raise ParseError(f"unexpected header {','.join(header)}")
    groups: dict[tuple[str, int], list[TraceRow]] = {}
    for lineno, row in enumerate(reader, 2):
        if len(row) != len(HEADER):
            raise ParseError(f"line {lineno}: expected {len(HEADER)} fields")
        try:
            key = (row[0], int(row[1]))
            groups.setdefault(key, []).append(
                TraceRow(
                    int(row[2]),
                    int(row[3]),
                    int(row[4]),
                    int(row[5]),
                    float(row[6]),
                    int(row[7]) if row[7] else None,
                )
            )
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    return [TraceRecord(s, seed, tuple(rows)) for (s, seed), rows in groups.items()]
