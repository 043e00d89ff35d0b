"""Reporting: table rows from a propagated ledger, golden comparison,
and byte-stable text/csv/json-lines rendering."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .arith import unit_group
from .engine import BoundLedger, canonical_label
from .facts import FactError, parse_curve_ref


@dataclass(frozen=True)
class TableRow:
    level: int
    structure: str
    curve: str        # canonical key, e.g. "35:-1,6"
    elements: str     # set notation, e.g. "{1,6,29,34}"
    genus: int
    gon_q: str
    gon_c: str
    rules: str        # sorted rule ids that touched this curve


def _fmt_interval(lo: int, hi: int | None) -> str:
    if hi is not None and lo == hi:
        return str(lo)
    if hi is None:
        return f">={lo}"
    return f"[{lo},{hi}]"


def table_rows(ledger: BoundLedger, min_genus: int = 2) -> list[TableRow]:
    rows = []
    for key, s in ledger.curves.items():
        if s.delta is None or s.genus is None or s.genus < min_genus:
            continue
        used = sorted({d.rule for d in ledger.derivations if d.curve == key})
        rows.append(TableRow(
            level=s.delta.N,
            structure=unit_group(s.delta.N).structure(),
            curve=key,
            elements="{" + ",".join(map(str, s.delta.elements)) + "}",
            genus=s.genus,
            gon_q=_fmt_interval(s.q_lo, s.q_hi),
            gon_c=_fmt_interval(s.c_lo, s.c_hi),
            rules=",".join(used),
        ))
    rows.sort(key=lambda r: (r.level, -r.genus, r.curve))
    return rows


# ---------------------------------------------------------------------------
# golden comparison


@dataclass(frozen=True)
class GoldenRow:
    curve: str
    genus: int
    gon_q: int
    gon_c_lo: int
    gon_c_exact: bool
    flagged: bool  # malformed-but-recoverable cell in the source table


def parse_golden(text: str) -> list[GoldenRow]:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            ref, g, gq, gc = line.split()
            key = canonical_label(parse_curve_ref(ref))
        except (ValueError, FactError) as e:
            raise FactError(f"golden line {lineno}: {e}") from None
        flagged = False
        if gc == "geq5":
            gc, flagged = ">=5", True
        if gc.startswith(">="):
            rows.append(GoldenRow(key, int(g), int(gq), int(gc[2:]),
                                  False, flagged))
        else:
            rows.append(GoldenRow(key, int(g), int(gq), int(gc),
                                  True, flagged))
    return rows


@dataclass(frozen=True)
class Comparison:
    matches: int
    mismatches: tuple[str, ...]
    flagged: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def compare_to_golden(ledger: BoundLedger, golden: list[GoldenRow]) -> Comparison:
    mismatches, flagged, matches = [], [], 0
    seen = set()
    for row in golden:
        s = ledger.curves.get(row.curve)
        if s is None:
            mismatches.append(f"{row.curve}: missing from ledger")
            continue
        seen.add(row.curve)
        problems = []
        if s.genus != row.genus:
            problems.append(f"genus {s.genus} != {row.genus}")
        if not (s.q_lo == s.q_hi == row.gon_q):
            problems.append(
                f"gon_Q [{s.q_lo},{s.q_hi}] != {row.gon_q}")
        if row.gon_c_exact:
            if not (s.c_lo == s.c_hi == row.gon_c_lo):
                problems.append(
                    f"gon_C [{s.c_lo},{s.c_hi}] != {row.gon_c_lo}")
        elif s.c_lo < row.gon_c_lo:
            problems.append(f"gon_C lower {s.c_lo} < {row.gon_c_lo}")
        if problems:
            mismatches.append(f"{row.curve}: " + "; ".join(problems))
        else:
            matches += 1
            if row.flagged:
                flagged.append(
                    f"{row.curve}: malformed source cell read as "
                    f">={row.gon_c_lo}; computed gon_C >= {s.c_lo}")
    golden_keys = {r.curve for r in golden}
    for row in table_rows(ledger):
        if row.curve not in golden_keys:
            mismatches.append(f"{row.curve}: extra row not in golden table")
    return Comparison(matches, tuple(mismatches), tuple(flagged))


# ---------------------------------------------------------------------------
# rendering

_FIELDS = ("level", "structure", "curve", "elements", "genus",
           "gon_q", "gon_c", "rules")


def render_text(rows: list[TableRow]) -> str:
    cells = [[str(getattr(r, f)) for f in _FIELDS] for r in rows]
    widths = [max([len(f)] + [len(c[i]) for c in cells])
              for i, f in enumerate(_FIELDS)]
    out = ["  ".join(f.ljust(w) for f, w in zip(_FIELDS, widths)).rstrip()]
    for c in cells:
        out.append("  ".join(v.ljust(w) for v, w in zip(c, widths)).rstrip())
    return "\n".join(out) + "\n"


def render_csv(rows: list[TableRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_FIELDS)
    for r in rows:
        writer.writerow([getattr(r, f) for f in _FIELDS])
    return buf.getvalue()


def render_json_lines(rows: list[TableRow]) -> str:
    out = []
    for r in rows:
        out.append(json.dumps({f: getattr(r, f) for f in _FIELDS},
                              sort_keys=True, separators=(",", ":")))
    return "\n".join(out) + "\n"


RENDERERS = {"text": render_text, "csv": render_csv,
             "json-lines": render_json_lines}
