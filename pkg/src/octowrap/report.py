"""Verification reports and their serialisations."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Union

FIELDS = ("suite", "trials", "failures", "seed", "duration_ms", "counterexample")


@dataclass
class VerificationReport:
    suite: str
    trials: int = 0
    failures: int = 0
    seed: Optional[int] = None
    duration_ms: float = 0.0
    counterexample: Optional[str] = None
    # counts that are neither pass nor fail (e.g. undecided equalities); text mode only
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, witness=None) -> None:
        """Count one trial; keep the first failing witness."""
        self.trials += 1
        if not ok:
            self.failures += 1
            if self.counterexample is None and witness is not None:
                self.counterexample = witness if isinstance(witness, str) else str(witness)

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "trials": self.trials,
            "failures": self.failures,
            "seed": self.seed,
            "duration_ms": round(self.duration_ms, 3),
            "counterexample": self.counterexample,
        }


def _text_line(rep: VerificationReport) -> str:
    # no timing here: text reports must be byte-identical across runs
    status = "PASS" if rep.passed else "FAIL"
    line = f"{status} {rep.suite} trials={rep.trials} failures={rep.failures} seed={rep.seed}"
    for k in sorted(rep.notes):
        line += f" {k}={rep.notes[k]}"
    if rep.counterexample is not None:
        line += f"\n  counterexample: {rep.counterexample}"
    return line


def emit_report(
    reps: Union[VerificationReport, Iterable[VerificationReport]],
    fmt: str = "text",
    dest: Union[str, Path, None] = None,
) -> str:
    """Serialise one or more reports as ``text``, ``json`` or ``csv``.

    Returns the serialised string and, when ``dest`` is given, writes it
    there too (raising ``OSError`` if the destination is unwritable).
    """
    single = isinstance(reps, VerificationReport)
    items = [reps] if single else list(reps)
    if fmt == "text":
        out = "\n".join(_text_line(r) for r in items) + "\n"
    elif fmt == "json":
        payload = items[0].as_dict() if single else [r.as_dict() for r in items]
        out = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n")
        w.writeheader()
        for r in items:
            row = r.as_dict()
            row["counterexample"] = "" if row["counterexample"] is None else row["counterexample"]
            row["seed"] = "" if row["seed"] is None else row["seed"]
            w.writerow(row)
        out = buf.getvalue()
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    if dest is not None:
        Path(dest).write_text(out, encoding="utf-8")
    return out


def parse_csv_report(text: str) -> list[dict]:
    rows = []
    for row in csv.DictReader(io.StringIO(text)):
        rows.append({
            "suite": row["suite"],
            "trials": int(row["trials"]),
            "failures": int(row["failures"]),
            "seed": int(row["seed"]) if row["seed"] else None,
            "duration_ms": float(row["duration_ms"]),
            "counterexample": row["counterexample"] or None,
        })
    return rows
