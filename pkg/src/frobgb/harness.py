"""Sweeps driven by a config, family checks and growth classification."""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass, field, fields
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DomainNotCovered, FrobGBError, UnknownFamily
from .families import FamilySpec, get_family, predicted_basis
from .frobenius import Metrics, SweepRow, sweep
from .groebner import STRATEGIES, Ideal, is_groebner, reduced_groebner
from .parsing import parse_list
from .poly import PolyRing

log = logging.getLogger(__name__)

FORMATS = ("table", "csv", "json")
METRIC_NAMES = ("delta", "Delta", "c")


def default_emax(p: int) -> int:
    return {2: 6, 3: 4}.get(p, 2)


@dataclass
class ExperimentConfig:
    p: Optional[int] = None
    vars: tuple[str, ...] = ()
    ideal_i: str = ""
    ideal_j: str = ""
    e_max: Optional[int] = None
    swap: bool = False
    family: Optional[str] = None
    format: str = "table"
    strategy: str = "default"

    @classmethod
    def from_mapping(cls, data: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        aliases = {"emax": "e_max", "ideal-i": "ideal_i", "ideal-j": "ideal_j", "I": "ideal_i", "J": "ideal_j"}
        kw = {}
        for key, value in data.items():
            key = aliases.get(key, key)
            if key not in known:
                raise ValueError(f"unknown config key {key!r}")
            kw[key] = value
        cfg = cls(**kw)
        cfg.normalize()
        return cfg

    def normalize(self):
        if isinstance(self.vars, str):
            self.vars = tuple(v.strip() for v in self.vars.split(",") if v.strip())
        else:
            self.vars = tuple(self.vars)
        for name in ("ideal_i", "ideal_j"):
            value = getattr(self, name)
            if isinstance(value, (list, tuple)):
                setattr(self, name, ",".join(value))
        if isinstance(self.swap, str):
            self.swap = self.swap.strip().lower() in ("1", "true", "yes", "on")
        if self.p is not None:
            self.p = int(self.p)
        if self.e_max is not None:
            self.e_max = int(self.e_max)
            if self.e_max < 0:
                raise ValueError("e_max must be non-negative")
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")


def load_config(path: str) -> ExperimentConfig:
    """JSON object, or flat ``key = value`` lines with ``#`` comments."""
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return ExperimentConfig.from_mapping(json.loads(text))
    data = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        data[key] = value.strip("\"'")
    return ExperimentConfig.from_mapping(data)


# classification


@dataclass(frozen=True)
class BehaviorClass:
    kind: str
    # (A, B) with value = A*q + B; one pair, or (even e, odd e) for periodic kinds
    params: tuple[tuple[Fraction, Fraction], ...] = ()
    onset: Optional[int] = None

    def value(self, e: int, q: int) -> Fraction:
        if not self.params:
            raise ValueError("unclassified series has no formula")
        A, B = self.params[e % 2] if len(self.params) == 2 else self.params[0]
        return A * q + B

    @property
    def rule(self) -> tuple[str, Optional[int]]:
        return (self.kind, self.onset)

    def describe(self) -> str:
        if self.kind == "unclassified":
            return "unclassified"

        def fmt(A, B):
            if A == 0:
                return str(B)
            s = "q" if A == 1 else f"{A}q"
            return s if B == 0 else f"{s}{'+' if B > 0 else '-'}{abs(B)}"

        if len(self.params) == 2:
            body = f"even e: {fmt(*self.params[0])}, odd e: {fmt(*self.params[1])}"
        else:
            body = fmt(*self.params[0])
        return f"{self.kind} [{body}] from e={self.onset}"


def _fit_line(pts):
    (q0, y0), *rest = pts
    other = next(((q, y) for q, y in rest if q != q0), None)
    if other is None:
        return None
    A = Fraction(other[1] - y0, other[0] - q0)
    B = y0 - A * q0
    if all(A * q + B == y for q, y in pts):
        return (A, B)
    return None


def _fit_const(pts):
    y0 = pts[0][1]
    if all(y == y0 for _, y in pts):
        return (Fraction(0), Fraction(y0))
    return None


def classify(series: Sequence[tuple[int, int, int]]) -> BehaviorClass:
    """Exact fit of (e, q, value) samples: constant, linear, then period-2 variants.

    Onsets are tried in increasing order; a fit needs at least two samples in
    each residue class it uses, and at least three samples must remain after
    the onset so that a bare pair of points never counts as a pattern.
    """
    samples = sorted(series)
    last_start = max(0, len(samples) - 3)
    for start in range(last_start + 1):
        tail = samples[start:]
        onset = tail[0][0]
        pts = [(q, v) for _, q, v in tail]
        classes = [[(q, v) for e, q, v in tail if e % 2 == r] for r in (0, 1)]
        eventual = "" if onset == 0 else "eventually-"
        if len(pts) >= 2:
            fit = _fit_const(pts)
            if fit:
                return BehaviorClass(eventual + "constant", (fit,), onset)
            fit = _fit_line(pts)
            if fit:
                return BehaviorClass(eventual + "linear", (fit,), onset)
        if all(len(c) >= 2 for c in classes):
            fits = [_fit_const(c) for c in classes]
            if all(fits):
                return BehaviorClass("periodic2-constant", tuple(fits), onset)
            fits = [_fit_line(c) for c in classes]
            if all(fits):
                return BehaviorClass("periodic2-linear", tuple(fits), onset)
    return BehaviorClass("unclassified")


def classify_rows(rows: Iterable[SweepRow]) -> dict[str, BehaviorClass]:
    rows = list(rows)
    return {
        name: classify([(r.e, r.q, getattr(r.metrics, name)) for r in rows])
        for name in METRIC_NAMES
    }


# family verification


@dataclass
class VerifyRow:
    row: SweepRow
    predicted: Optional[Metrics] = None
    basis_match: Optional[bool] = None
    metrics_match: Optional[bool] = None
    source: str = "computed"  # closed form, stated small-q value, or computed only

    @property
    def ok(self) -> Optional[bool]:
        checks = [c for c in (self.basis_match, self.metrics_match) if c is not None]
        return all(checks) if checks else None


@dataclass
class FamilyReport:
    family: FamilySpec
    rows: list[VerifyRow]
    classes: dict[str, BehaviorClass] = field(default_factory=dict)
    classes_match: Optional[bool] = None

    @property
    def rows_ok(self) -> bool:
        return all(r.ok is not False for r in self.rows)

    @property
    def ok(self) -> bool:
        return self.rows_ok and self.classes_match is not False


def _sorted_basis(ring: PolyRing, texts: Sequence[str]):
    polys = [ring.parse(t).monic() for t in texts]
    polys.sort(key=lambda f: ring.sort_key(f._terms[0][0]))
    return polys


def check_row(spec: FamilySpec, row: SweepRow) -> VerifyRow:
    try:
        pred = predicted_basis(spec, row.e)
    except DomainNotCovered:
        stated = spec.stated.get(row.e)
        if stated is None:
            return VerifyRow(row)
        metrics, texts = stated
        out = VerifyRow(row, Metrics(*metrics), source="stated")
        out.metrics_match = row.metrics == out.predicted
        if texts is not None:
            out.basis_match = _sorted_basis(row.basis.ring, texts) == list(row.basis)
        return out
    out = VerifyRow(row, pred.metrics, source="formula")
    if spec.exact:
        out.basis_match = pred.basis == row.basis
        out.metrics_match = row.metrics == pred.metrics
    else:
        # the closed form is a (possibly non-reduced) Groebner basis; metrics are bounds
        B = list(pred.basis)
        out.basis_match = is_groebner(B) and reduced_groebner(Ideal(row.basis.ring, B)) == row.basis
        m, b = row.metrics, pred.metrics
        out.metrics_match = m.delta <= b.delta and m.Delta <= b.Delta and m.c <= b.c
    return out


def verify_family(name: str, e_max: Optional[int] = None, strategy: str = "default") -> FamilyReport:
    """Compute every e up to e_max and compare with the family's closed form."""
    spec = get_family(name)
    lo, hi = spec.e_range
    if e_max is None:
        e_max = hi
    I, J = spec.ideals()
    rows = sweep(I, J, spec.p, range(min(lo, e_max), e_max + 1), STRATEGIES[strategy])
    report = FamilyReport(spec, [check_row(spec, r) for r in rows])
    report.classes = classify_rows(rows)
    if spec.summary is not None and e_max >= hi:
        got = tuple(report.classes[n].rule for n in METRIC_NAMES)
        report.classes_match = got == tuple(spec.summary)
    for r in report.rows:
        log.debug("%s e=%d %s %s", name, r.row.e, r.row.metrics, r.ok)
    return report


# run


@dataclass
class RunResult:
    status: int
    output: str = ""
    error: str = ""


def _match_cell(ok: Optional[bool]) -> str:
    return "" if ok is None else ("yes" if ok else "no")


def _emit(fmt: str, rows: list[SweepRow], checks: list[Optional[VerifyRow]], classes, report) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["e", "q", "delta", "Delta", "c", "match"])
        for r, chk in zip(rows, checks):
            w.writerow([r.e, r.q, *r.metrics.as_tuple(), _match_cell(chk.ok if chk else None)])
        return buf.getvalue()
    if fmt == "json":
        doc = {
            "rows": [
                {
                    "e": r.e,
                    "q": r.q,
                    "delta": r.metrics.delta,
                    "Delta": r.metrics.Delta,
                    "c": r.metrics.c,
                    "basis": r.basis.strings(),
                    "match": chk.ok if chk else None,
                }
                for r, chk in zip(rows, checks)
            ],
            "classification": {
                n: {
                    "kind": b.kind,
                    "onset": b.onset,
                    "params": [[str(A), str(B)] for A, B in b.params],
                }
                for n, b in classes.items()
            },
        }
        return json.dumps(doc, indent=2) + "\n"

    lines = [f"{'e':>3} {'q':>8} {'delta':>8} {'Delta':>8} {'c':>6}  match"]
    for r, chk in zip(rows, checks):
        d, D, c = r.metrics.as_tuple()
        cell = _match_cell(chk.ok if chk else None) or "-"
        if chk and chk.ok is False:
            cell += f" (expected {chk.predicted.as_tuple()})"
        lines.append(f"{r.e:>3} {r.q:>8} {d:>8} {D:>8} {c:>6}  {cell}")
    lines.append("")
    for n in METRIC_NAMES:
        lines.append(f"{n:>6}: {classes[n].describe()}")
    if report is not None and report.family.summary is not None and report.classes_match is not None:
        lines.append(f"growth pattern matches family: {'yes' if report.classes_match else 'no'}")
    return "\n".join(lines) + "\n"


def run(config: ExperimentConfig) -> RunResult:
    """Exit status 0 when everything matches, 1 on any mismatch, 2 on bad input."""
    try:
        config.normalize()
        spec = get_family(config.family) if config.family else None
        if spec is not None and not (config.ideal_i or config.ideal_j):
            p = spec.p if config.p is None else config.p
            names = config.vars or spec.variables
            swap = spec.swap or config.swap
            texts_i, texts_j = ",".join(spec.ideal_i), ",".join(spec.ideal_j)
        else:
            if config.p is None or not config.vars:
                raise ValueError("need --p and --vars (or a --family)")
            p, names, swap = config.p, config.vars, config.swap
            texts_i, texts_j = config.ideal_i, config.ideal_j
        if spec is not None and (p != spec.p or tuple(names) != spec.variables or swap != spec.swap):
            raise ValueError(f"settings do not match family {spec.name}")
        ring = PolyRing(p, names)
        I = Ideal(ring, parse_list(texts_i, ring))
        J = Ideal(ring, parse_list(texts_j, ring))
        e_max = config.e_max
        if e_max is None:
            e_max = spec.e_range[1] if spec else default_emax(p)
    except (FrobGBError, ValueError) as exc:
        if isinstance(exc, UnknownFamily):
            return RunResult(2, error=f"unknown family {exc.args[0]!r}")
        return RunResult(2, error=str(exc))

    if swap:
        I, J = J, I
    rows = sweep(I, J, p, range(e_max + 1), STRATEGIES[config.strategy])
    checks: list[Optional[VerifyRow]] = [check_row(spec, r) if spec else None for r in rows]
    classes = classify_rows(rows)
    report = None
    if spec is not None:
        report = FamilyReport(spec, [c for c in checks if c is not None], classes)
        if spec.summary is not None and e_max >= spec.e_range[1]:
            report.classes_match = tuple(classes[n].rule for n in METRIC_NAMES) == tuple(spec.summary)
    out = _emit(config.format, rows, checks, classes, report)
    failed = report is not None and not report.ok
    return RunResult(1 if failed else 0, out)
