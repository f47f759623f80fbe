"""Enumeration of index-one families, folding into series, reference comparison and verdicts."""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from . import _kernels, graded
from .intersect import SurfaceFamily

DEFAULT_BOUND = 150

Affine = tuple[int, int]  # c0 + c1 * n


class FamilyGapError(ValueError):
    pass


class DataIntegrityError(RuntimeError):
    pass


class UnknownRowError(KeyError):
    pass


_TERM = re.compile(r"([+-]?)(\d*)(n?)")


def parse_affine(s: str) -> Affine:
    s = s.replace(" ", "").replace("−", "-")
    if not s:
        raise ValueError("empty expression")
    c0 = c1 = 0
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {s!r}")
        sign = -1 if m.group(1) == "-" else 1
        if m.group(3):
            c1 += sign * int(m.group(2) or 1)
        elif m.group(2):
            c0 += sign * int(m.group(2))
        else:
            raise ValueError(f"cannot parse {s!r}")
        pos = m.end()
    return c0, c1


@dataclass(frozen=True)
class Pattern:
    """An affine-linear series of weight/degree tuples indexed by n >= n_min."""

    id: str
    weights: tuple[Affine, ...]
    degrees: tuple[Affine, ...]
    n_min: int = 1

    @classmethod
    def parse(cls, id: str, weights: str, degrees: str, n_min: int = 1) -> "Pattern":
        return cls(
            id,
            tuple(parse_affine(t) for t in weights.split(",")),
            tuple(parse_affine(t) for t in degrees.split(",")),
            n_min,
        )

    def instantiate(self, n: int) -> SurfaceFamily:
        w = tuple(c0 + c1 * n for c0, c1 in self.weights)
        d = tuple(c0 + c1 * n for c0, c1 in self.degrees)
        return SurfaceFamily(w, d, self.id, n)

    def match(self, f: SurfaceFamily) -> Optional[int]:
        """The n with instantiate(n) == f (as sorted tuples), if any."""
        if len(f.weights) != len(self.weights) or len(f.degrees) != len(self.degrees):
            return None
        # try each slot with nonzero slope against each coordinate of f
        for slot, (c0, c1) in enumerate(self.weights + self.degrees):
            if not c1:
                continue
            pool = f.weights if slot < len(self.weights) else f.degrees
            for v in pool:
                if (v - c0) % c1:
                    continue
                n = (v - c0) // c1
                if n >= self.n_min and self.instantiate(n).key() == f.key():
                    return n
        return None

    def max_n(self, bound: int) -> int:
        """Largest n whose instance has all weights <= bound (n_min - 1 if none)."""
        n = self.n_min - 1
        while all(c0 + c1 * (n + 1) <= bound for c0, c1 in self.weights):
            n += 1
        return n

    def text(self) -> str:
        def show(c):
            c0, c1 = c
            if not c1:
                return str(c0)
            t = ("" if c1 == 1 else str(c1)) + "n"
            return t if not c0 else f"{t}{c0:+d}"

        return f"({','.join(map(show, self.weights))}; {','.join(map(show, self.degrees))})"


@dataclass(frozen=True)
class LctValue:
    kind: str  # exact | lower_bound | branch
    values: tuple[Fraction, ...]
    conditions: tuple[tuple[str, str], ...] = ()
    formula: Optional[str] = None

    def __post_init__(self):
        if self.kind not in ("exact", "lower_bound", "branch"):
            raise ValueError(f"unknown lct kind {self.kind}")
        if self.formula is None:
            if self.kind == "branch":
                if len(self.values) < 2 or len(self.conditions) != len(self.values):
                    raise ValueError("branch lct needs >= 2 labelled values")
            elif len(self.values) != 1:
                raise ValueError(f"{self.kind} lct carries exactly one value")

    @property
    def minimum(self) -> Fraction:
        if self.formula is not None:
            raise ValueError("parametric lct: evaluate at n first")
        return min(self.values)

    def at(self, n: int) -> "LctValue":
        if self.formula is None:
            return self
        num, den = self.formula.strip().split("/")
        a0, a1 = parse_affine(num.strip("()"))
        b0, b1 = parse_affine(den.strip("()"))
        return LctValue(self.kind, (Fraction(a0 + a1 * n, b0 + b1 * n),))

    def text(self) -> str:
        if self.formula is not None:
            return self.formula
        if self.kind == "exact":
            return str(self.values[0])
        if self.kind == "lower_bound":
            return f">={self.values[0]}"
        return " | ".join(f"{c[0]}:{v}" for c, v in zip(self.conditions, self.values))

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "values": [str(v) for v in self.values]}
        if self.conditions:
            d["conditions"] = [{"label": a, "text": b} for a, b in self.conditions]
        if self.formula is not None:
            d["formula"] = self.formula
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "LctValue":
        vals = d["values"]
        if len(vals) == 1 and "n" in vals[0]:
            return cls(d["kind"], (), formula=vals[0])
        conds = tuple((c["label"], c["text"]) for c in d.get("conditions", ()))
        return cls(d["kind"], tuple(Fraction(v) for v in vals), conds)


@dataclass(frozen=True)
class ReferenceRow:
    id: str
    table: int
    row_no: int
    lct: LctValue
    family: Optional[SurfaceFamily] = None
    pattern: Optional[Pattern] = None

    @property
    def parametric(self) -> bool:
        return self.pattern is not None

    def instance(self, n: Optional[int] = None) -> SurfaceFamily:
        if self.pattern is not None:
            if n is None:
                raise ValueError(f"{self.id} is parametric; give n")
            return self.pattern.instantiate(n)
        return self.family

    def lct_at(self, n: Optional[int] = None) -> LctValue:
        return self.lct.at(n) if self.lct.formula is not None else self.lct

    def text(self) -> str:
        return self.pattern.text() if self.pattern else self.family.label()


@dataclass(frozen=True)
class Reference:
    rows: tuple[ReferenceRow, ...]
    extra_patterns: tuple[Pattern, ...] = ()

    def table(self, codim: int) -> list[ReferenceRow]:
        return [r for r in self.rows if r.table == codim]

    @property
    def patterns(self) -> list[Pattern]:
        return [r.pattern for r in self.rows if r.pattern is not None]

    def by_id(self, id: str) -> ReferenceRow:
        for r in self.rows:
            if r.id == id:
                return r
        raise UnknownRowError(id)

    def identify(self, f: SurfaceFamily) -> tuple[ReferenceRow, Optional[int]]:
        for r in self.rows:
            if r.pattern is not None:
                n = r.pattern.match(f)
                if n is not None:
                    return r, n
            elif r.family.key() == f.key():
                return r, None
        raise UnknownRowError(f"{f.label()} not in reference tables")

    def instances(self, n_max: int = 10, n_min: int = 1) -> list[SurfaceFamily]:
        out = []
        for r in self.rows:
            if r.parametric:
                out.extend(r.instance(n) for n in range(max(n_min, r.pattern.n_min), n_max + 1))
            else:
                out.append(SurfaceFamily(r.family.weights, r.family.degrees, r.id))
        return out


def load_reference(path: Union[str, Path, None] = None) -> Reference:
    if path is None:
        text = resources.files("polarcyl").joinpath("data/reference_tables.json").read_text()
    else:
        text = Path(path).read_text()
    data = json.loads(text)
    rows = []
    for d in data["rows"]:
        lct = LctValue.from_dict(d["lct"])
        if "parametric" in d:
            pat = Pattern.parse(d["id"], d["weights"], d["degrees"], d["parametric"].get("n_min", 1))
            rows.append(ReferenceRow(d["id"], d["table"], d["row_no"], lct, pattern=pat))
        else:
            fam = SurfaceFamily(
                tuple(int(t) for t in d["weights"].split(",")),
                tuple(int(t) for t in d["degrees"].split(",")),
                d["id"],
            )
            rows.append(ReferenceRow(d["id"], d["table"], d["row_no"], lct, family=fam))
    extras = tuple(
        Pattern.parse(d["id"], d["weights"], d["degrees"], d["parametric"].get("n_min", 1))
        for d in data.get("extra_patterns", ())
    )
    return Reference(tuple(rows), extras)


# -- enumeration ---------------------------------------------------------------


def _run_kernel(kernel, bound, width):
    size = 1 << 14
    while True:
        out = np.zeros((size, width), dtype=np.int64)
        cnt = kernel(bound, out)
        if cnt <= size:
            return {tuple(int(v) for v in row) for row in out[:cnt]}
        size = cnt


def admissible(f: SurfaceFamily) -> bool:
    w, d = f.weights, f.degrees
    return (
        f.index == 1
        and not graded.is_linear_cone(w, d)
        and graded.ambient_well_formed(w)
        and graded.surface_well_formed(w, d)
        and graded.quasi_smooth_general(w, d)
    )


def enumerate_candidates(weight_bound: int, codim: int) -> list[SurfaceFamily]:
    """Every admissible index-one family with all weights <= weight_bound."""
    if codim not in (1, 2):
        raise ValueError("codim must be 1 or 2")
    if weight_bound < 1:
        return []
    if codim == 1:
        raw = _run_kernel(_kernels.enumerate_hyp, weight_bound, 5)
        fams = [SurfaceFamily(k[:4], k[4:]) for k in raw]
    else:
        raw = _run_kernel(_kernels.enumerate_ci, weight_bound, 7)
        fams = [SurfaceFamily(k[:5], k[5:]) for k in raw]
    uniq = {f.key(): f for f in fams}
    return sorted((f for f in uniq.values() if admissible(f)), key=SurfaceFamily.key)


# -- folding and comparison ------------------------------------------------------


@dataclass(frozen=True)
class TableRow:
    family: SurfaceFamily  # first instance for a folded series
    table_id: Optional[str] = None
    lct: Optional[LctValue] = None
    pattern: Optional[Pattern] = None
    n_range: Optional[tuple[int, int]] = None

    def text(self) -> str:
        if self.pattern is None:
            return self.family.label()
        return f"{self.pattern.text()} n={self.n_range[0]}..{self.n_range[1]}"

    def to_dict(self) -> dict:
        d = {
            "id": self.table_id,
            "weights": list(self.family.weights),
            "degrees": list(self.family.degrees),
            "lct": self.lct.to_dict() if self.lct else None,
        }
        if self.pattern is not None:
            d["pattern"] = self.pattern.text()
            d["n_range"] = list(self.n_range)
        return d


def fold_families(rows: Sequence[SurfaceFamily], patterns: Iterable[Pattern]) -> list[TableRow]:
    """Collapse instances of each pattern into one row; others pass through."""
    patterns = list(patterns)
    hits: dict[str, list[int]] = {}
    out: list[TableRow] = []
    for f in rows:
        for p in patterns:
            n = p.match(f)
            if n is not None:
                hits.setdefault(p.id, []).append(n)
                break
        else:
            out.append(TableRow(f, f.table_id))
    for p in patterns:
        ns = sorted(hits.get(p.id, ()))
        if not ns:
            continue
        if ns != list(range(ns[0], ns[-1] + 1)):
            missing = sorted(set(range(ns[0], ns[-1] + 1)) - set(ns))
            raise FamilyGapError(f"family gap in {p.id}: n={missing} missing")
        out.append(TableRow(p.instantiate(ns[0]), p.id, pattern=p, n_range=(ns[0], ns[-1])))
    return out


def lct_lookup(row: Union[TableRow, SurfaceFamily], reference: Optional[Reference] = None) -> LctValue:
    ref = reference or load_reference()
    fam = row.family if isinstance(row, TableRow) else row
    try:
        if isinstance(row, TableRow) and row.pattern is not None:
            return ref.by_id(row.table_id).lct
        r, n = ref.identify(fam)
    except UnknownRowError:
        raise UnknownRowError("not in reference tables") from None
    return r.lct_at(n)


def attach_reference(folded: Sequence[TableRow], reference: Reference) -> list[TableRow]:
    out = []
    for row in folded:
        if row.pattern is not None:
            try:
                r = reference.by_id(row.pattern.id)
            except UnknownRowError:
                out.append(row)
                continue
            out.append(TableRow(row.family, r.id, r.lct, row.pattern, row.n_range))
            continue
        try:
            r, _ = reference.identify(row.family)
        except UnknownRowError:
            out.append(row)
            continue
        out.append(TableRow(SurfaceFamily(row.family.weights, row.family.degrees, r.id), r.id, r.lct))
    return out


@dataclass
class Diff:
    missing: list[str] = field(default_factory=list)
    extra: list[str] = field(default_factory=list)
    range_mismatch: list[str] = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return not (self.missing or self.extra or self.range_mismatch)

    def to_dict(self) -> dict:
        return {"missing": self.missing, "extra": self.extra, "range_mismatch": self.range_mismatch}


def compare_with_reference(
    folded: Sequence[TableRow], reference: Reference, codim: int, bound: int = DEFAULT_BOUND
) -> Diff:
    """Structural diff of folded rows against one reference table.

    A parametric row matches when its n range runs from n_min to the largest
    n allowed by the weight bound.
    """
    diff = Diff()
    seen = set()
    for row in folded:
        if row.pattern is not None:
            try:
                r = reference.by_id(row.pattern.id)
            except UnknownRowError:
                diff.extra.append(f"{row.pattern.id} {row.text()}")
                continue
            if r.table != codim:
                diff.extra.append(f"{row.pattern.id} {row.text()}")
                continue
            seen.add(r.id)
            want = (r.pattern.n_min, r.pattern.max_n(bound))
            if row.n_range != want:
                diff.range_mismatch.append(f"{r.id}: n={row.n_range[0]}..{row.n_range[1]}, expected {want[0]}..{want[1]}")
            continue
        try:
            r, n = reference.identify(row.family)
        except UnknownRowError:
            diff.extra.append(row.family.label())
            continue
        if n is not None or r.table != codim:
            diff.extra.append(row.family.label())
            continue
        seen.add(r.id)
    for r in reference.table(codim):
        if r.id not in seen:
            diff.missing.append(f"{r.id} {r.text()}")
    return diff


@dataclass(frozen=True)
class ClassifyResult:
    codim: int
    bound: int
    rows: tuple[TableRow, ...]
    diff: Diff


def classify(bound: int, codim: int, reference: Optional[Reference] = None) -> ClassifyResult:
    ref = reference or load_reference()
    cands = enumerate_candidates(bound, codim)
    folded = fold_families(cands, list(ref.patterns) + list(ref.extra_patterns))
    rows = attach_reference(folded, ref)
    rows.sort(key=_row_order)
    return ClassifyResult(codim, bound, tuple(rows), compare_with_reference(rows, ref, codim, bound))


def _row_order(row: TableRow):
    tid = row.table_id or "Z"
    m = re.match(r"T(\d+)\.(\d+)$", tid)
    return (0, int(m.group(1)), int(m.group(2))) if m else (1, tid, row.family.key())


def to_csv(rows: Sequence[TableRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["No.", "weights", "degrees", "lct", "n_range"])
    for r in rows:
        fam = r.family
        if r.pattern is not None:
            pw, pd = r.pattern.text().strip("()").split("; ")
        else:
            pw, pd = ",".join(map(str, fam.weights)), ",".join(map(str, fam.degrees))
        nr = f"{r.n_range[0]}..{r.n_range[1]}" if r.n_range else ""
        w.writerow([r.table_id or "", pw, pd, r.lct.text() if r.lct else "", nr])
    return buf.getvalue()


# -- verdicts --------------------------------------------------------------------

JUSTIFICATIONS = ("CYLINDER_EXISTS_DP4", "LCT_GE_1", "SMOOTH_LOW_DEGREE", "THM_ABSENCE", "THM_CYL_N_GE_2")

_SMOOTH_LOW = {"T1.2", "T1.9", "T1.17"}
_ABSENCE = {"T1.10", "T1.18", "T2.39"}


@dataclass(frozen=True)
class Verdict:
    has_cylinder: bool
    justification: str
    citation: str

    def __post_init__(self):
        if self.justification not in JUSTIFICATIONS:
            raise ValueError(self.justification)
        if self.has_cylinder != (self.justification == "CYLINDER_EXISTS_DP4"):
            raise ValueError("has_cylinder must coincide with CYLINDER_EXISTS_DP4")

    def to_dict(self) -> dict:
        return {"has_cylinder": self.has_cylinder, "justification": self.justification, "citation": self.citation}


def cylinder_verdict(row: Union[SurfaceFamily, TableRow], reference: Optional[Reference] = None) -> Verdict:
    ref = reference or load_reference()
    fam = row.family if isinstance(row, TableRow) else row
    r, n = ref.identify(fam)
    if r.id == "T2.38":
        if n == 1:
            return Verdict(True, "CYLINDER_EXISTS_DP4", "main-theorem; thm:cyl (n=1)")
        return Verdict(False, "THM_CYL_N_GE_2", f"thm:cyl (n={n})")
    if r.id in _SMOOTH_LOW:
        return Verdict(False, "SMOOTH_LOW_DEGREE", "cor:absence (smooth del Pezzo of degree 1, 2 or 3)")
    if r.id in _ABSENCE:
        return Verdict(False, "THM_ABSENCE", "thm:absence")
    lct = r.lct_at(n)
    if lct.minimum < 1:
        raise DataIntegrityError(f"justification/data mismatch: {r.id} has min lct {lct.minimum} < 1")
    return Verdict(False, "LCT_GE_1", "thm:alpha1 with " + ("thm:alpha2" if r.table == 2 else "stored lct"))
