"""Recognition pipelines: knottedness certification by library search,
pairwise distinction by coloring invariants, and the Alexander prefilter.

A certificate never claims "unknot": exhausting a finite library is
inconclusive, and the search trace is returned instead.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import alexander
from .coloring import Budget, BudgetExceeded, Coloring, colorable, count_colorings
from .quandle import Quandle, verify_axioms

CONVENTION_VERSION = "knotcol-sign-convention-1"


@dataclass
class KnottednessCertificate:
    """Self-validating witness that a diagram is knotted: a quandle plus a
    nontrivial coloring satisfying the crossing equation everywhere."""

    quandle: Quandle
    coloring: Coloring
    knot_name: str
    crossings: tuple
    arc_count: int

    def to_json(self):
        return json.dumps({
            "convention": CONVENTION_VERSION,
            "knot": {
                "name": self.knot_name,
                "arc_count": self.arc_count,
                "crossings": [
                    {"over": c.over, "under_in": c.under_in,
                     "under_out": c.under_out, "sign": c.sign}
                    for c in self.crossings
                ],
            },
            "quandle": {
                "name": self.quandle.name,
                "size": self.quandle.size,
                "table": [list(row) for row in self.quandle.table],
            },
            "coloring": {str(a): c for a, c in sorted(self.coloring.assignment.items())},
        }, indent=2)

    @classmethod
    def from_json(cls, text):
        from .knotio import Crossing

        data = json.loads(text)
        if data.get("convention") != CONVENTION_VERSION:
            raise ValueError(f"unknown convention tag {data.get('convention')!r}")
        crossings = tuple(
            Crossing(c["over"], c["under_in"], c["under_out"], c["sign"])
            for c in data["knot"]["crossings"])
        return cls(
            quandle=verify_axioms(data["quandle"]["table"],
                                  name=data["quandle"].get("name")),
            coloring=Coloring({int(a): c for a, c in data["coloring"].items()}),
            knot_name=data["knot"].get("name") or "?",
            crossings=crossings,
            arc_count=data["knot"]["arc_count"],
        )


@dataclass
class Exhausted:
    """Library scan finished without a certificate; inconclusive, NOT 'unknot'."""

    knot_name: str
    outcomes: list  # (quandle name, "uncolorable" | "budget:<reason>")

    def to_json(self):
        return json.dumps({
            "verdict": "exhausted",
            "knot": self.knot_name,
            "outcomes": [{"quandle": q, "outcome": o} for q, o in self.outcomes],
        }, indent=2)


@dataclass
class AlexanderMismatch:
    delta1: object
    delta2: object

    def to_json(self):
        return json.dumps({
            "kind": "alexander_mismatch",
            "delta1": list(self.delta1.coeffs),
            "delta2": list(self.delta2.coeffs),
            "delta1_text": str(self.delta1),
            "delta2_text": str(self.delta2),
        }, indent=2)


@dataclass
class ColorCountMismatch:
    quandle_name: str
    count1: int
    count2: int

    def to_json(self):
        return json.dumps({
            "kind": "color_count_mismatch",
            "quandle": self.quandle_name,
            "col1": self.count1,
            "col2": self.count2,
        }, indent=2)


@dataclass
class Indistinguishable:
    checked_quandles: list = field(default_factory=list)

    def to_json(self):
        return json.dumps({
            "verdict": "indistinguishable",
            "note": "not distinguished by this library; no upper bound is known",
            "quandles_checked": self.checked_quandles,
        }, indent=2)


def certify_knotted(diagram, library, budget=None):
    """Scan the library in index order; return the first certificate found,
    or an Exhausted trace."""
    if not library:
        raise ValueError("empty quandle library")
    outcomes = []
    for quandle in library:
        try:
            found, coloring = colorable(diagram, quandle, return_coloring=True)
        except BudgetExceeded as exc:
            outcomes.append((quandle.name or f"q{quandle.size}", f"budget:{exc}"))
            continue
        if found:
            cert = KnottednessCertificate(
                quandle=quandle,
                coloring=coloring,
                knot_name=diagram.name or "?",
                crossings=diagram.crossings,
                arc_count=diagram.arc_count,
            )
            assert verify_certificate(cert)
            return cert
        outcomes.append((quandle.name or f"q{quandle.size}", "uncolorable"))
    return Exhausted(diagram.name or "?", outcomes)


def distinguish(diagram1, diagram2, library, count=False, budget=None):
    """Alexander fast path first, then library colorability (and optionally
    count) comparison in index order."""
    d1 = alexander.alexander_polynomial(diagram1)
    d2 = alexander.alexander_polynomial(diagram2)
    if d1 != d2:
        return AlexanderMismatch(d1, d2)
    checked = []
    for quandle in library:
        name = quandle.name or f"q{quandle.size}"
        c1 = colorable(diagram1, quandle)
        c2 = colorable(diagram2, quandle)
        if c1 != c2:
            n1 = count_colorings(diagram1, quandle, budget=budget)
            n2 = count_colorings(diagram2, quandle, budget=budget)
            return ColorCountMismatch(name, n1, n2)
        if count and c1:
            n1 = count_colorings(diagram1, quandle, budget=budget)
            n2 = count_colorings(diagram2, quandle, budget=budget)
            if n1 != n2:
                return ColorCountMismatch(name, n1, n2)
        checked.append(name)
    return Indistinguishable(checked)


def affine_prefilter(diagram, library):
    """Drop affine-tagged quandles when the Alexander polynomial is trivial;
    sound because affine colorability implies a nontrivial polynomial."""
    if alexander.alexander_trivial(diagram):
        return [q for q in library if "affine" not in q.tags]
    return list(library)


def check_certificate(cert):
    """Independent re-validation; returns None if valid, else a failure reason."""
    try:
        quandle = verify_axioms([list(row) for row in cert.quandle.table])
    except ValueError as exc:
        return f"quandle axioms fail: {exc}"
    f = cert.coloring.assignment
    if set(f) != set(range(1, cert.arc_count + 1)):
        return "coloring does not assign every arc exactly once"
    if any(not 1 <= c <= quandle.size for c in f.values()):
        return "color out of range"
    for idx, crossing in enumerate(cert.crossings, start=1):
        if crossing.sign == 1:
            over, j, k = crossing.over, crossing.under_in, crossing.under_out
        else:
            over, j, k = crossing.over, crossing.under_out, crossing.under_in
        if f[k] != quandle.op(f[over], f[j]):
            return f"crossing {idx} violates the coloring equation"
    if len(set(f.values())) < 2:
        return "coloring is trivial (monochrome)"
    return None


def verify_certificate(cert):
    """True iff the certificate is self-validating."""
    return check_certificate(cert) is None
