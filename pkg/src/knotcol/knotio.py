"""Knot presentations and conversions into the crossing-list diagram model.

Supported inputs: signed Gauss codes, braid words, torus-knot braids, and
Dowker-Thistlethwaite codes.  A diagram is a list of crossings over arcs
numbered 1..m where arcs are the maximal strands between consecutive
under-passages along the knot.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass


class KnotFormatError(ValueError):
    """Unparseable or inconsistent knot presentation."""


class NonRealizableError(KnotFormatError):
    """The code does not describe a planar knot diagram."""


@dataclass(frozen=True)
class Crossing:
    """One crossing: the over arc and the under strand entering/leaving.

    Sign +1 constrains f(under_out) = f(over) * f(under_in);
    sign -1 constrains f(under_in) = f(over) * f(under_out).
    """

    over: int
    under_in: int
    under_out: int
    sign: int


@dataclass(frozen=True)
class KnotDiagram:
    crossings: tuple
    arc_count: int
    name: str = None

    def __post_init__(self):
        m = len(self.crossings)
        if m == 0:
            if self.arc_count != 1:
                raise KnotFormatError("0-crossing diagram must have exactly one arc")
            return
        if self.arc_count != m:
            raise KnotFormatError(f"{m} crossings require {m} arcs, got {self.arc_count}")
        ins = sorted(c.under_in for c in self.crossings)
        outs = sorted(c.under_out for c in self.crossings)
        expected = list(range(1, m + 1))
        if ins != expected or outs != expected:
            raise KnotFormatError("each arc must begin and end at exactly one under-passage")
        for c in self.crossings:
            if c.sign not in (-1, 1):
                raise KnotFormatError(f"bad crossing sign {c.sign}")
            for arc in (c.over, c.under_in, c.under_out):
                if not 1 <= arc <= self.arc_count:
                    raise KnotFormatError(f"arc id {arc} out of range")

    def mirror(self):
        """Same diagram with all crossing signs flipped."""
        return KnotDiagram(
            tuple(Crossing(c.over, c.under_in, c.under_out, -c.sign)
                  for c in self.crossings),
            self.arc_count,
            name=f"{self.name}*" if self.name else None,
        )


UNKNOT = KnotDiagram((), 1, name="unknot")


@dataclass(frozen=True)
class BraidWord:
    """Braid on `strands` strands; letter k means generator sigma_|k| with sign(k)."""

    strands: int
    letters: tuple

    def __post_init__(self):
        if self.strands < 1:
            raise KnotFormatError("strand count must be >= 1")
        for k in self.letters:
            if k == 0:
                raise KnotFormatError("0 is not a braid generator")
            if abs(k) > self.strands - 1:
                raise KnotFormatError(
                    f"generator index {abs(k)} out of range for {self.strands} strands")

    def permutation(self):
        """Closure permutation: perm[i] is where the strand starting at position i+1 ends."""
        perm = list(range(self.strands))
        for k in self.letters:
            i = abs(k) - 1
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
        # perm currently maps final positions to initial strands; invert
        out = [0] * self.strands
        for final_pos, start in enumerate(perm):
            out[start] = final_pos
        return out

    def closure_is_knot(self):
        perm = self.permutation()
        seen = {0}
        x = perm[0]
        while x not in seen:
            seen.add(x)
            x = perm[x]
        return len(seen) == self.strands

    def text(self):
        return f"{self.strands}: " + " ".join(str(k) for k in self.letters)


_GAUSS_TOKEN = re.compile(r"^([OU])(\d+)([+-])$")


def _diagram_from_tokens(tokens, name=None):
    """Build a diagram from a cyclic (kind, label, sign) token sequence.

    Arcs are the maximal runs strictly between consecutive U-tokens; arc j
    begins immediately after the j-th U-token in reading order.
    """
    m = len(tokens) // 2
    u_positions = [p for p, (kind, _, _) in enumerate(tokens) if kind == "U"]
    if len(u_positions) != m:
        raise KnotFormatError("token stream must contain one U per crossing")
    # which arc owns the token at position p: the run started by the latest
    # U strictly before p (wrapping to the last U for a prefix position)
    def arc_at(p):
        lo = 0
        for j, up in enumerate(u_positions):
            if up < p:
                lo = j + 1
        return lo if lo >= 1 else m

    under_in = {}
    under_out = {}
    over = {}
    signs = {}
    for j, up in enumerate(u_positions, start=1):
        _, label, sign = tokens[up]
        under_in[label] = j - 1 if j > 1 else m
        under_out[label] = j
        signs[label] = sign
    for p, (kind, label, sign) in enumerate(tokens):
        if kind == "O":
            over[label] = arc_at(p)
            if signs.get(label, sign) != sign:
                raise KnotFormatError(f"crossing {label}: O/U signs disagree")
            signs[label] = sign
    if set(over) != set(under_out):
        raise KnotFormatError("every crossing needs exactly one O and one U token")
    crossings = tuple(
        Crossing(over[label], under_in[label], under_out[label], signs[label])
        for label in sorted(over)
    )
    return KnotDiagram(crossings, m, name=name)


def parse_gauss(text, name=None):
    """Parse a signed Gauss code, tokens O<k><s> / U<k><s>.

    The literal token ``UNKNOT`` denotes the 0-crossing round unknot.
    """
    raw = text.split()
    if not raw:
        raise KnotFormatError("empty Gauss code")
    if raw == ["UNKNOT"]:
        return KnotDiagram((), 1, name=name or "unknot")
    tokens = []
    for tok in raw:
        match = _GAUSS_TOKEN.match(tok)
        if not match:
            raise KnotFormatError(f"bad Gauss token {tok!r}")
        kind, label, sign = match.group(1), int(match.group(2)), match.group(3)
        tokens.append((kind, label, 1 if sign == "+" else -1))
    counts = {}
    for kind, label, _ in tokens:
        counts.setdefault(label, []).append(kind)
    for label, kinds in counts.items():
        if sorted(kinds) != ["O", "U"]:
            raise KnotFormatError(
                f"crossing label {label} appears {len(kinds)} times "
                f"({'/'.join(kinds)}); need exactly one O and one U")
    labels = sorted(counts)
    if labels != list(range(1, len(labels) + 1)):
        raise KnotFormatError("crossing labels must be exactly 1..m")
    return _diagram_from_tokens(tokens, name=name)


def parse_braid(text):
    """Parse ``<n>: <letters>``, e.g. ``2: 1 1 1`` for the trefoil braid."""
    if ":" not in text:
        raise KnotFormatError("braid text must look like '<n>: <letters>'")
    head, _, tail = text.partition(":")
    try:
        n = int(head.strip())
    except ValueError:
        raise KnotFormatError(f"bad strand count {head.strip()!r}") from None
    letters = []
    for tok in tail.split():
        try:
            letters.append(int(tok))
        except ValueError:
            raise KnotFormatError(f"bad braid letter {tok!r}") from None
    return BraidWord(n, tuple(letters))


def torus_braid(p, q):
    """The p-strand braid (s1 s2 ... s_{p-1})^q whose closure is the (p,q) torus link."""
    if p < 2 or q < 1:
        raise ValueError("need p >= 2 and q >= 1")
    return BraidWord(p, tuple(list(range(1, p)) * q))


def braid_to_diagram(braid, name=None):
    """Diagram of the braid closure, one crossing per letter.

    Positive letters give sign +1 crossings (the lower-indexed strand passes
    over).  Arc numbering follows the under-strand traversal rule shared
    with parse_gauss, so coloring instances are reproducible.
    """
    if not braid.closure_is_knot():
        raise KnotFormatError("braid closure is a multi-component link, not a knot")
    if not braid.letters:
        return KnotDiagram((), 1, name=name or "unknot")
    tokens = []
    pos, t = 0, 0  # strand position (0-based) and letter index of traversal start
    start = (0, 0)
    while True:
        letter = braid.letters[t]
        i = abs(letter) - 1
        if pos == i or pos == i + 1:
            if letter > 0:
                kind = "O" if pos == i else "U"
            else:
                kind = "O" if pos == i + 1 else "U"
            tokens.append((kind, t + 1, 1 if letter > 0 else -1))
            pos = i + 1 if pos == i else i
        t += 1
        if t == len(braid.letters):
            t = 0  # closure: bottom of position pos joins top of position pos
        if (pos, t) == start:
            break
    # crossing labels must be 1..m in some order; they already are (one per letter)
    return _diagram_from_tokens(tokens, name=name)


def insert_r2(braid, i, pos):
    """Insert the cancelling pair sigma_i sigma_i^-1 at letter position pos."""
    if not 1 <= i <= braid.strands - 1:
        raise ValueError(f"generator index {i} out of range")
    if not 0 <= pos <= len(braid.letters):
        raise ValueError(f"insert position {pos} out of range")
    letters = braid.letters[:pos] + (i, -i) + braid.letters[pos:]
    return BraidWord(braid.strands, letters)


def markov_stabilize(braid):
    """Markov stabilization: one more strand, append sigma_n positively."""
    return BraidWord(braid.strands + 1, braid.letters + (braid.strands,))


# ---------------------------------------------------------------------------
# Dowker-Thistlethwaite codes


def parse_dt(text, name=None):
    """Parse a standard DT code (space-separated even integers).

    Passages 1..2m along the knot; entry j pairs odd passage 2j-1 with even
    passage |entry_j|; a positive entry means the odd passage goes over.
    Crossing signs are reconstructed from a planar embedding of the shadow;
    codes with no such embedding are rejected.  The absolute signs carry the
    usual mirror ambiguity.
    """
    try:
        entries = [int(tok) for tok in text.split()]
    except ValueError:
        raise KnotFormatError(f"bad DT entry in {text!r}") from None
    if not entries:
        raise KnotFormatError("empty DT code")
    m = len(entries)
    for e in entries:
        if e % 2 != 0 or e == 0:
            raise KnotFormatError(f"DT entries must be nonzero even integers, got {e}")
    if sorted(abs(e) for e in entries) != list(range(2, 2 * m + 1, 2)):
        raise KnotFormatError("DT entries must be a signed permutation of 2..2m")

    crossing_of = {}   # passage -> crossing id 1..m
    over_passage = {}  # crossing -> the passage on the over strand
    for j, e in enumerate(entries, start=1):
        odd, even = 2 * j - 1, abs(e)
        crossing_of[odd] = j
        crossing_of[even] = j
        over_passage[j] = odd if e > 0 else even

    signs = _dt_signs(m, crossing_of, over_passage)
    tokens = []
    for t in range(1, 2 * m + 1):
        k = crossing_of[t]
        kind = "O" if over_passage[k] == t else "U"
        tokens.append((kind, k, signs[k]))
    return _diagram_from_tokens(tokens, name=name)


def _dt_signs(m, crossing_of, over_passage):
    """Crossing signs via a planar embedding of the 4-valent shadow.

    Each crossing becomes a wheel gadget (hub + 4-cycle rim) whose unique
    embedding fixes the cyclic order of the four strand ends up to
    reflection; the reflection read off the hub rotation is the sign.
    Rim roles: 0 = under-in, 1 = over-in, 2 = under-out, 3 = over-out.
    """
    import networkx as nx

    g = nx.Graph()
    for k in range(1, m + 1):
        hub = ("h", k)
        rim = [("r", k, i) for i in range(4)]
        for i in range(4):
            g.add_edge(hub, rim[i])
            g.add_edge(rim[i], rim[(i + 1) % 4])

    def end(passage, incoming):
        k = crossing_of[passage]
        if over_passage[k] == passage:
            return ("r", k, 1 if incoming else 3)
        return ("r", k, 0 if incoming else 2)

    for t in range(1, 2 * m + 1):
        nxt = t + 1 if t < 2 * m else 1
        mid = ("s", t)
        g.add_edge(end(t, incoming=False), mid)
        g.add_edge(mid, end(nxt, incoming=True))

    planar, embedding = nx.check_planarity(g)
    if not planar:
        raise NonRealizableError("DT code is not realizable as a planar knot diagram")

    signs = {}
    for k in range(1, m + 1):
        order = [node[2] for node in embedding.neighbors_cw_order(("h", k))]
        at = order.index(0)
        rotated = order[at:] + order[:at]
        if rotated == [0, 1, 2, 3]:
            signs[k] = 1
        elif rotated == [0, 3, 2, 1]:
            signs[k] = -1
        else:
            raise NonRealizableError(
                f"crossing {k}: strands do not alternate in the embedding")
    return signs


def load_dt_csv(path):
    """Ingest a `name,dt_code` CSV table; returns (diagrams, rejected rows)."""
    diagrams, rejected = [], []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or \
                not {"name", "dt_code"} <= set(reader.fieldnames):
            raise KnotFormatError("CSV must have 'name' and 'dt_code' columns")
        for row in reader:
            try:
                diagrams.append(parse_dt(row["dt_code"], name=row["name"]))
            except KnotFormatError as exc:
                rejected.append((row["name"], str(exc)))
    return diagrams, rejected
