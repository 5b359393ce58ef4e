"""Coloring engines: brute force (the oracle), backtracking, braid
propagation, and the CNF/SAT route with symmetry breaking.

All engines count or decide NONTRIVIAL colorings: assignments of quandle
elements to arcs satisfying, at every crossing,
    sign +1:  f(under_out) = f(over) * f(under_in)
    sign -1:  f(under_in)  = f(over) * f(under_out)
and using at least two distinct colors.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from .sat import CnfInstance, sat_decide


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class Budget:
    """Search budgets; defaults are desk scale."""

    max_assignments: int = 10 ** 8
    max_nodes: int = None
    max_seconds: float = None
    _nodes: int = field(default=0, repr=False)
    _deadline: float = field(default=None, repr=False)

    def start(self):
        self._nodes = 0
        self._deadline = (time.monotonic() + self.max_seconds
                          if self.max_seconds else None)
        return self

    def charge_assignments(self, n):
        if self.max_assignments is not None and n > self.max_assignments:
            raise BudgetExceeded(f"{n} assignments exceed budget {self.max_assignments}")

    def tick(self):
        self._nodes += 1
        if self.max_nodes is not None and self._nodes > self.max_nodes:
            raise BudgetExceeded(f"node budget {self.max_nodes} exceeded")
        if self._deadline is not None and self._nodes % 256 == 0 \
                and time.monotonic() > self._deadline:
            raise BudgetExceeded(f"time budget {self.max_seconds}s exceeded")


@dataclass(frozen=True)
class Coloring:
    """Arc -> color assignment."""

    assignment: dict

    @property
    def is_nontrivial(self):
        return len(set(self.assignment.values())) >= 2

    def satisfies(self, diagram, quandle):
        f = self.assignment
        return all(
            _holds(crossing, f, quandle) for crossing in diagram.crossings)


def _constraint_arcs(crossing):
    """(over, j, k) with the sign-directed reading f(k) = f(over)*f(j)."""
    if crossing.sign == 1:
        return crossing.over, crossing.under_in, crossing.under_out
    return crossing.over, crossing.under_out, crossing.under_in


def _holds(crossing, f, quandle):
    over, j, k = _constraint_arcs(crossing)
    return f[k] == quandle.op(f[over], f[j])


def color_brute(diagram, quandle, mode="count", budget=None):
    """Exhaustive scan of all q^arcs assignments; the ground-truth oracle."""
    budget = (budget or Budget()).start()
    q, arcs = quandle.size, diagram.arc_count
    budget.charge_assignments(q ** arcs)
    constraints = [_constraint_arcs(c) for c in diagram.crossings]
    count = 0
    for colors in itertools.product(range(1, q + 1), repeat=arcs):
        f = (None,) + colors  # 1-based arc indexing
        if all(f[k] == quandle.op(f[o], f[j]) for o, j, k in constraints):
            if len(set(colors)) >= 2:
                if mode == "decide":
                    return True
                count += 1
    return count if mode == "count" else False


def _plan_order(diagram):
    """Static assignment order: propagate under-strand values when forced.

    Returns (steps, checks) where each step is either ("branch", arc) or
    ("forced", arc, crossing, role) with role "j"/"k" naming the unknown
    position in f(k) = f(over)*f(j), and checks[step_index] lists crossings
    fully assigned at that point.
    """
    known = set()
    steps = []
    remaining = set(range(1, diagram.arc_count + 1))
    crossings = [(_constraint_arcs(c), c) for c in diagram.crossings]
    while remaining:
        forced = None
        for (over, j, k), crossing in crossings:
            arcs = (over, j, k)
            unknown = [a for a in set(arcs) if a not in known]
            if len(unknown) != 1:
                continue
            arc = unknown[0]
            if arc == k and over in known and j in known:
                forced = ("forced", arc, crossing, "k")
            elif arc == j and over in known and k in known:
                forced = ("forced", arc, crossing, "j")
            if forced:
                break
        if forced is None:
            arc = min(remaining)
            steps.append(("branch", arc))
        else:
            arc = forced[1]
            steps.append(forced)
        known.add(arc)
        remaining.discard(arc)
    checks = [[] for _ in steps]
    position = {step[1]: i for i, step in enumerate(steps)}
    for (over, j, k), crossing in crossings:
        checks[max(position[a] for a in (over, j, k))].append((over, j, k))
    return steps, checks


def color_backtrack(diagram, quandle, mode="count", budget=None, pin_first=None):
    """Propagating backtracking search; enumerates all solutions in count mode.

    pin_first, if given, fixes arc 1 to that color (symmetry-broken counting
    for connected quandles).
    """
    budget = (budget or Budget(max_assignments=None)).start()
    q = quandle.size
    if diagram.arc_count == 1 and not diagram.crossings:
        return 0 if mode == "count" else False
    steps, checks = _plan_order(diagram)
    f = {}
    state = {"count": 0}

    def ok_here(i):
        return all(f[k] == quandle.op(f[o], f[j]) for o, j, k in checks[i])

    def descend(i):
        if i == len(steps):
            if len(set(f.values())) >= 2:
                state["count"] += 1
                return mode == "decide"
            return False
        budget.tick()
        step = steps[i]
        if step[0] == "forced":
            _, arc, crossing, role = step
            over, j, k = _constraint_arcs(crossing)
            if role == "k":
                f[arc] = quandle.op(f[over], f[j])
            else:
                f[arc] = quandle.left_divide(f[over], f[k])
            if ok_here(i) and descend(i + 1):
                return True
            del f[arc]
            return False
        _, arc = step
        choices = (pin_first,) if (arc == 1 and pin_first) else range(1, q + 1)
        for c in choices:
            f[arc] = c
            if ok_here(i) and descend(i + 1):
                return True
            del f[arc]
        f.pop(arc, None)
        return False

    found = descend(0)
    return state["count"] if mode == "count" else found


def all_colorings(diagram, quandle, budget=None, pin_first=None):
    """Every nontrivial coloring, via the backtracking engine."""
    budget = (budget or Budget(max_assignments=None)).start()
    q = quandle.size
    if diagram.arc_count == 1 and not diagram.crossings:
        return []
    steps, checks = _plan_order(diagram)
    f = {}
    out = []

    def descend(i):
        if i == len(steps):
            if len(set(f.values())) >= 2:
                out.append(Coloring(dict(f)))
            return
        budget.tick()
        step = steps[i]
        if step[0] == "forced":
            _, arc, crossing, role = step
            over, j, k = _constraint_arcs(crossing)
            if role == "k":
                f[arc] = quandle.op(f[over], f[j])
            else:
                f[arc] = quandle.left_divide(f[over], f[k])
            if all(f[kk] == quandle.op(f[o], f[j2]) for o, j2, kk in checks[i]):
                descend(i + 1)
            del f[arc]
            return
        _, arc = step
        choices = (pin_first,) if (arc == 1 and pin_first) else range(1, q + 1)
        for c in choices:
            f[arc] = c
            if all(f[kk] == quandle.op(f[o], f[j2]) for o, j2, kk in checks[i]):
                descend(i + 1)
            del f[arc]

    descend(0)
    return out


def color_braid(braid, quandle, mode="count", budget=None):
    """Strand propagation: enumerate q^n initial tuples, push through letters,
    accept when the final tuple closes up; counts match the diagram engines
    on braid_to_diagram."""
    from .knotio import KnotFormatError

    if not braid.closure_is_knot():
        raise KnotFormatError("braid closure is a multi-component link, not a knot")
    budget = (budget or Budget()).start()
    q, n = quandle.size, braid.strands
    budget.charge_assignments(q ** n)
    count = 0
    for initial in itertools.product(range(1, q + 1), repeat=n):
        strand = list(initial)
        used = set(initial)
        for letter in braid.letters:
            i = abs(letter) - 1
            a, b = strand[i], strand[i + 1]
            if letter > 0:
                strand[i], strand[i + 1] = quandle.op(a, b), a
            else:
                strand[i], strand[i + 1] = b, quandle.left_divide(b, a)
            used.add(strand[i])
            used.add(strand[i + 1])
        if tuple(strand) == initial and len(used) >= 2:
            if mode == "decide":
                return True
            count += 1
    return count if mode == "count" else False


# ---------------------------------------------------------------------------
# CNF encoding


def cnf_var(arc, color, q):
    """Variable numbering v(i,c) = (i-1)*q + c."""
    return (arc - 1) * q + color


def encode_cnf(diagram, quandle, symmetry_break=True, nontrivial=True):
    """CNF instance in the fixed clause order:

    (a) per arc: at-least-one, then at-most-one pairs;
    (b) nontriviality clauses, one per color;
    (c) per crossing, row-major over (c,d): the 3-literal crossing clause;
    (d) the symmetry-breaking unit v(1,1).
    """
    q, n = quandle.size, diagram.arc_count
    if q < 2:
        raise ValueError("need at least two colors to encode")
    clauses = []
    for i in range(1, n + 1):
        clauses.append(tuple(cnf_var(i, c, q) for c in range(1, q + 1)))
        for c in range(1, q + 1):
            for d in range(c + 1, q + 1):
                clauses.append((-cnf_var(i, c, q), -cnf_var(i, d, q)))
    if nontrivial:
        for c in range(1, q + 1):
            clauses.append(tuple(-cnf_var(i, c, q) for i in range(1, n + 1)))
    for crossing in diagram.crossings:
        over, j, k = _constraint_arcs(crossing)
        for c in range(1, q + 1):
            for d in range(1, q + 1):
                clauses.append((
                    -cnf_var(over, c, q),
                    -cnf_var(j, d, q),
                    cnf_var(k, quandle.op(c, d), q),
                ))
    if symmetry_break:
        clauses.append((cnf_var(1, 1, q),))
    return CnfInstance(n * q, tuple(clauses))


def decode_model(model, diagram, quandle):
    """Read a coloring out of a SAT model; exactly one color must hold per arc."""
    q = quandle.size
    assignment = {}
    for arc in range(1, diagram.arc_count + 1):
        hot = [c for c in range(1, q + 1) if model[cnf_var(arc, c, q)]]
        assert len(hot) == 1, f"arc {arc} has {len(hot)} colors in the model"
        assignment[arc] = hot[0]
    return Coloring(assignment)


def colorable(diagram, quandle, return_coloring=False):
    """Does a nontrivial coloring exist?  SAT route.

    Symmetry breaking (pin arc 1 to color 1) is applied only for connected
    quandles, where homogeneity makes it lossless.
    """
    if quandle.size < 2:
        return (False, None) if return_coloring else False
    instance = encode_cnf(diagram, quandle,
                          symmetry_break=quandle.is_connected, nontrivial=True)
    model = sat_decide(instance)
    if model is None:
        return (False, None) if return_coloring else False
    coloring = decode_model(model, diagram, quandle)
    assert coloring.is_nontrivial and coloring.satisfies(diagram, quandle)
    if return_coloring:
        return True, coloring
    return True


def count_colorings(diagram, quandle, budget=None):
    """col_Q: the number of nontrivial colorings.

    Connected quandles are counted with arc 1 pinned to color 1 and the
    result multiplied by q; others by full enumeration.
    """
    if quandle.is_connected:
        pinned = color_backtrack(diagram, quandle, mode="count",
                                 budget=budget, pin_first=1)
        return pinned * quandle.size
    return color_backtrack(diagram, quandle, mode="count", budget=budget)
