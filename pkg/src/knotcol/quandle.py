"""Finite quandles as Cayley tables.

A quandle is a set with a binary operation * that is idempotent (a*a=a),
has unique left division (each row of the table is a permutation), and is
left self-distributive (a*(b*c) = (a*b)*(a*c)).  Elements are 1-based
throughout so they can double as color indices in CNF variable numbering.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field


class QuandleAxiomError(ValueError):
    """A candidate Cayley table violates one of the three quandle axioms."""


class NotIdempotent(QuandleAxiomError):
    def __init__(self, a):
        self.a = a
        super().__init__(f"not idempotent: {a}*{a} != {a}")


class NotLeftInvertible(QuandleAxiomError):
    def __init__(self, a, b, b2):
        self.a, self.b, self.b2 = a, b, b2
        super().__init__(f"row {a} is not a permutation: {a}*{b} = {a}*{b2}")


class NotDistributive(QuandleAxiomError):
    def __init__(self, a, b, c):
        self.a, self.b, self.c = a, b, c
        super().__init__(f"not left distributive at ({a},{b},{c})")


class Quandle:
    """Immutable finite quandle over elements 1..size.

    ``table[a-1][b-1]`` holds a*b.  Construct through :func:`verify_axioms`
    or one of the family constructors; the constructor itself trusts its
    input (it is re-verified by verify_axioms on every public path).
    """

    __slots__ = ("size", "table", "name", "tags", "_ldiv", "_connected")

    def __init__(self, table, name=None, tags=()):
        self.size = len(table)
        self.table = tuple(tuple(row) for row in table)
        self.name = name
        self.tags = set(tags)
        # inverse rows: _ldiv[a-1][b-1] = the unique c with a*c = b
        ldiv = [[0] * self.size for _ in range(self.size)]
        for a0, row in enumerate(self.table):
            for c0, b in enumerate(row):
                ldiv[a0][b - 1] = c0 + 1
        self._ldiv = tuple(tuple(r) for r in ldiv)
        self._connected = None

    def op(self, a, b):
        return self.table[a - 1][b - 1]

    def left_divide(self, a, b):
        """The unique c with a*c = b."""
        return self._ldiv[a - 1][b - 1]

    def elements(self):
        return range(1, self.size + 1)

    @property
    def is_connected(self):
        """True iff the group generated by left translations is transitive."""
        if self._connected is None:
            orbit = {1}
            frontier = [1]
            while frontier:
                x = frontier.pop()
                for a in self.elements():
                    for y in (self.op(a, x), self.left_divide(a, x)):
                        if y not in orbit:
                            orbit.add(y)
                            frontier.append(y)
            self._connected = len(orbit) == self.size
            if self._connected:
                self.tags.add("connected")
        return self._connected

    @property
    def is_involutory(self):
        ok = all(
            self.op(a, self.op(a, b)) == b
            for a in self.elements()
            for b in self.elements()
        )
        if ok:
            self.tags.add("involutory")
        return ok

    def __eq__(self, other):
        return isinstance(other, Quandle) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        label = self.name or f"quandle{self.size}"
        return f"<Quandle {label} size={self.size}>"


def verify_axioms(table, name=None, tags=()):
    """Check the three quandle axioms and return a Quandle.

    Raises NotIdempotent / NotLeftInvertible / NotDistributive with the
    first violating witness found (scanned in ascending element order).
    """
    q = len(table)
    if q == 0:
        raise ValueError("empty table")
    for a0, row in enumerate(table):
        if len(row) != q:
            raise ValueError(f"row {a0 + 1} has length {len(row)}, expected {q}")
        for v in row:
            if not (1 <= v <= q):
                raise ValueError(f"entry {v} out of range 1..{q}")
    for a in range(1, q + 1):
        if table[a - 1][a - 1] != a:
            raise NotIdempotent(a)
    for a in range(1, q + 1):
        seen = {}
        for b in range(1, q + 1):
            v = table[a - 1][b - 1]
            if v in seen:
                raise NotLeftInvertible(a, seen[v], b)
            seen[v] = b
    # left self-distributivity as a row-composition identity:
    # row_a o row_b == row_{a*b} o row_a, compared column-wise
    rows = [tuple(v - 1 for v in row) for row in table]
    for a0, row_a in enumerate(rows):
        composed = row_a.__getitem__
        for b0, row_b in enumerate(rows):
            lhs = tuple(map(composed, row_b))
            rhs = tuple(map(rows[row_a[b0]].__getitem__, row_a))
            if lhs != rhs:
                c0 = next(i for i in range(q) if lhs[i] != rhs[i])
                raise NotDistributive(a0 + 1, b0 + 1, c0 + 1)
    return Quandle(table, name=name, tags=tags)


def dihedral(n):
    """Dihedral quandle on Z_n with a*b = 2a - b mod n (Fox n-coloring)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    table = [
        [((2 * a - b) % n) + 1 for b in range(n)]
        for a in range(n)
    ]
    return verify_axioms(table, name=f"dihedral({n})", tags={"affine", "involutory"})


def affine(n, t):
    """Affine quandle on Z_n with a*b = (1-t)a + t*b mod n.

    Requires gcd(t, n) = 1 so that x -> t*x is an automorphism.  Connected
    iff gcd(1-t, n) = 1 (x -> x - t*x must be onto).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if math.gcd(t, n) != 1:
        raise ValueError(f"gcd({t}, {n}) != 1: multiplier is not an automorphism")
    table = [
        [(((1 - t) * a + t * b) % n) + 1 for b in range(n)]
        for a in range(n)
    ]
    tags = {"affine"}
    if math.gcd(1 - t, n) == 1:
        tags.add("connected")
    return verify_axioms(table, name=f"affine({n},{t})", tags=tags)


def _verify_group(table):
    """Validate a finite group Cayley table; return (identity, inverse map)."""
    n = len(table)
    for row in table:
        if len(row) != n or any(not 1 <= v <= n for v in row):
            raise ValueError("malformed group table")
    identity = None
    for e in range(1, n + 1):
        if all(table[e - 1][x - 1] == x for x in range(1, n + 1)) and \
                all(table[x - 1][e - 1] == x for x in range(1, n + 1)):
            identity = e
            break
    if identity is None:
        raise ValueError("group table has no identity element")
    inv = {}
    for x in range(1, n + 1):
        for y in range(1, n + 1):
            if table[x - 1][y - 1] == identity:
                inv[x] = y
                break
        else:
            raise ValueError(f"element {x} has no inverse")
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            for c in range(1, n + 1):
                if table[table[a - 1][b - 1] - 1][c - 1] != \
                        table[a - 1][table[b - 1][c - 1] - 1]:
                    raise ValueError(f"group table not associative at ({a},{b},{c})")
    return identity, inv


def conjugation(group_table, class_representative, name=None):
    """Conjugation quandle a*b = a b a^-1 on the conjugacy class of a representative."""
    n = len(group_table)
    if not 1 <= class_representative <= n:
        raise ValueError("class representative out of range")
    cls, inv = _conjugacy_class(group_table, class_representative)

    def mul(x, y):
        return group_table[x - 1][y - 1]

    members = sorted(cls)
    index = {x: i + 1 for i, x in enumerate(members)}
    table = [
        [index[mul(mul(a, b), inv[a])] for b in members]
        for a in members
    ]
    return verify_axioms(table, name=name or f"conj(|G|={n},rep={class_representative})")


# ---------------------------------------------------------------------------
# Congruences, subquandles, factors


@dataclass(frozen=True)
class Congruence:
    """Operation-compatible partition of 1..q, stored canonically.

    ``leader[x-1]`` is the least element of the block containing x.
    """

    leader: tuple

    @property
    def size(self):
        return len(self.leader)

    def same(self, a, b):
        return self.leader[a - 1] == self.leader[b - 1]

    def blocks(self):
        by_leader = {}
        for x in range(1, self.size + 1):
            by_leader.setdefault(self.leader[x - 1], []).append(x)
        return [tuple(by_leader[k]) for k in sorted(by_leader)]

    @property
    def is_diagonal(self):
        return all(self.leader[x] == x + 1 for x in range(self.size))

    @property
    def is_total(self):
        return all(l == 1 for l in self.leader)

    def is_compatible(self, quandle):
        for a in quandle.elements():
            for a2 in quandle.elements():
                if not self.same(a, a2):
                    continue
                for b in quandle.elements():
                    for b2 in quandle.elements():
                        if self.same(b, b2) and not self.same(
                                quandle.op(a, b), quandle.op(a2, b2)):
                            return False
        return True


def _closure(quandle, pairs, base=None):
    """Smallest congruence containing ``base`` (or the diagonal) and ``pairs``."""
    q = quandle.size
    parent = list(range(q + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    worklist = list(pairs)
    if base is not None:
        for x in range(1, q + 1):
            worklist.append((x, base.leader[x - 1]))
    while worklist:
        a, b = worklist.pop()
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        parent[max(ra, rb)] = min(ra, rb)
        for z in quandle.elements():
            worklist.append((quandle.op(z, a), quandle.op(z, b)))
            worklist.append((quandle.op(a, z), quandle.op(b, z)))
    return Congruence(tuple(find(x) for x in range(1, q + 1)))


def principal_congruence(quandle, a, b):
    """Smallest congruence identifying a and b."""
    return _closure(quandle, [(a, b)])


def congruences(quandle, max_size=64):
    """All congruences, as joins of principal congruences from the diagonal up."""
    if quandle.size > max_size:
        raise ValueError(
            f"quandle size {quandle.size} exceeds congruence-enumeration guard {max_size}")
    diagonal = Congruence(tuple(quandle.elements()))
    found = {diagonal}
    frontier = [diagonal]
    while frontier:
        theta = frontier.pop()
        for a in quandle.elements():
            for b in range(a + 1, quandle.size + 1):
                if theta.same(a, b):
                    continue
                joined = _closure(quandle, [(a, b)], base=theta)
                if joined not in found:
                    found.add(joined)
                    frontier.append(joined)
    return found


def is_simple(quandle, max_size=64):
    """True iff every principal congruence over a non-equal pair is total.

    The 1-element quandle is not simple (no proper nontrivial factor exists
    but the convention requires size >= 2); the 2-element quandle passes the
    criterion and is reported simple.
    """
    if quandle.size > max_size:
        raise ValueError(
            f"quandle size {quandle.size} exceeds simplicity guard {max_size}")
    if quandle.size < 2:
        return False
    for a in quandle.elements():
        for b in range(a + 1, quandle.size + 1):
            if not principal_congruence(quandle, a, b).is_total:
                return False
    quandle.tags.add("simple")
    return True


def subquandle_generated(quandle, generators):
    """Closure of a nonempty subset under * and left division.

    Returns (sub, embedding) where embedding[i] is the parent element
    corresponding to sub element i+1.
    """
    gens = set(generators)
    if not gens:
        raise ValueError("generator set must be nonempty")
    closed = set(gens)
    frontier = list(gens)
    while frontier:
        x = frontier.pop()
        for y in list(closed):
            for z in (quandle.op(x, y), quandle.op(y, x),
                      quandle.left_divide(x, y), quandle.left_divide(y, x)):
                if z not in closed:
                    closed.add(z)
                    frontier.append(z)
    members = sorted(closed)
    index = {x: i + 1 for i, x in enumerate(members)}
    table = [[index[quandle.op(a, b)] for b in members] for a in members]
    sub = verify_axioms(table, name=f"{quandle.name or 'Q'}|sub{len(members)}")
    return sub, tuple(members)


def factor(quandle, congruence):
    """Quotient quandle on congruence blocks.

    Returns (quot, projection) where projection[x-1] is the quotient element
    holding parent element x.  The projection is asserted to be a
    homomorphism.
    """
    if not congruence.is_compatible(quandle):
        raise ValueError("partition is not a congruence of this quandle")
    leaders = sorted(set(congruence.leader))
    index = {l: i + 1 for i, l in enumerate(leaders)}
    proj = tuple(index[congruence.leader[x - 1]] for x in quandle.elements())
    table = [[0] * len(leaders) for _ in leaders]
    for a in leaders:
        for b in leaders:
            table[index[a] - 1][index[b] - 1] = proj[quandle.op(a, b) - 1]
    quot = verify_axioms(table, name=f"{quandle.name or 'Q'}/~{len(leaders)}")
    for a in quandle.elements():
        for b in quandle.elements():
            assert proj[quandle.op(a, b) - 1] == quot.op(proj[a - 1], proj[b - 1])
    return quot, proj


# ---------------------------------------------------------------------------
# Quandle libraries


def canonical_table(quandle, exact_limit=8):
    """Canonical form for duplicate rejection.

    For size <= exact_limit, the lexicographically least flattened table over
    all relabelings (exact isomorph rejection); above that, the identity
    relabeling (duplicates-by-relabeling may then coexist).
    """
    q = quandle.size
    flat = tuple(v for row in quandle.table for v in row)
    if q > exact_limit:
        return flat
    best = flat
    for perm in itertools.permutations(range(1, q + 1)):
        relabeled = tuple(
            perm[quandle.table[a][b] - 1]
            for a in _perm_order(perm)
            for b in _perm_order(perm)
        )
        if relabeled < best:
            best = relabeled
    return best


def _perm_order(perm):
    # ordering of old indices so that new element i comes first
    inv = sorted(range(len(perm)), key=lambda i: perm[i])
    return inv


@dataclass
class LibrarySpec:
    """Generation recipe for a quandle library.

    dihedral_prime_max: include dihedral(p) for odd primes p <= this bound.
    affine_max: include every connected affine(n, t) with n <= this bound.
    groups: (name, cayley_table) pairs; one conjugation quandle per
    conjugacy class with more than one element.
    """

    dihedral_prime_max: int = 0
    affine_max: int = 0
    groups: list = field(default_factory=list)


def _odd_primes_upto(n):
    return [p for p in range(3, n + 1)
            if all(p % d for d in range(2, int(p ** 0.5) + 1))]


def symmetric_group_table(n):
    """Cayley table of S_n with elements numbered by sorted permutation tuples."""
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i + 1 for i, p in enumerate(perms)}
    table = [
        [index[tuple(p[q[i]] for i in range(n))] for q in perms]
        for p in perms
    ]
    return table


BUILTIN_GROUPS = {
    "s3": lambda: symmetric_group_table(3),
    "s4": lambda: symmetric_group_table(4),
}


def library_generate(spec):
    """Build a verified, deduplicated, stably ordered quandle library."""
    raw = []
    for p in _odd_primes_upto(spec.dihedral_prime_max):
        raw.append(dihedral(p))
    for n in range(2, spec.affine_max + 1):
        for t in range(2, n):
            if math.gcd(t, n) == 1 and math.gcd(1 - t, n) == 1:
                raw.append(affine(n, t))
    for gname, table in spec.groups:
        _verify_group(table)
        seen_members = set()
        for rep in range(1, len(table) + 1):
            if rep in seen_members:
                continue
            quandle = conjugation(table, rep, name=f"conj({gname},{rep})")
            # recover the class members to avoid re-listing the same class
            cls, _ = _conjugacy_class(table, rep)
            seen_members |= cls
            if quandle.size >= 2:
                raw.append(quandle)
    deduped = {}
    for quandle in raw:
        key = canonical_table(quandle)
        deduped.setdefault(key, quandle)
    ordered = sorted(deduped.values(),
                     key=lambda Q: (Q.size, Q.table))
    return ordered


def _conjugacy_class(group_table, rep):
    _, inv = _verify_group(group_table)

    def mul(x, y):
        return group_table[x - 1][y - 1]

    cls = set()
    frontier = [rep]
    while frontier:
        x = frontier.pop()
        if x in cls:
            continue
        cls.add(x)
        for g in range(1, len(group_table) + 1):
            frontier.append(mul(mul(g, x), inv[g]))
    return cls, inv


def library_save(quandles, path):
    """Write the textual library format: `quandle <name> <q>` + q table rows."""
    with open(path, "w") as fh:
        fh.write("# knotcol quandle library\n")
        for quandle in quandles:
            name = (quandle.name or "anon").replace(" ", "_")
            fh.write(f"\nquandle {name} {quandle.size}\n")
            for row in quandle.table:
                fh.write(" ".join(str(v) for v in row) + "\n")


def library_load_report(path):
    """Load a library file; returns (quandles, rejected) without aborting on bad records."""
    quandles, rejected = [], []
    with open(path) as fh:
        lines = [ln.strip() for ln in fh]
    i = 0
    while i < len(lines):
        line = lines[i]
        if not line or line.startswith("#"):
            i += 1
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] != "quandle":
            raise ValueError(f"malformed library header at line {i + 1}: {line!r}")
        name, q = parts[1], int(parts[2])
        rows = []
        for j in range(q):
            if i + 1 + j >= len(lines):
                raise ValueError(f"truncated record for quandle {name}")
            rows.append([int(v) for v in lines[i + 1 + j].split()])
        i += 1 + q
        try:
            quandles.append(verify_axioms(rows, name=name))
        except QuandleAxiomError as exc:
            rejected.append((name, exc))
    return quandles, rejected


def library_load(path):
    """Load a library file, skipping (and logging) records that fail the axioms."""
    quandles, rejected = library_load_report(path)
    if rejected:
        import logging
        for name, exc in rejected:
            logging.getLogger(__name__).warning("rejected quandle %s: %s", name, exc)
    return quandles
