"""Fox colorability by modular linear algebra, and the Alexander polynomial
via a fraction-free determinant over integer polynomials.

The crossing matrix follows the same sign convention as the coloring
engines: with (over, j, k) read so that the constraint is
f(k) = f(over)*f(j), the crossing row places (1-t) at column over, t at
column j and -1 at column k, summing on coincident columns.
"""

from __future__ import annotations

import math


class IntPolynomial:
    """Integer polynomial, coefficients lowest degree first, trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -1

    def __eq__(self, other):
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return IntPolynomial(x + y for x, y in zip(a, b))

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero or other.is_zero:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    def exact_div(self, other):
        """Exact polynomial division; raises if the quotient is not integral."""
        if other.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero:
            return IntPolynomial()
        rem = list(self.coeffs)
        quot = [0] * (len(rem) - len(other.coeffs) + 1)
        lead = other.coeffs[-1]
        for i in range(len(quot) - 1, -1, -1):
            c = rem[i + len(other.coeffs) - 1]
            if c % lead != 0:
                raise ArithmeticError("non-exact polynomial division")
            q = c // lead
            quot[i] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= q * b
        if any(rem):
            raise ArithmeticError("non-exact polynomial division")
        return IntPolynomial(quot)

    def evaluate(self, x):
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def normalized(self):
        """Strip the t^k unit, identify t with 1/t, make the constant term positive."""
        if self.is_zero:
            return self
        coeffs = list(self.coeffs)
        while coeffs[0] == 0:
            coeffs.pop(0)
        reverse = list(reversed(coeffs))
        # Alexander polynomials are symmetric up to sign; pick the canonical
        # direction so that equality is decidable for any input.
        def signed(cs):
            return cs if cs[0] > 0 else [-c for c in cs]
        a, b = signed(coeffs), signed(reverse)
        return IntPolynomial(min(a, b))

    def __str__(self):
        if self.is_zero:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*t")
            else:
                terms.append(f"{c}*t^{i}")
        return " + ".join(terms)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"


P_ZERO = IntPolynomial()
P_ONE = IntPolynomial([1])
P_T = IntPolynomial([0, 1])
P_ONE_MINUS_T = IntPolynomial([1, -1])


def _constraint_arcs(crossing):
    if crossing.sign == 1:
        return crossing.over, crossing.under_in, crossing.under_out
    return crossing.over, crossing.under_out, crossing.under_in


def alexander_matrix(diagram):
    """m x m matrix of IntPolynomial, one row per crossing, columns by arc."""
    m = len(diagram.crossings)
    rows = []
    for crossing in diagram.crossings:
        over, j, k = _constraint_arcs(crossing)
        row = [P_ZERO] * diagram.arc_count
        row[over - 1] = row[over - 1] + P_ONE_MINUS_T
        row[j - 1] = row[j - 1] + P_T
        row[k - 1] = row[k - 1] - P_ONE
        rows.append(row)
    return rows


def _bareiss_det(matrix):
    """Fraction-free determinant over IntPolynomial."""
    n = len(matrix)
    if n == 0:
        return P_ONE
    m = [row[:] for row in matrix]
    sign = 1
    prev = P_ONE
    for k in range(n - 1):
        if m[k][k].is_zero:
            pivot_row = next(
                (r for r in range(k + 1, n) if not m[r][k].is_zero), None)
            if pivot_row is None:
                return P_ZERO
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev)
            m[i][k] = P_ZERO
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def alexander_polynomial(diagram):
    """Normalized Alexander polynomial; Delta(unknot) = 1."""
    m = len(diagram.crossings)
    if m == 0:
        return P_ONE
    matrix = alexander_matrix(diagram)
    minor = [row[:-1] for row in matrix[:-1]]
    return _bareiss_det(minor).normalized()


def knot_determinant(diagram):
    """|Delta(-1)|; its odd prime divisors are the Fox-colorability moduli."""
    return abs(alexander_polynomial(diagram).evaluate(-1))


def alexander_trivial(diagram):
    return alexander_polynomial(diagram) == P_ONE


# ---------------------------------------------------------------------------
# Fox n-coloring counts by modular linear algebra


def _fox_matrix(diagram):
    """Integer rows 2*x_over - x_j - x_k per crossing (sign-independent mod n)."""
    rows = []
    for crossing in diagram.crossings:
        row = [0] * diagram.arc_count
        row[crossing.over - 1] += 2
        row[crossing.under_in - 1] -= 1
        row[crossing.under_out - 1] -= 1
        rows.append(row)
    return rows


def _smith_diagonal(matrix):
    """Nonzero elementary divisors of an integer matrix (Smith normal form)."""
    if not matrix:
        return []
    m = [row[:] for row in matrix]
    rows, cols = len(m), len(m[0])
    divisors = []
    top = 0
    while top < min(rows, cols):
        # find a nonzero pivot of least absolute value
        pivot = None
        for i in range(top, rows):
            for j in range(top, cols):
                if m[i][j] and (pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        m[top], m[i] = m[i], m[top]
        for row in m:
            row[top], row[j] = row[j], row[top]
        # clear the pivot row and column by division with remainder, repeating
        # until everything in the row/column is divisible
        while True:
            p = m[top][top]
            dirty = False
            for i in range(top + 1, rows):
                q = m[i][top] // p
                if q:
                    for j2 in range(cols):
                        m[i][j2] -= q * m[top][j2]
                if m[i][top]:
                    m[top], m[i] = m[i], m[top]
                    dirty = True
                    break
            if dirty:
                continue
            for j2 in range(top + 1, cols):
                q = m[top][j2] // p
                if q:
                    for i in range(rows):
                        m[i][j2] -= q * m[i][top]
                if m[top][j2]:
                    for i in range(rows):
                        m[i][top], m[i][j2] = m[i][j2], m[i][top]
                    dirty = True
                    break
            if not dirty:
                break
        divisors.append(abs(m[top][top]))
        top += 1
    # enforce the divisibility chain (not needed for solution counting via
    # gcds, but cheap and keeps the diagonal canonical)
    for i in range(len(divisors)):
        for j in range(i + 1, len(divisors)):
            a, b = divisors[i], divisors[j]
            g = math.gcd(a, b)
            divisors[i], divisors[j] = g, a * b // g if g else 0
    return [d for d in divisors if d]


def _prime_power_factors(n):
    factors = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return {p: p ** e for p, e in factors.items()}


def _solution_count_mod(divisors, rank_deficit, modulus):
    count = modulus ** rank_deficit
    for d in divisors:
        count *= math.gcd(d, modulus)
    return count


def fox_count(diagram, n, _cache={}):
    """Number of nontrivial Fox n-colorings, via SNF divisors combined CRT-wise
    over the prime-power factors of n."""
    if n < 2:
        raise ValueError("modulus must be >= 2")
    key = (diagram.crossings, diagram.arc_count)
    if key not in _cache:
        divisors = _smith_diagonal(_fox_matrix(diagram))
        _cache[key] = (divisors, diagram.arc_count - len(divisors))
    divisors, rank_deficit = _cache[key]
    total = 1
    for pe in _prime_power_factors(n).values():
        total *= _solution_count_mod(divisors, rank_deficit, pe)
    return total - n


def fox_colorable(diagram, n):
    return fox_count(diagram, n) > 0
