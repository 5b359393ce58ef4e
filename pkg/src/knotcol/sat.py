"""A small deterministic SAT decision procedure plus DIMACS emission.

Policy is fixed for reproducibility: unit propagation to fixpoint, branch on
the lowest-index unassigned variable trying TRUE first, chronological
backtracking.  Competitive CDCL performance is a non-goal.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class CnfInstance:
    num_vars: int
    clauses: tuple

    def __post_init__(self):
        for clause in self.clauses:
            if not clause:
                raise ValueError("empty clause at construction")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range")


def emit_dimacs(instance):
    """Standard DIMACS CNF text, clause order preserved, deterministic bytes."""
    lines = [f"p cnf {instance.num_vars} {len(instance.clauses)}"]
    for clause in instance.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"


def parse_dimacs(text):
    num_vars = num_clauses = None
    clauses = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad DIMACS header {line!r}")
            num_vars, num_clauses = int(parts[2]), int(parts[3])
            continue
        lits = [int(tok) for tok in line.split()]
        if lits[-1] != 0:
            raise ValueError("clause line must end with 0")
        clauses.append(tuple(lits[:-1]))
    if num_vars is None:
        raise ValueError("missing DIMACS header")
    if num_clauses is not None and num_clauses != len(clauses):
        raise ValueError("clause count mismatch with header")
    return CnfInstance(num_vars, tuple(clauses))


def solve_external(instance, solver_path):
    """Run an external solver on the DIMACS text and parse its verdict.

    Accepts either plain `SAT`/`UNSAT` with a literal line, or the
    competition format (`s SATISFIABLE` + `v` lines).  Returns a model dict
    var->bool or None.
    """
    import subprocess
    import tempfile

    with tempfile.NamedTemporaryFile("w", suffix=".cnf", delete=False) as fh:
        fh.write(emit_dimacs(instance))
        path = fh.name
    proc = subprocess.run([solver_path, path], capture_output=True, text=True)
    sat = None
    lits = []
    for line in proc.stdout.splitlines():
        line = line.strip()
        if line in ("SAT", "s SATISFIABLE"):
            sat = True
        elif line in ("UNSAT", "s UNSATISFIABLE"):
            sat = False
        elif line.startswith("v "):
            lits.extend(int(tok) for tok in line[2:].split())
        elif sat and re_all_ints(line):
            lits.extend(int(tok) for tok in line.split())
    if sat is None:
        raise RuntimeError(
            f"external solver produced no verdict (exit {proc.returncode})")
    if not sat:
        return None
    model = {v: False for v in range(1, instance.num_vars + 1)}
    for lit in lits:
        if lit != 0:
            model[abs(lit)] = lit > 0
    return model


def re_all_ints(line):
    toks = line.split()
    return bool(toks) and all(
        tok.lstrip("-").isdigit() for tok in toks)


def sat_decide(instance):
    """Complete decision: returns a satisfying assignment as a dict var->bool, or None.

    The returned model is total and asserted to satisfy every clause.
    """
    clauses = [list(c) for c in instance.clauses]
    n = instance.num_vars
    assign = {}
    trail = []  # (var, is_decision)

    def value(lit):
        v = assign.get(abs(lit))
        if v is None:
            return None
        return v if lit > 0 else not v

    def set_lit(lit, decision):
        assign[abs(lit)] = lit > 0
        trail.append((abs(lit), decision))

    def propagate():
        changed = True
        while changed:
            changed = False
            for clause in clauses:
                unassigned = None
                satisfied = False
                count = 0
                for lit in clause:
                    v = value(lit)
                    if v is True:
                        satisfied = True
                        break
                    if v is None:
                        unassigned = lit
                        count += 1
                if satisfied:
                    continue
                if count == 0:
                    return False  # conflict
                if count == 1:
                    set_lit(unassigned, decision=False)
                    changed = True
        return True

    def backtrack():
        # undo to the most recent TRUE decision and flip it to FALSE
        while trail:
            var, decision = trail.pop()
            was_true = assign.pop(var)
            if decision and was_true:
                set_lit(-var, decision=False)
                return True
        return False

    while True:
        if propagate():
            branch = next((v for v in range(1, n + 1) if v not in assign), None)
            if branch is None:
                model = dict(assign)
                assert all(
                    any((lit > 0) == model[abs(lit)] for lit in clause)
                    for clause in clauses)
                return model
            set_lit(branch, decision=True)
        else:
            if not backtrack():
                return None
