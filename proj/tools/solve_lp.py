#!/usr/bin/env python3
"""Reference MILP driver: reads a fixed-keyword LP file, solves it, and
writes a plain "name value" solution file.

Usage: solve_lp.py [--time-limit SECONDS] [--backend auto|glpk|scipy] MODEL.lp SOLUTION.sol

Backends:
    glpk   cvxopt.glpk.ilp (GLPK branch-and-cut)
    scipy  scipy.optimize.milp (HiGHS)
    auto   glpk when cvxopt is importable, otherwise scipy

The default prefers GLPK: the HiGHS build bundled with scipy 1.15 returns
wrongly-claimed-optimal answers on a noticeable fraction of the PAM-L2
models (verified against exhaustive enumeration and feasible-point
certificates), while GLPK solved every cross-checked instance correctly.

Solution file lines:
    status optimal|feasible|infeasible|limit
    objective <value>
    bound <value>          (when the solver reports one)
    <variable> <value>     one line per variable
Lines starting with '#' are comments.

Quadratic constraints are not supported by either backend; the driver exits
with an error naming the capability gap.
"""

import argparse
import math
import re
import sys


SECTIONS = {"minimize", "maximize", "subject to", "bounds", "generals", "binaries", "end"}


def strip_comments(text):
    return "\n".join(raw.split("\\", 1)[0] for raw in text.splitlines())


class LpParseError(Exception):
    pass


class LpModel:
    def __init__(self):
        self.maximize = False
        self.objective = {}  # name -> coef
        self.constraints = []  # (name, {name: coef}, sense, rhs)
        self.bounds = {}  # name -> [lb, ub]
        self.integers = set()
        self.binaries = set()
        self.order = []  # first-appearance order
        self.seen = set()

    def touch(self, name):
        if name not in self.seen:
            self.seen.add(name)
            self.order.append(name)


NUM_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


def is_number(tok):
    return bool(NUM_RE.match(tok)) or tok in ("inf", "+inf", "-inf", "infinity")


def to_number(tok):
    if tok in ("inf", "+inf", "infinity"):
        return math.inf
    if tok == "-inf":
        return -math.inf
    return float(tok)


def parse_expression(tokens, model, where):
    coefs = {}
    sign = 1.0
    pending = None
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok in ("<=", ">=", "=", "<", ">"):
            break
        if tok == "+":
            if pending is not None:
                raise LpParseError(f"{where}: dangling coefficient")
            sign = 1.0
        elif tok == "-":
            if pending is not None:
                raise LpParseError(f"{where}: dangling coefficient")
            sign = -1.0
        elif tok == "[":
            raise LpParseError(f"{where}: quadratic expressions are not supported "
                               "by this linear backend")
        elif is_number(tok):
            if pending is not None:
                raise LpParseError(f"{where}: two numbers in a row")
            pending = sign * to_number(tok)
            sign = 1.0
        else:
            coef = pending if pending is not None else sign
            coefs[tok] = coefs.get(tok, 0.0) + coef
            model.touch(tok)
            pending = None
            sign = 1.0
        i += 1
    if pending is not None and pending != 0.0:
        coefs["__const__"] = coefs.get("__const__", 0.0) + pending
    return coefs, tokens[i:]


def parse_lp(path):
    text = strip_comments(open(path).read())
    model = LpModel()
    section = None
    buffered = []

    def flush(stmt_tokens):
        if not stmt_tokens:
            return
        where = " ".join(stmt_tokens[:3])
        name = None
        if stmt_tokens[0].endswith(":"):
            name = stmt_tokens[0][:-1]
            stmt_tokens = stmt_tokens[1:]
        if section in ("minimize", "maximize"):
            coefs, rest = parse_expression(stmt_tokens, model, where)
            if rest:
                raise LpParseError(f"objective: unexpected '{rest[0]}'")
            coefs.pop("__const__", None)
            model.objective = coefs
        elif section == "subject to":
            coefs, rest = parse_expression(stmt_tokens, model, where)
            if not rest:
                raise LpParseError(f"constraint {name or where}: missing relation")
            sense = rest[0]
            rhs_tokens = rest[1:]
            if len(rhs_tokens) != 1 or not is_number(rhs_tokens[0]):
                raise LpParseError(f"constraint {name or where}: bad right-hand side")
            rhs = to_number(rhs_tokens[0]) - coefs.pop("__const__", 0.0)
            model.constraints.append((name, coefs, sense, rhs))
        else:
            raise LpParseError(f"unexpected statement in section {section}")

    lines = text.splitlines()
    for line in lines:
        stripped = line.strip()
        low = stripped.lower()
        if low in SECTIONS or low in ("st", "s.t."):
            flush(buffered)
            buffered = []
            section = "subject to" if low in ("st", "s.t.") else low
            if section == "end":
                break
            continue
        if not stripped:
            continue
        if section == "bounds":
            toks = stripped.replace("<=", " <= ").replace(">=", " >= ").split()
            if len(toks) == 2 and toks[1] == "free":
                model.bounds[toks[0]] = [-math.inf, math.inf]
                model.touch(toks[0])
            elif len(toks) == 5 and toks[1] == "<=" and toks[3] == "<=":
                model.bounds[toks[2]] = [to_number(toks[0]), to_number(toks[4])]
                model.touch(toks[2])
            elif len(toks) == 3 and toks[1] == "<=":
                if is_number(toks[0]):
                    model.bounds.setdefault(toks[2], [0.0, math.inf])[0] = to_number(toks[0])
                    model.touch(toks[2])
                else:
                    model.bounds.setdefault(toks[0], [0.0, math.inf])[1] = to_number(toks[2])
                    model.touch(toks[0])
            else:
                raise LpParseError(f"bounds: cannot parse '{stripped}'")
            continue
        if section == "generals":
            for tok in stripped.split():
                model.integers.add(tok)
                model.touch(tok)
            continue
        if section == "binaries":
            for tok in stripped.split():
                model.binaries.add(tok)
                model.touch(tok)
            continue
        toks = stripped.replace("<=", " <= ").replace(">=", " >= ").replace("^", " ^ ").split()
        if toks and toks[0].endswith(":") and buffered:
            flush(buffered)
            buffered = []
        buffered.extend(toks)
    flush(buffered)
    if section != "end":
        raise LpParseError("missing End keyword")
    model.maximize = any(l.strip().lower() == "maximize" for l in lines[:5])
    return model


class SolveOutcome:
    def __init__(self, status, objective=None, bound=None, values=None):
        self.status = status
        self.objective = objective
        self.bound = bound
        self.values = values or {}


def solve_scipy(model, names, time_limit):
    import numpy as np
    from scipy.optimize import milp, LinearConstraint, Bounds
    from scipy.sparse import csr_matrix

    index = {name: i for i, name in enumerate(names)}
    n = len(names)
    c = np.zeros(n)
    for name, coef in model.objective.items():
        c[index[name]] = coef
    sign = -1.0 if model.maximize else 1.0
    c *= sign
    lb = np.zeros(n)
    ub = np.full(n, math.inf)
    integrality = np.zeros(n)
    for i, name in enumerate(names):
        if name in model.binaries:
            lb[i], ub[i] = 0.0, 1.0
            integrality[i] = 1
        if name in model.integers:
            integrality[i] = 1
        if name in model.bounds:
            lb[i], ub[i] = model.bounds[name]
    constraints = []
    if model.constraints:
        rows, cols, vals, lo, hi = [], [], [], [], []
        for r, (_, coefs, sense, rhs) in enumerate(model.constraints):
            for name, coef in coefs.items():
                rows.append(r)
                cols.append(index[name])
                vals.append(coef)
            if sense in ("<=", "<"):
                lo.append(-math.inf)
                hi.append(rhs)
            elif sense in (">=", ">"):
                lo.append(rhs)
                hi.append(math.inf)
            else:
                lo.append(rhs)
                hi.append(rhs)
        mat = csr_matrix((vals, (rows, cols)), shape=(len(model.constraints), n))
        constraints = [LinearConstraint(mat, lo, hi)]
    options = {}
    if time_limit and time_limit > 0:
        options["time_limit"] = time_limit
    res = milp(c=c, constraints=constraints, integrality=integrality,
               bounds=Bounds(lb, ub), options=options)
    if res.status == 2:
        return SolveOutcome("infeasible")
    if res.x is None:
        bound = getattr(res, "mip_dual_bound", None)
        return SolveOutcome("limit", bound=None if bound is None else sign * bound)
    status = "optimal" if res.status == 0 else "feasible"
    bound = getattr(res, "mip_dual_bound", None)
    return SolveOutcome(status, sign * res.fun,
                        None if bound is None else sign * bound,
                        dict(zip(names, (float(v) for v in res.x))))


def solve_glpk(model, names, time_limit):
    from cvxopt import matrix, spmatrix
    from cvxopt import glpk

    index = {name: i for i, name in enumerate(names)}
    n = len(names)
    sign = -1.0 if model.maximize else 1.0
    c = [0.0] * n
    for name, coef in model.objective.items():
        c[index[name]] = sign * coef
    g_rows, g_cols, g_vals, h = [], [], [], []
    a_rows, a_cols, a_vals, b = [], [], [], []

    def add_le(coefs, rhs):
        r = len(h)
        for name, coef in coefs.items():
            g_rows.append(r)
            g_cols.append(index[name])
            g_vals.append(float(coef))
        h.append(float(rhs))

    for _, coefs, sense, rhs in model.constraints:
        if sense in ("<=", "<"):
            add_le(coefs, rhs)
        elif sense in (">=", ">"):
            add_le({k: -v for k, v in coefs.items()}, -rhs)
        else:
            r = len(b)
            for name, coef in coefs.items():
                a_rows.append(r)
                a_cols.append(index[name])
                a_vals.append(float(coef))
            b.append(float(rhs))
    integers, binaries = set(), set()
    for i, name in enumerate(names):
        if name in model.binaries:
            binaries.add(i)
            continue
        if name in model.integers:
            integers.add(i)
        lo, hi = model.bounds.get(name, [0.0, math.inf])
        if lo != -math.inf:
            add_le({name: -1.0}, -lo)
        if hi != math.inf:
            add_le({name: 1.0}, hi)
    G = spmatrix(g_vals, g_rows, g_cols, (len(h), n))
    options = {"msg_lev": "GLP_MSG_OFF"}
    if time_limit and time_limit > 0:
        options["tm_lim"] = int(time_limit * 1000)
    if b:
        A = spmatrix(a_vals, a_rows, a_cols, (len(b), n))
        status, x = glpk.ilp(matrix(c), G, matrix(h), A, matrix(b), integers, binaries,
                             options=options)
    else:
        status, x = glpk.ilp(matrix(c), G, matrix(h), I=integers, B=binaries, options=options)
    if x is None:
        if "infeasible" in status:
            return SolveOutcome("infeasible")
        return SolveOutcome("limit")
    objective = sign * sum(ci * xi for ci, xi in zip(c, x))
    mapped = "optimal" if status == "optimal" else "feasible"
    values = {name: float(x[i]) for i, name in enumerate(names)}
    return SolveOutcome(mapped, objective, objective if mapped == "optimal" else None, values)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--time-limit", type=float, default=0.0)
    ap.add_argument("--backend", choices=["auto", "glpk", "scipy"], default="auto")
    ap.add_argument("model")
    ap.add_argument("solution")
    args = ap.parse_args()

    model = parse_lp(args.model)
    names = model.order
    backend = args.backend
    if backend == "auto":
        try:
            import cvxopt.glpk  # noqa: F401
            backend = "glpk"
        except ImportError:
            backend = "scipy"
    outcome = (solve_glpk if backend == "glpk" else solve_scipy)(model, names, args.time_limit)

    with open(args.solution, "w") as out:
        out.write(f"# solve_lp.py backend={backend}\n")
        out.write(f"status {outcome.status}\n")
        if outcome.objective is not None:
            out.write(f"objective {outcome.objective:.17g}\n")
        if outcome.bound is not None:
            out.write(f"bound {outcome.bound:.17g}\n")
        for name in names:
            if name in outcome.values:
                out.write(f"{name} {outcome.values[name]:.17g}\n")
    return 0


if __name__ == "__main__":
    try:
        sys.exit(main())
    except LpParseError as e:
        print(f"solve_lp.py: LP parse error: {e}", file=sys.stderr)
        sys.exit(2)
