"""Exact closed-form reductions: zeta(n,1) at every weight, all double zeta
values of weight <= 7, Witten double sums via their recursion, and the small
tabulated alternating values.

The weight-w table is the unique solution of an exact linear system over
ConstExpr assembled from the reflection pairs, the plain and 2^j-weighted sum
formulas, and (per parity) the alternating-sign sum or its odd-weight closed
form.  Redundant rows (the even/odd pair sums) are kept and checked for exact
consistency; any rank deficiency is a hard error, never silently patched.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, NotReducible, ReductionError
from .symexpr import ConstExpr, zeta_sym

_VERIFY_PREC = 40
_VERIFY_TOL_EXP = 35  # residual <= 10^-(P-5) at P = 40


def zeta_s1_reduce(s: int) -> ConstExpr:
    """Closed form of zeta(s-1, 1) for s >= 3, valid at every weight:

        zeta(s-1, 1) = (s-1)/2 zeta(s) - 1/2 sum_{j=2}^{s-2} zeta(j) zeta(s-j).
    """
    if s < 3:
        raise DomainError("zeta_s1_reduce needs s >= 3")
    out = zeta_sym(s) * Fraction(s - 1, 2)
    for j in range(2, s - 1):
        out = out - zeta_sym(j) * zeta_sym(s - j) * Fraction(1, 2)
    return out


def _solve_exact(rows, nunknowns: int):
    """Exact Gaussian elimination over Q with ConstExpr right-hand sides.

    Columns are eliminated in ascending order; the system must determine every
    unknown, and every leftover row must reduce to 0 == 0 exactly.
    """
    rows = [([Fraction(c) for c in coeffs], rhs) for coeffs, rhs in rows]
    solution: list = [None] * nunknowns
    for col in range(nunknowns):
        pivot = None
        for i, (coeffs, _) in enumerate(rows):
            if coeffs[col]:
                pivot = i
                break
        if pivot is None:
            raise ReductionError(f"rank-deficient system: no pivot for column {col}")
        pcoeffs, prhs = rows.pop(pivot)
        inv = 1 / pcoeffs[col]
        pcoeffs = [c * inv for c in pcoeffs]
        prhs = prhs * inv
        newrows = []
        for coeffs, rhs in rows:
            f = coeffs[col]
            if f:
                coeffs = [c - f * pc for c, pc in zip(coeffs, pcoeffs)]
                rhs = rhs - prhs * f
            newrows.append((coeffs, rhs))
        rows = newrows
        rows.append((pcoeffs, prhs))
    # back-substitute: rows now contain a unit upper system plus leftovers
    pivots = {}
    leftovers = []
    for coeffs, rhs in rows:
        lead = next((i for i, c in enumerate(coeffs) if c), None)
        if lead is None:
            leftovers.append(rhs)
        else:
            pivots[lead] = (coeffs, rhs)
    for col in range(nunknowns - 1, -1, -1):
        coeffs, rhs = pivots[col]
        val = rhs
        for j in range(col + 1, nunknowns):
            if coeffs[j]:
                val = val - solution[j] * coeffs[j]
        solution[col] = val
    for rhs in leftovers:
        # leftover rhs already had its coefficient part eliminated
        if rhs:
            raise ReductionError("overdetermined system is inconsistent")
    return solution


def _weight_rows(w: int):
    """Rows of the weight-w system over unknowns zeta(j, w-j), j = 2..w-1."""
    js = list(range(2, w))
    idx = {j: i for i, j in enumerate(js)}
    rows = []

    def row(coef_by_j, rhs):
        coeffs = [Fraction(0)] * len(js)
        for j, c in coef_by_j.items():
            coeffs[idx[j]] += c
        rows.append((coeffs, rhs))

    for a in range(2, w // 2 + 1):
        b = w - a
        if b < 2:
            continue
        cmap = {a: Fraction(1)}
        cmap[b] = cmap.get(b, Fraction(0)) + 1
        row(cmap, zeta_sym(a) * zeta_sym(b) - zeta_sym(w))
    row({j: Fraction(1) for j in js}, zeta_sym(w))
    row({j: Fraction(2**j) for j in js}, zeta_sym(w) * (w + 1))
    if w % 2 == 0:
        row({j: Fraction((-1) ** j) for j in js}, zeta_sym(w) * Fraction(1, 2))
        row({j: Fraction(1) for j in js if j % 2 == 0}, zeta_sym(w) * Fraction(3, 4))
        row({j: Fraction(1) for j in js if j % 2 == 1}, zeta_sym(w) * Fraction(1, 4))
    else:
        # alternating-sign odd-weight closed form at w = 2s+1
        s = (w - 1) // 2
        rhs = zeta_sym(w) * (4**s - s - 2)
        for k in range(1, s):
            rhs = rhs - zeta_sym(2 * k) * zeta_sym(w - 2 * k) * (2 * (4 ** (s - k) - 1))
        row({j: Fraction((-1) ** j) for j in js}, rhs)
    return rows, js


@dataclass
class WittenReduction:
    """Exact reduction of W(r,s,t): a ConstExpr part plus leftover double zeta
    descriptors (weight > 7, second argument >= 2) with rational coefficients."""

    const_part: ConstExpr = field(default_factory=lambda: ConstExpr.zero)
    dz_terms: dict = field(default_factory=dict)

    def add_dz(self, a: int, b: int, coef: Fraction):
        cur = self.dz_terms.get((a, b), Fraction(0)) + coef
        if cur:
            self.dz_terms[(a, b)] = cur
        else:
            self.dz_terms.pop((a, b), None)

    def is_closed(self) -> bool:
        return not self.dz_terms


class ReductionTable:
    """Memoized reductions; double-zeta and alternating entries are verified
    numerically at insertion (P = 40, residual <= 10^-35) against the
    independent Euler-Maclaurin evaluator."""

    def __init__(self, verify: bool = True):
        self.verify = verify
        self._lock = threading.Lock()
        self._dz_tables: dict = {}
        self._alt: dict = {}
        self._witten: dict = {}

    # -- double zeta -------------------------------------------------------
    def dz_table(self, w: int) -> dict:
        if w in self._dz_tables:
            return self._dz_tables[w]
        with self._lock:
            if w in self._dz_tables:
                return self._dz_tables[w]
            rows, js = _weight_rows(w)
            sol = _solve_exact(rows, len(js))
            table = {j: sol[i] for i, j in enumerate(js)}
            if self.verify:
                for j, expr in table.items():
                    _verify_against_em(expr, ("1", "1", j, w - j))
            self._dz_tables[w] = table
        return table

    # -- alternating small values -------------------------------------------
    def alt_value(self, key) -> ConstExpr:
        if key in self._alt:
            return self._alt[key]
        expr = _ALT_VALUES.get(key)
        if expr is None:
            raise NotReducible(f"no tabulated closed form for {key}")
        expr = expr()
        if self.verify:
            _verify_against_em(expr, key)
        with self._lock:
            self._alt[key] = expr
        return expr

    # -- witten --------------------------------------------------------------
    def witten(self, r: int, s: int, t: int) -> WittenReduction:
        key = (r, s, t)
        if key in self._witten:
            return self._witten[key]
        red = _witten_expand(r, s, t, self)
        with self._lock:
            self._witten[key] = red
        return red


def _verify_against_em(expr: ConstExpr, char_key):
    from . import numerics

    D = _VERIFY_PREC + 10
    p, q, s, t = char_key
    got, gb = numerics._char_em(p, q, s, t, D)
    want, wb = numerics._expr_internal(expr, D)
    from mpmath import mp, mpf

    with mp.workdps(D):
        resid = abs(got - want)
        if resid > mpf(10) ** (-_VERIFY_TOL_EXP):
            raise ReductionError(
                f"table entry for {char_key} fails numeric verification: residual {mp.nstr(resid, 3)}"
            )


def _alt_2b1_21():
    return zeta_sym(3) * Fraction(-1, 8)


def _alt_1_2b_21():
    from .symexpr import LOG2, PI, ConstExpr as CE

    return CE({((PI, 2), (LOG2, 1)): Fraction(1, 4)}) - zeta_sym(3)


def _alt_2b_2b_21():
    from .symexpr import LOG2, PI, ConstExpr as CE

    return CE({((PI, 2), (LOG2, 1)): Fraction(1, 4)}) - zeta_sym(3) * Fraction(13, 8)


def _alt_2b1_22_expr():
    from .symexpr import LI4H, LOG2, PI, ConstExpr as CE

    log2 = CE.generator(LOG2)
    pi = CE.generator(PI)
    z3 = zeta_sym(3)
    li4 = CE.generator(LI4H)
    return (
        log2**4 * Fraction(1, 6)
        - log2**2 * pi**2 * Fraction(1, 6)
        + log2 * z3 * Fraction(7, 2)
        - pi**4 * Fraction(13, 288)
        + li4 * 4
    )


def _alt_2b_2b_22():
    return zeta_sym(4) * Fraction(-3, 16)


_ALT_VALUES = {
    ("2b", "1", 2, 1): _alt_2b1_21,
    ("1", "2b", 2, 1): _alt_1_2b_21,
    ("2b", "2b", 2, 1): _alt_2b_2b_21,
    ("2b", "1", 2, 2): _alt_2b1_22_expr,
    ("2b", "2b", 2, 2): _alt_2b_2b_22,
}

_TABLE = ReductionTable()


def dzeta_reduce(a: int, b: int) -> ConstExpr:
    """Exact closed form of zeta(a, b) for a >= 2, b >= 1, a+b <= 7.

    Weight 8 and beyond raises NotReducible (zeta(5,3) is the canonical
    conjecturally-irreducible case), except b = 1 which closes at any weight.
    """
    if a < 2 or b < 1:
        raise DomainError("dzeta_reduce needs a >= 2, b >= 1")
    if b == 1:
        return zeta_s1_reduce(a + 1)
    if a == b:
        # the diagonal closes at every weight by reflection alone
        return (zeta_sym(a) * zeta_sym(a) - zeta_sym(2 * a)) * Fraction(1, 2)
    if a + b > 7:
        raise NotReducible(f"zeta({a},{b}) has weight {a+b} > 7")
    return _TABLE.dz_table(a + b)[a]


def alt_value_lookup(key) -> ConstExpr:
    """The tabulated alternating double zeta closed forms, keyed by
    (p, q, s, t) character tuples; everything else raises NotReducible."""
    return _TABLE.alt_value(tuple(key))


def _dz_to_expr(a: int, b: int):
    """ConstExpr for zeta(a,b) if reducible here, else None."""
    if b == 0:
        return zeta_sym(a - 1) - zeta_sym(a)
    if b == 1:
        return zeta_s1_reduce(a + 1)
    if a + b <= 7:
        return _TABLE.dz_table(a + b)[a]
    return None


def _witten_expand(r: int, s: int, t: int, table: ReductionTable) -> WittenReduction:
    from .numerics import witten_convergent

    if not witten_convergent(r, s, t):
        raise DomainError(f"W({r},{s},{t}) diverges")
    memo: dict = {}

    def go(r, s, t) -> dict:
        """Map from terminal descriptors to integer coefficients."""
        key = (r, s, t)
        if key in memo:
            return memo[key]
        if t == 0:
            out = {("zz", r, s): 1}
        elif r == 0 and s == 0:
            out = {("dz", t, 0): 1}
        elif r == 0:
            out = {("dz", t, s): 1}
        elif s == 0:
            out = {("dz", t, r): 1}
        else:
            out = {}
            for part in (go(r - 1, s, t + 1), go(r, s - 1, t + 1)):
                for k, c in part.items():
                    out[k] = out.get(k, 0) + c
        memo[key] = out
        return out

    red = WittenReduction()
    for desc, coef in go(r, s, t).items():
        c = Fraction(coef)
        if desc[0] == "zz":
            _, a, b = desc
            if a < 2 or b < 2:
                raise DomainError(f"W({r},{s},{t}) hits divergent boundary zeta({a})zeta({b})")
            red.const_part = red.const_part + zeta_sym(a) * zeta_sym(b) * c
        else:
            _, a, b = desc
            expr = _dz_to_expr(a, b)
            if expr is not None:
                red.const_part = red.const_part + expr * c
            else:
                red.add_dz(a, b, c)
    return red


def witten_reduce(r: int, s: int, t: int):
    """Expand W(r,s,t) through W(r,s,t) = W(r-1,s,t+1) + W(r,s-1,t+1) down to
    the boundary values.  Returns a ConstExpr when everything closes (total
    weight <= 7), otherwise a WittenReduction carrying leftover descriptors."""
    red = _TABLE.witten(r, s, t)
    if red.is_closed():
        return red.const_part
    return red


def witten_reduction(r: int, s: int, t: int) -> WittenReduction:
    """Always-structured form of witten_reduce (used by the numeric evaluator)."""
    return _TABLE.witten(r, s, t)
