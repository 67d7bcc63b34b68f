"""Experimental rediscovery of weighted double-zeta sum identities.

Ansatz families over sum_j weight(s,j) * zeta(j, s-j) (or the even-argument
variant zeta(2j, 2s-2j)) are solved exactly against the weight <= 7 reduction
tables, assuming the basis constants are algebraically independent over Q, and
surviving candidates are screened numerically at two higher weights.  The
numeric stage can only reject, never accept: acceptance is exact arithmetic
throughout.

Even-argument symmetric families (weights invariant under j -> s-j) certify
exactly at *every* weight, because the reflection formula turns the sum into
an even-zeta convolution; that is what singles the symmetric shape out.

Deduplication is by exact per-weight span membership: a candidate is emitted
only if, at some weight, its relation vector over (zeta(j, w-j) | zeta(w)) lies
outside the rational span of the already-emitted relations at that weight.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import mp, mpf

from .errors import DomainError
from .reductions import dzeta_reduce
from .symexpr import ConstExpr, zeta_sym

F_SPAN = ("1", "s", "s^2", "2^s", "4^s", "s*4^s")


def _span_value(name: str, s: int) -> Fraction:
    if name == "1":
        return Fraction(1)
    if name == "s":
        return Fraction(s)
    if name == "s^2":
        return Fraction(s * s)
    if name == "2^s":
        return Fraction(2**s)
    if name == "4^s":
        return Fraction(4**s)
    if name == "s*4^s":
        return Fraction(s * 4**s)
    raise KeyError(name)


def f_eval(coeffs: dict, s: int) -> Fraction:
    return sum((c * _span_value(k, s) for k, c in coeffs.items()), Fraction(0))


def render_f(coeffs: dict, var: str = "s") -> str:
    if not coeffs:
        return "0"
    parts = []
    for name in F_SPAN:
        c = coeffs.get(name)
        if not c:
            continue
        body = name.replace("s", var) if name != "1" else ""
        mag = abs(c)
        if body:
            text = body if mag == 1 else f"{_frac_text(mag)}*{body}"
        else:
            text = _frac_text(mag)
        parts.append((("- " if c < 0 else "+ ") + text) if parts else (("-" if c < 0 else "") + text))
    return " ".join(parts)


def _frac_text(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# exact anchors
# ---------------------------------------------------------------------------


def _parity_ok(x: int, parity: str) -> bool:
    return parity == "any" or (x % 2 == 0) == (parity == "even")


def reduce_weighted_sum(weight_fn, w: int, parity: str = "any") -> ConstExpr:
    """Exact ConstExpr of sum_j weight_fn(w, j) * zeta(j, w-j) over 2 <= j <= w-1
    restricted to the given j-parity; weights must be rational."""
    if w not in (4, 5, 6, 7):
        raise DomainError("weighted sums reduce exactly only for weights 4..7")
    total = ConstExpr.zero
    for j in range(2, w):
        if not _parity_ok(j, parity):
            continue
        c = weight_fn(w, j)
        if not isinstance(c, (int, Fraction)):
            raise DomainError(f"weight at (w={w}, j={j}) is not rational: {c!r}")
        if c:
            total = total + dzeta_reduce(j, w - j) * Fraction(c)
    return total


def _target_fit(expr: ConstExpr, w: int):
    """If expr == f * zeta(w) for a rational f, return f, else None."""
    zw = zeta_sym(w)
    zmono, zcoef = tuple(zw.terms.items())[0]
    f = expr.coefficient(zmono) / zcoef
    if expr - zw * f == ConstExpr.zero:
        return f
    return None


def weighted_sum_f(weight_fn, w: int, j_parity: str = "any"):
    """Rational f with sum_j weight_fn(w,j) zeta(j,w-j) = f zeta(w), or None."""
    return _target_fit(reduce_weighted_sum(weight_fn, w, j_parity), w)


def _zeta_even_coef(k: int) -> Fraction:
    return zeta_sym(2 * k).terms[(("pi", 2 * k),)]


def _zeta_even_ratio(j: int, s: int) -> Fraction:
    """zeta(2j) zeta(2s-2j) / zeta(2s) as an exact rational."""
    return _zeta_even_coef(j) * _zeta_even_coef(s - j) / _zeta_even_coef(s)


def even_arg_sum_f(weight_fn, s: int, lo: int, hi_off: int) -> Fraction:
    """Exact f(s) with sum_{j=lo}^{s-hi_off} weight_fn(s,j) zeta(2j, 2s-2j) = f(s) zeta(2s).

    Requires the weight to be symmetric under j -> s-j on a symmetric range
    ((lo, hi_off) is (1,1) or (2,2)); symmetry folds the double zetas into half
    an even-zeta convolution, exact at every weight.
    """
    assert (lo, hi_off) in ((1, 1), (2, 2))
    total = Fraction(0)
    for j in range(lo, s - hi_off + 1):
        c = Fraction(weight_fn(s, j))
        if c != Fraction(weight_fn(s, s - j)):
            raise DomainError("even-argument family needs a j -> s-j symmetric weight")
        if c:
            total += c * (_zeta_even_ratio(j, s) - 1)
    return total / 2


# ---------------------------------------------------------------------------
# span fitting and exact linear algebra helpers
# ---------------------------------------------------------------------------


def fit_span_minimal(points):
    """Smallest-support exact interpolation of (s, f) points over F_SPAN.

    Tries subsets in order of (size, basis position); a fit must reproduce
    every point exactly and determine every coefficient.  None if nothing fits.
    """
    points = list(points)
    if not points:
        return None
    for size in range(0, min(len(F_SPAN), len(points)) + 1):
        for subset in itertools.combinations(range(len(F_SPAN)), size):
            rows = [[_span_value(F_SPAN[i], s) for i in subset] for s, _ in points]
            vals = [f for _, f in points]
            sol = _solve_consistent(rows, vals, size)
            if sol is not None:
                return {F_SPAN[i]: c for i, c in zip(subset, sol) if c}
    return None


def _solve_consistent(rows, vals, ncols):
    """Exact solve of a (possibly overdetermined) system; None unless it is
    consistent and determines every column."""
    aug = [row[:] + [v] for row, v in zip(rows, vals)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(aug)) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if len(pivots) != ncols:
        return None
    for i in range(r, len(aug)):
        if aug[i][ncols]:
            return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = aug[i][ncols]
    return sol


def _nullspace(rows, ncols):
    """Nullspace basis of an exact homogeneous system."""
    aug = [row[:] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(aug)) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -aug[i][fc]
        basis.append(vec)
    return basis


def _in_span(vec, basis) -> bool:
    """Exact membership of vec in the rational span of the basis vectors."""
    target = list(vec)
    n = len(target)
    echelon = []
    for b in basis:
        row = list(b)
        for lead, erow in echelon:
            if row[lead]:
                f = row[lead]
                row = [x - f * y for x, y in zip(row, erow)]
        lead = next((i for i in range(n) if row[i]), None)
        if lead is not None:
            inv = 1 / row[lead]
            echelon.append((lead, [x * inv for x in row]))
    for lead, erow in echelon:
        if target[lead]:
            f = target[lead]
            target = [x - f * y for x, y in zip(target, erow)]
    return not any(target)


def _canonical_scale(vec):
    """Scale a rational vector to integer-primitive with positive lead."""
    den = 1
    for x in vec:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    if g:
        ints = [x // g for x in ints]
    lead = next((x for x in ints if x), 1)
    if lead < 0:
        ints = [-x for x in ints]
    return [Fraction(x) for x in ints]


# ---------------------------------------------------------------------------
# candidates
# ---------------------------------------------------------------------------

_POLY_MONOS = ("1", "j", "s", "j^2", "j*s", "s^2", "j*(s-j)")


def _poly_mono(mono: str, s: int, j: int) -> Fraction:
    return {
        "1": Fraction(1),
        "j": Fraction(j),
        "s": Fraction(s),
        "j^2": Fraction(j * j),
        "j*s": Fraction(j * s),
        "s^2": Fraction(s * s),
        "j*(s-j)": Fraction(j * (s - j)),
    }[mono]


def _mono_deg(m: str) -> int:
    return {"1": 0, "j": 1, "s": 1, "j^2": 2, "j*s": 2, "s^2": 2, "j*(s-j)": 2}[m]


@dataclass
class CandidateIdentity:
    family: str  # power | affine | symmetric-even | poly | poly-even
    params: dict
    j_parity: str = "any"
    s_parity: str = "any"
    arg_style: str = "plain"  # plain | even
    jrange: tuple = (2, 1)  # j runs lo .. s - hi_off
    f_coeffs: dict = field(default_factory=dict)
    status: str = "exact<=7"

    def weight(self, s: int, j: int) -> Fraction:
        fam = self.family
        p = self.params
        if fam == "power":
            return Fraction(p["a"]) ** j
        if fam == "affine":
            c = Fraction(p["c"])
            second = c**s * Fraction(p["d"]) ** j if c else Fraction(0)
            return Fraction(p["a"]) * Fraction(p["b"]) ** j + second
        if fam == "symmetric-even":
            d = Fraction(p["d"])
            return d**j + d ** (s - j)
        if fam in ("poly", "poly-even"):
            return sum((c * _poly_mono(m, s, j) for m, c in p.items() if c), Fraction(0))
        raise DomainError(f"unknown family {fam!r}")

    def applicable(self, w: int) -> bool:
        lo, off = self.jrange
        if self.arg_style == "even":
            return w % 2 == 0 and w // 2 - off >= lo
        return w >= lo + off + 1 and _parity_ok(w, self.s_parity)

    def relation(self, w: int):
        """Vector over (zeta(j, w-j) for j = 2..w-1 | rhs zeta(w))."""
        vec = [Fraction(0)] * (w - 2)
        lo, off = self.jrange
        if self.arg_style == "even":
            s = w // 2
            for j in range(lo, s - off + 1):
                vec[2 * j - 2] = self.weight(s, j)
            f = f_eval(self.f_coeffs, s)
        else:
            for j in range(lo, w - off + 1):
                if _parity_ok(j, self.j_parity):
                    vec[j - 2] = self.weight(w, j)
            f = f_eval(self.f_coeffs, w)
        return tuple(vec) + (-f,)

    def describe(self) -> str:
        ps = {k: str(v) for k, v in self.params.items()}
        return (
            f"{self.family}[j:{self.j_parity}, s:{self.s_parity}] {ps} "
            f"-> f(s) = {render_f(self.f_coeffs)}  [{self.status}]"
        )


def _is_new(cand: CandidateIdentity, emitted, weights=range(4, 13)) -> bool:
    for w in weights:
        if not cand.applicable(w):
            continue
        basis = [e.relation(w) for e in emitted if e.applicable(w)]
        if not _in_span(cand.relation(w), basis):
            return True
    return False


# ---------------------------------------------------------------------------
# rational pool and the power-base solver
# ---------------------------------------------------------------------------


def height_rationals(H: int, include_zero: bool = False):
    """All reduced p/q with 1 <= |p| <= H, 1 <= q <= H (plus 0 on request)."""
    out = [Fraction(0)] if include_zero else []
    seen = set()
    for q in range(1, H + 1):
        for p in range(1, H + 1):
            fr = Fraction(p, q)
            if fr not in seen:
                seen.add(fr)
                out.extend((fr, -fr))
    return sorted(out)


def _vanishing_polys(w: int, j_parity: str = "any"):
    """Per non-target monomial m: {j: coefficient of m in zeta(j, w-j)}, so the
    vanishing condition for weights x^j is sum_j coef * x^j = 0."""
    zmono = tuple(zeta_sym(w).terms)[0]
    polys: dict = {}
    targets: dict = {}
    for j in range(2, w):
        if not _parity_ok(j, j_parity):
            continue
        for mono, c in dzeta_reduce(j, w - j).terms.items():
            if mono == zmono:
                targets[j] = c
            else:
                polys.setdefault(mono, {})[j] = c
    return polys, targets


def _poly_at(poly: dict, x: Fraction) -> Fraction:
    return sum((c * x**j for j, c in poly.items()), Fraction(0))


def solve_power_base(w: int, H: int = 16, j_parity: str = "any"):
    """All height-H rationals a (0 included as the empty solution) for which
    every non-zeta(w) coefficient of sum_j a^j zeta(j, w-j) vanishes."""
    if w not in (5, 6, 7):
        raise DomainError("power-base solving uses weights 5..7")
    polys, _ = _vanishing_polys(w, j_parity)
    return sorted(
        a
        for a in height_rationals(H, include_zero=True)
        if all(_poly_at(p, a) == 0 for p in polys.values())
    )


# ---------------------------------------------------------------------------
# family searches
# ---------------------------------------------------------------------------

_PARITIES = ("any", "even", "odd")


@dataclass
class SearchConfig:
    families: tuple = ("power", "affine", "symmetric-even")
    H: int = 16
    prec: int = 40
    screen_tol_exp: int = 25
    deg: int = 2
    parities: tuple = _PARITIES


def _anchor_weights(s_parity: str):
    return [w for w in (4, 5, 6, 7) if _parity_ok(w, s_parity)]


def _screen_params(cand: CandidateIdentity):
    if cand.arg_style == "even":
        return (9, 11)
    if cand.s_parity == "even":
        return (10, 12)
    return (9, 11)


def numeric_screen(cand: CandidateIdentity, prec: int = 40, tol_exp: int = 25) -> bool:
    """Reject-only numeric check of a candidate at two parameters beyond the
    exact range (tolerance 10^-tol_exp)."""
    from . import numerics

    D = prec + 10
    with mp.workdps(D + 10):
        tol = mpf(10) ** (-tol_exp)
        for sp in _screen_params(cand):
            total = mp.zero
            lo, off = cand.jrange
            if cand.arg_style == "even":
                for j in range(lo, sp - off + 1):
                    c = cand.weight(sp, j)
                    if c:
                        v, _ = numerics._dzeta_internal(2 * j, 2 * sp - 2 * j, D)
                        total += mpf(c.numerator) / c.denominator * v
                zv, _ = numerics._zeta_internal(2 * sp, D)
            else:
                for j in range(lo, sp - off + 1):
                    if not _parity_ok(j, cand.j_parity):
                        continue
                    c = cand.weight(sp, j)
                    if c:
                        v, _ = numerics._dzeta_internal(j, sp - j, D)
                        total += mpf(c.numerator) / c.denominator * v
                zv, _ = numerics._zeta_internal(sp, D)
            f = f_eval(cand.f_coeffs, sp)
            if abs(total - (mpf(f.numerator) / f.denominator) * zv) > tol:
                return False
    return True


def _fit_candidate_f(weight_fn, anchors, j_parity):
    points = []
    for w in anchors:
        f = weighted_sum_f(weight_fn, w, j_parity)
        if f is None:
            return None
        points.append((w, f))
    return fit_span_minimal(points)


def _power_candidates(config: SearchConfig):
    for s_par in config.parities:
        anchors = _anchor_weights(s_par)
        for j_par in config.parities:
            conditions = []
            for w in anchors:
                polys, _ = _vanishing_polys(w, j_par)
                if polys:
                    conditions.append(list(polys.values()))
            if not conditions:
                continue  # a family with no vanishing condition is vacuous here
            sols = None
            for polys in conditions:
                here = {
                    a
                    for a in height_rationals(config.H)
                    if all(_poly_at(p, a) == 0 for p in polys)
                }
                sols = here if sols is None else sols & here
            for a in sorted(sols):
                coeffs = _fit_candidate_f(lambda _w, j, a=a: Fraction(a) ** j, anchors, j_par)
                if coeffs is None:
                    continue
                yield CandidateIdentity("power", {"a": a}, j_par, s_par, "plain", (2, 1), coeffs)


def _fraction_sqrt(x: Fraction):
    if x < 0:
        return None
    pn = math.isqrt(x.numerator)
    pd = math.isqrt(x.denominator)
    if pn * pn == x.numerator and pd * pd == x.denominator:
        return Fraction(pn, pd)
    return None


def _affine_candidates(config: SearchConfig):
    """a * b^j + c^s * d^j with a = 1: (b, d) enumerated at height H, the
    per-weight scaling gamma_w = c^w forced by the vanishing conditions, and c
    recovered from consecutive (or parity-spaced) anchors."""
    pool = height_rationals(config.H)
    for s_par in config.parities:
        anchors = _anchor_weights(s_par)
        for j_par in config.parities:
            polysets = []
            for w in anchors:
                polys, _ = _vanishing_polys(w, j_par)
                if polys:
                    polysets.append((w, list(polys.values())))
            if not polysets:
                continue
            vals = {x: {w: [_poly_at(p, x) for p in ps] for w, ps in polysets} for x in pool}
            # degenerate c = 0: pure powers inside the affine shape
            for b in pool:
                if all(v == 0 for w, _ in polysets for v in vals[b][w]):
                    coeffs = _fit_candidate_f(
                        lambda _w, j, b=b: Fraction(b) ** j, anchors, j_par
                    )
                    if coeffs is not None:
                        yield CandidateIdentity(
                            "affine",
                            {"a": Fraction(1), "b": b, "c": Fraction(0), "d": Fraction(0)},
                            j_par, s_par, "plain", (2, 1), coeffs,
                        )
            if len(polysets) < 2:
                continue
            for b in pool:
                vb = vals[b]
                for d in pool:
                    if d == b:
                        continue
                    vd = vals[d]
                    gammas = {}
                    dead = False
                    for w, _ps in polysets:
                        g = None
                        for pb, pd in zip(vb[w], vd[w]):
                            if pd == 0:
                                if pb != 0:
                                    dead = True
                                    break
                                continue
                            # gamma = -pb/pd; compare by cross-multiplication
                            if g is None:
                                g = (-pb, pd)
                            elif g[0] * pd != -pb * g[1]:
                                dead = True
                                break
                        if dead:
                            break
                        if g is not None:
                            gammas[w] = g[0] / g[1]
                    if dead or len(gammas) < 2:
                        continue
                    ws = sorted(gammas)
                    if any(gammas[w] == 0 for w in ws):
                        continue  # pure power, handled above
                    w1, w2 = ws[0], ws[1]
                    ratio = gammas[w2] / gammas[w1]
                    if w2 - w1 == 1:
                        croots = {ratio}
                    elif w2 - w1 == 2:
                        c = _fraction_sqrt(ratio)
                        if c is None:
                            continue
                        croots = {c, -c}
                    else:
                        continue
                    for c in croots:
                        if c == 0 or any(c**w != gammas[w] for w in ws):
                            continue
                        coeffs = _fit_candidate_f(
                            lambda _w, j, b=b, c=c, d=d: Fraction(b) ** j
                            + c**_w * Fraction(d) ** j,
                            anchors,
                            j_par,
                        )
                        if coeffs is None:
                            continue
                        yield CandidateIdentity(
                            "affine",
                            {"a": Fraction(1), "b": b, "c": c, "d": d},
                            j_par, s_par, "plain", (2, 1), coeffs,
                        )


def _symmetric_even_candidates(config: SearchConfig):
    anchor_s = (2, 3, 4, 5, 6, 7)
    for d in height_rationals(config.H):
        wf = lambda s, j, d=d: Fraction(d) ** j + Fraction(d) ** (s - j)
        points = [(s, even_arg_sum_f(wf, s, 1, 1)) for s in anchor_s]
        coeffs = fit_span_minimal(points)
        if coeffs is None:
            continue
        # the fit must extend exactly beyond the fitting anchors
        if even_arg_sum_f(wf, 8, 1, 1) != f_eval(coeffs, 8):
            continue
        yield CandidateIdentity("symmetric-even", {"d": d}, "any", "any", "even", (1, 1), coeffs)


def _poly_plain_candidates(config: SearchConfig):
    monos = [m for m in ("1", "j", "s", "j^2", "j*s", "s^2") if _mono_deg(m) <= config.deg]
    anchors = (4, 5, 6, 7)
    rows = []
    for w in anchors:
        polys, _ = _vanishing_polys(w, "any")
        for mono_c in polys.values():
            rows.append(
                [
                    sum((c * _poly_mono(m, w, j) for j, c in mono_c.items()), Fraction(0))
                    for m in monos
                ]
            )
    for vec in _nullspace(rows, len(monos)):
        vec = _canonical_scale(vec)
        params = {m: c for m, c in zip(monos, vec) if c}
        if not params:
            continue
        cand = CandidateIdentity("poly", params, "any", "any", "plain", (2, 1))
        coeffs = _fit_candidate_f(lambda w, j, cand=cand: cand.weight(w, j), anchors, "any")
        if coeffs is None:
            continue
        cand.f_coeffs = coeffs
        yield cand


def _poly_even_candidates(config: SearchConfig):
    """Symmetric polynomial weights on zeta(2j, 2s-2j) over 2 <= j <= s-2."""
    monos = [m for m in ("1", "s", "s^2", "j*(s-j)") if _mono_deg(m) <= config.deg]
    anchor_s = list(range(4, 15))
    ncols = len(monos) + len(F_SPAN)
    rows = []
    for s in anchor_s:
        row = [
            even_arg_sum_f(lambda ss, j, m=m: _poly_mono(m, ss, j), s, 2, 2) for m in monos
        ] + [-_span_value(bn, s) for bn in F_SPAN]
        rows.append(row)
    for vec in _nullspace(rows, ncols):
        alpha = vec[: len(monos)]
        if not any(alpha):
            continue
        scaled = _canonical_scale(alpha)
        scale = next(a / b for a, b in zip(scaled, alpha) if b)
        params = {m: c for m, c in zip(monos, scaled) if c}
        fc = {bn: c * scale for bn, c in zip(F_SPAN, vec[len(monos):]) if c}
        yield CandidateIdentity("poly-even", params, "any", "any", "even", (2, 2), fc)


_FAMILY_ORDER = ("power", "alternating", "affine", "symmetric-even", "poly")


def search_general(config: SearchConfig | None = None):
    """Run the configured family searches in canonical order, deduplicate by
    exact per-weight span membership, numerically screen, and return the
    surviving candidates."""
    config = config or SearchConfig()
    emitted: list[CandidateIdentity] = []
    for family in sorted(config.families, key=_FAMILY_ORDER.index):
        if family == "power":
            gen = _power_candidates(config)
        elif family == "alternating":
            gen = (c for c in _power_candidates(config) if c.s_parity == "even")
        elif family == "affine":
            gen = _affine_candidates(config)
        elif family == "symmetric-even":
            gen = _symmetric_even_candidates(config)
        elif family == "poly":
            gen = itertools.chain(_poly_plain_candidates(config), _poly_even_candidates(config))
        else:
            raise DomainError(f"unknown family {family!r}")
        for cand in gen:
            if not _is_new(cand, emitted):
                continue
            if numeric_screen(cand, config.prec, config.screen_tol_exp):
                emitted.append(cand)
            else:
                cand.status = "rejected"
    return emitted


def search_poly_weights(config: SearchConfig | None = None):
    """Polynomial-weight search (degree <= config.deg), plain and even-argument
    shapes; the ansatz is linear in the coefficients and solved exactly."""
    config = config or SearchConfig(families=("poly",))
    emitted: list[CandidateIdentity] = []
    for cand in itertools.chain(_poly_plain_candidates(config), _poly_even_candidates(config)):
        if not _is_new(cand, emitted):
            continue
        if numeric_screen(cand, config.prec, config.screen_tol_exp):
            emitted.append(cand)
        else:
            cand.status = "rejected"
    return emitted


# ---------------------------------------------------------------------------
# DSL emission
# ---------------------------------------------------------------------------


def _frac_dsl(x: Fraction) -> str:
    if x.denominator == 1 and x >= 0:
        return str(x.numerator)
    if x.denominator == 1:
        return f"({x.numerator})"
    return f"({x.numerator}/{x.denominator})"


def _poly_dsl(params: dict, svar: str = "s") -> str:
    parts = []
    for m, c in params.items():
        body = {
            "1": "",
            "j": "j",
            "s": svar,
            "j^2": "j^2",
            "j*s": f"j*{svar}",
            "s^2": f"({svar})^2" if svar != "s" else "s^2",
            "j*(s-j)": f"j*({svar}-j)",
        }[m]
        txt = _frac_dsl(c) if not body else (body if c == 1 else f"{_frac_dsl(c)}*{body}")
        parts.append(txt)
    return " + ".join(parts)


def candidate_dsl(cand: CandidateIdentity, ident: str = "S01") -> str:
    """Render a candidate as a corpus DSL identity entry, ready to feed back
    into the verifier.  Parity classes are reparametrized (s -> 2s or 2s+1,
    j -> 2i or 2i+1) so that all sum bounds stay integral."""
    lo, off = cand.jrange
    if cand.arg_style == "even":
        f = render_f(cand.f_coeffs)
        if cand.family == "symmetric-even":
            d = _frac_dsl(cand.params["d"])
            wtxt = f"({d}^j+{d}^(s-j))"
        else:
            wtxt = f"({_poly_dsl(cand.params)})"
        body = f"sum(j={lo}..s-{off}, {wtxt}*dz(2*j,2*s-2*j))"
        return f"identity {ident} : forall s>={lo + off + 1} : {body} == ({f})*zeta(2*s)"
    stxt = {"any": "s", "even": "2*s", "odd": "2*s+1"}[cand.s_parity]
    if cand.family == "power":
        wtxt = f"{_frac_dsl(cand.params['a'])}^{{J}}"
    elif cand.family == "affine":
        b = _frac_dsl(cand.params["b"])
        if cand.params["c"]:
            c = _frac_dsl(cand.params["c"])
            d = _frac_dsl(cand.params["d"])
            wtxt = f"({b}^{{J}}+{c}^({stxt})*{d}^{{J}})"
        else:
            wtxt = f"{b}^{{J}}"
    else:
        wtxt = f"({_poly_dsl(cand.params, stxt)})".replace("j", "{J}")
    if cand.j_parity == "any":
        jexpr, idx = "j", f"j=2..{stxt}-1"
    elif cand.j_parity == "even":
        jexpr, idx = "(2*i)", f"i=1..{_half_hi(cand.s_parity, 'even')}"
    else:
        jexpr, idx = "(2*i+1)", f"i=1..{_half_hi(cand.s_parity, 'odd')}"
    wtxt = wtxt.replace("{J}", jexpr if jexpr != "j" else "j")
    term = f"{wtxt}*dz({jexpr},{stxt}-{jexpr})"
    f = render_f(cand.f_coeffs, var=f"({stxt})" if cand.s_parity != "any" else "s")
    lo_dom = 3 if cand.s_parity == "any" else 2
    return f"identity {ident} : forall s>={lo_dom} : sum({idx}, {term}) == ({f})*zeta({stxt})"


def _half_hi(s_parity: str, j_parity: str) -> str:
    """Largest i with 2i (or 2i+1) <= S-1 for S = 2s or 2s+1, as a DSL bound."""
    if s_parity == "even":
        return "s-1"
    if s_parity == "odd":
        return "s" if j_parity == "even" else "s-1"
    raise DomainError("j-parity emission needs an s-parity class")
