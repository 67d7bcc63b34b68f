"""Guaranteed-error multiprecision evaluation of zeta-type series.

Everything here reduces to one audited Euler-Maclaurin tail kernel applied per
residue class mod 4: single Dirichlet series (zeta, lambda, eta, beta and the
4-periodic twists), nested double sums with or without character twists, and
the constants pi, log 2, Li_4(1/2) and (internally) the Euler-Mascheroni
constant.  Every internal routine returns a pair (value, bound) where bound is
a rigorous upper bound on the absolute truncation/method error at the working
precision; public operations check the accumulated bound against the context
tolerance and raise PrecisionError instead of returning a value that might
violate the contract.

Evaluation scheme for double sums: the outer sum is truncated at N ~ O(P)
and the inner prefix limit is expanded by Euler-Maclaurin in powers of 1/n
(with 4-periodic coefficients and, for divergent inner prefixes, log n and
gamma terms), converting the whole tail into a linear combination of
per-class power/log tails of shifted exponent.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np
from mpmath import mp, mpf

from .errors import DomainError, PrecisionError
from .exact import bernoulli

MPReal = mp.mpf

CHAR_IDS = ("1", "2a", "2b", "m4")

# chi_p(n) for n = 1, 2, 3, 4 (mod 4); index (n-1) % 4
CHI = {
    "1": (1, 1, 1, 1),
    "2a": (1, 0, 1, 0),
    "2b": (1, -1, 1, -1),
    "m4": (1, 0, -1, 0),
}


def chi(p: str, n: int) -> int:
    return CHI[p][(n - 1) % 4]


def char_product(p: str, q: str) -> str:
    """The pointwise product character chi_p * chi_q, itself one of the four."""
    prod = tuple(a * b for a, b in zip(CHI[p], CHI[q]))
    for name, vals in CHI.items():
        if vals == prod:
            return name
    raise ValueError(f"product of {p} and {q} is not in the table")


def is_mean_zero(p: str) -> bool:
    return sum(CHI[p]) == 0


@dataclass(frozen=True)
class EvalContext:
    """Target precision contract: results are within 10^-prec absolutely.

    Internally everything runs at prec + guard decimal digits.
    """

    prec: int = 40
    guard: int = 10

    def __post_init__(self):
        if self.prec < 10:
            raise DomainError("precision must be at least 10 digits")
        if self.guard < 1:
            raise DomainError("guard digits must be positive")

    @property
    def work_digits(self) -> int:
        return self.prec + self.guard

    def tolerance(self):
        with mp.workdps(self.work_digits):
            return mpf(10) ** (-self.prec)


def _check(bound, ctx: EvalContext, what: str):
    if bound > ctx.tolerance():
        raise PrecisionError(
            f"{what}: accumulated error bound {mp.nstr(bound, 3)} exceeds 10^-{ctx.prec}"
        )


# --------------------------------------------------------------------------
# the audited kernel: per-class power/log tails
# --------------------------------------------------------------------------

_kernel_lock = threading.Lock()
_kernel_cache: dict = {}
_value_lock = threading.Lock()
_value_cache: dict = {}

# EM safety factor: the remainder after the B_{2j} correction is bounded by the
# first omitted term for completely monotone integrands; 4 is a safe margin.
_EM_SAFETY = 4


def _outer_cutoff(D: int) -> int:
    return 4 * (int((2.2 * 2.303 * D + 64) / 4) + 1)


def _kernel_start(u: int, D: int) -> int:
    return int(0.75 * 2.303 * D + 0.9 * u) + 16


def class_tail(r: int, u: int, N: int, D: int, logw: bool = False):
    """(value, bound) of sum_{n > N, n == r (mod 4)} n^-u * (log n if logw).

    For u == 1, logw False, the *regularized* tail: the limit of the partial
    sum minus (1/4) log X.  Only meaningful inside combinations whose
    coefficients over the four classes sum to zero, where the log X parts
    cancel; callers are responsible for that cancellation.

    Euler-Maclaurin applied to f(x) = (4x + m0)^-u (log(4x + m0))^w from a
    start m0 far enough out that the asymptotic terms pass below the target
    before diverging; terms must decrease monotonically or the computation is
    retried from a larger start.
    """
    if u < 1 or (u == 1 and logw):
        raise DomainError("class_tail needs u >= 2, or u == 1 without log weight")
    key = (r, u, N, D, logw)
    hit = _kernel_cache.get(key)
    if hit is not None:
        return hit
    with _kernel_lock:
        hit = _kernel_cache.get(key)
        if hit is not None:
            return hit
        res = _class_tail_compute(r, u, N, D, logw, _kernel_start(u, D))
        _kernel_cache[key] = res
    return res


def _class_tail_compute(r, u, N, D, logw, start_min, attempt=0):
    if attempt > 4:
        raise PrecisionError(f"EM tail did not converge for class {r}, exponent {u}")
    with mp.workdps(D + 10):
        m0 = max(N, start_min) + 1
        while (m0 - 1) % 4 != (r - 1) % 4:
            m0 += 1
        direct = mp.zero
        n = N + 1
        while (n - 1) % 4 != (r - 1) % 4:
            n += 1
        while n < m0:
            t = mpf(n) ** (-u)
            if logw:
                t *= mp.log(n)
            direct += t
            n += 4
        y = mpf(m0)
        L = mp.log(y)
        if u == 1 and not logw:
            integ = -L / 4
        elif logw:
            integ = y ** (1 - u) * (L / (u - 1) + mpf(1) / (u - 1) ** 2) / 4
        else:
            integ = y ** (1 - u) / (4 * (u - 1))
        f0 = y ** (-u) * (L if logw else 1)
        total = direct + integ + f0 / 2
        scale = abs(integ) + abs(f0) + mpf(10) ** (-(D + 30))
        target = mpf(10) ** (-(D + 6)) * scale
        # f^(m)(y) = y^(-u-m) (a_m log y + b_m); b_m stays 0 without the log
        a, b = mpf(1), mpf(0)
        m = 0
        prev = None
        for j in range(1, 500):
            while m < 2 * j - 1:
                a, b = -(u + m) * a, -(u + m) * b + a
                m += 1
            deriv = ((a * L + b) if logw else a) * y ** (-u - m)
            B = bernoulli(2 * j)
            c = -mpf(B.numerator) / B.denominator / mp.factorial(2 * j) * mpf(4) ** (2 * j - 1) * deriv
            mag = abs(c)
            if prev is not None and mag > prev:
                # asymptotic series turned before reaching target: restart farther out
                return _class_tail_compute(r, u, N, D, logw, int(start_min * 1.6) + 8, attempt + 1)
            total += c
            prev = mag
            if mag * _EM_SAFETY < target:
                return total, mag * _EM_SAFETY
        raise PrecisionError("EM correction loop exhausted")


def _regularized_combo(requests, N, D):
    """Sum of coef * class_tail(r, 1, N) for (coef, r) pairs whose coefficients
    cancel over the classes (so the discarded (1/4) log X parts cancel too)."""
    with mp.workdps(D + 10):
        tot_c = sum(c for c, _ in requests)
        scale = max([abs(c) for c, _ in requests] + [mpf(1)])
        if abs(tot_c) > mpf(10) ** (-(D + 2)) * scale:
            raise DomainError("divergent combination: class coefficients do not cancel")
        total = mp.zero
        bound = mp.zero
        for c, r in requests:
            v, b = class_tail(r, 1, N, D)
            total += c * v
            bound += abs(c) * b
        return total, bound


def _class_const(r: int, D: int):
    """C_r = lim_X (sum_{m <= X, m == r (4)} 1/m - (1/4) log X); sums to gamma over r."""
    return class_tail(r, 1, 0, D)


def _gamma_internal(D: int):
    with mp.workdps(D + 10):
        total = mp.zero
        bound = mp.zero
        for r in (1, 2, 3, 4):
            v, b = _class_const(r, D)
            total += v
            bound += b
        return total, bound


# --------------------------------------------------------------------------
# single series
# --------------------------------------------------------------------------


def _L_internal(p: str, s: int, D: int):
    key = ("L", p, s, D)
    hit = _value_cache.get(key)
    if hit is not None:
        return hit
    N = _outer_cutoff(D)
    with mp.workdps(D + 10):
        direct = mp.zero
        for n in range(1, N + 1):
            c = chi(p, n)
            if c:
                direct += c * mpf(n) ** (-s)
        bound = mp.zero
        if s == 1:
            if not is_mean_zero(p):
                raise DomainError(f"L_{p}(1) diverges")
            tail, bound = _regularized_combo(
                [(mpf(CHI[p][r - 1]), r) for r in (1, 2, 3, 4) if CHI[p][r - 1]], N, D
            )
        else:
            tail = mp.zero
            for r in (1, 2, 3, 4):
                c = CHI[p][r - 1]
                if c:
                    v, b = class_tail(r, s, N, D)
                    tail += c * v
                    bound += b
        res = (direct + tail, bound)
    with _value_lock:
        _value_cache[key] = res
    return res


def _zeta_internal(s: int, D: int):
    return _L_internal("1", s, D)


def zeta_num(s: int, ctx: EvalContext):
    """zeta(s) for integer s >= 2, within 10^-prec."""
    if s < 2:
        raise DomainError("zeta_num needs s >= 2")
    v, b = _zeta_internal(s, ctx.work_digits)
    _check(b, ctx, f"zeta({s})")
    return v


def L_num(p: str, s: int, ctx: EvalContext):
    """L_p(s) = sum chi_p(n)/n^s; s >= 2, or s >= 1 for the mean-zero 2b, m4."""
    if p not in CHAR_IDS:
        raise DomainError(f"unknown character {p!r}")
    if s < 2 and not (s == 1 and is_mean_zero(p)):
        raise DomainError(f"L_{p}({s}) diverges")
    v, b = _L_internal(p, s, ctx.work_digits)
    _check(b, ctx, f"L_{p}({s})")
    return v


def periodic_tail_num(p: str, s: int, N: int, ctx: EvalContext):
    """sum_{n > N} chi_p(n)/n^s within 10^-(prec+2), per residue class mod 4."""
    if p not in CHAR_IDS:
        raise DomainError(f"unknown character {p!r}")
    if s < 2 and not (s == 1 and is_mean_zero(p)):
        raise DomainError("periodic tail needs s >= 2 (s = 1 only for mean-zero characters)")
    if N < 0:
        raise DomainError("N must be >= 0")
    D = ctx.work_digits
    with mp.workdps(D + 10):
        if s == 1:
            v, b = _regularized_combo(
                [(mpf(CHI[p][r - 1]), r) for r in (1, 2, 3, 4) if CHI[p][r - 1]], N, D
            )
        else:
            v = mp.zero
            b = mp.zero
            for r in (1, 2, 3, 4):
                c = CHI[p][r - 1]
                if c:
                    tv, tb = class_tail(r, s, N, D)
                    v += c * tv
                    b += tb
        if b > mpf(10) ** (-(ctx.prec + 2)):
            raise PrecisionError("periodic tail bound exceeds 10^-(P+2)")
        return v


# --------------------------------------------------------------------------
# inner prefix expansions for double sums
# --------------------------------------------------------------------------

_array_lock = threading.Lock()
_array_cache: dict = {}


def _inner_ct(t: int, N: int, D: int):
    """EM expansion of sum_{k>=0} (y+4k)^-t as terms c * y^-e, valid for y >= N.

    Returns (terms, logcoef, (crem, erem)): for t == 1 the leading part is
    logcoef * log y with logcoef = -1/4 (the regularized class-harmonic tail);
    remainder is bounded by crem * y^-erem.
    """
    with mp.workdps(D + 10):
        terms = []
        logc = mpf(0)
        if t == 1:
            logc = mpf(-1) / 4
        else:
            terms.append((t - 1, mpf(1) / (4 * (t - 1))))
        terms.append((t, mpf(1) / 2))
        target = mpf(10) ** (-(D + 6)) * mpf(N) ** (-t)
        prev = None
        rise = mpf(1)  # rising factorial (t)_{2j-1}, extended incrementally
        m = 0
        for j in range(1, 500):
            while m < 2 * j - 1:
                rise = rise * (t + m) if m else mpf(t)
                m += 1
            B = bernoulli(2 * j)
            c = mpf(B.numerator) / B.denominator / mp.factorial(2 * j) * mpf(4) ** (2 * j - 1) * rise
            e = t + 2 * j - 1
            mag = abs(c) * mpf(N) ** (-e)
            if prev is not None and mag > prev:
                raise PrecisionError(f"inner EM series turned at j={j} before target (t={t}, N={N})")
            prev = mag
            if mag * _EM_SAFETY < target:
                return terms, logc, (_EM_SAFETY * abs(c), e)
            terms.append((e, c))
        raise PrecisionError("inner EM loop exhausted")


def _binom_reexpand(u: int, delta: int, N: int, D: int):
    """(n+delta)^-u = sum_i c_i n^-(u+i) for n > N; returns (terms, (crem, erem)).

    The binomial series alternates; once the term ratio at n = N drops below 1
    the remainder is geometrically dominated, giving the stated bound.
    """
    if delta == 0:
        return [(u, mpf(1))], (mpf(0), u + 1)
    with mp.workdps(D + 10):
        out = []
        c = mpf(1)
        i = 0
        target = mpf(10) ** (-(D + 6))
        while True:
            out.append((u + i, c))
            c = c * -(u + i) * delta / (i + 1)
            i += 1
            ratio = mpf((u + i) * delta) / ((i + 1) * N)
            if ratio < 1:
                mag = abs(c) * mpf(N) ** (-i)  # relative to n^-u scale
                if mag / (1 - ratio) < target:
                    return out, (abs(c) / (1 - ratio), u + i)
            if i > 400:
                raise PrecisionError("binomial re-expansion did not converge")


def _inner_array(t: int, delta: int, D: int):
    """Compressed coefficients of the class inner tail at shift delta.

    Returns (power_terms, logcoef, (crem, erem)) where power_terms is a sorted
    list of (exponent e, coefficient) with the tail of sum_{m >= n+delta, step 4}
    m^-t equal to  logcoef*log n + sum c_e n^-e + R,  |R| <= crem * n^-erem for
    n > N(D).
    """
    key = (t, delta, D)
    hit = _array_cache.get(key)
    if hit is not None:
        return hit
    N = _outer_cutoff(D)
    with mp.workdps(D + 10):
        ct, logc, (crem0, erem0) = _inner_ct(t, N, D)
        comp: dict = {}
        rems = [(crem0, erem0)]
        if logc and delta > 0:
            # log(n+delta) = log n + sum_i (-1)^(i-1) delta^i/(i n^i); alternating
            i = 1
            target = mpf(10) ** (-(D + 6))
            while True:
                c = logc * (-1) ** (i - 1) * mpf(delta) ** i / i
                comp[i] = comp.get(i, mp.zero) + c
                nxt = abs(logc) * mpf(delta) ** (i + 1) / (i + 1)
                if nxt * mpf(N) ** (-(i + 1)) < target:
                    rems.append((nxt, i + 1))
                    break
                i += 1
        for e, c in ct:
            terms, (cr, er) = _binom_reexpand(e, delta, N, D)
            for e2, c2 in terms:
                comp[e2] = comp.get(e2, mp.zero) + c * c2
            if cr:
                rems.append((abs(c) * cr, er))
        emin = min(e for _, e in rems)
        ctot = sum(c * mpf(N) ** (emin - e) for c, e in rems)
        res = (sorted(comp.items()), logc, (ctot, emin))
    with _array_lock:
        _array_cache[key] = res
    return res


# --------------------------------------------------------------------------
# character double sums
# --------------------------------------------------------------------------


def _char_convergent(p, q, s, t):
    if p not in CHAR_IDS or q not in CHAR_IDS:
        return False
    if t < 1:
        return False
    if s >= 2:
        return True
    # s == 1 needs a mean-zero outer character (conditional convergence)
    return s == 1 and is_mean_zero(p)


def _char_em(p: str, q: str, s: int, t: int, D: int):
    """(value, bound) of [p,q](s,t) by the accelerated double-sum scheme."""
    key = ("cs", p, q, s, t, D)
    hit = _value_cache.get(key)
    if hit is not None:
        return hit
    if not _char_convergent(p, q, s, t):
        raise DomainError(f"[{p},{q}]({s},{t}) is outside the convergence region")
    N = _outer_cutoff(D)
    divergent_inner = t == 1 and not is_mean_zero(q)
    with mp.workdps(D + 10):
        bound = mp.zero
        direct = mp.zero
        prefix = mp.zero
        for n in range(2, N + 1):
            m = n - 1
            cq = chi(q, m)
            if cq:
                prefix += cq * mpf(m) ** (-t)
            cp = chi(p, n)
            if cp:
                direct += cp * prefix * mpf(n) ** (-s)
        if divergent_inner:
            Cq = mp.zero
            bq = mp.zero
            for rp in (1, 2, 3, 4):
                c = CHI[q][rp - 1]
                if c:
                    v, b = _class_const(rp, D)
                    Cq += c * v
                    bq += b
        else:
            Cq, bq = _L_internal(q, t, D)
        total = direct
        reg_requests = []
        for r in (1, 2, 3, 4):
            cp = CHI[p][r - 1]
            if not cp:
                continue
            if s >= 2:
                v, b = class_tail(r, s, N, D)
                total += cp * Cq * v
                bound += abs(Cq) * b + abs(v) * bq
            else:
                reg_requests.append((cp * Cq, r))
                bound += 2 * bq
            for rp in (1, 2, 3, 4):
                cq = CHI[q][rp - 1]
                if not cq:
                    continue
                delta = (rp - r) % 4
                comp, logc, (crem, erem) = _inner_array(t, delta, D)
                for e, c in comp:
                    v, b = class_tail(r, s + e, N, D)
                    total -= cp * cq * c * v
                    bound += abs(c) * b
                if logc:
                    v, b = class_tail(r, s, N, D, logw=True)
                    total -= cp * cq * logc * v
                    bound += abs(logc) * b
                bound += crem * mpf(N) ** (1 - s - erem) / (s + erem - 1)
        if reg_requests:
            v, b = _regularized_combo(reg_requests, N, D)
            total += v
            bound += b
        res = (total, bound)
    with _value_lock:
        _value_cache[key] = res
    return res


def char_dzeta_num(p: str, q: str, s: int, t: int, ctx: EvalContext):
    """[p,q](s,t) = sum_{n>m>=1} chi_p(n) chi_q(m) / (n^s m^t), within 10^-prec.

    [1,1] is the plain double zeta value; a 2b slot is the alternating bar.
    s = 1 is accepted for mean-zero outer characters (2b, m4).
    """
    if not _char_convergent(p, q, s, t):
        raise DomainError(f"[{p},{q}]({s},{t}) is outside the convergence region")
    v, b = _char_em(p, q, s, t, ctx.work_digits)
    _check(b, ctx, f"[{p},{q}]({s},{t})")
    return v


def _dzeta_internal(a: int, b: int, D: int):
    if b == 1:
        # exact closed form for zeta(a, 1); the raw EM path stays available via
        # _char_em("1","1",a,1) and is used to cross-verify reductions.
        from .reductions import zeta_s1_reduce

        return _expr_internal(zeta_s1_reduce(a + 1), D)
    return _char_em("1", "1", a, b, D)


def dzeta_num(a: int, b: int, ctx: EvalContext):
    """zeta(a, b) = sum_{n>m>=1} n^-a m^-b for a >= 2, b >= 1, within 10^-prec."""
    if a < 2 or b < 1:
        raise DomainError("dzeta_num needs a >= 2, b >= 1")
    v, bd = _dzeta_internal(a, b, ctx.work_digits)
    _check(bd, ctx, f"zeta({a},{b})")
    return v


# --------------------------------------------------------------------------
# Witten double sums and harmonic-number sums
# --------------------------------------------------------------------------


def witten_convergent(r: int, s: int, t: int) -> bool:
    return min(r, s, t) >= 0 and r + t >= 2 and s + t >= 2 and r + s + t >= 3


def _witten_internal(r: int, s: int, t: int, D: int):
    from .reductions import witten_reduction

    key = ("W", r, s, t, D)
    hit = _value_cache.get(key)
    if hit is not None:
        return hit
    red = witten_reduction(r, s, t)
    with mp.workdps(D + 10):
        total, bound = _expr_internal(red.const_part, D)
        for (a, b), coef in red.dz_terms.items():
            v, bb = _dzeta_internal(a, b, D)
            c = mpf(coef.numerator) / coef.denominator
            total += c * v
            bound += abs(c) * bb
        res = (total, bound)
    with _value_lock:
        _value_cache[key] = res
    return res


def witten_num(r: int, s: int, t: int, ctx: EvalContext):
    """W(r,s,t) = sum_{n,m>=1} n^-r m^-s (n+m)^-t, evaluated through the exact
    recursion down to zeta / double-zeta boundary values."""
    if not witten_convergent(r, s, t):
        raise DomainError(f"W({r},{s},{t}) diverges")
    v, b = _witten_internal(r, s, t, ctx.work_digits)
    _check(b, ctx, f"W({r},{s},{t})")
    return v


def _harmonic_internal(kind: str, s: int, D: int):
    with mp.workdps(D + 10):
        if kind == "half_index":
            # 2 * sum H_{2n}/n^{2s} = 5/2 zeta(2s+1) + 2 zeta(2s,1) + sum_{j=2}^{2s} (-1)^j zeta(j, 2s+1-j)
            if s < 1:
                raise DomainError("half_index needs s >= 1")
            v, b = _zeta_internal(2 * s + 1, D)
            total = mpf(5) / 2 * v
            bound = mpf(5) / 2 * b
            v, b = _dzeta_internal(2 * s, 1, D)
            total += 2 * v
            bound += 2 * b
            for j in range(2, 2 * s + 1):
                v, b = _dzeta_internal(j, 2 * s + 1 - j, D)
                sign = 1 if j % 2 == 0 else -1
                total += sign * v
                bound += b
            return total / 2, bound / 2
        if kind == "odd_denom":
            # sum_{n>=0} H_n/(2n+1)^sigma, from the weight-1/2 lemma at s = sigma+1:
            # = sum_{j=2}^{s-1} 2^(1-j) zeta(j,s-j)
            #   - (2^(1-s)-1)(zeta(s-1,1) - 2 log2 zeta(s-1)) - (2^(2-s)-1) zeta(s)
            sigma = s
            if sigma < 2:
                raise DomainError("odd_denom needs exponent >= 2")
            sl = sigma + 1
            total = mp.zero
            bound = mp.zero
            for j in range(2, sl):
                v, b = _dzeta_internal(j, sl - j, D)
                w = mpf(2) ** (1 - j)
                total += w * v
                bound += w * b
            v1, b1 = _dzeta_internal(sl - 1, 1, D)
            vz, bz = _zeta_internal(sl - 1, D)
            ln2 = mp.log(2)
            coef = mpf(2) ** (1 - sl) - 1
            total -= coef * (v1 - 2 * ln2 * vz)
            bound += abs(coef) * (b1 + 2 * ln2 * bz)
            v, b = _zeta_internal(sl, D)
            coef = mpf(2) ** (2 - sl) - 1
            total -= coef * v
            bound += abs(coef) * b
            return total, bound
    raise DomainError(f"unknown harmonic sum kind {kind!r}")


def harmonic_sum_num(kind: str, s: int, ctx: EvalContext):
    """Harmonic-number sums: 'odd_denom' is sum_{n>=0} H_n/(2n+1)^s (s >= 2),
    'half_index' is sum_{n>=1} H_{2n}/n^{2s} (s >= 1), both computed from
    already-validated zeta / double-zeta evaluations."""
    v, b = _harmonic_internal(kind, s, ctx.work_digits)
    _check(b, ctx, f"harmonic_sum({kind},{s})")
    return v


# --------------------------------------------------------------------------
# constant generators and ConstExpr evaluation
# --------------------------------------------------------------------------


def _li4_half_internal(D: int):
    with mp.workdps(D + 10):
        N = int(3.33 * (D + 8)) + 8
        total = mp.zero
        for n in range(1, N + 1):
            total += mpf(2) ** (-n) / mpf(n) ** 4
        bound = mpf(2) ** (-N) / mpf(N + 1) ** 4  # geometric: sum_{n>N} 2^-n n^-4 <= 2^-N (N+1)^-4
        return total, bound


def _generator_internal(g, D: int):
    with mp.workdps(D + 10):
        ulp = mpf(10) ** (-(D + 6))
        if g == "pi":
            return +mp.pi, ulp
        if g == "log2":
            return mp.log(2), ulp
        if g == "li4h":
            return _li4_half_internal(D)
        if isinstance(g, tuple) and g[0] == "z":
            return _zeta_internal(g[1], D)
    raise DomainError(f"unknown constant generator {g!r}")


def generator_num(g, ctx: EvalContext):
    """Numeric value of a constant generator: 'pi', 'log2', 'li4h' or ('z', k)."""
    v, b = _generator_internal(g, ctx.work_digits)
    _check(b, ctx, f"generator {g!r}")
    return v


def _expr_internal(expr, D: int):
    with mp.workdps(D + 10):
        total = mp.zero
        bound = mp.zero
        for mono, coef in expr.terms.items():
            c = mpf(coef.numerator) / coef.denominator
            val = c
            err = mp.zero  # absolute error of the accumulated product
            for g, e in mono:
                gv, gb = _generator_internal(g, D)
                newval = val * gv**e
                # |d(val*g^e)| <= |g^e| * err + |val| * e * |g|^(e-1) * gb
                err = abs(gv) ** e * err + abs(val) * e * abs(gv) ** (e - 1) * gb
                val = newval
            total += val
            bound += err + abs(val) * mpf(10) ** (-(D + 6))
        return total, bound


def expr_num(expr, ctx: EvalContext):
    """Numeric value of a ConstExpr within 10^-prec * (1 + number of monomials)."""
    v, b = _expr_internal(expr, ctx.work_digits)
    with mp.workdps(ctx.work_digits):
        if b > ctx.tolerance() * (1 + len(expr.terms)):
            raise PrecisionError("ConstExpr evaluation exceeded its error budget")
    return v


# --------------------------------------------------------------------------
# brute-force oracles (float64 + rigorous elementary bounds)
# --------------------------------------------------------------------------

_EPS64 = 1.2e-16
_ZETA2 = 1.6449340668482265  # upper bound for zeta(b), b >= 2


def _upper_S(x: int, k: float) -> float:
    """Elementary upper bound for sum_{n<=k} n^-x."""
    if x >= 2:
        return _ZETA2
    if x == 1:
        return 1.0 + math.log(k)
    return float(k)  # x == 0


def brute_force_oracle(series: str, params, N: int, ctx: EvalContext | None = None):
    """Direct truncated summation with a rigorous elementary tail bound.

    Returns (value, bound) with bound a true upper bound on |value - limit|:
    integral-comparison tails (alternating-block bound for mean-zero twisted
    outer sums) plus an explicit float64 round-off allowance folded in.
    """
    if series == "dzeta":
        a, b = params
        value, bound = _oracle_char("1", "1", a, b, N)
    elif series == "char_dzeta":
        p, q, s, t = params
        value, bound = _oracle_char(p, q, s, t, N)
    elif series == "witten":
        r, s, t = params
        value, bound = _oracle_witten(r, s, t, N)
    elif series == "harmonic":
        kind, s = params
        value, bound = _oracle_harmonic(kind, s, N)
    else:
        raise DomainError(f"unknown oracle series {series!r}")
    return mpf(value), mpf(bound)


def _oracle_char(p, q, s, t, N):
    if s < 2:
        raise DomainError("oracle needs outer exponent >= 2")
    n = np.arange(1, N + 1, dtype=np.float64)
    chi_q = np.tile(np.array(CHI[q], dtype=np.float64), N // 4 + 1)[:N]
    inner = np.cumsum(chi_q * n ** (-float(t)))
    chi_p = np.tile(np.array(CHI[p], dtype=np.float64), N // 4 + 1)[:N]
    terms = chi_p[1:] * inner[:-1] * n[1:] ** (-float(s))
    value = float(np.sum(terms))
    # |A_q(n)| bound for the tail
    if t >= 2:
        amax = _ZETA2
        extra_log = 0.0
    else:
        amax = 1.0 + math.log(N + 1.0)
        extra_log = 1.0  # A grows like log n; handled by the integral with log below
    if is_mean_zero(p):
        # alternating-block bound: group n in blocks of 4; chi_p sums to 0 over a
        # block, so each block is bounded by 3 * max variation of a_n = n^-s A(n):
        # |a_n - a_m| <= 4 s amax n^-(s+1) + 4 n^-(s+t) over a block.
        def blockbound(x):
            return 12.0 * (s * amax * x ** -(s + 1.0) + 4.0 * x ** -(s + float(t)))

        tail = blockbound(N) + 0.25 * (
            s * amax * 12.0 * N**-s / s + 48.0 * N ** (1.0 - s - t) / (s + t - 1.0)
        )
    else:
        if extra_log:
            # sum_{n>N} (1+log n) n^-s <= integral bound
            tail = N ** (1.0 - s) * ((1.0 + math.log(N)) / (s - 1.0) + 1.0 / (s - 1.0) ** 2)
        else:
            tail = amax * N ** (1.0 - s) / (s - 1.0)
    roundoff = 6.0 * N * _EPS64 * (amax * _ZETA2 + abs(value) + 1.0)
    return value, tail + roundoff


def _oracle_witten(r, s, t, N):
    if not witten_convergent(r, s, t):
        raise DomainError("divergent Witten triple")
    n = np.arange(0, N + 1, dtype=np.float64)
    with np.errstate(divide="ignore"):
        u = n ** (-float(r))
        v = n ** (-float(s))
    u[0] = 0.0
    v[0] = 0.0
    value = 0.0
    kw = np.arange(0, N + 1, dtype=np.float64)
    kw[0] = 1.0
    kpow = kw ** (-float(t))
    for k in range(2, N + 1):
        ck = float(np.dot(u[1:k], v[k - 1 : 0 : -1]))
        value += kpow[k] * ck
    # tail over the diagonal n+m = k > N:
    # c_k <= (k/2)^-s S_r(k) + (k/2)^-r S_s(k)
    def tail_part(x_small, x_other):
        # sum_{k>N} k^-t (k/2)^-x_small * S_{x_other}(k)
        e = t + x_small
        c = 2.0**x_small
        if x_other >= 2:
            return c * _ZETA2 * N ** (1.0 - e) / (e - 1.0)
        if x_other == 1:
            return c * N ** (1.0 - e) * ((1.0 + math.log(N)) / (e - 1.0) + 1.0 / (e - 1.0) ** 2)
        return c * N ** (2.0 - e) / (e - 2.0)  # S_0(k) = k

    tail = tail_part(s, r) + tail_part(r, s)
    roundoff = 4.0 * N * _EPS64 * (abs(value) + 1.0)
    return value, tail + roundoff


def _oracle_harmonic(kind, s, N):
    n = np.arange(1, N + 1, dtype=np.float64)
    if kind == "odd_denom":
        H = np.cumsum(1.0 / n)
        value = float(np.sum(H / (2.0 * n + 1.0) ** float(s)))
        # tail: H_n <= 1 + log n, sum_{n>N} (1+log n)(2n+1)^-s <= 2^-s * integral
        tail = 2.0**-s * N ** (1.0 - s) * ((1.0 + math.log(N)) / (s - 1.0) + 1.0 / (s - 1.0) ** 2)
    elif kind == "half_index":
        m = np.arange(1, 2 * N + 1, dtype=np.float64)
        H = np.cumsum(1.0 / m)
        value = float(np.sum(H[2 * np.arange(1, N + 1) - 1] / n ** (2.0 * s)))
        e = 2.0 * s
        tail = N ** (1.0 - e) * ((1.0 + math.log(2 * N)) / (e - 1.0) + 1.0 / (e - 1.0) ** 2)
    else:
        raise DomainError(f"unknown harmonic oracle kind {kind!r}")
    roundoff = 6.0 * N * _EPS64 * (abs(value) + 1.0 + math.log(N + 1.0))
    return value, tail + roundoff


def clear_caches():
    """Drop all numeric caches (mainly for tests)."""
    with _kernel_lock:
        _kernel_cache.clear()
    with _array_lock:
        _array_cache.clear()
    with _value_lock:
        _value_cache.clear()
