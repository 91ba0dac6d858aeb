"""Kneading determinants, exact smallest-root isolation, entropy and dimension.

The kneading series of ``P(Q)`` is ``A(t) + t^m B(t) / (1 - t^p)``, so the
determinant of a pair of eventually periodic sequences is an integer
polynomial over ``1 - t^L`` with ``L`` the lcm of both periods.  That
denominator is positive on ``(0, 1)``, so roots and signs there are read off
the numerator alone, using exact integer arithmetic at dyadic points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ZeroEntropy
from .kneading import (
    HoleKneading,
    KneadingPair,
    SurvivorShift,
    survivor_of,
)
from .symbolic import EpSeq

SCAN_BITS = 16
SUBDIVISION_DEPTH = 40
BRACKET_WIDTH = Fraction(1, 10**12)


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial; ``coeffs[i]`` multiplies ``t**i``."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-x for x in self.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if self.is_zero() or other.is_zero():
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return IntPoly(tuple(out))

    def __call__(self, t: Fraction | int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def scaled_at_dyadic(self, k: int, e: int) -> int:
        """``2**(e*deg) * P(k / 2**e)``, an exact integer with the sign of ``P`` there."""
        acc = 0
        d = self.degree
        for i in range(d, -1, -1):
            acc = acc * k + (self.coeffs[i] << (e * (d - i)))
        return acc

    def sign_at(self, t: Fraction) -> int:
        v = self(t)
        return (v > 0) - (v < 0)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                coef = str(c) if (abs(c) != 1 or i == 0) else ("-" if c < 0 else "")
                terms.append(f"{coef}{mono}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def _geometric(p: int, reps: int) -> IntPoly:
    """``1 + t^p + ... + t^{p(reps-1)}``."""
    c = [0] * (p * (reps - 1) + 1)
    for k in range(reps):
        c[k * p] = 1
    return IntPoly(tuple(c))


def _series_numerator(x: EpSeq) -> tuple[IntPoly, int]:
    """``(N, p)`` with ``sum_i x_i t^i = N(t) / (1 - t^p)``."""
    m, p = len(x.pre), len(x.per)
    a = [int(ch) for ch in x.pre]
    num = [0] * (m + p)
    for i, v in enumerate(a):
        num[i] += v
        num[i + p] -= v
    for i, ch in enumerate(x.per):
        num[m + i] += int(ch)
    return IntPoly(tuple(num)), p


def series_coefficients(x: EpSeq, n: int) -> list[int]:
    return [int(ch) for ch in x.prefix(n)]


@dataclass(frozen=True)
class KneadingDeterminant:
    """``K(t) = numerator(t) / prod(1 - t^p for p in denominator_periods)``."""

    numerator: IntPoly
    denominator_periods: tuple[int, ...]

    def denominator(self) -> IntPoly:
        out = IntPoly((1,))
        for p in self.denominator_periods:
            out = out * IntPoly((1,) + (0,) * (p - 1) + (-1,))
        return out

    def __call__(self, t: Fraction) -> Fraction:
        return self.numerator(t) / self.denominator()(t)

    def reduced(self) -> tuple[IntPoly, IntPoly]:
        """Numerator and denominator with their common factor cancelled (sign fixed so den(0) > 0)."""
        from sympy import Poly, symbols

        t = symbols("t")
        num = Poly(list(reversed(self.numerator.coeffs)) or [0], t)
        den = Poly(list(reversed(self.denominator().coeffs)), t)
        g = num.gcd(den)
        n2, d2 = num.exquo(g), den.exquo(g)
        nc = tuple(int(x) for x in reversed(n2.all_coeffs()))
        dc = tuple(int(x) for x in reversed(d2.all_coeffs()))
        if dc[0] < 0:
            nc, dc = tuple(-x for x in nc), tuple(-x for x in dc)
        return IntPoly(nc), IntPoly(dc)


def kneading_determinant(kplus: EpSeq, kminus: EpSeq) -> KneadingDeterminant:
    if kplus.first != "1" or kminus.first != "0":
        raise ValueError("need k+ starting with 1 and k- starting with 0")
    np_, pp = _series_numerator(kplus)
    nm, pm = _series_numerator(kminus)
    big = math.lcm(pp, pm)
    num = np_ * _geometric(pp, big // pp) - nm * _geometric(pm, big // pm)
    return KneadingDeterminant(num, (big,))


def determinant_of(pair: KneadingPair) -> KneadingDeterminant:
    return kneading_determinant(pair.kplus, pair.kminus)


# ---------------------------------------------------------------- root isolation


def _compose_affine(p: IntPoly, a: int, w: int, e: int) -> list[int]:
    """Integer coefficients of ``2**(e*d) * P((a + w*y) / 2**e)`` in ``y``."""
    d = p.degree
    out = [0]
    lin = [a, w]
    for i in range(d, -1, -1):
        # out = out * (a + w y) + c_i * 2^(e(d-i))
        nxt = [0] * (len(out) + 1)
        for j, v in enumerate(out):
            if v:
                nxt[j] += v * lin[0]
                nxt[j + 1] += v * lin[1]
        nxt[0] += p.coeffs[i] << (e * (d - i))
        out = nxt
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _descartes_unit(q: list[int]) -> int:
    """Sign variations bounding the number of roots of ``q`` in ``(0, 1)``."""
    r = list(reversed(q))
    n = len(r)
    # Taylor shift by one
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            r[j] += r[j + 1]
    var, last = 0, 0
    for v in r:
        s = _sign(v)
        if s:
            if last and s != last:
                var += 1
            last = s
    return var


def _descartes(p: IntPoly, lo: Fraction, hi: Fraction) -> int:
    e = max(_dyadic_exp(lo), _dyadic_exp(hi))
    a = int(lo * 2**e)
    w = int((hi - lo) * 2**e)
    return _descartes_unit(_compose_affine(p, a, w, e))


def _dyadic_exp(x: Fraction) -> int:
    den = x.denominator
    if den & (den - 1):
        raise ValueError("non-dyadic endpoint")
    return den.bit_length() - 1


def _leftmost_root_interval(p: IntPoly, lo: Fraction, hi: Fraction, depth: int):
    """Leftmost interval in ``(lo, hi)`` certified (or suspected) to hold a root.

    Returns ``(interval, tangential)`` or ``None``.  Subdivision stops at
    ``depth`` levels; an interval still carrying two or more variations there
    is reported as tangential.
    """
    stack = [(lo, hi, 0)]
    while stack:
        a, b, lvl = stack.pop()
        var = _descartes(p, a, b)
        if var == 0:
            continue
        if var == 1:
            return (a, b), False
        mid = (a + b) / 2
        if p.sign_at(mid) == 0:
            # root exactly at the midpoint; anything further left comes first
            left = _leftmost_root_interval(p, a, mid, depth - lvl - 1) if lvl + 1 < depth else None
            return left if left is not None else ((mid, mid), False)
        if lvl + 1 >= depth:
            return (a, b), True
        stack.append((mid, b, lvl + 1))
        stack.append((a, mid, lvl + 1))
    return None


def _bisect(p: IntPoly, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    slo = p.sign_at(lo)
    if slo == 0:
        return lo, lo
    shi = p.sign_at(hi)
    if shi == 0:
        return hi, hi
    if slo == shi:
        return lo, hi
    while hi - lo > width:
        mid = (lo + hi) / 2
        sm = p.sign_at(mid)
        if sm == 0:
            return mid, mid
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _float_scan(p: IntPoly, bits: int) -> int | None:
    """First grid index ``k`` (of ``k / 2**bits``) where the float sign leaves the sign at 0."""
    n = 1 << bits
    coeffs = np.array(list(reversed(p.coeffs)), dtype=np.float64)
    s0 = _sign(p.coeffs[0])
    chunk = 4096
    for start in range(1, n, chunk):
        ks = np.arange(start, min(start + chunk, n))
        vals = np.polyval(coeffs, ks / n)
        bad = np.flatnonzero(np.sign(vals) != s0)
        if bad.size:
            return int(ks[bad[0]])
    return None


@dataclass(frozen=True)
class EntropyResult:
    t0: tuple[Fraction, Fraction] | None
    entropy: float
    flags: tuple[str, ...] = ()

    @property
    def entropy_bits(self) -> float:
        return self.entropy / math.log(2)

    @property
    def t0_mid(self) -> float | None:
        if self.t0 is None:
            return None
        return float((self.t0[0] + self.t0[1]) / 2)


ZERO_ENTROPY = EntropyResult(None, 0.0)


def _result(lo: Fraction, hi: Fraction, flags=()) -> EntropyResult:
    mid = (lo + hi) / 2
    h = -math.log(float(mid))
    h = min(max(h, 0.0), math.log(2)) if mid >= Fraction(1, 2) else h
    return EntropyResult((lo, hi), h, tuple(flags))


def smallest_root_poly(p: IntPoly) -> EntropyResult:
    """Smallest root of ``p`` in the open interval ``(0, 1)``."""
    c = list(p.coeffs)
    if not c:
        return EntropyResult(None, 0.0, ("zero_polynomial",))
    while c[0] == 0:
        c.pop(0)
    p = IntPoly(tuple(c))
    if p.degree == 0:
        return ZERO_ENTROPY
    n = 1 << SCAN_BITS
    k = _float_scan(p, SCAN_BITS)
    flags: list[str] = []
    if k is not None:
        lo, hi = Fraction(k - 1, n), Fraction(k, n)
        s0 = _sign(c[0])
        crossing = p.sign_at(hi) != s0 and (k == 1 or p.sign_at(lo) == s0)
        if crossing and (k == 1 or _descartes(p, Fraction(0), lo) == 0):
            a, b = _bisect(p, lo, hi, BRACKET_WIDTH)
            return _result(a, b)
        flags.append("scan_uncertified")
    found = _leftmost_root_interval(p, Fraction(0), Fraction(1), SUBDIVISION_DEPTH)
    if found is None:
        return EntropyResult(None, 0.0, tuple(flags))
    (a, b), tangential = found
    if tangential:
        flags.append("tangential")
        return _result(a, b, flags)
    a, b = _bisect(p, a, b, BRACKET_WIDTH)
    return _result(a, b, flags)


def smallest_root(k: KneadingDeterminant) -> EntropyResult:
    return smallest_root_poly(k.numerator)


@lru_cache(maxsize=4096)
def shift_entropy(kplus: EpSeq, kminus: EpSeq) -> EntropyResult:
    return smallest_root(kneading_determinant(kplus, kminus))


def survivor_shift_entropy(sh: SurvivorShift) -> EntropyResult:
    if sh.degenerate:
        return ZERO_ENTROPY
    p = sh.pair()
    return shift_entropy(p.kplus, p.kminus)


def survivor_entropy(pair: KneadingPair, h: HoleKneading) -> EntropyResult:
    return survivor_shift_entropy(survivor_of(h, pair))


def beta_from_kneading(pair: KneadingPair) -> float:
    res = shift_entropy(pair.kplus, pair.kminus)
    if res.t0 is None:
        raise ZeroEntropy(f"{pair} has zero entropy; no expansion factor")
    return 1.0 / res.t0_mid


def dimension(beta: float, entropy: EntropyResult | float) -> float:
    h = entropy.entropy if isinstance(entropy, EntropyResult) else float(entropy)
    if h <= 0:
        return 0.0
    return min(1.0, max(0.0, h / math.log(beta)))
