"""Intermediate beta-transformations ``x -> beta*x + alpha (mod 1)`` at high precision.

Itineraries use the one-sided convention at the discontinuity ``c``: the
right limit reads 1 and restarts from 0, the left limit reads 0 and restarts
from 1.  Orbits are computed in a private mpmath context so the global
precision is never touched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath
import numpy as np

from . import _accel
from .errors import OutOfDelta, ParseError
from .kneading import KneadingPair
from .symbolic import EpSeq

NAMED_BETA = {"golden", "phi", "tribonacci", "2"}


def _ctx(precision: int) -> mpmath.ctx_mp.MPContext:
    ctx = mpmath.MPContext()
    ctx.dps = precision
    return ctx


def _named_beta(ctx, name: str):
    key = name.strip().lower()
    if key in ("golden", "phi"):
        return (1 + ctx.sqrt(5)) / 2
    if key == "tribonacci":
        return ctx.findroot(lambda x: x**3 - x**2 - x - 1, ctx.mpf("1.839"))
    return None


def parse_real(ctx, text, beta=None):
    """Decimal string, number, or one of the named constants (``golden``, ``tribonacci``, ``sym``)."""
    if not isinstance(text, str):
        return ctx.mpf(text)
    named = _named_beta(ctx, text)
    if named is not None:
        return named
    if text.strip().lower() == "sym":
        if beta is None:
            raise ParseError("'sym' needs beta")
        return 1 - beta / 2
    try:
        return ctx.mpf(text.strip())
    except (ValueError, TypeError) as exc:
        raise ParseError(f"not a real number: {text!r}") from exc


@dataclass(frozen=True)
class MapParams:
    beta: object
    alpha: object
    precision: int = 50
    tie_epsilon: object = None
    ctx: object = field(default=None, compare=False, repr=False)

    @classmethod
    def make(cls, beta, alpha="0", precision: int = 50, tie_epsilon: str = "1e-40") -> "MapParams":
        ctx = _ctx(precision)
        b = parse_real(ctx, beta)
        a = parse_real(ctx, alpha, beta=b)
        eps = ctx.mpf(tie_epsilon)
        doubling = b == 2 and a == 0
        if not doubling and not (1 < b < 2):
            raise OutOfDelta(f"beta={ctx.nstr(b, 12)} outside (1, 2)")
        if not (0 <= a <= 2 - b):
            raise OutOfDelta(f"alpha={ctx.nstr(a, 12)} outside [0, 2 - beta]")
        return cls(b, a, precision, eps, ctx)

    @property
    def c(self):
        return (1 - self.alpha) / self.beta

    def real(self, x):
        return parse_real(self.ctx, x, beta=self.beta)

    @property
    def depth_limit(self) -> int:
        """Iterations before rounding error reaches the tie tolerance."""
        digits = self.precision + math.log10(float(self.tie_epsilon))
        return max(8, int(digits * math.log(10) / math.log(float(self.beta))))


def map_eval(p: MapParams, x):
    x = p.ctx.mpf(x)
    y = p.beta * x + p.alpha
    return y if x < p.c else y - 1


@dataclass(frozen=True)
class Itinerary:
    word: str
    truncated_at: int
    ambiguous: bool
    hits: int = 0
    # orbit states before each symbol; hits of c are recorded as "c+"/"c-"
    states: tuple = field(default=(), compare=False, repr=False)


def itinerary(p: MapParams, x, depth: int, side: str = "none") -> Itinerary:
    if side not in ("plus", "minus", "none"):
        raise ValueError("side must be plus, minus or none")
    ctx = p.ctx
    x = p.real(x)
    c, eps = p.c, p.tie_epsilon
    out: list[str] = []
    states: list = []
    hits = 0
    for k in range(depth):
        if abs(x - c) < eps:
            if side == "none":
                return Itinerary("".join(out), k, True, hits, tuple(states))
            hits += 1
            states.append("c+" if side == "plus" else "c-")
            if side == "plus":
                out.append("1")
                x = ctx.mpf(0)
            else:
                out.append("0")
                x = ctx.mpf(1)
            continue
        states.append(x)
        if x < c:
            out.append("0")
            x = p.beta * x + p.alpha
        else:
            out.append("1")
            x = p.beta * x + p.alpha - 1
    return Itinerary("".join(out), depth, False, hits, tuple(states))


@dataclass(frozen=True)
class KneadingPrefixes:
    kplus: str
    kminus: str
    plus_itinerary: Itinerary
    minus_itinerary: Itinerary

    @property
    def ambiguous(self) -> bool:
        """True if either orbit met the discontinuity (resolved by the one-sided rule)."""
        return bool(self.plus_itinerary.hits or self.minus_itinerary.hits)


def kneading_prefixes(p: MapParams, depth: int) -> KneadingPrefixes:
    if depth < 2:
        raise ValueError("depth must be >= 2")
    ip = itinerary(p, 0, depth - 1, "plus")
    im = itinerary(p, 1, depth - 1, "minus")
    return KneadingPrefixes("1" + ip.word, "0" + im.word, ip, im)


def complete(it: Itinerary, tol=None, ctx=None) -> EpSeq | None:
    """Close the itinerary at the first repeated orbit state; None if nothing repeats."""
    states = it.states
    seen: list = []
    for j, st in enumerate(states):
        for i, prev in enumerate(seen):
            if _same_state(prev, st, tol):
                return EpSeq(it.word[:i], it.word[i:j])
        seen.append(st)
    return None


def _same_state(a, b, tol) -> bool:
    if isinstance(a, str) or isinstance(b, str):
        return a == b
    return abs(a - b) < tol


def repeat_tolerance(p: MapParams):
    return p.ctx.mpf(10) ** (-(p.precision // 2))


def pad(word: str, mode: str) -> EpSeq:
    """Explicit completions ``word(0)`` or ``word(1)``."""
    if mode == "pad0":
        return EpSeq(word, "0")
    if mode == "pad1":
        return EpSeq(word, "1")
    raise ValueError("mode must be pad0 or pad1")


def point_kneading(p: MapParams, x, side: str, depth: int) -> tuple[str, EpSeq | None]:
    """One-sided kneading prefix of ``x`` and its exact completion when the orbit cycles."""
    it = itinerary(p, x, depth, side)
    return it.word, complete(it, repeat_tolerance(p))


def kneading_pair(p: MapParams, depth: int = 200) -> KneadingPair:
    """Exact kneading invariants; raises when an orbit of the critical point does not close up."""
    kp = kneading_prefixes(p, depth)
    tol = repeat_tolerance(p)
    plus = complete(_with_start(kp.plus_itinerary, "c+"), tol)
    minus = complete(_with_start(kp.minus_itinerary, "c-"), tol)
    if plus is None or minus is None:
        raise ParseError(
            f"kneading orbit does not close within depth {depth}; pass explicit --kplus/--kminus"
        )
    return KneadingPair(plus, minus)


def _with_start(it: Itinerary, tag: str) -> Itinerary:
    """Prepend the visit to ``c`` itself so a return to ``c`` closes the period."""
    sym = "1" if tag == "c+" else "0"
    return Itinerary(sym + it.word, it.truncated_at + 1, it.ambiguous, it.hits, (tag,) + it.states)


@dataclass
class EscapeReport:
    surviving_fraction: float
    histogram: list[list[int]]
    flagged_points: int
    n_points: int
    n_iters: int

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "surviving_fraction": self.surviving_fraction,
            "histogram": self.histogram,
            "flagged_points": self.flagged_points,
            "n_points": self.n_points,
            "n_iters": self.n_iters,
        }


def float_itineraries(xs: np.ndarray, beta: float, alpha: float, c: float, depth: int) -> list[str]:
    x = np.array(xs, dtype=np.float64)
    cols = []
    for _ in range(depth):
        right = x >= c
        cols.append(right)
        y = beta * x + alpha
        x = np.where(right, y - 1.0, y)
    bits = np.stack(cols, axis=1) if cols else np.zeros((len(x), 0), dtype=bool)
    return ["".join("1" if v else "0" for v in row) for row in bits]


def _transient(w: str) -> int:
    """Symbols to skip before both one-sided bounds apply.

    The left branch pushes points up and the right branch pulls them down,
    so the lower bound holds after the first 1 and the upper after the first 0.
    """
    i, j = w.find("0"), w.find("1")
    return len(w) if i < 0 or j < 0 else max(i, j) + 1


def escape_survivors(
    p: MapParams,
    a,
    b,
    n_points: int,
    n_iters: int,
    check_depth: int = 24,
    backend: str | None = None,
) -> EscapeReport:
    """Escape-time simulation on an equispaced grid; survivors are cross-checked symbolically."""
    from .oracle import build_bounds

    a, b = p.real(a), p.real(b)
    c = p.c
    interior = a <= c <= b
    if not (0 <= a <= b <= 1) or not (interior or a == 0 or b == 1):
        raise OutOfDelta("hole must contain c or touch 0 or 1")
    beta, alpha, cf = float(p.beta), float(p.alpha), float(c)
    xs = np.linspace(0.0, 1.0, n_points) if n_points > 1 else np.zeros(1)
    times = _accel.escape_times(xs, beta, alpha, cf, float(a), float(b), n_iters, backend=backend)
    alive = times < 0
    frac = float(alive.mean())
    vals, counts = np.unique(times[~alive], return_counts=True)
    hist = [[int(v), int(n)] for v, n in zip(vals, counts)]
    flagged = 0
    if alive.any() and a < b:
        depth = min(check_depth, p.depth_limit)
        kp = kneading_prefixes(p, depth + 1)
        lo, hi = EpSeq(kp.kplus[1:], "0"), EpSeq(kp.kminus[1:], "1")
        # outer approximation of the survivor language: loosest bounds with these prefixes
        if interior:
            bw = itinerary(p, b, depth + 1, "plus").word
            aw = itinerary(p, a, depth + 1, "minus").word
            lo, hi = max(lo, EpSeq(bw[1:], "0")), min(hi, EpSeq(aw[1:], "1"))
        elif a == 0:
            lo = max(lo, EpSeq(itinerary(p, b, depth, "plus").word, "0"))
        else:
            hi = min(hi, EpSeq(itinerary(p, a, depth, "minus").word, "1"))
        if lo.first == "0" and hi.first == "1" and lo < hi:
            aut = build_bounds(lo, hi)
            words = float_itineraries(xs[alive], beta, alpha, cf, min(depth, 40))
            for w in words:
                st = aut.start
                for ch in w[_transient(w) if interior else 0 :]:
                    st = aut.trans[st].get(ch)
                    if st is None:
                        flagged += 1
                        break
    return EscapeReport(frac, hist, flagged, int(n_points), int(n_iters))
