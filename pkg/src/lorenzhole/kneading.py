"""Kneading pairs, holes and the survivor shift construction.

Conventions: a Lorenz shift ``Omega(k+, k-)`` is the set of sequences whose
every shift lies in ``[k0, k1]`` with ``k0 = sigma(k+)`` and ``k1 = sigma(k-)``.
A survivor shift is described by its extremal pair ``(s, t)``: it equals the
Lorenz shift of ``(1s, 0t)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable

from .errors import (
    DegenerateHole,
    FlipInvariantError,
    IterationCapExceeded,
    NotAdmissiblePair,
    NotCriticalHole,
    ParseError,
)
from .symbolic import (
    EpSeq,
    Order,
    compare,
    is_lower_self_admissible,
    is_upper_self_admissible,
    seq_max,
    seq_min,
    shift,
)


@dataclass(frozen=True)
class KneadingPair:
    kplus: EpSeq
    kminus: EpSeq

    def __post_init__(self):
        if self.kplus.first != "1":
            raise ParseError(f"k+ must start with 1, got {self.kplus}")
        if self.kminus.first != "0":
            raise ParseError(f"k- must start with 0, got {self.kminus}")

    @property
    def k0(self) -> EpSeq:
        return shift(self.kplus, 1)

    @property
    def k1(self) -> EpSeq:
        return shift(self.kminus, 1)

    def complement(self) -> "KneadingPair":
        from .symbolic import complement

        return KneadingPair(complement(self.kminus), complement(self.kplus))

    def __str__(self) -> str:
        return f"({self.kplus}, {self.kminus})"


FULL_SHIFT = KneadingPair(EpSeq("1", "0"), EpSeq("0", "1"))


class AdmissibilityClass(Enum):
    HS_ADMISSIBLE = "HSAdmissible"
    WEAK_ONLY = "WeakOnly"
    NOT_ADMISSIBLE = "NotAdmissible"


def _within(x: EpSeq, lo: EpSeq, hi: EpSeq, strict_lo: bool, strict_hi: bool) -> bool:
    cl = compare(lo, x)
    ch = compare(x, hi)
    ok_lo = cl is Order.LT or (cl is Order.EQ and not strict_lo)
    ok_hi = ch is Order.LT or (ch is Order.EQ and not strict_hi)
    return ok_lo and ok_hi


def classify(pair: KneadingPair) -> AdmissibilityClass:
    k0, k1 = pair.k0, pair.k1
    plus_orbit = pair.kplus.orbit()
    minus_orbit = pair.kminus.orbit()
    weak = all(_within(x, k0, k1, False, False) for x in plus_orbit + minus_orbit)
    if not weak:
        return AdmissibilityClass.NOT_ADMISSIBLE
    strict = all(_within(x, k0, k1, False, True) for x in plus_orbit) and all(
        _within(x, k0, k1, True, False) for x in minus_orbit
    )
    return AdmissibilityClass.HS_ADMISSIBLE if strict else AdmissibilityClass.WEAK_ONLY


def in_bounds(w: EpSeq, lo: EpSeq, hi: EpSeq) -> bool:
    """Every shift of ``w`` lies in ``[lo, hi]``."""
    return all(_within(x, lo, hi, False, False) for x in w.orbit())


def shift_contains(w: EpSeq, pair: KneadingPair) -> bool:
    if classify(pair) is AdmissibilityClass.NOT_ADMISSIBLE:
        raise NotAdmissiblePair(f"{pair} is not admissible")
    return in_bounds(w, pair.k0, pair.k1)


class HoleKind(Enum):
    INTERIOR = "interior"  # (a, b) with a <= c <= b
    ZERO = "zero"  # (0, x): only a lower bound, stored in b_upper as tau(x+)
    ONE = "one"  # (x, 1): only an upper bound, stored in a_lower as tau(x-)


@dataclass(frozen=True)
class HoleKneading:
    """Symbolic hole.

    For interior holes ``a_lower`` is the left-limit itinerary of ``a`` and
    ``b_upper`` the right-limit itinerary of ``b``.  A critical flag means the
    corresponding endpoint is ``c``; the bound may then be left as ``None``
    until :func:`normalize_hole` fills it in.
    """

    a_lower: EpSeq | None = None
    b_upper: EpSeq | None = None
    a_is_critical: bool = False
    b_is_critical: bool = False
    kind: HoleKind = HoleKind.INTERIOR

    @classmethod
    def critical_left(cls, b_upper: EpSeq) -> "HoleKneading":
        return cls(None, b_upper, a_is_critical=True)

    @classmethod
    def critical_right(cls, a_lower: EpSeq) -> "HoleKneading":
        return cls(a_lower, None, b_is_critical=True)


def normalize_hole(h: HoleKneading, pair: KneadingPair) -> HoleKneading:
    a, b = h.a_lower, h.b_upper
    if h.kind is HoleKind.INTERIOR:
        if h.a_is_critical:
            a = pair.kminus
        if h.b_is_critical:
            b = pair.kplus
        if a is None or b is None:
            raise ParseError("interior hole needs both bounds or critical flags")
        if a.first != "0":
            raise ParseError(f"lower hole bound must start with 0, got {a}")
        if b.first != "1":
            raise ParseError(f"upper hole bound must start with 1, got {b}")
    elif h.kind is HoleKind.ZERO and b is None:
        raise ParseError("zero-hole needs its right bound")
    elif h.kind is HoleKind.ONE and a is None:
        raise ParseError("one-hole needs its left bound")
    return replace(h, a_lower=a, b_upper=b)


def hole_bounds(h: HoleKneading, pair: KneadingPair) -> tuple[EpSeq, EpSeq]:
    """Lower and upper bound ``(L, U)`` of the two-sided survivor language."""
    h = normalize_hole(h, pair)
    if h.kind is HoleKind.INTERIOR:
        lo, hi = shift(h.b_upper, 1), shift(h.a_lower, 1)
    elif h.kind is HoleKind.ZERO:
        lo, hi = h.b_upper, pair.k1
    else:
        lo, hi = pair.k0, h.a_lower
    return seq_max(lo, pair.k0), seq_min(hi, pair.k1)


def degenerate_check(h: HoleKneading) -> bool:
    """True when the survivor set is confined to the fixed points 0 and 1."""
    if h.kind is HoleKind.INTERIOR:
        return h.b_upper.prefix(2) == "11" or h.a_lower.prefix(2) == "00"
    if h.kind is HoleKind.ZERO:
        return h.b_upper.first == "1"
    return h.a_lower.first == "0"


def _bounds_degenerate(lo: EpSeq, hi: EpSeq) -> bool:
    return lo.first == "1" or hi.first == "0"


@dataclass(frozen=True)
class BoundaryReport:
    hole: HoleKneading
    # the image of 0 (resp. 1) stays in the survivor set, so full survivor sets agree too
    fixed_point_survives: bool


def hole_to_boundary(h: HoleKneading, pair: KneadingPair) -> HoleKneading:
    """Replace a hole with one endpoint at ``c`` by the equivalent boundary hole."""
    return hole_to_boundary_report(h, pair).hole


def hole_to_boundary_report(h: HoleKneading, pair: KneadingPair) -> BoundaryReport:
    if h.kind is not HoleKind.INTERIOR or not (h.a_is_critical or h.b_is_critical):
        raise NotCriticalHole("hole has no endpoint at the critical point")
    h = normalize_hole(h, pair)
    if h.a_is_critical:
        x = shift(h.b_upper, 1)
        out = HoleKneading(None, x, kind=HoleKind.ZERO)
        # the orbit may return to 0 itself, which sits on the boundary of the open hole
        survives = all(y == pair.k0 or compare(y, x) is not Order.LT for y in pair.k0.orbit())
    else:
        x = shift(h.a_lower, 1)
        out = HoleKneading(x, None, kind=HoleKind.ONE)
        survives = all(y == pair.k1 or compare(y, x) is not Order.GT for y in pair.k1.orbit())
    return BoundaryReport(out, survives)


def lyndon_lower_index(x: EpSeq) -> int | None:
    """First ``m >= 1`` with ``sigma^m(x) < x``, or None if x is smallest of its shifts."""
    for m in range(1, x.orbit_size):
        if compare(shift(x, m), x) is Order.LT:
            return m
    return None


def lyndon_upper_index(x: EpSeq) -> int | None:
    for m in range(1, x.orbit_size):
        if compare(shift(x, m), x) is Order.GT:
            return m
    return None


def lyndon_lower(x: EpSeq) -> EpSeq:
    """Lower self-admissible sequence obtained by cutting ``x`` at its first drop."""
    while True:
        m = lyndon_lower_index(x)
        if m is None:
            return x
        x = EpSeq("", x.prefix(m))


def lyndon_upper(x: EpSeq) -> EpSeq:
    while True:
        m = lyndon_upper_index(x)
        if m is None:
            return x
        x = EpSeq("", x.prefix(m))


def self_admissibilize_lower(b_upper: EpSeq) -> EpSeq:
    """Self-admissible (smallest-of-shifts) replacement for ``sigma(b_upper)``."""
    if b_upper.first != "1":
        raise ParseError(f"upper hole bound must start with 1, got {b_upper}")
    return lyndon_lower(shift(b_upper, 1))


def self_admissibilize_upper(a_lower: EpSeq) -> EpSeq:
    if a_lower.first != "0":
        raise ParseError(f"lower hole bound must start with 0, got {a_lower}")
    return lyndon_upper(shift(a_lower, 1))


@dataclass(frozen=True)
class SurvivorShift:
    s: EpSeq | None
    t: EpSeq | None
    degenerate: bool = False
    flips: tuple = field(default=(), compare=False, hash=False)

    def pair(self) -> KneadingPair:
        if self.degenerate:
            raise DegenerateHole("degenerate survivor shift has no kneading pair")
        return KneadingPair(self.s.prepend("1"), self.t.prepend("0"))

    def contains(self, w: EpSeq) -> bool:
        if self.degenerate:
            return w.per in ("0", "1") and not w.pre
        return in_bounds(w, self.s, self.t)

    def to_json(self) -> dict:
        return {
            "s": None if self.s is None else str(self.s),
            "t": None if self.t is None else str(self.t),
            "degenerate": self.degenerate,
            "flips": [list(f) for f in self.flips],
        }


DEGENERATE = SurvivorShift(None, None, True)


def _first_above(x: EpSeq, bound: EpSeq) -> int | None:
    for n in range(1, x.orbit_size):
        if compare(shift(x, n), bound) is Order.GT:
            return n
    return None


def _first_below(x: EpSeq, bound: EpSeq) -> int | None:
    for n in range(1, x.orbit_size):
        if compare(shift(x, n), bound) is Order.LT:
            return n
    return None


def weak_admissibilize_bounds(lo: EpSeq, hi: EpSeq, cap: int | None = None) -> SurvivorShift:
    """Extremal pair ``(s, t)`` of the language ``{w : lo <= sigma^n w <= hi}``.

    Both bounds are first made self-admissible, then digits are flipped until
    no shift of ``s`` exceeds ``t`` and no shift of ``t`` drops below ``s``.
    """
    if _bounds_degenerate(lo, hi):
        return DEGENERATE
    if cap is None:
        cap = max(64, lo.orbit_size * hi.orbit_size * 4)
    s, t = lyndon_lower(lo), lyndon_upper(hi)
    trace: list[tuple[str, str, str]] = [("init", str(s), str(t))]
    for _ in range(cap):
        if compare(s, t) is not Order.LT or _bounds_degenerate(s, t):
            raise DegenerateHole(f"language collapses to fixed points at s={s}, t={t}")
        p = _first_above(s, t)
        if p is not None:
            if s[p - 1] != "0":
                raise FlipInvariantError(f"expected 0 at position {p} of {s}", trace)
            s = lyndon_lower(EpSeq("", s.prefix(p - 1) + "1"))
            trace.append(("s", str(s), str(t)))
            continue
        q = _first_below(t, s)
        if q is not None:
            if t[q - 1] != "1":
                raise FlipInvariantError(f"expected 1 at position {q} of {t}", trace)
            t = lyndon_upper(EpSeq("", t.prefix(q - 1) + "0"))
            trace.append(("t", str(s), str(t)))
            continue
        return SurvivorShift(s, t, False, tuple(trace))
    raise IterationCapExceeded(f"no fixed point after {cap} flips", trace)


def weak_admissibilize(h: HoleKneading, pair: KneadingPair) -> SurvivorShift:
    lo, hi = hole_bounds(h, pair)
    return weak_admissibilize_bounds(lo, hi)


def survivor_of_bounds(lo: EpSeq, hi: EpSeq) -> SurvivorShift:
    """Like :func:`weak_admissibilize_bounds` but collapse to the degenerate shift instead of raising."""
    try:
        return weak_admissibilize_bounds(lo, hi)
    except DegenerateHole:
        return DEGENERATE


def survivor_of(h: HoleKneading, pair: KneadingPair) -> SurvivorShift:
    lo, hi = hole_bounds(h, pair)
    return survivor_of_bounds(lo, hi)


def survivor_members_language(sh: SurvivorShift) -> Callable[[EpSeq], bool]:
    if sh.degenerate:
        raise DegenerateHole("degenerate survivor shift")
    return sh.contains
