"""Plateaux of the survivor shift as one hole endpoint moves, and bifurcation-set membership.

All endpoints are given by their one-sided kneading sequences.  The case
trees follow the constructive analysis of the maximal constancy interval;
:func:`verify_plateau` checks any returned interval by direct sampling.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DegenerateHole, FlipInvariantError, NonPeriodicBound, NoBetween
from .kneading import (
    HoleKneading,
    KneadingPair,
    SurvivorShift,
    hole_bounds,
    in_bounds,
    lyndon_lower_index,
    lyndon_upper_index,
    normalize_hole,
    survivor_of,
    weak_admissibilize_bounds,
)
from .oracle import BoundAutomaton, build_bounds, extremal_from
from .symbolic import (
    EpSeq,
    Order,
    compare,
    complement,
    is_lower_self_admissible,
    shift,
    strictly_between,
)


@dataclass(frozen=True)
class PlateauEndpoint:
    kneading: EpSeq
    closed: bool

    def to_json(self) -> dict:
        return {"kneading": str(self.kneading), "closed": self.closed}


@dataclass(frozen=True)
class Plateau:
    left: PlateauEndpoint
    right: PlateauEndpoint
    case_tag: str
    side: str = "b"  # which hole endpoint moves

    def contains(self, x: EpSeq) -> bool:
        lo = compare(self.left.kneading, x)
        hi = compare(x, self.right.kneading)
        ok_lo = lo is Order.LT or (lo is Order.EQ and self.left.closed)
        ok_hi = hi is Order.LT or (hi is Order.EQ and self.right.closed)
        return ok_lo and ok_hi

    def to_json(self) -> dict:
        return {
            "left": self.left.to_json(),
            "right": self.right.to_json(),
            "case": self.case_tag,
            "side": self.side,
        }


def _minus_one(word: str, where: str) -> str:
    """Replace the final 1 of ``word`` by 0."""
    if not word or word[-1] != "1":
        raise FlipInvariantError(f"expected a final 1 in {where} ({word!r})")
    return word[:-1] + "0"


def _check_b(b_upper: EpSeq) -> None:
    if not b_upper.is_periodic:
        raise NonPeriodicBound(f"upper hole bound {b_upper} must be purely periodic")


def _shift_of(lo: EpSeq, hi: EpSeq) -> SurvivorShift:
    sh = weak_admissibilize_bounds(lo, hi)
    if sh.degenerate:
        raise DegenerateHole("survivor shift is degenerate")
    return sh


def _first_index_below(x: EpSeq, bound: EpSeq, start: int = 1) -> int | None:
    for n in range(start, start + x.orbit_size):
        if compare(shift(x, n), bound) is Order.LT:
            return n
    return None


def plateau_at_critical(pair: KneadingPair, b_upper: EpSeq) -> Plateau:
    """Maximal interval of ``b`` (hole ``(c, b)``) with the survivor shift of ``b_upper``."""
    _check_b(b_upper)
    h = HoleKneading.critical_left(b_upper)
    lo, hi = hole_bounds(h, pair)
    sh = _shift_of(lo, hi)
    s, t, k0, k1 = sh.s, sh.t, pair.k0, pair.k1
    right = PlateauEndpoint(s.prepend("1"), True)

    def closed_left(word: str, tag: str) -> Plateau:
        return Plateau(PlateauEndpoint(EpSeq("1" + word + k0.pre, k0.per), True), right, tag)

    if t == k1:
        tag = "case1" if s == lo else "case2"
        if s.pre:
            raise NonPeriodicBound(f"survivor minimum {s} is not periodic")
        return closed_left(s.per, tag)

    r = len(s.per)
    sr = s.per
    q = _first_index_below(k1, s)
    if q is None:
        raise FlipInvariantError(f"k(1)={k1} never drops below s={s} although t was modified")
    tq = EpSeq("", _minus_one(k1.prefix(q), "t_q"))
    head = _minus_one(sr, "s")
    gamma = tq.prepend(head)
    x = shift(k1, q)
    if compare(x, gamma) is not Order.GT:
        left = PlateauEndpoint(gamma.prepend("1"), False)
        return Plateau(left, right, "case3.1")
    if x[r - 1] == "1":
        # same interval as when only the lower bound is modified; the left end
        # still yields the base shift, so it is closed
        return closed_left(sr, "case3.2")
    if is_lower_self_admissible(x):
        left = PlateauEndpoint(shift(k1, q + r).prepend("1" + head), False)
        return Plateau(left, right, "case3.3")
    m = lyndon_lower_index(x)
    return closed_left(x.prefix(m), "case3.4")


def plateau_interior(pair: KneadingPair, a_lower: EpSeq, b_upper: EpSeq) -> Plateau:
    """Maximal interval of ``b`` for a hole ``(a, b)`` with ``a < c < b`` and ``a`` fixed."""
    _check_b(b_upper)
    h = normalize_hole(HoleKneading(a_lower, b_upper), pair)
    lo, hi = hole_bounds(h, pair)
    sh = _shift_of(lo, hi)
    s, t, u = sh.s, sh.t, hi
    right = PlateauEndpoint(s.prepend("1"), True)
    if s.pre:
        raise NonPeriodicBound(f"survivor minimum {s} is not periodic")
    if s.per == "0":
        # nothing lies below the bottom of the shift
        return Plateau(right, right, "interior.point")
    r = len(s.per)
    head = _minus_one(s.per, "s")

    def open_left(x: EpSeq, tag: str) -> Plateau:
        return Plateau(PlateauEndpoint(x.prepend("1" + head), False), right, tag)

    if t == u:
        return open_left(u, "interior.case1")
    j = lyndon_upper_index(u)
    i = _first_index_below(u, s)
    j = float("inf") if j is None else j
    i = float("inf") if i is None else i
    if j < i:
        return open_left(EpSeq("", u.prefix(j)), "interior.case2.1")
    ti = EpSeq("", _minus_one(u.prefix(i), "t_i"))
    eta = ti.prepend(head)
    w = shift(u, i)
    if compare(w, eta) is not Order.GT:
        return Plateau(PlateauEndpoint(eta.prepend("1"), False), right, "interior.case2.2")
    if w[r - 1] == "1":
        return open_left(u, "interior.case2.3")
    if is_lower_self_admissible(w):
        return open_left(shift(u, i + r), "interior.case2.4")
    m = lyndon_lower_index(w)
    word = _minus_one(w.prefix(m), "u_{i+n}")
    return Plateau(PlateauEndpoint(u.prepend("1" + word), False), right, "interior.case2.5")


def plateau_interior_a_side(pair: KneadingPair, a_lower: EpSeq, b_upper: EpSeq) -> Plateau:
    """Maximal interval of ``a`` with ``b`` fixed, via the 0/1 exchange symmetry.

    The returned endpoints are left-limit kneading sequences of ``a``; the
    interval is closed on the left and open on the right.
    """
    if not a_lower.is_periodic:
        raise NonPeriodicBound(f"lower hole bound {a_lower} must be purely periodic")
    mirror = plateau_interior(pair.complement(), complement(b_upper), complement(a_lower))
    left = PlateauEndpoint(complement(mirror.right.kneading), mirror.right.closed)
    right = PlateauEndpoint(complement(mirror.left.kneading), mirror.left.closed)
    return Plateau(left, right, mirror.case_tag, side="a")


def in_bifurcation_set(pair: KneadingPair, a_lower: EpSeq | None, b_upper: EpSeq) -> bool:
    """Whether ``sigma(b) <= sigma^n(b) <= sigma(a)`` for all ``n``; ``a_lower=None`` means ``a = c``."""
    a = pair.kminus if a_lower is None else a_lower
    return in_bounds(b_upper, shift(b_upper, 1), shift(a, 1))


# ---------------------------------------------------------------- verification


@dataclass
class PlateauReport:
    base: SurvivorShift
    samples: int
    violations: list[tuple[str, str]] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "samples": self.samples,
            "ok": self.ok,
            "violations": [{"kind": k, "witness": w} for k, w in self.violations],
            "skipped": list(self.skipped),
        }


def _bisection_samples(lo: EpSeq, hi: EpSeq, n: int) -> list[EpSeq]:
    """Up to ``n`` distinct sequences strictly between ``lo`` and ``hi``."""
    out: list[EpSeq] = []
    frontier = [(lo, hi)]
    while frontier and len(out) < n:
        nxt = []
        for a, b in frontier:
            if compare(a, b) is not Order.LT:
                continue
            try:
                z = strictly_between(a, b)
            except NoBetween:
                continue
            out.append(z)
            nxt += [(a, z), (z, b)]
            if len(out) >= n:
                break
        frontier = nxt
    return out


def admissible_neighbor(ambient: BoundAutomaton, x: EpSeq, depth: int, side: str) -> EpSeq | None:
    """Closest accepted sequence above (or below) ``x`` sharing at least ``depth`` symbols with it.

    The first position ``j >= depth`` where ``x`` can be raised (a 0 becomes 1)
    or lowered (a 1 becomes 0) and still be completed inside the ambient
    shift wins; the completion is the extremal one towards ``x``.
    """
    flip, want, which = ("0", "1", "min") if side == "above" else ("1", "0", "max")
    head = x.prefix(depth + 2 * x.orbit_size + len(x.per))
    for j in range(len(head) - 1, depth - 1, -1):
        if head[j] != flip:
            continue
        z = extremal_from(ambient, head[:j] + want, which)
        if z is not None:
            return z
    return None


def verify_plateau(
    pair: KneadingPair,
    hole: HoleKneading,
    plateau: Plateau,
    n_samples: int = 8,
    depth: int = 24,
) -> PlateauReport:
    """Sample the plateau and its immediate outside; report disagreements with the base shift."""
    hole = normalize_hole(hole, pair)

    def survivor(x: EpSeq) -> SurvivorShift:
        if plateau.side == "b":
            h = HoleKneading(hole.a_lower, x, a_is_critical=hole.a_is_critical)
        else:
            h = HoleKneading(x, hole.b_upper, b_is_critical=hole.b_is_critical)
        return survivor_of(h, pair)

    moving = hole.b_upper if plateau.side == "b" else hole.a_lower
    base = survivor(moving)
    rep = PlateauReport(base, n_samples)
    lo, hi = plateau.left.kneading, plateau.right.kneading
    for z in _bisection_samples(lo, hi, n_samples):
        if survivor(z) != base:
            rep.violations.append(("interior", str(z)))
    for end, tag in ((plateau.left, "left"), (plateau.right, "right")):
        same = survivor(end.kneading) == base
        if same != end.closed:
            rep.violations.append((f"{tag}_closedness", str(end.kneading)))
    # only sequences realized by points of the ambient map say anything about maximality
    ambient = build_bounds(pair.k0, pair.k1)
    above = admissible_neighbor(ambient, hi, depth, "above")
    below = admissible_neighbor(ambient, lo, depth, "below")
    for z, tag in ((above, "above_right"), (below, "below_left")):
        if z is None:
            rep.skipped.append(tag)
        elif survivor(z) == base:
            rep.violations.append((tag, str(z)))
    rep.violations.sort()
    return rep
