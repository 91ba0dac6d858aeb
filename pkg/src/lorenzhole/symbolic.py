"""Eventually periodic binary sequences.

An :class:`EpSeq` is stored as ``pre`` followed by ``per`` repeated forever,
both plain ``str`` over ``"01"``.  Construction always canonicalizes (primitive
period, minimal preperiod) so that ``==`` and ``hash`` agree with equality of
the denoted infinite sequences.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import IntEnum
from functools import total_ordering
from math import lcm

from .errors import EmptyPeriod, NoBetween, ParseError

Word = str

_WORD = re.compile(r"^[01]*$")


def check_word(w: str) -> Word:
    if not isinstance(w, str) or not _WORD.match(w):
        raise ParseError(f"not a binary word: {w!r}")
    return w


def _primitive_root(w: str) -> str:
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w[:d] * (n // d) == w:
            return w[:d]
    return w


class Order(IntEnum):
    LT = -1
    EQ = 0
    GT = 1


@total_ordering
@dataclass(frozen=True, init=False)
class EpSeq:
    pre: str
    per: str

    def __init__(self, pre: str = "", per: str = "0"):
        check_word(pre)
        check_word(per)
        if not per:
            raise EmptyPeriod("period must be non-empty")
        per = _primitive_root(per)
        while pre and pre[-1] == per[-1]:
            per = per[-1] + per[:-1]
            pre = pre[:-1]
        object.__setattr__(self, "pre", pre)
        object.__setattr__(self, "per", per)

    @classmethod
    def parse(cls, text: str) -> "EpSeq":
        return parse(text)

    @classmethod
    def periodic(cls, per: str) -> "EpSeq":
        return cls("", per)

    def __str__(self) -> str:
        return f"{self.pre}({self.per})"

    def __repr__(self) -> str:
        return f"EpSeq({str(self)!r})"

    def __getitem__(self, i: int) -> str:
        if i < 0:
            raise IndexError("negative index")
        n = len(self.pre)
        if i < n:
            return self.pre[i]
        return self.per[(i - n) % len(self.per)]

    def prefix(self, n: int) -> str:
        """First ``n`` symbols."""
        m = len(self.pre)
        if n <= m:
            return self.pre[:n]
        k = n - m
        reps = -(-k // len(self.per))
        return self.pre + (self.per * reps)[:k]

    @property
    def first(self) -> str:
        return self[0]

    @property
    def orbit_size(self) -> int:
        """Number of distinct shifts."""
        return len(self.pre) + len(self.per)

    @property
    def is_periodic(self) -> bool:
        return not self.pre

    def shift(self, n: int = 1) -> "EpSeq":
        return shift(self, n)

    def orbit(self) -> list["EpSeq"]:
        """All distinct shifts, in order sigma^0, sigma^1, ..."""
        return [shift(self, k) for k in range(self.orbit_size)]

    def prepend(self, word: str) -> "EpSeq":
        return EpSeq(word + self.pre, self.per)

    def __lt__(self, other: "EpSeq") -> bool:
        return compare(self, other) is Order.LT


def canonicalize(pre: Word, per: Word) -> EpSeq:
    return EpSeq(pre, per)


def parse(text: str) -> EpSeq:
    """Parse ``pre(per)`` (``pre`` optional); ``^inf``/``^∞`` suffixes are tolerated."""
    s = text.strip().replace(" ", "")
    for suffix in ("^∞", "^inf", "^oo"):
        if s.endswith(suffix):
            s = s[: -len(suffix)]
    m = re.fullmatch(r"([01]*)\(([01]+)\)", s)
    if not m:
        raise ParseError(f"bad sequence literal {text!r}; expected pre(per), e.g. 1(0) or (10)")
    return EpSeq(m.group(1), m.group(2))


def compare(x: EpSeq, y: EpSeq) -> Order:
    if x == y:
        return Order.EQ
    n = len(x.pre) + len(y.pre) + lcm(len(x.per), len(y.per))
    a, b = x.prefix(n), y.prefix(n)
    if a < b:
        return Order.LT
    if a > b:
        return Order.GT
    raise AssertionError(f"{x} and {y} agree on the decision horizon but differ")


def shift(x: EpSeq, n: int = 1) -> EpSeq:
    if n < 0:
        raise ValueError("shift count must be >= 0")
    m = len(x.pre)
    if n <= m:
        return EpSeq(x.pre[n:], x.per)
    k = (n - m) % len(x.per)
    return EpSeq("", x.per[k:] + x.per[:k])


def complement(x: EpSeq) -> EpSeq:
    """Exchange 0 and 1; reverses the lexicographic order."""
    tr = str.maketrans("01", "10")
    return EpSeq(x.pre.translate(tr), x.per.translate(tr))


def first_difference(x: EpSeq, y: EpSeq) -> int | None:
    if x == y:
        return None
    n = len(x.pre) + len(y.pre) + lcm(len(x.per), len(y.per))
    a, b = x.prefix(n), y.prefix(n)
    for i in range(n):
        if a[i] != b[i]:
            return i
    raise AssertionError("unreachable")


def _above(x: EpSeq) -> EpSeq | None:
    """Some sequence strictly above ``x`` sharing its preperiod, or None for x = 1^inf."""
    if x.per != "1":
        # P(1Q) > P(Q) whenever Q is not all ones
        return EpSeq(x.pre, "1" + x.per)
    j = x.pre.rfind("0")
    if j < 0:
        return None
    return EpSeq(x.pre[:j], "1")


def _below(x: EpSeq) -> EpSeq | None:
    up = _above(complement(x))
    return None if up is None else complement(up)


def strictly_between(x: EpSeq, y: EpSeq) -> EpSeq:
    """Return some z with x < z < y."""
    if compare(x, y) is not Order.LT:
        raise ValueError(f"need {x} < {y}")
    i = first_difference(x, y)
    w = x.prefix(i)
    z = _above(shift(x, i + 1))
    if z is not None:
        return z.prepend(w + "0")
    z = _below(shift(y, i + 1))
    if z is not None:
        return z.prepend(w + "1")
    raise NoBetween(f"{x} and {y} are adjacent")


def neighbor_above(x: EpSeq, depth: int) -> EpSeq | None:
    """A sequence above ``x`` agreeing with it on at least ``depth`` symbols."""
    n = depth + x.orbit_size + len(x.per)
    head = x.prefix(n)
    j = head.find("0", depth)
    if j < 0:
        return None
    y = EpSeq(head[:j] + "1", "0")
    try:
        return strictly_between(x, y)
    except NoBetween:
        # x = head[:j] 0 1 1 1 ..., so y is already its successor
        return y


def neighbor_below(x: EpSeq, depth: int) -> EpSeq | None:
    up = neighbor_above(complement(x), depth)
    return None if up is None else complement(up)


def is_lower_self_admissible(x: EpSeq) -> bool:
    """x is the smallest of its shifts."""
    return all(compare(x, z) is not Order.GT for z in x.orbit())


def is_upper_self_admissible(x: EpSeq) -> bool:
    return all(compare(x, z) is not Order.LT for z in x.orbit())


def seq_max(*xs: EpSeq) -> EpSeq:
    best = xs[0]
    for x in xs[1:]:
        if compare(x, best) is Order.GT:
            best = x
    return best


def seq_min(*xs: EpSeq) -> EpSeq:
    best = xs[0]
    for x in xs[1:]:
        if compare(x, best) is Order.LT:
            best = x
    return best


ZERO = EpSeq("", "0")
ONE = EpSeq("", "1")
