"""Dimension of the survivor set as one hole endpoint sweeps a grid.

Each grid point's kneading bound is known only through a finite itinerary
prefix ``w`` unless its orbit visibly cycles.  Every sequence with prefix
``w`` lies between ``w(0)`` and ``w(1)``, and survivor shifts shrink as the
lower bound grows, so the two completions sandwich the true survivor shift.
When both give the same shift the row is exact; otherwise the prefix is
deepened, and a row that never closes is flagged and reports the outer
(larger) shift.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .entropy import EntropyResult, dimension, survivor_shift_entropy
from .errors import LorenzHoleError
from .kneading import KneadingPair, SurvivorShift, survivor_of_bounds
from .numeric import MapParams, complete, itinerary, kneading_pair, repeat_tolerance
from .plateau import plateau_at_critical, plateau_interior
from .symbolic import EpSeq, seq_max, seq_min, shift

CSV_HEADER = [
    "endpoint",
    "s",
    "t",
    "t0_lo",
    "t0_hi",
    "entropy_nats",
    "entropy_bits",
    "dimension",
    "plateau_case",
    "flags",
]


@dataclass
class _Bound:
    """A kneading sequence known exactly or only between two completions."""

    lo: EpSeq
    hi: EpSeq
    exact: bool


def _bound(p: MapParams, x, side: str, depth: int, drop_first: bool) -> _Bound:
    it = itinerary(p, x, depth + int(drop_first), side)
    done = complete(it, repeat_tolerance(p))
    if done is not None:
        seq = shift(done, 1) if drop_first else done
        return _Bound(seq, seq, True)
    w = it.word[1:] if drop_first else it.word
    return _Bound(EpSeq(w, "0"), EpSeq(w, "1"), False)


@dataclass
class StaircaseRow:
    endpoint: float
    shift: SurvivorShift
    entropy: EntropyResult
    dimension: float
    plateau_case: str
    flags: tuple[str, ...]
    # symbolic bound of the moving endpoint (lower bound of the survivor language)
    bound_lo: EpSeq = field(repr=False, default=None)
    bound_hi: EpSeq = field(repr=False, default=None)

    def csv_fields(self) -> list[str]:
        sh, ent = self.shift, self.entropy
        s = "" if sh.degenerate else str(sh.s)
        t = "" if sh.degenerate else str(sh.t)
        lo = hi = ""
        if ent.t0 is not None:
            lo, hi = _g15(float(ent.t0[0])), _g15(float(ent.t0[1]))
        return [
            _g15(self.endpoint),
            s,
            t,
            lo,
            hi,
            _g15(ent.entropy),
            _g15(ent.entropy_bits),
            _g15(self.dimension),
            self.plateau_case,
            ";".join(self.flags),
        ]


def _g15(x: float) -> str:
    return f"{x:.15g}"


@dataclass
class Staircase:
    beta: float
    alpha: float
    pair: KneadingPair
    fixed: str
    rows: list[StaircaseRow]

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("# schema=1\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in self.rows:
            w.writerow(r.csv_fields())
        return buf.getvalue()

    def dimensions(self) -> list[float]:
        return [r.dimension for r in self.rows]


def staircase(
    beta,
    alpha,
    fixed_bound: str = "zero",
    grid: int = 256,
    depth: int = 32,
    precision: int = 50,
    pair: KneadingPair | None = None,
) -> Staircase:
    """Survivor dimension over a grid of the moving hole endpoint.

    ``fixed_bound="zero"`` sweeps the hole ``(0, t)`` for ``t`` in ``[0, 1]``;
    any other value is read as the fixed left endpoint ``a <= c`` and the
    hole ``(a, b)`` is swept over ``b`` in ``[c, 1]``.
    """
    p = MapParams.make(beta, alpha, precision)
    if pair is None:
        pair = kneading_pair(p)
    if grid < 1:
        raise ValueError("grid must be >= 1")
    k0, k1 = pair.k0, pair.k1
    zero = fixed_bound == "zero"
    if zero:
        start, stop = p.ctx.mpf(0), p.ctx.mpf(1)
        a_bound = None
    else:
        a = p.real(fixed_bound)
        if not (0 <= a <= p.c):
            raise LorenzHoleError(f"fixed endpoint a={fixed_bound} must lie in [0, c]")
        start, stop = p.c, p.ctx.mpf(1)
    xs = [start] if grid == 1 else [start + (stop - start) * k / (grid - 1) for k in range(grid)]
    limit = p.depth_limit
    beta_f = float(p.beta)
    plateau_cache: dict[EpSeq, str] = {}
    rows = []
    for x in xs:
        d = min(depth, limit)
        while True:
            flags: list[str] = []
            lb = _bound(p, x, "plus", d, drop_first=not zero)
            if zero:
                ub = _Bound(k1, k1, True)
            else:
                a_bound = _bound(p, a, "minus", d, drop_first=True)
                ub = a_bound
            outer = survivor_of_bounds(seq_max(lb.lo, k0), seq_min(ub.hi, k1))
            inner = survivor_of_bounds(seq_max(lb.hi, k0), seq_min(ub.lo, k1))
            if outer == inner:
                break
            if d >= limit:
                flags.append("sandwich_open")
                break
            d = min(2 * d, limit)
        sh = outer
        ent = survivor_shift_entropy(sh)
        flags += list(ent.flags)
        if sh.degenerate:
            flags.append("degenerate")
        case = ""
        if not sh.degenerate and sh.s.prepend("1").is_periodic:
            if sh.s in plateau_cache:
                case = plateau_cache[sh.s]
            else:
                try:
                    if zero:
                        case = plateau_at_critical(pair, sh.s.prepend("1")).case_tag
                    elif a_bound is not None and a_bound.exact:
                        a_low = a_bound.lo.prepend("0")
                        case = plateau_interior(pair, a_low, sh.s.prepend("1")).case_tag
                except LorenzHoleError as exc:
                    case = ""
                    flags.append(exc.code)
                plateau_cache[sh.s] = case
        rows.append(
            StaircaseRow(
                float(x),
                sh,
                ent,
                dimension(beta_f, ent),
                case,
                tuple(flags),
                lb.lo,
                lb.hi,
            )
        )
    return Staircase(beta_f, float(p.alpha), pair, fixed_bound, rows)


def distinct_values(values: list[float], tol: float = 1e-12) -> int:
    out: list[float] = []
    for v in sorted(values):
        if not out or abs(v - out[-1]) > tol:
            out.append(v)
    return len(out)


def is_non_increasing(values: list[float], tol: float = 1e-12) -> bool:
    return all(b <= a + tol for a, b in zip(values, values[1:]))
