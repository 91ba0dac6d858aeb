import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lorenzhole.symbolic import EpSeq

settings.register_profile(
    "default",
    max_examples=int(os.environ.get("HYPOTHESIS_MAX_EXAMPLES", "150")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

words = st.text(alphabet="01", min_size=0, max_size=6)
nonempty = st.text(alphabet="01", min_size=1, max_size=6)


@st.composite
def epseqs(draw, max_pre: int = 6, max_per: int = 6) -> EpSeq:
    pre = draw(st.text(alphabet="01", max_size=max_pre))
    per = draw(st.text(alphabet="01", min_size=1, max_size=max_per))
    return EpSeq(pre, per)


@st.composite
def periodic(draw, min_size: int = 1, max_size: int = 8, first: str | None = None) -> EpSeq:
    per = draw(st.text(alphabet="01", min_size=min_size, max_size=max_size))
    if first is not None:
        per = first + per[len(first):]
    return EpSeq("", per)


def expand(x: EpSeq, n: int) -> str:
    """First n symbols, computed by plain string repetition."""
    out = x.pre + x.per * (n // len(x.per) + 1)
    return out[:n]


def brute_periodic_language(lo: EpSeq, hi: EpSeq, max_len: int) -> list[EpSeq]:
    """All purely periodic words of period <= max_len whose shifts stay in [lo, hi]."""
    from itertools import product

    seen = set()
    horizon = 4 * (len(lo.pre) + len(lo.per) + len(hi.pre) + len(hi.per) + max_len)
    lo_s, hi_s = expand(lo, horizon), expand(hi, horizon)
    for n in range(1, max_len + 1):
        for bits in product("01", repeat=n):
            w = "".join(bits)
            x = EpSeq("", w)
            if x in seen:
                continue
            ok = True
            for k in range(len(w)):
                r = w[k:] + w[:k]
                s = (r * (horizon // len(r) + 1))[:horizon]
                if not (lo_s <= s <= hi_s):
                    ok = False
                    break
            if ok:
                seen.add(x)
    return sorted(seen, key=lambda e: expand(e, horizon))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
