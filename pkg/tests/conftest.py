import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from coxsp.coxeter import INF, CoxeterSystem  # noqa: E402

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def systems(draw, min_rank=1, max_rank=4, labels=(2, 3, 4, INF), right_angled=False):
    rank = draw(st.integers(min_rank, max_rank))
    choices = (2, INF) if right_angled else labels
    pairs = [(i, j) for i in range(rank) for j in range(i + 1, rank)]
    chosen = {p: draw(st.sampled_from(choices)) for p in pairs}
    return CoxeterSystem.from_pairs(rank, chosen)


@st.composite
def system_and_words(draw, count=2, max_len=6, **kw):
    system = draw(systems(**kw))
    words = [
        tuple(draw(st.lists(st.integers(0, system.rank - 1), max_size=max_len))) for _ in range(count)
    ]
    return system, words


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
