import random

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from annular_khovanov.corpus import random_word

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def slice_words(draw, max_crossings=4, max_seam=3, max_width=6):
    """Valid slice words, generated by a seeded random walk on widths."""
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return random_word(random.Random(seed), max_crossings=max_crossings,
                       max_seam=max_seam, max_width=max_width)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split("]")[1].split(".")[0])):
            terminalreporter.write_line(line)
