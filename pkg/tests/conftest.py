import random

from hypothesis import settings, strategies as st

from knotgroups.gauss import make_code
from knotgroups.words import Word

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def words(rank: int = 3, max_len: int = 8):
    letters = st.tuples(st.integers(0, rank - 1), st.sampled_from((1, -1)))
    return st.lists(letters, max_size=max_len).map(Word.from_letters)


@st.composite
def marked_codes(draw, max_crossings: int = 5):
    """Random signed Gauss codes, classical or virtual."""
    n = draw(st.integers(1, max_crossings))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    seq = [c for c in range(1, n + 1) for _ in (0, 1)]
    rng.shuffle(seq)
    first_over = {c: rng.random() < 0.5 for c in range(1, n + 1)}
    sign = {c: rng.choice((1, -1)) for c in range(1, n + 1)}
    seen = set()
    passes = []
    for c in seq:
        over = first_over[c] if c not in seen else not first_over[c]
        seen.add(c)
        passes.append((c, "O" if over else "U", sign[c]))
    return make_code(passes)


# acceptance criterion number -> (title, passed)
ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def pytest_runtest_makereport(item, call):
    n = getattr(item.function, "criterion", None)
    if n is not None and call.when == "call":
        ACCEPTANCE[n] = (item.function.title, call.excinfo is None)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}")
