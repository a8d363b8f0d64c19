import pytest

from hopfcat.hopf import corpus as build_corpus
from hopfcat.instances import seed_from_env, sweep_instances

CHARGES = range(-2, 4)
SWEEP_COUNT = 20


@pytest.fixture(scope="session")
def corpus():
    return build_corpus()


@pytest.fixture(scope="session")
def seed():
    return seed_from_env()


class Sweep:
    """Seeded YD_{i-1} modules per (algebra, i), built once and shared."""

    def __init__(self, corpus, seed, count=SWEEP_COUNT):
        self.corpus = corpus
        self.seed = seed
        self.count = count
        self._cache = {}

    def __call__(self, name, i):
        key = (name, i)
        if key not in self._cache:
            self._cache[key] = sweep_instances(self.corpus[name], i - 1, self.count, self.seed)
        return self._cache[key]

    def items(self):
        for name in self.corpus:
            for i in CHARGES:
                for m in self(name, i):
                    yield name, i, m


@pytest.fixture(scope="session")
def sweep(corpus, seed):
    return Sweep(corpus, seed)


def bundled_struct(name):
    from importlib import resources

    from hopfcat.fileio import load_structure
    return load_structure(resources.files("hopfcat.data") / f"{name}.struct")


# ---------------------------------------------------------------------------
# acceptance summary: one line per criterion

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _criteria[n] = (title, rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, ok = _criteria[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}")
