import numpy as np
import pytest
from hypothesis import strategies as st

from meetsim.generators import diamond, point, random_model, two_chain


@pytest.fixture
def dia():
    return diamond()


@pytest.fixture
def chain2():
    return two_chain()


@pytest.fixture
def one():
    return point(("p", "q"))


def model_corpus(count, seed=0, max_size=6):
    rng = np.random.default_rng(seed)
    return [random_model(rng, max_size=max_size) for _ in range(count)]


seeds = st.integers(min_value=0, max_value=2**32 - 1)


@st.composite
def models(draw, max_size=6):
    return random_model(np.random.default_rng(draw(seeds)), max_size=max_size)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(mod.RESULTS):
            terminalreporter.write_line(mod.RESULTS[n])
