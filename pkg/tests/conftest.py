import os
import random
import sys

import pytest
from hypothesis import settings

SEED = int(os.environ.get("MOORECAT_SEED", "20240917"))

settings.register_profile("moorecat", max_examples=100, deadline=None)
settings.load_profile("moorecat")


@pytest.hookimpl(tryfirst=True)
def pytest_configure(config):
    # the hypothesis plugin reads this option when seeding its global random
    if getattr(config.option, "hypothesis_seed", None) is None and "MOORECAT_SEED" in os.environ:
        config.option.hypothesis_seed = SEED


@pytest.fixture
def rng():
    return random.Random(SEED)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
