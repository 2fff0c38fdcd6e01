import random

import pytest

from duelqr.qr_core import max_byte_message
from duelqr.tables import EcLevel


@pytest.fixture
def rng():
    return random.Random(20241016)


def random_message(rng, max_len):
    return bytes(rng.randrange(256) for _ in range(rng.randint(0, max_len)))


@pytest.fixture
def message_pair(rng):
    cap = max_byte_message(7, EcLevel.H)
    m1 = random_message(rng, cap)
    m2 = random_message(rng, cap)
    while m2 == m1:
        m2 = random_message(rng, cap)
    return m1, m2


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS):
            terminalreporter.write_line(line)
