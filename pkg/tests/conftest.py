import numpy as np
import pytest

from pairlp.linear_code import BinaryCode, gallager_ensemble, repetition_code

HAMMING_H = [[1, 0, 1, 0, 1, 0, 1],
             [0, 1, 1, 0, 0, 1, 1],
             [0, 0, 0, 1, 1, 1, 1]]


def tiny_codes() -> dict[str, BinaryCode]:
    """Small codes used across the suite, keyed by a short label."""
    return {
        "rep3": repetition_code(3),
        "single": BinaryCode(2, ((0, 1),)),
        "rep5": repetition_code(5),
        "tree": BinaryCode(5, ((0, 1, 2), (2, 3, 4))),
        # three weight-3 checks sharing bits 0, 2, 4: a length-6 Tanner cycle
        "cycle6": BinaryCode(6, ((0, 1, 2), (2, 3, 4), (4, 5, 0))),
        "hamming7": BinaryCode.from_matrix(HAMMING_H),
        "g8": gallager_ensemble(8, 3, 4, seed=3),
    }


@pytest.fixture
def rep3():
    return repetition_code(3)


@pytest.fixture
def chain3():
    return BinaryCode.from_matrix([[1, 1, 0], [0, 1, 1]])


@pytest.fixture
def cycle6():
    return tiny_codes()["cycle6"]


@pytest.fixture
def hamming7():
    return tiny_codes()["hamming7"]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE: dict[int, str] = {}


def record_criterion(number: int, title: str, passed: bool, detail: str) -> None:
    line = f"{'PASS' if passed else 'FAIL'} criterion {number} ({title}): {detail}"
    ACCEPTANCE[number] = line
    print(line, flush=True)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
