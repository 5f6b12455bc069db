import random
from pathlib import Path

import pytest

from comtrace.alphabet import enumerate_steps, load_alphabet, validate_alphabet
from comtrace.eni import load_net
from comtrace.stepseq import StepSequence, parse_stepseq

DATA = Path(__file__).resolve().parent.parent / "data"
WORKED_ALPHABET = DATA / "worked.alph"
IND_EXAMPLE = DATA / "ind_example.alph"
NETS = DATA / "nets"


@pytest.fixture(scope="session")
def theta():
    return load_alphabet(WORKED_ALPHABET)


@pytest.fixture(scope="session")
def seq(theta):
    def make(text, alphabet=None):
        return parse_stepseq(alphabet or theta, text)
    return make


@pytest.fixture(scope="session")
def four_net():
    return load_net(NETS / "four_actions.net")


@pytest.fixture(scope="session")
def chain_net():
    return load_net(NETS / "chain_two_sinks.net")


@pytest.fixture(scope="session")
def joint_net():
    return load_net(NETS / "chain_one_sink.net")


def random_alphabet(rng: random.Random, max_actions=4, radical=False):
    k = rng.randint(1, max_actions)
    actions = "abcdef"[:k]
    sim, ser = [], []
    for i, a in enumerate(actions):
        for b in actions[i + 1:]:
            if rng.random() < 0.7:
                sim.append((a, b))
                if radical:
                    ser += [(a, b), (b, a)]
                    continue
                for x, y in ((a, b), (b, a)):
                    if rng.random() < 0.5:
                        ser.append((x, y))
    return validate_alphabet(actions, sim, ser)


def random_sequence(rng: random.Random, alphabet, max_occurrences=6):
    steps = enumerate_steps(alphabet)
    budget = rng.randint(0, max_occurrences)
    out = []
    while True:
        fitting = [s for s in steps if len(s) <= budget]
        if not fitting:
            break
        s = rng.choice(fitting)
        out.append(s)
        budget -= len(s)
    return StepSequence(alphabet, out, check=False)


def random_word(rng: random.Random, actions, max_len=7):
    return tuple(rng.choice(actions) for _ in range(rng.randint(0, max_len)))


# one line per acceptance criterion, printed after the run
ACCEPTANCE_RESULTS = []


def record_criterion(label: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE_RESULTS.append((label, ok, detail))
    assert ok, f"{label}: {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in ACCEPTANCE_RESULTS:
        line = f"{'PASS' if ok else 'FAIL'}  {label}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
