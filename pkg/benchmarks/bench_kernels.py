"""Compare the compiled and pure-Python kernels on projection and Foata reconstruction.

    python3 benchmarks/bench_kernels.py [--n 100000] [--repeat 3]
"""

import argparse
import os
import subprocess
import sys

WORKLOAD = """
import random, sys, time
from comtrace import BACKEND
from comtrace.alphabet import enumerate_steps, validate_alphabet
from comtrace.projection import projection_representation
from comtrace.reconstruct import foata
from comtrace.stepseq import StepSequence

n, repeat = int(sys.argv[1]), int(sys.argv[2])
rng = random.Random(5)
actions = [f"x{i}" for i in range(10)]
sim, ser = [], []
for i, a in enumerate(actions):
    for b in actions[i + 1:]:
        if rng.random() < 0.5:
            sim.append((a, b))
            ser += [(x, y) for x, y in ((a, b), (b, a)) if rng.random() < 0.5]
theta = validate_alphabet(actions, sim, ser)
steps = enumerate_steps(theta)

def sequence(size):
    out, total = [], 0
    while total < size:
        s = rng.choice(steps)
        if total + len(s) > size:
            s = frozenset([min(s)])
        out.append(s)
        total += len(s)
    return StepSequence(theta, out, check=False)

def best(fn):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)

w, small = sequence(n), sequence(n // 10)
print(BACKEND, best(lambda: projection_representation(theta, w)), best(lambda: foata(theta, small)))
"""


def run(pure: bool, n: int, repeat: int):
    env = dict(os.environ)
    env.pop("COMTRACE_PURE_PYTHON", None)
    if pure:
        env["COMTRACE_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", WORKLOAD, str(n), str(repeat)],
                         env=env, capture_output=True, text=True, check=True)
    backend, proj, canon = out.stdout.split()
    return backend, float(proj), float(canon)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=100_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    rows = [run(False, args.n, args.repeat), run(True, args.n, args.repeat)]
    print(f"{'backend':<8} {'project n=' + str(args.n):>18} {'foata n=' + str(args.n // 10):>16}")
    for backend, proj, canon in rows:
        print(f"{backend:<8} {proj:>17.3f}s {canon:>15.3f}s")
    (b1, p1, c1), (b2, p2, c2) = rows
    if b1 != b2:
        print(f"speedup  {p2 / p1:>17.1f}x {c2 / c1:>15.1f}x")
    else:
        print("compiled extension unavailable; both runs used the pure-Python kernels")


if __name__ == "__main__":
    main()
