#!/usr/bin/env python
"""Pre-commit gate for clusterlab: style, tests, then the identity suite.

    python scripts/run_checks.py                 # style, fast tests, verify --grid tiny
    python scripts/run_checks.py --grid small    # a larger identity grid
    python scripts/run_checks.py --slow          # include tests marked slow
    python scripts/run_checks.py --fix           # let isort and black rewrite files
"""
import argparse
import subprocess
import sys
from pathlib import Path
from typing import List, NamedTuple, Optional

ROOT = Path(__file__).resolve().parent.parent

GREEN = "\033[92m"
YELLOW = "\033[93m"
RED = "\033[91m"
RESET = "\033[0m"
BOLD = "\033[1m"

# clusterlab verify exit codes
VERIFY_OUTCOMES = {0: "all identities hold", 1: "an identity failed", 2: "invalid grid or guard"}


class Step(NamedTuple):
    name: str
    argv: List[str]
    hint: str


def build_steps(grid: str = "tiny", slow: bool = False, fix: bool = False, workers: int = 1) -> List[Step]:
    py = sys.executable
    isort = [py, "-m", "isort", "."] if fix else [py, "-m", "isort", "--check-only", "--diff", "."]
    black = [py, "-m", "black", "."] if fix else [py, "-m", "black", "--check", "."]
    pytest = [py, "-m", "pytest", "tests"] + ([] if slow else ["-m", "not slow"])
    verify = [py, "-m", "clusterlab_cli.tools.clusterlab", "verify", "--grid", grid, "--workers", str(workers)]
    return [
        Step("isort", isort, "run with --fix or 'isort .'"),
        Step("black", black, "run with --fix or 'black .'"),
        Step("flake8", [py, "-m", "flake8", "packages", "tests", "scripts"], "fix the reported lines"),
        Step("pytest", pytest, "rerun the failing test with -x -vv"),
        Step(f"verify --grid {grid}", verify, "failure codes are listed in docs/runbooks/verify.md"),
    ]


def run_step(step: Step) -> int:
    print(f"\n{BOLD}{YELLOW}== {step.name}{RESET}")
    result = subprocess.run(step.argv, cwd=ROOT, capture_output=True, text=True)
    if result.stdout:
        print(result.stdout.rstrip())
    if result.stderr:
        print(f"{RED}{result.stderr.rstrip()}{RESET}")
    return result.returncode


def describe(step: Step, code: int) -> str:
    if step.name.startswith("verify"):
        return VERIFY_OUTCOMES.get(code, f"exit {code}")
    return "ok" if code == 0 else f"exit {code}"


def main(argv: Optional[List[str]] = None) -> int:
    ap = argparse.ArgumentParser(description="Run clusterlab style checks, tests and the identity suite")
    ap.add_argument("--grid", choices=["tiny", "small", "full"], default="tiny")
    ap.add_argument("--slow", action="store_true", help="include tests marked slow")
    ap.add_argument("--fix", action="store_true", help="let isort and black rewrite files")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args(argv)

    results = []
    for step in build_steps(args.grid, args.slow, args.fix, args.workers):
        code = run_step(step)
        results.append((step, code))

    print(f"\n{BOLD}summary{RESET}")
    for step, code in results:
        color = GREEN if code == 0 else RED
        print(f"  {color}{step.name:<20} {describe(step, code)}{RESET}")
        if code != 0:
            print(f"  {'':<20} {step.hint}")

    failed = [step.name for step, code in results if code != 0]
    if failed:
        print(f"\n{RED}{BOLD}{len(failed)} of {len(results)} checks failed{RESET}")
        return 1
    print(f"\n{GREEN}{BOLD}all {len(results)} checks passed{RESET}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
