import argparse
import sys

from clusterlab_core.logs import setup_logger
from clusterlab_guardians.suite import run_identity_suite


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--grid", default="tiny", choices=["tiny", "small", "full"])
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--log-level", default=None)
    args = ap.parse_args()
    setup_logger("clusterlab_guardians", level=args.log_level)
    rep = run_identity_suite(args.grid, args.workers)
    if rep.ok:
        print(f"OK: {rep.checked} identities checked on grid {args.grid}")
        sys.exit(0)
    for e in rep.issues:
        print(f"[{e.code}] {e.message} @ {e.path}", file=sys.stderr)
    sys.exit(1)


if __name__ == "__main__":
    main()
