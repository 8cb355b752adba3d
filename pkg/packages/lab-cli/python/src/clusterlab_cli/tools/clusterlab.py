import argparse
import sys

from pydantic import ValidationError

from clusterlab_cli.commands import cmd_exactdist, cmd_factors, cmd_moments, cmd_shamir, cmd_simulate, cmd_verify
from clusterlab_cli.config import build_config, load_env
from clusterlab_contracts.configs import (
    ExactDistConfig,
    FactorsConfig,
    MomentsConfig,
    ShamirConfig,
    SimulateConfig,
    VerifyConfig,
)
from clusterlab_core.errors import ClusterLabError
from clusterlab_core.logs import setup_logger

COMMANDS = {
    "moments": (MomentsConfig, cmd_moments),
    "exactdist": (ExactDistConfig, cmd_exactdist),
    "simulate": (SimulateConfig, cmd_simulate),
    "factors": (FactorsConfig, cmd_factors),
    "shamir": (ShamirConfig, cmd_shamir),
    "verify": (VerifyConfig, cmd_verify),
}

# argparse destinations that are not config fields
_META = {"cmd", "config", "env_file"}


def _common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--config", help="YAML file with parameters; flags override it")
    sp.add_argument("--env-file", help=".env file to load (default: ./.env when present)")
    sp.add_argument("--out", help="output file (default: stdout)")
    sp.add_argument("--format", choices=["json", "csv"])
    sp.add_argument("--workers", type=int, help="worker processes (default: $CLUSTERLAB_WORKERS or cpu count)")
    sp.add_argument("--log-level", dest="log_level")


def _instance(sp: argparse.ArgumentParser, p_required: bool = False) -> None:
    sp.add_argument("--n", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--p", required=p_required, help="edge probability as 'a/b' or a decimal")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="clusterlab", description="Clique-copy laboratory for G(n,p)")
    sub = ap.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("moments", help="Closed-form moment table")
    _common(sp)
    _instance(sp)

    sp = sub.add_parser("exactdist", help="Exact law of H_r(G(n,p)) as JSON lines")
    _common(sp)
    _instance(sp)

    sp = sub.add_parser("simulate", help="Seeded Monte Carlo statistics")
    _common(sp)
    _instance(sp)
    sp.add_argument("--samples", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--statistics", nargs="+", help="statistic names (default: e W2 W3 t)")
    sp.add_argument("--expectation-samples", dest="expectation_samples", type=int)
    sp.add_argument("--omega", type=float)
    sp.add_argument("--plaus-C", dest="plaus_C", type=float)
    sp.add_argument("--plaus-delta", dest="plaus_delta", type=float)

    sp = sub.add_parser("factors", help="K_r-factor counts and expectations")
    _common(sp)
    _instance(sp)
    sp.add_argument("--m", type=int, help="edge count for Sigma(n, m) (default: round(pi N))")
    sp.add_argument("--graph", help="graph or hypergraph file in the text format")
    sp.add_argument("--omega", type=float)

    sp = sub.add_parser("shamir", help="Random hyperedge-deletion process")
    _common(sp)
    sp.add_argument("--n", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--runs", type=int)
    sp.add_argument("--stop-m", dest="stop_m", type=int)

    sp = sub.add_parser("verify", help="Run the identity suite")
    _common(sp)
    sp.add_argument("--grid", choices=["tiny", "small", "full"])
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    load_env(args.env_file)
    setup_logger("", level=args.log_level)
    model, command = COMMANDS[args.cmd]
    flags = {k: v for k, v in vars(args).items() if k not in _META}
    try:
        cfg = build_config(model, args.config, flags)
        return command(cfg)
    except ValidationError as e:
        print(f"ERROR: invalid configuration:\n{e}", file=sys.stderr)
        return 2
    except (ClusterLabError, ValueError, OSError) as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
