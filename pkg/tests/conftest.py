import os
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
SRC_DIRS = sorted(str(p) for p in (ROOT / "packages").glob("*/python/src"))

for src in SRC_DIRS:
    if src not in sys.path:
        sys.path.insert(0, src)


@pytest.fixture
def cli_env():
    """Environment for running the CLI in a subprocess against the source tree."""
    env = dict(os.environ)
    env["PYTHONPATH"] = os.pathsep.join(SRC_DIRS + [env.get("PYTHONPATH", "")])
    env.pop("CLUSTERLAB_GUARD_OVERRIDE", None)
    env["CLUSTERLAB_LOG_LEVEL"] = "WARNING"
    return env
