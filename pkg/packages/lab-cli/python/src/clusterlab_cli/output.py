"""Writers for result files: sorted-key JSON, JSON lines and string-only CSV."""
import json
import sys
from pathlib import Path
from typing import Iterable, Optional

import pandas as pd
from pydantic import BaseModel

from clusterlab_core.exactprob import Number, format_number, format_real


def render(x: Number, exact: bool) -> str:
    return format_number(x) if exact else format_real(x)


def _dump(record: BaseModel) -> str:
    return json.dumps(record.model_dump(by_alias=True, exclude_none=True), sort_keys=True, indent=2)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        path = Path(out)
        if path.parent and not path.parent.exists():
            path.parent.mkdir(parents=True)
        path.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def write_json(record: BaseModel, out: Optional[str]) -> None:
    _emit(_dump(record) + "\n", out)


def write_jsonl(records: Iterable[BaseModel], out: Optional[str]) -> None:
    lines = [
        json.dumps(r.model_dump(by_alias=True, exclude_none=True), sort_keys=True) + "\n" for r in records
    ]
    _emit("".join(lines), out)


def write_csv(frame: pd.DataFrame, out: Optional[str]) -> None:
    _emit(frame.to_csv(index=False, lineterminator="\n"), out)
