"""
Deterministic CSV/JSON artifacts.

CSV: header row, '.' decimals, 17 significant digits, LF endings.
JSON: UTF-8, sorted keys.
"""

import json
import logging
import sys
from typing import Any, List, Optional, Sequence

import pandas as pd


logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


def render_csv(rows: List[dict], columns: Sequence[str]) -> str:
    frame = pd.DataFrame(rows, columns=list(columns))
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def render_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def emit(text: str, out: Optional[str] = None) -> None:
    """Write to the given path, or stdout when no path is given"""
    if out:
        with open(out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        logger.info(f"💾 Wrote {out}")
    else:
        sys.stdout.write(text)
