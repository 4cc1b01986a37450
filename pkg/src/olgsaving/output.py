"""CSV and JSON serialisation with atomic file writes.

Numbers are written with 12 significant digits. Files are written to a
temporary sibling first and then renamed over the target.
"""

import csv
import io
import json
import logging
import math
import os
import sys
import tempfile
from dataclasses import asdict
from pathlib import Path

import pandas as pd

from olgsaving.constants import PANEL_COLUMNS, SIGNIFICANT_DIGITS
from olgsaving.errors import DomainError
from olgsaving.utils import format_number, round_sig

logger = logging.getLogger(__name__)


def rows_to_csv(rows, columns):
    """Render rows (dictionaries) as RFC 4180 CSV text with a header row.

    Args:
        rows: Iterable of dictionaries.
        columns: Column order; extra keys are ignored.

    Returns:
        CSV text, one CRLF-terminated record per row.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(column)) for column in columns])
    return buffer.getvalue()


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, (bool, int, float)):
        return format_number(value, SIGNIFICANT_DIGITS)
    return str(value)


def _rounded(value):
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            return None
        return round_sig(value)
    if isinstance(value, dict):
        return {key: _rounded(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_rounded(item) for item in value]
    if hasattr(value, "item"):
        return _rounded(value.item())
    return value


def to_json(document):
    """Render a document as indented JSON with floats rounded to 12 significant digits."""
    return json.dumps(_rounded(document), indent=2) + "\n"


def write_atomic(path, text):
    """Write text to path through a temporary file in the same directory."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    logger.info("wrote %s", target)


def emit(text, path=None):
    """Write text to path, or to stdout when path is None."""
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        write_atomic(path, text)


def write_panel_csv(panel, path):
    """Write a list of PanelObservation with the fixed panel header."""
    rows = [asdict(obs) for obs in panel]
    write_atomic(path, rows_to_csv(rows, PANEL_COLUMNS))


def read_panel_csv(path):
    """Read a panel CSV into a DataFrame, checking the header.

    Raises:
        DomainError: If a panel column is missing.
    """
    frame = pd.read_csv(path, encoding="utf-8")
    missing = [column for column in PANEL_COLUMNS if column not in frame.columns]
    if missing:
        raise DomainError(f"{path}: missing panel columns: {', '.join(missing)}")
    return frame[list(PANEL_COLUMNS)]
