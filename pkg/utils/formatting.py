"""
Formatting utilities: render backend results as JSON, CSV or text.

JSON is emitted with a fixed layout so that parsing it and serializing the
parsed object again reproduces the same bytes. CSV always starts with the
header row of the DataFrame it came from.
"""

import json
from typing import Any

import pandas as pd


def to_json(data: Any) -> str:
    """Serialize with the toolkit's fixed JSON layout."""
    return json.dumps(data, indent=2, ensure_ascii=True)


def frame_to_csv(frame: pd.DataFrame) -> str:
    """CSV with header row, no index, '\\n' line endings."""
    return frame.to_csv(index=False, lineterminator='\n')


def frame_to_text(frame: pd.DataFrame) -> str:
    """Aligned human-oriented table."""
    if frame.empty:
        return '(empty)'
    return frame.to_string(index=False)
