"""Small file helpers: tolerant reading, atomic writing."""

import os
import tempfile
from pathlib import Path


def read_text(path) -> str:
    """Read a UTF-8 text file; invalid byte sequences are replaced, not fatal."""
    return Path(path).read_text(encoding="utf-8", errors="replace")


def atomic_write_text(path, text: str) -> None:
    """Write ``text`` to ``path`` via a temp file + rename in one step.

    Readers never observe a half-written file; reruns either fully
    replace the output or leave the previous version intact.
    """
    path = Path(path)
    fd, tmp_name = tempfile.mkstemp(
        dir=path.parent or ".", prefix=path.name + ".", suffix=".tmp"
    )
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise
