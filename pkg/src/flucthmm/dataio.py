"""On-disk formats: CSV images, binary PGM images, and single-column series CSVs.

Parsers report the byte offset of the first malformed content so command-line
diagnostics can name the exact spot. Floats are written with repr, which
round-trips every double bit-exactly.
"""

import numpy as np

from .errors import MalformedInput


def read_image_csv(path) -> np.ndarray:
    """Plain-text image: one row per line, comma-separated reals."""
    try:
        raw = open(path, "rb").read()
    except OSError as exc:
        raise MalformedInput(path, f"cannot read: {exc.strerror}") from exc
    rows = []
    width = None
    offset = 0
    for line in raw.split(b"\n"):
        stripped = line.strip()
        if stripped:
            fields = stripped.split(b",")
            if width is None:
                width = len(fields)
            elif len(fields) != width:
                raise MalformedInput(
                    path, f"ragged row: {len(fields)} fields, expected {width}", offset
                )
            try:
                rows.append([float(f) for f in fields])
            except ValueError:
                raise MalformedInput(path, "field is not a number", offset) from None
        offset += len(line) + 1
    if not rows:
        raise MalformedInput(path, "no rows", 0)
    return np.asarray(rows, dtype=np.float64)


def read_pgm(path) -> np.ndarray:
    """Binary (P5) PGM, 8-bit or 16-bit big-endian, promoted to float64."""
    try:
        raw = open(path, "rb").read()
    except OSError as exc:
        raise MalformedInput(path, f"cannot read: {exc.strerror}") from exc

    pos = 0

    def next_token():
        # whitespace-separated header tokens, with # comments running to EOL
        nonlocal pos
        while pos < len(raw):
            if raw[pos : pos + 1].isspace():
                pos += 1
            elif raw[pos : pos + 1] == b"#":
                while pos < len(raw) and raw[pos] != 0x0A:
                    pos += 1
            else:
                break
        start = pos
        while pos < len(raw) and not raw[pos : pos + 1].isspace():
            pos += 1
        if start == pos:
            raise MalformedInput(path, "truncated header", start)
        return raw[start:pos], start

    magic, at = next_token()
    if magic != b"P5":
        raise MalformedInput(path, f"unsupported magic {magic!r}, expected P5", at)
    dims = []
    for name in ("width", "height", "maxval"):
        token, at = next_token()
        if not token.isdigit():
            raise MalformedInput(path, f"non-numeric {name} {token!r}", at)
        dims.append(int(token))
    width, height, maxval = dims
    if width < 1 or height < 1:
        raise MalformedInput(path, f"bad dimensions {width}x{height}", at)
    if not 0 < maxval < 65536:
        raise MalformedInput(path, f"maxval {maxval} outside [1, 65535]", at)
    pos += 1  # single whitespace byte after maxval
    dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
    need = width * height * dtype.itemsize
    body = raw[pos : pos + need]
    if len(body) != need:
        raise MalformedInput(
            path, f"pixel data truncated: need {need} bytes, have {len(body)}", pos
        )
    pixels = np.frombuffer(body, dtype=dtype).reshape(height, width)
    return pixels.astype(np.float64)


def read_series_csv(path) -> np.ndarray:
    """Single-column series: one real value per line."""
    try:
        raw = open(path, "rb").read()
    except OSError as exc:
        raise MalformedInput(path, f"cannot read: {exc.strerror}") from exc
    values = []
    offset = 0
    for line in raw.split(b"\n"):
        stripped = line.strip()
        if stripped:
            try:
                values.append(float(stripped))
            except ValueError:
                raise MalformedInput(path, "line is not a number", offset) from None
        offset += len(line) + 1
    if not values:
        raise MalformedInput(path, "no values", 0)
    return np.asarray(values, dtype=np.float64)


def write_series_csv(path, values):
    values = np.asarray(values)
    with open(path, "w") as fh:
        for v in values:
            fh.write(f"{float(v)!r}\n")
