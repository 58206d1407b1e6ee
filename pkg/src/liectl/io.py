"""JSON interchange: matrices as row-major arrays of ``[re, im]`` pairs.

File shapes::

    system    {"n": 2, "ambient": "SU(2)",
               "generators": [{"name": "x", "matrix": [[[re, im], ...], ...]}, ...]}
    matrix    {"matrix": [[[re, im], ...], ...]}
    schedule  {"system": "<system file ref>", "word": [[t, "name"], ...]}
    state     {"atoms": [["label", w], ...]}

Floats are written with Python's shortest round-trip repr, so a matrix
survives a write/read cycle bit for bit.
"""
import hashlib
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .lie import GeneratorSystem
from .words import word_from_json

__all__ = [
    "InputError",
    "Report",
    "load_json",
    "matrix_from_json",
    "matrix_to_json",
    "system_from_json",
    "system_to_json",
    "schedule_from_json",
    "digest",
]


class InputError(ValueError):
    """A file could not be parsed into the expected structure."""


def load_json(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        return json.loads(text), text
    except json.JSONDecodeError as exc:
        lines = text.splitlines()
        context = lines[exc.lineno - 1] if 0 < exc.lineno <= len(lines) else ""
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}\n    {context}") from None


def _number(x, where):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise InputError(f"{where}: expected a number, got {x!r}")
    return float(x)


def matrix_from_json(rows, where="matrix"):
    if not isinstance(rows, list) or not rows:
        raise InputError(f"{where}: expected a non-empty list of rows")
    n = len(rows)
    out = np.empty((n, n), dtype=complex)
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise InputError(f"{where}[{r}]: expected a row of {n} [re, im] pairs")
        for c, entry in enumerate(row):
            if not isinstance(entry, list) or len(entry) != 2:
                raise InputError(f"{where}[{r}][{c}]: expected an [re, im] pair, got {entry!r}")
            out[r, c] = complex(_number(entry[0], f"{where}[{r}][{c}]"), _number(entry[1], f"{where}[{r}][{c}]"))
    return out


def matrix_to_json(M):
    M = np.asarray(M, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def system_from_json(obj, where="system"):
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object")
    for key in ("n", "generators"):
        if key not in obj:
            raise InputError(f"{where}: missing field {key!r}")
    n = obj["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InputError(f"{where}.n: expected a positive integer")
    gens = obj["generators"]
    if not isinstance(gens, list) or not gens:
        raise InputError(f"{where}.generators: expected a non-empty list")
    parsed = []
    for k, g in enumerate(gens):
        loc = f"{where}.generators[{k}]"
        if isinstance(g, dict):
            if "name" not in g or "matrix" not in g:
                raise InputError(f"{loc}: expected fields 'name' and 'matrix'")
            name, rows = g["name"], g["matrix"]
        elif isinstance(g, list) and len(g) == 2:
            name, rows = g
        else:
            raise InputError(f"{loc}: expected {{'name', 'matrix'}} or [name, matrix]")
        if not isinstance(name, str):
            raise InputError(f"{loc}.name: expected a string")
        parsed.append((name, matrix_from_json(rows, f"{loc}.matrix")))
    try:
        return GeneratorSystem(n, tuple(parsed), obj.get("ambient", "U(n)"))
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from None


def system_to_json(sys):
    return {
        "n": sys.n,
        "ambient": sys.ambient.replace("n", str(sys.n)),
        "generators": [{"name": name, "matrix": matrix_to_json(X)} for name, X in sys.generators],
    }


def schedule_from_json(obj, where="schedule"):
    if not isinstance(obj, dict) or "word" not in obj:
        raise InputError(f'{where}: expected an object with a "word" list')
    try:
        return word_from_json(obj["word"]), obj.get("system")
    except (ValueError, TypeError) as exc:
        raise InputError(f"{where}.word: {exc}") from None


def digest(texts, flags):
    h = hashlib.sha256()
    for t in texts:
        h.update(t.encode())
        h.update(b"\0")
    h.update(json.dumps(flags, sort_keys=True).encode())
    return h.hexdigest()


def _numpy_scalar(x):
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(f"{type(x).__name__} is not JSON serializable")


def _plain(x):
    return json.loads(json.dumps(x, allow_nan=False, default=_numpy_scalar))


@dataclass
class Report:
    """Outcome of one CLI command. ``to_json``/``from_json`` round-trip exactly."""

    command: str
    inputs_digest: str
    verdicts: dict = field(default_factory=dict)
    dimensions: dict = field(default_factory=dict)
    margins: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("verdicts", "dimensions", "margins", "timings", "details"):
            setattr(self, name, _plain(getattr(self, name)))

    def to_json(self):
        return json.dumps(asdict(self), indent=2, sort_keys=True, allow_nan=False)

    @classmethod
    def from_json(cls, text):
        return cls(**json.loads(text))

    def deterministic_part(self):
        d = asdict(self)
        d.pop("timings")
        return d

    def to_text(self):
        lines = [f"{self.command}  (inputs {self.inputs_digest[:12]})"]
        for title in ("verdicts", "dimensions", "margins", "details"):
            section = getattr(self, title)
            if not section:
                continue
            lines.append(f"{title}:")
            for key in sorted(section):
                lines.append(f"  {key}: {_short(section[key])}")
        if self.timings:
            lines.append("timings: " + ", ".join(f"{k}={v:.3f}s" for k, v in sorted(self.timings.items())))
        return "\n".join(lines)


def _short(value):
    text = json.dumps(value)
    return text if len(text) <= 100 else text[:97] + "..."
