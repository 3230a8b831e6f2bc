"""JSON problem documents: a game, joint states, a scheme and run options.

Layout::

    {
      "game": {"payoffs": [[[a, b], ...], ...], "row_labels": [...], "col_labels": [...]},
      "states": [[[re, im], ...], ...],
      "scheme": "mw" | "refined" | "emw",
      "refined": {"player1": {"theta": t, "phi": f}, "player2": {...}},
      "options": {"tolerance": 1e-9, "format": "json", "max_support": null},
      "expected": {...}
    }

Amplitudes are listed row-major over ``|ij>``. ``"state"`` (a single
amplitude list) is accepted in place of ``"states"``. ``refined``,
``options`` and ``expected`` are optional.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import QGamesError
from .game import BimatrixGame
from .linalg import DEFAULT_TOLERANCE
from .refined import UnitaryParams

SCHEMES = ("mw", "refined", "emw")
FORMATS = ("json", "table")


class SchemaError(QGamesError, ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path or '/'}: {message}")
        self.path = path
        self.message = message


class NormalizationError(SchemaError):
    pass


class DimensionError(SchemaError):
    pass


@dataclass(frozen=True, eq=False)
class ProblemDocument:
    game: BimatrixGame
    states: tuple[np.ndarray, ...] = ()
    scheme: str = "mw"
    refined: tuple[UnitaryParams, UnitaryParams] | None = None
    tolerance: float | None = None
    format: str = "json"
    max_support: int | None = None
    expected: dict | None = None
    extra_options: dict = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "game": {
                "payoffs": self.game.payoffs.tolist(),
                "row_labels": list(self.game.row_labels),
                "col_labels": list(self.game.col_labels),
            },
            "states": [[[float(z.real), float(z.imag)] for z in s] for s in self.states],
            "scheme": self.scheme,
        }
        if self.refined is not None:
            out["refined"] = {
                f"player{k + 1}": {"theta": p.theta, "phi": p.phi} for k, p in enumerate(self.refined)
            }
        options = {"format": self.format, **self.extra_options}
        if self.tolerance is not None:
            options["tolerance"] = self.tolerance
        if self.max_support is not None:
            options["max_support"] = self.max_support
        out["options"] = options
        if self.expected is not None:
            out["expected"] = self.expected
        return out

    def __eq__(self, other):
        if not isinstance(other, ProblemDocument):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    __hash__ = None


def serialize_problem(doc: ProblemDocument) -> str:
    return json.dumps(doc.to_dict(), indent=2)


def _number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(path, f"expected a number, got {type(value).__name__}")
    if not math.isfinite(value):
        raise SchemaError(path, "number must be finite")
    return float(value)


def _list(value, path: str, nonempty: bool = True) -> list:
    if not isinstance(value, list):
        raise SchemaError(path, f"expected an array, got {type(value).__name__}")
    if nonempty and not value:
        raise SchemaError(path, "array must not be empty")
    return value


def _object(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise SchemaError(path, f"expected an object, got {type(value).__name__}")
    return value


def _parse_game(obj, path: str) -> BimatrixGame:
    obj = _object(obj, path)
    if "payoffs" not in obj:
        raise SchemaError(f"{path}/payoffs", "missing")
    rows = _list(obj["payoffs"], f"{path}/payoffs")
    payoffs = []
    width = None
    for i, row in enumerate(rows):
        row = _list(row, f"{path}/payoffs/{i}")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise DimensionError(f"{path}/payoffs/{i}", f"row has {len(row)} entries, expected {width}")
        parsed = []
        for j, pair in enumerate(row):
            pair = _list(pair, f"{path}/payoffs/{i}/{j}")
            if len(pair) != 2:
                raise SchemaError(f"{path}/payoffs/{i}/{j}", "payoff entry must be a pair [a, b]")
            parsed.append([_number(x, f"{path}/payoffs/{i}/{j}/{k}") for k, x in enumerate(pair)])
        payoffs.append(parsed)
    labels = {}
    for key, size in (("row_labels", len(payoffs)), ("col_labels", width)):
        if key in obj:
            names = _list(obj[key], f"{path}/{key}")
            if len(names) != size or not all(isinstance(s, str) for s in names):
                raise DimensionError(f"{path}/{key}", f"expected {size} strings")
            labels[key] = tuple(names)
    return BimatrixGame(np.array(payoffs), labels.get("row_labels", ()), labels.get("col_labels", ()))


def _parse_state(obj, path: str, dim: int, tol: float) -> np.ndarray:
    amps = _list(obj, path)
    if len(amps) != dim:
        raise DimensionError(path, f"state has {len(amps)} amplitudes, expected {dim}")
    values = []
    for k, amp in enumerate(amps):
        amp = _list(amp, f"{path}/{k}")
        if len(amp) != 2:
            raise SchemaError(f"{path}/{k}", "amplitude must be a pair [re, im]")
        values.append(complex(_number(amp[0], f"{path}/{k}/0"), _number(amp[1], f"{path}/{k}/1")))
    psi = np.array(values)
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > tol:
        raise NormalizationError(path, f"state norm is {norm:.12g}, expected 1")
    return psi


def _parse_params(obj, path: str) -> UnitaryParams:
    obj = _object(obj, path)
    for key in ("theta", "phi"):
        if key not in obj:
            raise SchemaError(f"{path}/{key}", "missing")
    try:
        return UnitaryParams(_number(obj["theta"], f"{path}/theta"), _number(obj["phi"], f"{path}/phi"))
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def parse_problem(text: bytes | str) -> ProblemDocument:
    """Parse and validate a JSON problem document.

    Raises ``SchemaError`` (or its subclasses ``NormalizationError`` and
    ``DimensionError``) carrying a JSON-pointer path to the first problem.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SchemaError("", f"not UTF-8: {exc}") from None
    try:
        root = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("", f"invalid JSON: {exc}") from None
    root = _object(root, "")

    options = _object(root.get("options", {}), "/options")
    extra = {k: v for k, v in options.items() if k not in ("tolerance", "format", "max_support")}
    tolerance = None
    if options.get("tolerance") is not None:
        tolerance = _number(options["tolerance"], "/options/tolerance")
        if tolerance <= 0:
            raise SchemaError("/options/tolerance", "must be positive")
    fmt = options.get("format", "json")
    if fmt not in FORMATS:
        raise SchemaError("/options/format", f"must be one of {FORMATS}")
    max_support = options.get("max_support")
    if max_support is not None and (isinstance(max_support, bool) or not isinstance(max_support, int) or max_support < 1):
        raise SchemaError("/options/max_support", "must be a positive integer")

    if "game" not in root:
        raise SchemaError("/game", "missing")
    game = _parse_game(root["game"], "/game")
    dim = game.n_rows * game.n_cols
    tol = tolerance if tolerance is not None else DEFAULT_TOLERANCE

    if "states" in root and "state" in root:
        raise SchemaError("/state", "give either 'state' or 'states', not both")
    if "state" in root:
        states = (_parse_state(root["state"], "/state", dim, tol),)
    else:
        raw = _list(root.get("states", []), "/states", nonempty=False)
        states = tuple(_parse_state(s, f"/states/{k}", dim, tol) for k, s in enumerate(raw))

    scheme = root.get("scheme", "mw")
    if scheme not in SCHEMES:
        raise SchemaError("/scheme", f"must be one of {SCHEMES}")

    refined = None
    if root.get("refined") is not None:
        obj = _object(root["refined"], "/refined")
        refined = tuple(_parse_params(obj.get(f"player{k}"), f"/refined/player{k}") for k in (1, 2))

    expected = root.get("expected")
    if expected is not None:
        _object(expected, "/expected")

    return ProblemDocument(
        game=game,
        states=states,
        scheme=scheme,
        refined=refined,
        tolerance=tolerance,
        format=fmt,
        max_support=max_support,
        expected=expected,
        extra_options=extra,
    )
