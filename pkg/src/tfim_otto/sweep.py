"""Deterministic parameter sweeps over (field, cold temperature) grids.

Grid points are independent pure evaluations, so they can be farmed out to
a worker pool; records are assembled by grid index, never by completion
order, and output bytes are identical for any worker count.
"""

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .cycle import CycleSpec, classify, finite_cycle, first_order_heats, infinitesimal_work
from .numerics import QUAD_REL_TOL

X_AXIS_NAMES = {"infinitesimal": "h", "finite": "h_av"}
Y_AXIS_NAME = "t_cold"
MODES = ("infinitesimal", "finite")
FIXED_KEYS = ("g", "t_hot", "delta_h")

CSV_HEADER = "x,y,work,q_hot,q_cold,regime"
FAILED_LABEL = "failed"


@dataclass(frozen=True)
class Axis:
    name: str
    min: float
    max: float
    steps: int

    def __post_init__(self):
        if self.steps < 2:
            raise ValueError(f"axis {self.name}: steps must be >= 2, got {self.steps}")
        if not self.min < self.max:
            raise ValueError(
                f"axis {self.name}: min must be < max, got [{self.min}, {self.max}]"
            )

    def values(self) -> np.ndarray:
        return np.linspace(self.min, self.max, self.steps)


@dataclass(frozen=True)
class SweepGrid:
    """A regime-map request: x axis (field), y axis (cold temperature),
    remaining cycle parameters fixed, and the stroke mode."""

    x_axis: Axis
    y_axis: Axis
    fixed: dict
    mode: str

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.x_axis.name != X_AXIS_NAMES[self.mode]:
            raise ValueError(
                f"{self.mode} sweeps take x_axis name "
                f"{X_AXIS_NAMES[self.mode]!r}, got {self.x_axis.name!r}"
            )
        if self.y_axis.name != Y_AXIS_NAME:
            raise ValueError(f"y_axis name must be {Y_AXIS_NAME!r}, "
                             f"got {self.y_axis.name!r}")
        missing = [k for k in FIXED_KEYS if k not in self.fixed]
        if missing:
            raise ValueError(f"fixed is missing {missing}")
        unknown = [k for k in self.fixed if k not in FIXED_KEYS]
        if unknown:
            raise ValueError(f"unknown fixed fields {unknown}")

    @classmethod
    def from_dict(cls, doc: dict) -> "SweepGrid":
        """Strict parse of the JSON config; unknown fields are an error."""
        allowed = {"x_axis", "y_axis", "fixed", "mode"}
        unknown = [k for k in doc if k not in allowed]
        if unknown:
            raise ValueError(f"unknown config fields {unknown}")
        missing = [k for k in allowed if k not in doc]
        if missing:
            raise ValueError(f"config is missing fields {sorted(missing)}")
        axes = {}
        for key in ("x_axis", "y_axis"):
            spec = doc[key]
            extra = [k for k in spec if k not in ("name", "min", "max", "steps")]
            if extra:
                raise ValueError(f"unknown {key} fields {extra}")
            axes[key] = Axis(name=spec["name"], min=float(spec["min"]),
                             max=float(spec["max"]), steps=int(spec["steps"]))
        if not isinstance(doc["fixed"], dict):
            raise ValueError("fixed must be an object")
        fixed = {k: float(v) for k, v in doc["fixed"].items()}
        return cls(x_axis=axes["x_axis"], y_axis=axes["y_axis"],
                   fixed=fixed, mode=str(doc["mode"]))

    @classmethod
    def from_json(cls, path) -> "SweepGrid":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


@dataclass(frozen=True)
class SweepRecord:
    x: float
    y: float
    work: float
    q_hot: float
    q_cold: float
    regime: str


def _evaluate_point(task) -> SweepRecord:
    mode, g, t_hot, delta_h, x, y, rel_tol, zero_tol = task
    try:
        if mode == "infinitesimal":
            work = infinitesimal_work(g, x, t_hot, y, delta_h, rel_tol=rel_tol)
            q_hot, q_cold = first_order_heats(g, x, t_hot, y, delta_h,
                                              rel_tol=rel_tol)
            tol = zero_tol if zero_tol is not None else 1e-10 * g
            regime = classify(work, q_hot, q_cold, tol)
            return SweepRecord(x, y, work, q_hot, q_cold, regime.value)
        spec = CycleSpec(g, x + 0.5 * delta_h, x - 0.5 * delta_h, t_hot, y)
        result = finite_cycle(spec, zero_tolerance=zero_tol, rel_tol=rel_tol)
        return SweepRecord(x, y, result.work, result.q_hot, result.q_cold,
                           result.regime.value)
    except Exception:
        nan = float("nan")
        return SweepRecord(x, y, nan, nan, nan, FAILED_LABEL)


def run_sweep(grid: SweepGrid, threads: int = 1,
              rel_tol=QUAD_REL_TOL, zero_tolerance=None) -> list[SweepRecord]:
    """Evaluate the grid row-major in (y, x); failures become marker records
    rather than aborting the sweep."""
    g = grid.fixed["g"]
    t_hot = grid.fixed["t_hot"]
    delta_h = grid.fixed["delta_h"]
    tasks = [(grid.mode, g, t_hot, delta_h, float(x), float(y),
              rel_tol, zero_tolerance)
             for y in grid.y_axis.values()
             for x in grid.x_axis.values()]
    if threads <= 1:
        return [_evaluate_point(task) for task in tasks]
    chunk = max(1, math.ceil(len(tasks) / (8 * threads)))
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(_evaluate_point, tasks, chunksize=chunk))


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def emit(records, fmt: str, path) -> None:
    """Write records as CSV (12 significant digits, LF endings) or JSON
    lines; identical inputs give identical bytes."""
    if fmt == "csv":
        text = render_csv(records)
    elif fmt == "json-lines":
        text = render_json_lines(records)
    else:
        raise ValueError(f"format must be 'csv' or 'json-lines', got {fmt!r}")
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as err:
        raise OSError(f"cannot write sweep output to {path}: {err}") from err


def render_csv(records) -> str:
    lines = [CSV_HEADER]
    for r in records:
        lines.append(",".join((_fmt(r.x), _fmt(r.y), _fmt(r.work),
                               _fmt(r.q_hot), _fmt(r.q_cold), r.regime)))
    return "\n".join(lines) + "\n"


def render_json_lines(records) -> str:
    def jsonable(value):
        return None if math.isnan(value) else value

    lines = []
    for r in records:
        lines.append(json.dumps({
            "x": r.x, "y": r.y,
            "work": jsonable(r.work),
            "q_hot": jsonable(r.q_hot),
            "q_cold": jsonable(r.q_cold),
            "regime": r.regime,
        }))
    if not lines:
        return ""
    return "\n".join(lines) + "\n"
