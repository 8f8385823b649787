"""Closed target sets in R^M under the max-norm.

Every shipped target is a coordinate box in disguise: a point is a degenerate
box and a max-norm ball is the box ``[c - R, c + R]``.  Enlargement ``B(C, r)``
and erosion ``I(C, eps)`` are therefore exact interval arithmetic.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np


class Target:
    kind = "target"
    dim: int

    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    def distance(self, x) -> np.ndarray:
        """Max-norm distance to the set; ``x`` has shape ``(M,)`` or ``(K, M)``."""
        lo, hi = self.bounds()
        x = np.asarray(x, dtype=np.float64)
        gap = np.maximum(np.maximum(lo - x, x - hi), 0.0)
        return gap.max(axis=-1)

    def contains(self, x, slack: float = 0.0):
        """Membership of ``x`` in ``B(self, slack)`` (closed)."""
        if slack < 0:
            raise ValueError("slack must be >= 0")
        lo, hi = self.bounds()
        x = np.asarray(x, dtype=np.float64)
        inside = (x >= lo - slack) & (x <= hi + slack)
        res = inside.all(axis=-1)
        return bool(res) if res.ndim == 0 else res

    def expand(self, r: float) -> "Target":
        if r < 0:
            raise ValueError("expansion radius must be >= 0")
        lo, hi = self.bounds()
        return Box(lo - r, hi + r)

    def shrink(self, eps: float) -> "Target":
        if eps < 0:
            raise ValueError("erosion depth must be >= 0")
        lo, hi = self.bounds()
        lo, hi = lo + eps, hi - eps
        if np.any(lo > hi):
            return EMPTY
        return Box(lo, hi)

    def spec(self) -> str:
        raise NotImplementedError


def _vec(x) -> np.ndarray:
    v = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if v.ndim != 1 or not np.all(np.isfinite(v)):
        raise ValueError(f"invalid coordinate vector {x!r}")
    return v


class Point(Target):
    value: np.ndarray
    kind = "point"

    def __init__(self, value):
        self.value = _vec(value)

    @property
    def dim(self):
        return len(self.value)

    def bounds(self):
        return self.value, self.value

    def shrink(self, eps):
        if eps < 0:
            raise ValueError("erosion depth must be >= 0")
        return self if eps == 0 else EMPTY

    def spec(self):
        return "point:" + ";".join(repr(float(v)) for v in self.value)

    def __repr__(self):
        return f"Point({self.value.tolist()})"


class Box(Target):
    lo: np.ndarray
    hi: np.ndarray
    kind = "box"

    def __init__(self, lo, hi):
        lo, hi = _vec(lo), _vec(hi)
        if lo.shape != hi.shape:
            raise ValueError("box bounds have different dimensions")
        if np.any(lo > hi):
            raise ValueError(f"box has lo > hi: {lo.tolist()} > {hi.tolist()}")
        self.lo = lo
        self.hi = hi

    @property
    def dim(self):
        return len(self.lo)

    def bounds(self):
        return self.lo, self.hi

    def spec(self):
        return "box:" + ";".join(f"{float(a)!r},{float(b)!r}" for a, b in zip(self.lo, self.hi))

    def __repr__(self):
        return f"Box({self.lo.tolist()}, {self.hi.tolist()})"


class Ball(Target):
    center: np.ndarray
    radius: float
    kind = "ball"

    def __init__(self, center, radius):
        if radius < 0:
            raise ValueError("ball radius must be >= 0")
        self.center = _vec(center)
        self.radius = float(radius)

    @property
    def dim(self):
        return len(self.center)

    def bounds(self):
        return self.center - self.radius, self.center + self.radius

    def shrink(self, eps):
        if eps < 0:
            raise ValueError("erosion depth must be >= 0")
        if eps > self.radius:
            return EMPTY
        return Ball(self.center, self.radius - eps)

    def spec(self):
        return "ball:" + ";".join(repr(float(c)) for c in self.center) + f",{self.radius!r}"

    def __repr__(self):
        return f"Ball({self.center.tolist()}, {self.radius})"


class _Empty(Target):
    kind = "empty"
    dim = None

    def distance(self, x):
        x = np.asarray(x, dtype=np.float64)
        return np.full(x.shape[:-1], np.inf) if x.ndim > 1 else np.inf

    def contains(self, x, slack=0.0):
        x = np.asarray(x, dtype=np.float64)
        return np.zeros(x.shape[0], dtype=bool) if x.ndim > 1 else False

    def expand(self, r):
        return self

    def shrink(self, eps):
        return self

    def spec(self):
        return "empty"

    def __repr__(self):
        return "EMPTY"


EMPTY = _Empty()


def parse_target(text: str) -> Target:
    """Parse ``point:1.0``, ``box:0.5,1.5``, ``ball:0.7,0.1``.

    Coordinates of multi-dimensional targets are separated by ``;``:
    ``point:0.9;1.0``, ``box:0.5,1.0;0.9,1.1``, ``ball:0.7;1.0,0.1``.
    """
    kind, sep, body = text.strip().partition(":")
    if not sep or not body:
        raise ValueError(f"bad target spec {text!r}")
    kind = kind.lower()
    try:
        if kind == "point":
            return Point([float(x) for x in body.split(";")])
        if kind == "box":
            pairs = [part.split(",") for part in body.split(";")]
            if any(len(p) != 2 for p in pairs):
                raise ValueError("box coordinates need lo,hi")
            return Box([float(p[0]) for p in pairs], [float(p[1]) for p in pairs])
        if kind == "ball":
            center, sep, radius = body.rpartition(",")
            if not sep:
                raise ValueError("ball needs center,radius")
            return Ball([float(x) for x in center.split(";")], float(radius))
    except ValueError as exc:
        raise ValueError(f"bad target spec {text!r}: {exc}") from None
    raise ValueError(f"unknown target kind {kind!r}")


def is_subset(inner: Target, outer: Target) -> bool:
    if inner is EMPTY:
        return True
    if outer is EMPTY:
        return False
    a, b = inner.bounds()
    c, d = outer.bounds()
    return bool(np.all(a >= c) and np.all(b <= d))


def interval_of(target: Target) -> tuple[float, float]:
    """``(lo, hi)`` of a one-dimensional target."""
    lo, hi = target.bounds()
    if len(lo) != 1:
        raise ValueError("target is not one-dimensional")
    return float(lo[0]), float(hi[0])


def targets_from(values: Sequence[str]) -> list[Target]:
    return [parse_target(v) for v in values]
