"""Finite cell model of a dissipative map with a wandering window.

The ambient space is a disjoint union of levels indexed by integers; level 0
is the wandering set W, split into finitely many named cells.  The map sends
level k onto level k+1 cell by cell.  A model stores exact rational cell
measures on a finite window of levels and, optionally, one geometric ratio
per side that extends the measures beyond the window (cells scale
proportionally out there).

Two constants summarise how wild the measures are:

* the least c >= 1 bounding every one-step backward measure ratio in both
  directions (``validate_star``), and
* the least K >= 1 bounding how far any cell's share of its level drifts
  from its share of W (``distortion_constant``).

All arithmetic is exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigError, EmptyWindow, NonPositiveMeasure, TailRuleMissing
from .rationals import as_fraction, format_fraction


@dataclass(frozen=True)
class MeasureSystem:
    """Exact measure data for one cell model.

    ``mu[k]`` holds the cell measures of level k, ordered like ``cells``.
    ``left_tail`` / ``right_tail`` are the per-step ratios applied below
    ``k_min`` and above ``k_max``; both present or both absent.
    """

    p: Fraction
    k_min: int
    k_max: int
    cells: tuple[str, ...]
    mu: dict[int, tuple[Fraction, ...]]
    left_tail: Fraction | None = None
    right_tail: Fraction | None = None

    def __post_init__(self) -> None:
        if self.p < 1:
            raise ConfigError(f"p: must be >= 1, got {self.p}")
        if not self.cells:
            raise ConfigError("cells: at least one cell is required")
        if len(set(self.cells)) != len(self.cells):
            raise ConfigError("cells: names must be distinct")
        if (self.left_tail is None) != (self.right_tail is None):
            raise ConfigError("tails: left and right must be given together")
        if self.window_empty:
            if self.mu:
                raise ConfigError("mu: empty window admits no level data")
            return
        if not self.k_min <= 0 <= self.k_max:
            raise ConfigError(
                f"window: must contain level 0, got [{self.k_min}, {self.k_max}]"
            )
        expected = set(range(self.k_min, self.k_max + 1))
        if set(self.mu) != expected:
            raise ConfigError("mu: levels must cover the window exactly")
        for k, row in self.mu.items():
            if len(row) != len(self.cells):
                raise ConfigError(f"mu[{k}]: expected {len(self.cells)} cell measures")

    # -- accessors ---------------------------------------------------------

    @property
    def window_empty(self) -> bool:
        return self.k_min > self.k_max

    @property
    def has_tails(self) -> bool:
        return self.left_tail is not None

    def levels(self) -> range:
        return range(self.k_min, self.k_max + 1)

    def _tail_factor(self, k: int) -> tuple[int, Fraction]:
        """Clamp k into the window; return (boundary level, scale factor)."""
        if k < self.k_min:
            if self.left_tail is None:
                raise TailRuleMissing(f"level {k} lies left of the window and no tail rule is set")
            return self.k_min, self.left_tail ** (self.k_min - k)
        if k > self.k_max:
            if self.right_tail is None:
                raise TailRuleMissing(f"level {k} lies right of the window and no tail rule is set")
            return self.k_max, self.right_tail ** (k - self.k_max)
        return k, Fraction(1)

    def mu_cell(self, k: int, i: int) -> Fraction:
        """Measure of cell i at level k, tail-extended when k is outside
        the window."""
        if self.window_empty:
            raise EmptyWindow("the level window is empty")
        base, factor = self._tail_factor(k)
        return self.mu[base][i] * factor

    def mu_W(self, k: int) -> Fraction:
        """Total measure of level k."""
        if self.window_empty:
            raise EmptyWindow("the level window is empty")
        base, factor = self._tail_factor(k)
        return sum(self.mu[base], Fraction(0)) * factor

    # -- structural constants ---------------------------------------------

    def validate_star(self) -> Fraction:
        """Check the model and return the least two-sided one-step constant.

        Raises EmptyWindow when there are no levels and NonPositiveMeasure
        when any cell measure or tail ratio fails to be positive.  The
        returned c >= 1 bounds mu(level k, cell i) / mu(level k+1, cell i)
        and its reciprocal over every adjacent pair, tails included.
        """
        if self.window_empty:
            raise EmptyWindow("the level window is empty")
        for k in self.levels():
            for i, name in enumerate(self.cells):
                if self.mu[k][i] <= 0:
                    raise NonPositiveMeasure(
                        f"mu[{k}][{name}] = {self.mu[k][i]} is not positive"
                    )
        ratios: list[Fraction] = []
        if self.has_tails:
            assert self.left_tail is not None and self.right_tail is not None
            if self.left_tail <= 0 or self.right_tail <= 0:
                raise NonPositiveMeasure("tail ratios must be positive")
            ratios += [self.left_tail, self.right_tail]
        for k in range(self.k_min, self.k_max):
            for i in range(len(self.cells)):
                ratios.append(self.mu[k][i] / self.mu[k + 1][i])
        c = Fraction(1)
        for t in ratios:
            c = max(c, t, 1 / t)
        return c

    def distortion_constant(self) -> Fraction:
        """Least K >= 1 with mu(f^k B) mu(W) within a factor K of
        mu(f^k W) mu(B) for every window level k and cell B.

        Tail levels copy the boundary proportions, so they never enlarge K.
        """
        self.validate_star()
        mu_w0 = self.mu_W(0)
        K = Fraction(1)
        for k in self.levels():
            level_mass = self.mu_W(k)
            for i in range(len(self.cells)):
                t = (self.mu[k][i] * mu_w0) / (level_mass * self.mu[0][i])
                K = max(K, t, 1 / t)
        return K

    # -- serialisation -----------------------------------------------------

    @classmethod
    def from_dict(cls, doc: dict) -> "MeasureSystem":
        if not isinstance(doc, dict):
            raise ConfigError("config: expected a JSON object")
        try:
            window = doc["window"]
            cells = doc["cells"]
            mu_doc = doc["mu"]
        except KeyError as exc:
            raise ConfigError(f"config: missing field {exc.args[0]!r}") from exc
        if not isinstance(window, dict) or "min" not in window or "max" not in window:
            raise ConfigError("window: expected an object with min and max")
        k_min, k_max = window["min"], window["max"]
        if not isinstance(k_min, int) or not isinstance(k_max, int):
            raise ConfigError("window: min and max must be integers")
        if not isinstance(cells, list) or not all(isinstance(c, str) for c in cells):
            raise ConfigError("cells: expected a list of names")
        if not isinstance(mu_doc, dict):
            raise ConfigError("mu: expected an object keyed by level")
        mu: dict[int, tuple[Fraction, ...]] = {}
        for key, row in mu_doc.items():
            try:
                k = int(key)
            except ValueError as exc:
                raise ConfigError(f"mu: level key {key!r} is not an integer") from exc
            if not isinstance(row, list):
                raise ConfigError(f"mu[{key}]: expected a list of measures")
            mu[k] = tuple(as_fraction(v, f"mu[{key}][{i}]") for i, v in enumerate(row))
        tails = doc.get("tails")
        left = right = None
        if tails is not None:
            if not isinstance(tails, dict) or set(tails) != {"left", "right"}:
                raise ConfigError("tails: expected an object with left and right")
            left = as_fraction(tails["left"], "tails.left")
            right = as_fraction(tails["right"], "tails.right")
        return cls(
            p=as_fraction(doc.get("p", "2"), "p"),
            k_min=k_min,
            k_max=k_max,
            cells=tuple(cells),
            mu=mu,
            left_tail=left,
            right_tail=right,
        )

    def to_dict(self) -> dict:
        doc: dict = {
            "p": format_fraction(self.p),
            "window": {"min": self.k_min, "max": self.k_max},
            "cells": list(self.cells),
            "mu": {
                str(k): [format_fraction(v) for v in self.mu[k]]
                for k in sorted(self.mu)
            },
        }
        if self.has_tails:
            assert self.left_tail is not None and self.right_tail is not None
            doc["tails"] = {
                "left": format_fraction(self.left_tail),
                "right": format_fraction(self.right_tail),
            }
        return doc

    @classmethod
    def from_json(cls, text: str) -> "MeasureSystem":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config: invalid JSON ({exc})") from exc
        return cls.from_dict(doc)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)
