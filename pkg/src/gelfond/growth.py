"""Integer-valued nondecreasing block-length functions.

A growth function maps the digit length of an integer to the block length
used when counting all-ones (or, in base q > 2, full digit-product) windows.
Three kinds are supported:

* ``constant(d)`` -- always d.
* ``log_scaled(num, den, q)`` -- floor((num/den) * log(y) / log(q)) for
  y >= 1, with the value at 0 defined as the value at 1.  The floor is
  evaluated with exact integer power comparisons, never with floats: a raw
  float floor is wrong near powers of q.
* ``tabulated(values)`` -- explicit nondecreasing table, last value held
  beyond the end of the table.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidBaseError, ValidationError

__all__ = ["GrowthFunction"]


def _nth_root_ceil(value: int, n: int) -> int:
    """Smallest integer y with y**n >= value (value >= 1, n >= 1)."""
    if value <= 1:
        return 1
    y = round(value ** (1.0 / n))
    while y**n >= value:
        y -= 1
    while (y + 1) ** n < value:
        y += 1
    return y + 1


class GrowthFunction:
    """Monotone nondecreasing, nonnegative, integer-valued function."""

    def __init__(self, kind: str, *, d: int = 0, num: int = 0, den: int = 1,
                 q: int = 2, values: tuple[int, ...] = ()):
        self.kind = kind
        self.d = d
        self.num = num
        self.den = den
        self.q = q
        self.values = tuple(values)
        self._log_thresholds: list[int] | None = None
        if kind == "constant":
            if d < 0:
                raise ValidationError("constant growth value must be >= 0")
        elif kind == "log_scaled":
            if num <= 0 or den <= 0:
                raise ValidationError("log_scaled requires positive num/den")
            if q < 2:
                raise InvalidBaseError(f"invalid base q={q}")
        elif kind == "tabulated":
            if not values:
                raise ValidationError("tabulated growth needs at least one value")
            if any(v < 0 for v in values):
                raise ValidationError("tabulated growth values must be >= 0")
            if any(b < a for a, b in zip(values, values[1:])):
                raise ValidationError("tabulated growth values must be nondecreasing")
        else:
            raise ValidationError(f"unknown growth kind {kind!r}")

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, d: int) -> "GrowthFunction":
        return cls("constant", d=d)

    @classmethod
    def log_scaled(cls, num: int, den: int, q: int) -> "GrowthFunction":
        return cls("log_scaled", num=num, den=den, q=q)

    @classmethod
    def tabulated(cls, values) -> "GrowthFunction":
        return cls("tabulated", values=tuple(int(v) for v in values))

    @classmethod
    def parse(cls, spec: str, q: int) -> "GrowthFunction":
        """Parse "const:d", "log:num/den" or "table:v0,v1,..." specs."""
        try:
            head, _, body = spec.partition(":")
            if head == "const":
                return cls.constant(int(body))
            if head == "log":
                num, _, den = body.partition("/")
                return cls.log_scaled(int(num), int(den or "1"), q)
            if head == "table":
                return cls.tabulated(int(v) for v in body.split(","))
        except ValueError as exc:
            raise ValidationError(f"bad growth spec {spec!r}: {exc}") from exc
        raise ValidationError(f"bad growth spec {spec!r}")

    def spec(self) -> str:
        """Normalized spec string; parse(spec()) round-trips."""
        if self.kind == "constant":
            return f"const:{self.d}"
        if self.kind == "log_scaled":
            return f"log:{self.num}/{self.den}"
        return "table:" + ",".join(str(v) for v in self.values)

    # -- evaluation --------------------------------------------------------

    def _thresholds(self, j_max: int) -> list[int]:
        # _log_thresholds[j] = smallest y >= 1 with (num/den)*log_q(y) >= j,
        # i.e. with y**num >= q**(j*den).
        if self._log_thresholds is None:
            self._log_thresholds = [1]
        t = self._log_thresholds
        while len(t) <= j_max:
            j = len(t)
            t.append(_nth_root_ceil(self.q ** (j * self.den), self.num))
        return t

    def __call__(self, y: int) -> int:
        if y < 0:
            raise ValidationError("growth function argument must be >= 0")
        if self.kind == "constant":
            return self.d
        if self.kind == "tabulated":
            return self.values[min(y, len(self.values) - 1)]
        y = max(y, 1)
        j = 0
        while self.q ** ((j + 1) * self.den) <= y**self.num:
            j += 1
        self._thresholds(j)  # keep vectorized path warm and consistent
        return j

    def values_at(self, y: np.ndarray) -> np.ndarray:
        """Vectorized evaluation on an integer array."""
        y = np.asarray(y, dtype=np.int64)
        if self.kind == "constant":
            return np.full(y.shape, self.d, dtype=np.int64)
        if self.kind == "tabulated":
            table = np.asarray(self.values, dtype=np.int64)
            return table[np.minimum(y, len(table) - 1)]
        yy = np.maximum(y, 1)
        j_hi = self(int(yy.max())) if yy.size else 0
        thresholds = np.asarray(self._thresholds(j_hi + 1), dtype=np.int64)
        return np.searchsorted(thresholds, yy, side="right") - 1

    def is_monotone_on(self, y_max: int) -> bool:
        vals = self.values_at(np.arange(0, y_max + 1))
        return bool(np.all(np.diff(vals) >= 0))

    def max_index(self) -> int | None:
        """Largest y with a distinct tabulated value, None for infinite kinds."""
        if self.kind == "tabulated":
            return len(self.values) - 1
        return None

    def __repr__(self):
        return f"GrowthFunction({self.spec()!r})"

    def __eq__(self, other):
        return isinstance(other, GrowthFunction) and (
            self.kind, self.d, self.num, self.den,
            self.q if self.kind == "log_scaled" else None, self.values,
        ) == (
            other.kind, other.d, other.num, other.den,
            other.q if other.kind == "log_scaled" else None, other.values,
        )

    def __hash__(self):
        return hash((self.kind, self.d, self.num, self.den, self.values))
