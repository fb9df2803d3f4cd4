"""Operation counting for the linear-cost benchmark.

Wrap the inputs of a solve in :class:`Counted` and every multiplication or
division performed on them is tallied in the shared :class:`OpCounter`.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class OpCounter:
    mul: int = 0
    div: int = 0
    add: int = 0

    @property
    def mul_ops(self) -> int:
        """Multiplications plus divisions."""
        return self.mul + self.div

    def wrap(self, value):
        return Counted(value, self)

    def wrap_all(self, values):
        return [Counted(v, self) for v in values]


def _unwrap(x):
    return x.value if isinstance(x, Counted) else x


class Counted:
    __slots__ = ("value", "counter")

    def __init__(self, value, counter: OpCounter):
        self.value = _unwrap(value)
        self.counter = counter

    def _new(self, value):
        return Counted(value, self.counter)

    def __add__(self, other):
        self.counter.add += 1
        return self._new(self.value + _unwrap(other))

    def __radd__(self, other):
        self.counter.add += 1
        return self._new(_unwrap(other) + self.value)

    def __sub__(self, other):
        self.counter.add += 1
        return self._new(self.value - _unwrap(other))

    def __rsub__(self, other):
        self.counter.add += 1
        return self._new(_unwrap(other) - self.value)

    def __mul__(self, other):
        self.counter.mul += 1
        return self._new(self.value * _unwrap(other))

    def __rmul__(self, other):
        self.counter.mul += 1
        return self._new(_unwrap(other) * self.value)

    def __truediv__(self, other):
        self.counter.div += 1
        return self._new(self.value / _unwrap(other))

    def __rtruediv__(self, other):
        self.counter.div += 1
        return self._new(_unwrap(other) / self.value)

    def __neg__(self):
        return self._new(-self.value)

    def __abs__(self):
        return abs(self.value)

    def __float__(self):
        return float(self.value)

    def __eq__(self, other):
        return self.value == _unwrap(other)

    def __ne__(self, other):
        return self.value != _unwrap(other)

    def __lt__(self, other):
        return self.value < _unwrap(other)

    def __le__(self, other):
        return self.value <= _unwrap(other)

    def __gt__(self, other):
        return self.value > _unwrap(other)

    def __ge__(self, other):
        return self.value >= _unwrap(other)

    def __hash__(self):
        return hash(self.value)

    def __bool__(self):
        return bool(self.value)

    def __repr__(self):
        return f"Counted({self.value!r})"
