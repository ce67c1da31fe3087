"""
Sparse square matrices over any of the exact coefficient rings.

Entry ``(row, col)`` is the coefficient of basis vector ``row`` in the image of
basis vector ``col``.
"""

from fractions import Fraction

from .exactalg import EqPolynomial, EqRationalFunction, TruncatedSeries, coeff_to_json


def is_zero(x):
    if isinstance(x, (int, Fraction)):
        return x == 0
    return x.is_zero()


def simplify(x):
    """Demote a coefficient to the smallest ring that holds it."""
    if isinstance(x, EqRationalFunction) and x.is_polynomial():
        x = x.num
    if isinstance(x, EqPolynomial) and x.is_constant():
        return x.constant_value()
    if isinstance(x, TruncatedSeries):
        return x.map_coefficients(simplify)
    return x


def coeff_equal(a, b):
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return a == b
    if isinstance(a, (int, Fraction)):
        a, b = b, a
    if isinstance(b, (int, Fraction)) and isinstance(a, (EqPolynomial, EqRationalFunction)):
        return (a - b).is_zero()
    return a == b


class OperatorMatrix:
    __slots__ = ("size", "entries")

    def __init__(self, size, entries=None):
        self.size = size
        self.entries = {}
        if entries:
            for (r, c), v in entries.items():
                if not 0 <= r < size or not 0 <= c < size:
                    raise IndexError(f"entry ({r}, {c}) outside a {size}x{size} matrix")
                if not is_zero(v):
                    self.entries[(r, c)] = v

    @classmethod
    def zero(cls, size):
        return cls(size)

    @classmethod
    def diagonal(cls, values):
        return cls(len(values), {(k, k): v for k, v in enumerate(values)})

    @classmethod
    def scalar(cls, size, c):
        return cls(size, {(k, k): c for k in range(size)})

    def __getitem__(self, rc):
        return self.entries.get(rc, Fraction(0))

    def column(self, c):
        return {r: v for (r, cc), v in self.entries.items() if cc == c}

    def _check(self, other):
        if not isinstance(other, OperatorMatrix) or other.size != self.size:
            raise ValueError("matrix size mismatch")

    def __add__(self, other):
        self._check(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v if k in out else v
        return OperatorMatrix(self.size, out)

    def __neg__(self):
        return OperatorMatrix(self.size, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        """Multiply every entry by the coefficient ``c`` (on the left)."""
        return OperatorMatrix(self.size, {k: c * v for k, v in self.entries.items()})

    def __matmul__(self, other):
        self._check(other)
        by_row = {}
        for (k, c), v in other.entries.items():
            by_row.setdefault(k, []).append((c, v))
        out = {}
        for (r, k), a in self.entries.items():
            for c, b in by_row.get(k, ()):
                prod = a * b
                out[(r, c)] = out[(r, c)] + prod if (r, c) in out else prod
        return OperatorMatrix(self.size, out)

    def commutator(self, other):
        return self @ other - other @ self

    def map(self, fn):
        return OperatorMatrix(self.size, {k: fn(v) for k, v in self.entries.items()})

    def apply(self, vector):
        out = [Fraction(0)] * self.size
        for (r, c), v in self.entries.items():
            out[r] = out[r] + v * vector[c]
        return out

    def transpose(self):
        return OperatorMatrix(self.size, {(c, r): v for (r, c), v in self.entries.items()})

    def conjugate_by_permutation(self, perm):
        """Matrix of the same operator after relabelling basis vector k as perm[k]."""
        return OperatorMatrix(self.size, {(perm[r], perm[c]): v for (r, c), v in self.entries.items()})

    def is_zero(self):
        return all(is_zero(v) for v in self.entries.values())

    def first_difference(self, other):
        """``None`` if equal, else ``(row, col, self_entry, other_entry)``."""
        self._check(other)
        for key in sorted(set(self.entries) | set(other.entries)):
            a, b = self[key], other[key]
            if not coeff_equal(a, b):
                return key[0], key[1], a, b
        return None

    def __eq__(self, other):
        return isinstance(other, OperatorMatrix) and other.size == self.size and self.first_difference(other) is None

    __hash__ = None

    def to_json(self):
        return {
            "size": self.size,
            "entries": [
                {"row": r, "col": c, "value": coeff_to_json(v)}
                for (r, c), v in sorted(self.entries.items())
            ],
        }

    def __repr__(self):
        rows = [f"  ({r},{c}): {v!r}" for (r, c), v in sorted(self.entries.items())]
        return f"OperatorMatrix({self.size}x{self.size}\n" + "\n".join(rows) + ")"
