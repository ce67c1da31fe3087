"""
Exact coefficient rings.

Rationals are :class:`fractions.Fraction`.  On top of them this module provides

* :class:`EqPolynomial` -- polynomials in the equivariant parameters
  ``a_1, ..., a_r, hbar`` (the last variable is always ``hbar``),
* :class:`EqRationalFunction` -- quotients of those,
* :class:`TruncatedSeries` -- power series in ``u_k = q^(e_k - e_{k+1})``
  truncated at a fixed total degree, with coefficients in any of the rings above.

All values are treated as immutable.  Arithmetic accepts ints and Fractions on
either side.
"""

from fractions import Fraction
from itertools import product


def as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to a rational")


def fraction_to_str(x):
    x = as_fraction(x)
    return f"{x.numerator}/{x.denominator}"


def fraction_from_str(s):
    num, _, den = str(s).partition("/")
    return Fraction(int(num), int(den) if den else 1)


def _is_scalar(x):
    return isinstance(x, (int, Fraction))


class EqPolynomial:
    """
    Sparse polynomial with rational coefficients.

    ``terms`` maps exponent tuples of length ``nvars`` to nonzero Fractions.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, c in terms.items():
                if c:
                    if len(exps) != nvars:
                        raise ValueError("exponent vector has wrong length")
                    clean[tuple(exps)] = as_fraction(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars, k):
        exps = [0] * nvars
        exps[k] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def linear(cls, coeffs, const=0):
        """Polynomial ``sum coeffs[k] * x_k + const``."""
        nvars = len(coeffs)
        terms = {}
        for k, c in enumerate(coeffs):
            if c:
                exps = [0] * nvars
                exps[k] = 1
                terms[tuple(exps)] = c
        if const:
            terms[(0,) * nvars] = const
        return cls(nvars, terms)

    def _coerce(self, other):
        if isinstance(other, EqPolynomial):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        if _is_scalar(other):
            return EqPolynomial.constant(self.nvars, other)
        return NotImplemented

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __neg__(self):
        return EqPolynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, (EqRationalFunction, TruncatedSeries)):
            return NotImplemented
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return EqPolynomial(self.nvars, out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (EqRationalFunction, TruncatedSeries)):
            return NotImplemented
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (EqRationalFunction, TruncatedSeries)):
            return NotImplemented
        if _is_scalar(other):
            if not other:
                return EqPolynomial(self.nvars)
            return EqPolynomial(self.nvars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return EqPolynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = EqPolynomial.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def leading(self):
        """Leading (exponents, coeff) in graded-lex order."""
        e = max(self.terms, key=lambda t: (sum(t), t))
        return e, self.terms[e]

    def divmod(self, other):
        """Multivariate division by a single polynomial (graded-lex order)."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        le, lc = other.leading()
        quot = {}
        rem = {}
        cur = EqPolynomial(self.nvars, self.terms)
        while cur.terms:
            e, c = cur.leading()
            if all(a >= b for a, b in zip(e, le)):
                qe = tuple(a - b for a, b in zip(e, le))
                qc = c / lc
                quot[qe] = quot.get(qe, 0) + qc
                cur = cur - other * EqPolynomial(self.nvars, {qe: qc})
            else:
                rem[e] = c
                cur = EqPolynomial(self.nvars, {k: v for k, v in cur.terms.items() if k != e})
        return EqPolynomial(self.nvars, quot), EqPolynomial(self.nvars, rem)

    def exact_div(self, other):
        """Return ``self / other`` if the division is exact, else ``None``."""
        q, r = self.divmod(other)
        return q if r.is_zero() else None

    def evaluate(self, values):
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(values, e):
                if k:
                    t *= as_fraction(v) ** k
            total += t
        return total

    def substitute_zero(self, k):
        """Set variable ``k`` to zero."""
        return EqPolynomial(self.nvars, {e: c for e, c in self.terms.items() if e[k] == 0})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def to_json(self):
        return [{"exponents": list(e), "coeff": fraction_to_str(c)} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, nvars, data):
        return cls(nvars, {tuple(t["exponents"]): fraction_from_str(t["coeff"]) for t in data})

    def __repr__(self):
        if not self.terms:
            return "0"
        names = [f"a{k + 1}" for k in range(self.nvars - 1)] + ["h"]
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)


class EqRationalFunction:
    """
    Quotient ``num / den`` of two :class:`EqPolynomial`.

    No canonical form is enforced beyond folding constant denominators and
    cancelling exact polynomial quotients; equality is by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = EqPolynomial.constant(num.nvars, 1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if den.is_constant():
            num = num * (1 / den.constant_value())
            den = EqPolynomial.constant(num.nvars, 1)
        elif num.is_zero():
            den = EqPolynomial.constant(num.nvars, 1)
        else:
            q = num.exact_div(den)
            if q is not None:
                num, den = q, EqPolynomial.constant(num.nvars, 1)
        self.num = num
        self.den = den

    @property
    def nvars(self):
        return self.num.nvars

    def is_polynomial(self):
        return self.den.is_constant()

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def _coerce(self, other):
        if isinstance(other, EqRationalFunction):
            return other
        if isinstance(other, EqPolynomial):
            return EqRationalFunction(other)
        if _is_scalar(other):
            return EqRationalFunction(EqPolynomial.constant(self.nvars, other))
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        if self.is_polynomial():
            return hash(self.num)
        return hash((self.nvars, "ratfunc"))

    def __neg__(self):
        return EqRationalFunction(-self.num, self.den)

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            return NotImplemented
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return EqRationalFunction(self.num + other.num, self.den)
        return EqRationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, TruncatedSeries):
            return NotImplemented
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return NotImplemented
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return EqRationalFunction(EqPolynomial(self.nvars))
        return EqRationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        return EqRationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def substitute_zero(self, k):
        return EqRationalFunction(self.num.substitute_zero(k), self.den.substitute_zero(k))

    def to_json(self):
        if self.is_polynomial():
            return {"ring": "poly", "terms": self.num.to_json()}
        return {"ring": "ratfunc", "num": self.num.to_json(), "den": self.den.to_json()}

    def __repr__(self):
        if self.is_polynomial():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


def series_exponents(nvars, order):
    """All exponent vectors in ``nvars`` variables of total degree <= order."""
    if nvars == 0:
        return [()]
    out = []
    for e in product(range(order + 1), repeat=nvars):
        if sum(e) <= order:
            out.append(e)
    return out


class TruncatedSeries:
    """
    Power series in ``nvars`` variables with total degree <= ``order``.

    Coefficients may be Fractions, :class:`EqPolynomial` or
    :class:`EqRationalFunction`; products of the coefficients must make sense.
    """

    __slots__ = ("nvars", "order", "terms")

    def __init__(self, nvars, order, terms=None):
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        self.nvars = nvars
        self.order = order
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError("exponent vector has wrong length")
                if any(x < 0 for x in e):
                    raise ValueError("negative exponent in a power series")
                if sum(e) <= order and not _coeff_is_zero(c):
                    clean[e] = c
        self.terms = clean

    @classmethod
    def constant(cls, nvars, order, c):
        return cls(nvars, order, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exps, order, c=1):
        return cls(len(exps), order, {tuple(exps): c})

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            if other.nvars != self.nvars:
                raise ValueError("series live in different rings")
            return other
        return TruncatedSeries.constant(self.nvars, self.order, other)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = self._coerce(other)
        order = min(self.order, other.order)
        keys = {e for e in self.terms if sum(e) <= order} | {e for e in other.terms if sum(e) <= order}
        zero = Fraction(0)
        for e in keys:
            a = self.terms.get(e, zero)
            b = other.terms.get(e, zero)
            if not _coeff_eq(a, b):
                return False
        return True

    __hash__ = None

    def __neg__(self):
        return TruncatedSeries(self.nvars, self.order, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        order = min(self.order, other.order)
        out = {e: c for e, c in self.terms.items() if sum(e) <= order}
        for e, c in other.terms.items():
            if sum(e) > order:
                continue
            if e in out:
                out[e] = out[e] + c
            else:
                out[e] = c
        return TruncatedSeries(self.nvars, order, out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            if _coeff_is_zero(other):
                return TruncatedSeries(self.nvars, self.order)
            return TruncatedSeries(self.nvars, self.order, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        order = min(self.order, other.order)
        out = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            if d1 > order:
                continue
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > order:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                prod_ = c1 * c2
                out[e] = out[e] + prod_ if e in out else prod_
        return TruncatedSeries(self.nvars, order, out)

    def __rmul__(self, other):
        # coefficient rings are commutative
        return self.__mul__(other)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), Fraction(0))

    def truncate(self, order):
        return TruncatedSeries(self.nvars, min(order, self.order), self.terms)

    def map_coefficients(self, fn):
        return TruncatedSeries(self.nvars, self.order, {e: fn(c) for e, c in self.terms.items()})

    def log_derivative(self, i):
        """Apply ``q^{e_i} d/dq^{e_i}`` (1-based ``i``) term by term."""
        out = {}
        for e, c in self.terms.items():
            w = series_log_derivative(i, e)
            if w:
                out[e] = c * w
        return TruncatedSeries(self.nvars, self.order, out)

    def to_json(self):
        return {
            "ring": "series",
            "order": self.order,
            "terms": [
                {"u": list(e), "coeff": coeff_to_json(c)}
                for e, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))
            ],
        }

    def __repr__(self):
        if not self.terms:
            return f"O(u^{self.order + 1})"
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0])):
            mono = "*".join(f"u{k + 1}" if x == 1 else f"u{k + 1}^{x}" for k, x in enumerate(e) if x)
            parts.append(f"({c!r})*{mono}" if mono else f"({c!r})")
        return " + ".join(parts) + f" + O(u^{self.order + 1})"


def _coeff_is_zero(c):
    if isinstance(c, (int, Fraction)):
        return c == 0
    return c.is_zero()


def _coeff_eq(a, b):
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return a == b
    if isinstance(a, (int, Fraction)):
        a, b = b, a
    return a == b


def coeff_to_json(c):
    if isinstance(c, (int, Fraction)):
        return {"ring": "rational", "value": fraction_to_str(c)}
    if isinstance(c, EqPolynomial):
        return {"ring": "poly", "terms": c.to_json()}
    return c.to_json()


def series_geom(x, order, coeff=1):
    """
    Expansion of ``x / (1 - x)`` at the monomial with exponent vector ``x``.

    Returns ``sum_{j >= 1} x^j`` truncated at total degree ``order``.
    """
    x = tuple(x)
    deg = sum(x)
    if any(k < 0 for k in x):
        raise ValueError("non-effective expansion monomial")
    if deg == 0:
        raise ValueError("non-effective expansion monomial")
    terms = {}
    j = 1
    while j * deg <= order:
        terms[tuple(j * k for k in x)] = coeff
        j += 1
    return TruncatedSeries(len(x), order, terms)


def series_log_derivative(i, m):
    """
    Weight of ``q^{e_i} d/dq^{e_i}`` on the monomial ``u^m``.

    With ``u_k = q^{e_k - e_{k+1}}`` this is ``m_i - m_{i-1}`` (``m_0 = m_l = 0``).
    """
    l = len(m) + 1
    if not 1 <= i <= l:
        raise ValueError(f"divisor index {i} out of range 1..{l}")
    upper = m[i - 1] if i <= len(m) else 0
    lower = m[i - 2] if i >= 2 else 0
    return upper - lower


def pair_monomial(i, j, nvars):
    """Exponent vector of ``q^{e_i - e_j}`` for ``i < j`` (1-based)."""
    if not 1 <= i < j <= nvars + 1:
        raise ValueError("need 1 <= i < j <= l")
    return tuple(1 if i - 1 <= k < j - 1 else 0 for k in range(nvars))


def rational_from_json(value):
    return fraction_from_str(value)
