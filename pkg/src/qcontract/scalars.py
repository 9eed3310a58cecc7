"""Exact coefficient arithmetic for the symbolic engine.

A coefficient is a finite sum of terms

    (Gaussian rational) * (Laurent monomial in commuting parameters) * eps^k

where the parameters are ``q`` (the deformation parameter of the standalone
quantum group) and ``lam`` (the inverse kappa surviving the contraction), and
``eps`` is the contraction bookkeeping variable (the inverse of the
contraction parameter).  eps powers above a fixed truncation order are
discarded by every operation; everything else is exact rational arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable, Iterable

DEFAULT_TRUNCATION_ORDER = 1
MAX_TRUNCATION_ORDER = 4

#: canonical printing order for parameters; unknown names sort after these
_PARAM_PRINT_RANK = {"q": 0, "lam": 1}


class TruncationMismatch(ValueError):
    """Raised when two scalars with different truncation orders are combined."""


class GaussianRational:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __add__(self, other):
        other = _as_gr(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_gr(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _as_gr(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        other = _as_gr(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_gr(other)
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return self * GaussianRational(other.re / n, -other.im / n)

    def __rtruediv__(self, other):
        return _as_gr(other) / self

    def __eq__(self, other):
        try:
            other = _as_gr(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_gaussian(self)


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)


def _as_gr(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    raise TypeError(f"cannot coerce {value!r} to GaussianRational")


def format_gaussian(gr: GaussianRational) -> str:
    """Render a Gaussian rational as an expression factor.

    Purely real values print as fractions, purely imaginary ones use ``i``,
    mixed values are parenthesized so they can re-enter the parser intact.
    """
    if gr.im == 0:
        return str(gr.re)
    if gr.re == 0:
        if gr.im == 1:
            return "i"
        if gr.im == -1:
            return "-i"
        return f"{gr.im}*i"
    sign = "+" if gr.im > 0 else "-"
    imabs = abs(gr.im)
    istr = "i" if imabs == 1 else f"{imabs}*i"
    return f"({gr.re}{sign}{istr})"


class ParamMonomial:
    """Laurent monomial in named commuting parameters.

    Zero exponents are never stored; the product of monomials adds exponents.
    """

    __slots__ = ("exps",)

    def __init__(self, exps: Iterable[tuple[str, int]] = ()):
        items = tuple(sorted((n, e) for n, e in exps if e != 0))
        object.__setattr__(self, "exps", items)

    def __setattr__(self, name, value):
        raise AttributeError("ParamMonomial is immutable")

    @classmethod
    def unit(cls) -> "ParamMonomial":
        return _MONO_UNIT

    @classmethod
    def of(cls, name: str, exp: int = 1) -> "ParamMonomial":
        return cls(((name, exp),))

    @property
    def is_unit(self) -> bool:
        return not self.exps

    def degree(self, name: str) -> int:
        for n, e in self.exps:
            if n == name:
                return e
        return 0

    def without(self, name: str) -> "ParamMonomial":
        return ParamMonomial((n, e) for n, e in self.exps if n != name)

    def inverse(self) -> "ParamMonomial":
        return ParamMonomial((n, -e) for n, e in self.exps)

    def __mul__(self, other: "ParamMonomial") -> "ParamMonomial":
        if self.is_unit:
            return other
        if other.is_unit:
            return self
        acc = dict(self.exps)
        for n, e in other.exps:
            acc[n] = acc.get(n, 0) + e
        return ParamMonomial(acc.items())

    def __eq__(self, other):
        return isinstance(other, ParamMonomial) and self.exps == other.exps

    def __hash__(self):
        return hash(self.exps)

    def sort_key(self):
        return tuple((_PARAM_PRINT_RANK.get(n, 99), n, e) for n, e in self.exps)

    def factors(self) -> list[str]:
        out = []
        for _, name, exp in sorted(self.sort_key()):
            out.append(name if exp == 1 else f"{name}^{exp}")
        return out

    def __repr__(self):
        return f"ParamMonomial({self.exps!r})"


_MONO_UNIT = ParamMonomial()


def scalar_term_key(key: tuple[ParamMonomial, int]):
    mono, eps = key
    return (eps, mono.sort_key())


def format_scalar_term(coeff: GaussianRational, mono: ParamMonomial, eps: int) -> str:
    """Render one scalar term; the result may start with a minus sign."""
    factors = list(mono.factors())
    if eps:
        factors.append("eps" if eps == 1 else f"eps^{eps}")
    cs = format_gaussian(coeff)
    if factors:
        if cs == "1":
            return "*".join(factors)
        if cs == "-1":
            return "-" + "*".join(factors)
        return "*".join([cs] + factors)
    return cs


class Scalar:
    """Truncated eps-polynomial with Gaussian-rational Laurent coefficients.

    ``terms`` maps ``(ParamMonomial, eps_degree)`` to a nonzero
    GaussianRational; no term exceeds ``truncation_order`` in eps.
    Instances are immutable and all operations are pure.
    """

    __slots__ = ("terms", "truncation_order")

    def __init__(self, terms, truncation_order: int):
        if truncation_order < 0:
            raise ValueError("truncation order must be nonnegative")
        clean = {}
        for (mono, eps), coeff in terms.items():
            if eps > truncation_order or coeff.is_zero:
                continue
            clean[(mono, eps)] = coeff
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "truncation_order", truncation_order)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "Scalar":
        return cls({}, order)

    @classmethod
    def one(cls, order: int) -> "Scalar":
        return cls({(_MONO_UNIT, 0): GR_ONE}, order)

    @classmethod
    def from_rational(cls, value, order: int) -> "Scalar":
        return cls({(_MONO_UNIT, 0): _as_gr(value)}, order)

    @classmethod
    def imag_unit(cls, order: int) -> "Scalar":
        return cls({(_MONO_UNIT, 0): GR_I}, order)

    @classmethod
    def param(cls, name: str, order: int, exp: int = 1) -> "Scalar":
        return cls({(ParamMonomial.of(name, exp), 0): GR_ONE}, order)

    @classmethod
    def eps(cls, order: int, power: int = 1) -> "Scalar":
        return cls({(_MONO_UNIT, power): GR_ONE}, order)

    # -- basic queries -----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_one(self) -> bool:
        return self.terms == {(_MONO_UNIT, 0): GR_ONE}

    def max_eps_degree(self) -> int:
        return max((eps for (_, eps) in self.terms), default=0)

    def max_param_degree(self, name: str) -> int:
        return max((abs(m.degree(name)) for (m, _) in self.terms), default=0)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.truncation_order != self.truncation_order:
                raise TruncationMismatch(
                    f"truncation orders differ: {self.truncation_order} vs "
                    f"{other.truncation_order}"
                )
            return other
        return Scalar.from_rational(other, self.truncation_order)

    def __add__(self, other):
        other = self._coerce(other)
        acc = dict(self.terms)
        for key, coeff in other.terms.items():
            cur = acc.get(key)
            acc[key] = coeff if cur is None else cur + coeff
        return Scalar(acc, self.truncation_order)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return Scalar(
            {key: -coeff for key, coeff in self.terms.items()},
            self.truncation_order,
        )

    def __mul__(self, other):
        other = self._coerce(other)
        order = self.truncation_order
        acc: dict = {}
        for (m1, e1), c1 in self.terms.items():
            for (m2, e2), c2 in other.terms.items():
                e = e1 + e2
                if e > order:
                    continue
                key = (m1 * m2, e)
                c = c1 * c2
                cur = acc.get(key)
                acc[key] = c if cur is None else cur + c
        return Scalar(acc, order)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = Scalar.from_rational(other, self.truncation_order)
        if not isinstance(other, Scalar):
            return NotImplemented
        return (
            self.truncation_order == other.truncation_order
            and self.terms == other.terms
        )

    __hash__ = None

    # -- structure maps ----------------------------------------------------

    def conjugate(self) -> "Scalar":
        """Complex conjugation; all parameters and eps are treated as real."""
        return Scalar(
            {key: coeff.conjugate() for key, coeff in self.terms.items()},
            self.truncation_order,
        )

    def truncate(self, order: int) -> "Scalar":
        return Scalar(self.terms, order)

    def eps_component(self, k: int) -> "Scalar":
        """The eps^k slice, with the eps power stripped off."""
        acc = {}
        for (mono, eps), coeff in self.terms.items():
            if eps == k:
                acc[(mono, 0)] = coeff
        return Scalar(acc, self.truncation_order)

    def eps_degrees(self) -> set[int]:
        return {eps for (_, eps) in self.terms}

    def eliminate_param(self, name: str, series: Callable[[int], "Scalar"]) -> "Scalar":
        """Replace each power ``name^m`` by ``series(m)``."""
        out = Scalar.zero(self.truncation_order)
        for (mono, eps), coeff in self.terms.items():
            m = mono.degree(name)
            base = Scalar({(mono.without(name), eps): coeff}, self.truncation_order)
            out = out + (base * series(m) if m else base)
        return out

    def set_param_zero(self, name: str) -> "Scalar":
        """Substitute the parameter to zero (drops every term containing it)."""
        acc = {}
        for (mono, eps), coeff in self.terms.items():
            d = mono.degree(name)
            if d < 0:
                raise ZeroDivisionError(f"negative power of {name} at zero")
            if d == 0:
                acc[(mono, eps)] = coeff
        return Scalar(acc, self.truncation_order)

    # -- units -------------------------------------------------------------

    @property
    def is_unit_monomial(self) -> bool:
        if len(self.terms) != 1:
            return False
        ((_, eps),) = self.terms.keys()
        return eps == 0

    def inverse_of_unit(self) -> "Scalar":
        if not self.is_unit_monomial:
            raise ValueError(f"not an invertible monomial scalar: {self}")
        ((mono, _),) = self.terms.keys()
        coeff = self.terms[(mono, 0)]
        return Scalar(
            {(mono.inverse(), 0): GR_ONE / coeff}, self.truncation_order
        )

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=scalar_term_key):
            mono, eps = key
            parts.append(format_scalar_term(self.terms[key], mono, eps))
        return _join_signed(parts)

    def __repr__(self):
        return f"Scalar({self}; order={self.truncation_order})"


def _join_signed(parts: list[str]) -> str:
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


def q_power(m: int, order: int) -> Scalar:
    """Truncated expansion of the m-th power of ``exp(lam*eps)``.

    This is the series that eliminates ``q`` during contraction: every
    occurrence of ``q^m`` becomes ``sum_k (m*lam*eps)^k / k!`` up to the
    truncation order.
    """
    terms = {}
    for k in range(order + 1):
        coeff = GaussianRational(Fraction(m**k, factorial(k)))
        if coeff.is_zero:
            continue
        terms[(ParamMonomial.of("lam", k), k)] = coeff
    return Scalar(terms, order)
