"""Multivariate polynomials in the 36 matrix entries X11..X66.

An MPoly maps packed monomials (see monomials.py) to ParamPoly
coefficients.  Zero coefficients are never stored.  Purely rational
polynomials (every coefficient constant) are the common case for ideal
generators and basis elements; polynomials with genuine parameter
coefficients arise from the block-matrix product construction.
"""

from __future__ import annotations

from fractions import Fraction

from . import monomials as mono
from .monomials import MonomialOrder, DEGREVLEX
from .params import ParamPoly


class ZeroPolynomialError(ValueError):
    """A leading-term query was made on the zero polynomial."""


class MPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None, _trusted: bool = False):
        if terms is None:
            self.terms = {}
        elif _trusted:
            self.terms = terms
        else:
            out = {}
            for m, c in terms.items():
                c = _as_param(c)
                if c:
                    out[m] = c
            self.terms = out

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "MPoly":
        return cls({}, _trusted=True)

    @classmethod
    def const(cls, value) -> "MPoly":
        c = _as_param(value)
        return cls({mono.ONE: c} if c else {}, _trusted=True)

    @classmethod
    def variable(cls, name_or_index) -> "MPoly":
        if isinstance(name_or_index, str):
            m = mono.from_names(name_or_index)
        else:
            m = mono.variable(name_or_index)
        return cls({m: ParamPoly.const(1)}, _trusted=True)

    @classmethod
    def from_rational_terms(cls, pairs) -> "MPoly":
        """Build from (packed monomial, Fraction) pairs, merging duplicates."""
        acc: dict = {}
        for m, c in pairs:
            q = Fraction(c)
            if q:
                acc[m] = acc.get(m, Fraction(0)) + q
        return cls(
            {m: ParamPoly.const(c) for m, c in acc.items() if c}, _trusted=True
        )

    # -- queries -----------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, ParamPoly)):
            return self == MPoly.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def degree(self) -> int:
        """Total degree in the X variables (-1 for the zero polynomial)."""
        if not self.terms:
            return -1
        return max(mono.total_degree(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        """True when every monomial has the same X-degree (zero counts)."""
        degs = {mono.total_degree(m) for m in self.terms}
        return len(degs) <= 1

    def is_rational(self) -> bool:
        """True when every coefficient is parameter-free."""
        return all(c.is_constant() for c in self.terms.values())

    def coefficient(self, m: int) -> ParamPoly:
        return self.terms.get(m, ParamPoly.zero())

    def rational_terms(self) -> dict[int, Fraction]:
        """The terms as packed -> Fraction; raises if parameters appear."""
        return {m: c.constant_value() for m, c in self.terms.items()}

    def leading_term(self, order: MonomialOrder = DEGREVLEX):
        """(monomial, coefficient) maximal under the order."""
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def leading_monomial(self, order: MonomialOrder = DEGREVLEX) -> int:
        return self.leading_term(order)[0]

    def coefficient_rules(self, order: MonomialOrder = DEGREVLEX):
        """Terms as (exponent vector, coefficient), descending in the order."""
        return [
            (mono.unpack(m), self.terms[m])
            for m in order.sort_terms(self.terms)
        ]

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "MPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return MPoly(out, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly({m: -c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other) -> "MPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction, ParamPoly)):
            c = _as_param(other)
            if not c:
                return MPoly.zero()
            return MPoly(
                {m: v * c for m, v in self.terms.items()}, _trusted=True
            )
        if not isinstance(other, MPoly):
            return NotImplemented
        out: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = mono.mul(ma, mb)
                v = out.get(m)
                v = ca * cb if v is None else v + ca * cb
                if v:
                    out[m] = v
                else:
                    del out[m]
        return MPoly(out, _trusted=True)

    __rmul__ = __mul__

    # -- substitution and evaluation --------------------------------------

    def substitute_param(self, index: int, value) -> "MPoly":
        """Replace one of the 47 parameters by a rational value."""
        out: dict = {}
        for m, c in self.terms.items():
            c2 = c.substitute(index, value)
            if c2:
                out[m] = c2
        return MPoly(out, _trusted=True)

    def evaluate(self, x_values, param_values=None) -> Fraction:
        """Exact value at a 36-entry X assignment (row-major X11..X66).

        param_values must be supplied when parameters appear.
        """
        x_values = [Fraction(v) for v in x_values]
        if len(x_values) != mono.N_VARS:
            raise ValueError(f"expected {mono.N_VARS} X values")
        total = Fraction(0)
        for m, c in self.terms.items():
            if c.is_constant():
                coeff = c.constant_value()
            else:
                if param_values is None:
                    raise ValueError("parameter values required")
                coeff = c.evaluate(param_values)
            v = coeff
            for idx, e in enumerate(mono.unpack(m)):
                if e:
                    v *= x_values[idx] ** e
            total += v
        return total

    # -- rendering ---------------------------------------------------------

    def to_str(self, order: MonomialOrder = DEGREVLEX) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for i, m in enumerate(order.sort_terms(self.terms)):
            c = self.terms[m]
            ms = mono.monomial_str(m)
            if c.is_constant():
                q = c.constant_value()
                mag = abs(q)
                if ms == "1":
                    body = str(mag)
                elif mag == 1:
                    body = ms
                else:
                    body = f"{mag}*{ms}"
                neg = q < 0
            else:
                body = f"({c})" if ms == "1" else f"({c})*{ms}"
                neg = False
            if i == 0:
                pieces.append(f"-{body}" if neg else body)
            else:
                pieces.append(f" - {body}" if neg else f" + {body}")
        return "".join(pieces)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        s = self.to_str()
        if len(s) > 120:
            s = s[:117] + "..."
        return f"MPoly({s})"


def _as_param(value) -> ParamPoly:
    if isinstance(value, ParamPoly):
        return value
    return ParamPoly.const(value)


def _coerce(value):
    if isinstance(value, MPoly):
        return value
    if isinstance(value, (int, Fraction, ParamPoly)):
        return MPoly.const(value)
    return NotImplemented


def parse(text: str) -> MPoly:
    """Parse a purely rational polynomial in the X variables.

    Accepts the format produced by to_str on rational polynomials:
    terms joined by + and -, each term an optional rational coefficient
    and * separated variable powers, e.g. "3/2*X11^2*X23 - X12 + 1".
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial string")
    # Split into signed chunks.
    chunks: list[tuple[int, str]] = []
    sign = 1
    buf = []
    for i, ch in enumerate(s):
        if ch in "+-" and i != 0 and s[i - 1] not in "+-^*/":
            chunks.append((sign, "".join(buf)))
            buf = []
            sign = 1 if ch == "+" else -1
        elif ch in "+-" and not buf:
            if ch == "-":
                sign = -sign
        else:
            buf.append(ch)
    chunks.append((sign, "".join(buf)))

    pairs = []
    for sgn, chunk in chunks:
        if not chunk:
            raise ValueError(f"malformed term in {text!r}")
        coeff = Fraction(1)
        m = mono.ONE
        for factor in chunk.split("*"):
            if not factor:
                raise ValueError(f"malformed term {chunk!r}")
            if factor[0] == "X":
                if "^" in factor:
                    name, _, exp = factor.partition("^")
                    e = int(exp)
                else:
                    name, e = factor, 1
                base = mono.from_names(name)
                for _ in range(e):
                    m = mono.mul(m, base)
            else:
                coeff *= Fraction(factor)
        pairs.append((m, sgn * coeff))
    return MPoly.from_rational_terms(pairs)
