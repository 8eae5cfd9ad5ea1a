"""Exact polynomial arithmetic in the 47 block-matrix parameters.

The relation polynomials live in a ring whose coefficients are themselves
polynomials: rational-coefficient polynomials in the 47 symbols

    d11..d33  entries of the top-left isogeny block
    f11..f33  entries of the lower-left isogeny block
    b11..b33  entries of the pullback lower-left block
    c11..c33  entries of the pullback lower-right block
    e11..e33  entries of the lower-right isogeny block
    d1, d2    the scalar determinant constants

in exactly that order.  The enumeration is closed: no other parameter
names exist anywhere in the package.

A ParamPoly maps sparse parameter monomials to Fractions.  Monomials are
tuples of (symbol_index, exponent) pairs sorted by index; the empty
tuple is the constant monomial.  Zero coefficients are never stored, so
equality is structural.
"""

from __future__ import annotations

from fractions import Fraction

PARAM_NAMES: tuple[str, ...] = tuple(
    f"{base}{i}{j}" for base in "dfbce" for i in range(1, 4) for j in range(1, 4)
) + ("d1", "d2")

N_PARAMS = len(PARAM_NAMES)  # 47

PARAM_INDEX = {name: i for i, name in enumerate(PARAM_NAMES)}

# PMono: tuple of (param_index, exponent) pairs, sorted by index.
PMono = tuple

_ZERO = Fraction(0)
_ONE = Fraction(1)


def pmono_mul(a: PMono, b: PMono) -> PMono:
    if not a:
        return b
    if not b:
        return a
    merged: dict[int, int] = dict(a)
    for idx, e in b:
        merged[idx] = merged.get(idx, 0) + e
    return tuple(sorted(merged.items()))


def pmono_degree(pm: PMono) -> int:
    return sum(e for _, e in pm)


def pmono_dense(pm: PMono) -> tuple[int, ...]:
    """Exponent vector of length 47 in the fixed parameter order."""
    vec = [0] * N_PARAMS
    for idx, e in pm:
        vec[idx] = e
    return tuple(vec)


def pmono_str(pm: PMono) -> str:
    if not pm:
        return "1"
    parts = []
    for idx, e in pm:
        name = PARAM_NAMES[idx]
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


class ParamPoly:
    """Polynomial in the 47 parameters with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None, _trusted: bool = False):
        if terms is None:
            self.terms = {}
        elif _trusted:
            self.terms = terms
        else:
            self.terms = {pm: Fraction(c) for pm, c in terms.items() if c != 0}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "ParamPoly":
        return cls({}, _trusted=True)

    @classmethod
    def const(cls, value) -> "ParamPoly":
        q = Fraction(value)
        return cls({(): q} if q else {}, _trusted=True)

    @classmethod
    def symbol(cls, name: str) -> "ParamPoly":
        if name not in PARAM_INDEX:
            raise ValueError(f"unknown parameter {name!r}")
        return cls({((PARAM_INDEX[name], 1),): _ONE}, _trusted=True)

    @classmethod
    def from_terms(cls, pairs) -> "ParamPoly":
        """Build from (dense-or-sparse monomial, coefficient) pairs."""
        acc: dict = {}
        for pm, c in pairs:
            if pm and isinstance(pm[0], int):  # dense length-47 vector
                pm = tuple((i, e) for i, e in enumerate(pm) if e)
            q = Fraction(c)
            if q:
                acc[pm] = acc.get(pm, _ZERO) + q
        return cls({pm: c for pm, c in acc.items() if c}, _trusted=True)

    # -- queries -----------------------------------------------------------

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self) -> Fraction:
        """The value of a constant ParamPoly; raises if parameters appear."""
        if not self.terms:
            return _ZERO
        if self.is_constant():
            return self.terms[()]
        raise ValueError(f"ParamPoly {self} is not constant")

    def degree(self) -> int:
        """Total degree in the parameters (-1 for the zero polynomial)."""
        if not self.terms:
            return -1
        return max(pmono_degree(pm) for pm in self.terms)

    def coefficient(self, pm: PMono) -> Fraction:
        return self.terms.get(pm, _ZERO)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, ParamPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == ParamPoly.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "ParamPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for pm, c in other.terms.items():
            v = out.get(pm)
            if v is None:
                out[pm] = c
            else:
                v = v + c
                if v:
                    out[pm] = v
                else:
                    del out[pm]
        return ParamPoly(out, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "ParamPoly":
        return ParamPoly({pm: -c for pm, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other) -> "ParamPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "ParamPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "ParamPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        out: dict = {}
        for pma, ca in self.terms.items():
            for pmb, cb in other.terms.items():
                pm = pmono_mul(pma, pmb)
                v = out.get(pm)
                v = ca * cb if v is None else v + ca * cb
                if v:
                    out[pm] = v
                else:
                    del out[pm]
        return ParamPoly(out, _trusted=True)

    __rmul__ = __mul__

    def scale(self, q) -> "ParamPoly":
        q = Fraction(q)
        if not q:
            return ParamPoly.zero()
        return ParamPoly({pm: c * q for pm, c in self.terms.items()}, _trusted=True)

    # -- substitution and evaluation --------------------------------------

    def evaluate(self, values) -> Fraction:
        """Exact value at a full assignment of all 47 parameters."""
        values = list(values)
        if len(values) != N_PARAMS:
            raise ValueError(f"expected {N_PARAMS} parameter values")
        total = _ZERO
        for pm, c in self.terms.items():
            v = c
            for idx, e in pm:
                v *= Fraction(values[idx]) ** e
            total += v
        return total

    def substitute(self, index: int, value) -> "ParamPoly":
        """Replace one parameter by a rational value."""
        q = Fraction(value)
        out: dict = {}
        for pm, c in self.terms.items():
            rest = []
            factor = c
            for idx, e in pm:
                if idx == index:
                    factor *= q**e
                else:
                    rest.append((idx, e))
            if not factor:
                continue
            key = tuple(rest)
            v = out.get(key)
            v = factor if v is None else v + factor
            if v:
                out[key] = v
            else:
                del out[key]
        return ParamPoly(out, _trusted=True)

    # -- rendering ---------------------------------------------------------

    def sorted_terms(self) -> list[tuple[PMono, Fraction]]:
        """Terms ordered by the fixed parameter order (dense-lex, descending)."""
        return sorted(self.terms.items(), key=lambda t: pmono_dense(t[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for i, (pm, c) in enumerate(self.sorted_terms()):
            mono = pmono_str(pm)
            mag = abs(c)
            if mono == "1":
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if i == 0:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"ParamPoly({self})"


def _coerce(value):
    if isinstance(value, ParamPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return ParamPoly.const(value)
    return NotImplemented


ZERO = ParamPoly.zero()
ONE = ParamPoly.const(1)
