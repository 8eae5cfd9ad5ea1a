"""Packed monomial arithmetic for the 36 matrix variables X11..X66.

The ambient polynomial ring has one variable per entry of a generic 6x6
matrix, in the fixed row-major order

    X11, X12, ..., X16, X21, ..., X26, ..., X61, ..., X66.

A monomial is an exponent vector of length 36.  To make the Groebner
engine fast we pack the whole vector into a single Python int, 7 bits
per variable, with X11 occupying the most significant field.  Each field
holds 6 value bits (exponents up to 63) plus one guard bit used for
borrow detection, which gives O(1) big-int implementations of the
operations the division algorithm needs:

    product         a + b
    exact quotient  b - a
    divisibility    ((b | GUARDS) - a) & GUARDS == GUARDS
    lcm             per-field max via guard-bit masking

Exponents are tiny in practice (the symplectic ideal is generated in
degree 2), so the 63 cap is never approached; `mul` still checks it.
"""

from __future__ import annotations

N_VARS = 36
FIELD_BITS = 7
EXP_MAX = (1 << (FIELD_BITS - 1)) - 1  # 63

VAR_NAMES: tuple[str, ...] = tuple(
    f"X{r}{c}" for r in range(1, 7) for c in range(1, 7)
)

_NAME_TO_INDEX = {name: i for i, name in enumerate(VAR_NAMES)}

# Bit offset of variable i: X11 sits in the most significant field.
_OFFSETS = tuple(FIELD_BITS * (N_VARS - 1 - i) for i in range(N_VARS))

GUARDS = sum(1 << (off + FIELD_BITS - 1) for off in _OFFSETS)
_TOTAL_BITS = FIELD_BITS * N_VARS

ONE = 0  # the unit monomial


class ExponentOverflowError(OverflowError):
    """A monomial product pushed some exponent past the 63 cap."""


def var_index(row: int, col: int) -> int:
    """Index of X{row}{col} in the fixed variable order (rows/cols 1-based)."""
    if not (1 <= row <= 6 and 1 <= col <= 6):
        raise ValueError(f"variable X{row}{col} outside the 6x6 matrix")
    return (row - 1) * 6 + (col - 1)


def var_rowcol(index: int) -> tuple[int, int]:
    """Inverse of var_index."""
    if not 0 <= index < N_VARS:
        raise ValueError(f"variable index {index} out of range")
    return index // 6 + 1, index % 6 + 1


def variable(index: int) -> int:
    """The degree-1 monomial for a single variable."""
    return 1 << _OFFSETS[index]


def pack(exponents) -> int:
    """Encode an exponent vector (length 36) as a packed int."""
    exponents = tuple(exponents)
    if len(exponents) != N_VARS:
        raise ValueError(f"expected {N_VARS} exponents, got {len(exponents)}")
    m = 0
    for off, e in zip(_OFFSETS, exponents):
        if not 0 <= e <= EXP_MAX:
            raise ValueError(f"exponent {e} outside [0, {EXP_MAX}]")
        m |= e << off
    return m


def unpack(m: int) -> tuple[int, ...]:
    """Decode a packed monomial back into its exponent vector."""
    return tuple((m >> off) & EXP_MAX for off in _OFFSETS)


def mul(a: int, b: int) -> int:
    """Monomial product, with overflow checking on every field."""
    s = a + b
    if s & GUARDS:
        raise ExponentOverflowError("monomial exponent exceeds 63")
    return s


def divides(a: int, b: int) -> bool:
    """True iff monomial a divides monomial b."""
    return ((b | GUARDS) - a) & GUARDS == GUARDS


def div(b: int, a: int) -> int:
    """Exact quotient b / a; raises if a does not divide b."""
    if not divides(a, b):
        raise ValueError("monomial division is not exact")
    return b - a


def lcm(a: int, b: int) -> int:
    """Least common multiple (per-variable max of exponents)."""
    take_a = (~((b | GUARDS) - a)) & GUARDS  # guard cleared where a_i > b_i
    mask_a = (take_a >> (FIELD_BITS - 1)) * EXP_MAX
    return (a & mask_a) | (b & ~mask_a)


def total_degree(m: int) -> int:
    """Sum of all exponents."""
    d = 0
    while m:
        d += m & EXP_MAX
        m >>= FIELD_BITS
    return d


def monomial_str(m: int) -> str:
    """Render as `X11*X23` / `X11^2`; the unit monomial renders as `1`."""
    parts = []
    for i, off in enumerate(_OFFSETS):
        e = (m >> off) & EXP_MAX
        if e == 1:
            parts.append(VAR_NAMES[i])
        elif e > 1:
            parts.append(f"{VAR_NAMES[i]}^{e}")
    return "*".join(parts) if parts else "1"


def from_names(*names: str) -> int:
    """Monomial from variable names, e.g. from_names('X11', 'X23')."""
    m = ONE
    for name in names:
        if name not in _NAME_TO_INDEX:
            raise ValueError(f"unknown variable {name!r}")
        m = mul(m, variable(_NAME_TO_INDEX[name]))
    return m


class MonomialOrder:
    """A total, multiplicative monomial order on the fixed variable list.

    Two tags are supported:

    * ``degrevlex`` -- higher total degree first; ties broken by the
      reverse lexicographic rule (the monomial whose rightmost nonzero
      exponent difference is positive is the smaller one).
    * ``lex`` -- plain lexicographic with X11 > X12 > ... > X66.

    ``key`` maps a packed monomial to an int that compares the same way
    the order does, so sorting and max() work directly on keys.
    """

    __slots__ = ("tag", "_cache")

    def __init__(self, tag: str):
        if tag not in ("degrevlex", "lex"):
            raise ValueError(f"unknown monomial order {tag!r}")
        self.tag = tag
        self._cache: dict[int, int] = {}

    @property
    def var_order(self) -> tuple[str, ...]:
        return VAR_NAMES

    def key(self, m: int) -> int:
        k = self._cache.get(m)
        if k is None:
            k = self._compute_key(m)
            self._cache[m] = k
        return k

    def _compute_key(self, m: int) -> int:
        if self.tag == "lex":
            return m
        # degrevlex: total degree in the top bits, then the field-reversed,
        # complemented exponent vector (X66's field most significant).
        deg = 0
        rev = 0
        mm = m
        for k in range(N_VARS):
            e = mm & EXP_MAX
            mm >>= FIELD_BITS
            deg += e
            rev |= (EXP_MAX - e) << (_TOTAL_BITS - FIELD_BITS * (k + 1))
        return (deg << _TOTAL_BITS) | rev

    def compare(self, a: int, b: int) -> int:
        """-1, 0, or 1 as a <, =, > b in this order."""
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def sort_terms(self, monomials) -> list[int]:
        """Monomials sorted descending (leading monomial first)."""
        return sorted(monomials, key=self.key, reverse=True)

    def __repr__(self) -> str:
        return f"MonomialOrder({self.tag!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, MonomialOrder) and self.tag == other.tag

    def __hash__(self) -> int:
        return hash(("MonomialOrder", self.tag))


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")
