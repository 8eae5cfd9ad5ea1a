"""Buchberger engine: division, S-pairs, reduced bases, membership.

The hot path works on plain dicts mapping packed monomials to
coefficients.  Basis elements are monic with Fraction coefficients;
dividends may carry ParamPoly coefficients, and the same reduction loop
serves both because it only needs *, - and truthiness from the
coefficient type.

Reduction processes monomials largest-first through a lazy max-heap, so
remainders are fully reduced (no monomial divisible by any basis
leading monomial), which is what makes them canonical.
"""

from __future__ import annotations

import hashlib
import heapq
import os
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import monomials as mono
from . import mpoly as mp
from .monomials import DEGREVLEX, LEX, MonomialOrder
from .mpoly import MPoly, ZeroPolynomialError
from . import symplectic

ORDERS = {"degrevlex": DEGREVLEX, "lex": LEX}


class EmptyInputError(ValueError):
    """No nonzero generators were supplied."""


class CacheFormatError(ValueError):
    """A basis cache file failed validation."""


class BudgetExceededError(RuntimeError):
    """The computation hit its wall-clock budget before completing."""

    def __init__(self, elapsed: float, basis_size: int, pairs_done: int,
                 pairs_remaining: int):
        super().__init__(
            f"budget exceeded after {elapsed:.1f}s: basis size {basis_size}, "
            f"{pairs_done} pairs processed, {pairs_remaining} remaining"
        )
        self.elapsed = elapsed
        self.basis_size = basis_size
        self.pairs_done = pairs_done
        self.pairs_remaining = pairs_remaining


class _Elt:
    """A monic basis element prepared for the reduction loop."""

    __slots__ = ("lm", "tail", "poly")

    def __init__(self, poly: dict, order: MonomialOrder):
        lm = max(poly, key=order.key)
        lc = poly[lm]
        if lc != 1:
            poly = {m: c / lc for m, c in poly.items()}
        self.poly = poly
        self.lm = lm
        self.tail = sorted(
            ((m, c) for m, c in poly.items() if m != lm),
            key=lambda t: order.key(t[0]),
            reverse=True,
        )


def _reduce(f: dict, basis: list[_Elt], order: MonomialOrder,
            want_quotients: bool = False):
    """Fully reduce f by the basis; returns (remainder, quotients|None).

    f maps packed monomials to coefficients (Fraction or ParamPoly);
    tail coefficients of the basis are Fractions, so mixed products stay
    in the dividend's coefficient type.
    """
    key = order.key
    work = dict(f)
    heap = [(-key(m), m) for m in work]
    heapq.heapify(heap)
    rem: dict = {}
    quots = [dict() for _ in basis] if want_quotients else None
    divides = mono.divides
    mul = mono.mul
    div = mono.div
    while heap:
        m = heapq.heappop(heap)[1]
        c = work.get(m)
        if c is None:
            continue
        hit = None
        for i, b in enumerate(basis):
            if divides(b.lm, m):
                hit = (i, b)
                break
        if hit is None:
            rem[m] = c
            del work[m]
            continue
        i, b = hit
        t = div(m, b.lm)
        if want_quotients:
            q = quots[i].get(t)
            quots[i][t] = c if q is None else q + c
        del work[m]
        for mg, cg in b.tail:
            m2 = mul(t, mg)
            v = work.get(m2)
            if v is None:
                nv = -(c * cg)
                if nv:
                    work[m2] = nv
                    heapq.heappush(heap, (-key(m2), m2))
            else:
                nv = v - c * cg
                if nv:
                    work[m2] = nv
                else:
                    del work[m2]
    return rem, quots


def _spoly_dict(a: _Elt, b: _Elt, order: MonomialOrder) -> dict:
    """S-polynomial of two monic prepared elements, as a dict."""
    l = mono.lcm(a.lm, b.lm)
    ta, tb = mono.div(l, a.lm), mono.div(l, b.lm)
    out: dict = {}
    for m, c in a.poly.items():
        m2 = mono.mul(ta, m)
        out[m2] = out.get(m2, Fraction(0)) + c
    for m, c in b.poly.items():
        m2 = mono.mul(tb, m)
        v = out.get(m2, Fraction(0)) - c
        if v:
            out[m2] = v
        else:
            out.pop(m2, None)
    return {m: c for m, c in out.items() if c}


def s_polynomial(f: MPoly, g: MPoly, order: MonomialOrder = DEGREVLEX) -> MPoly:
    """S(f, g) = (lcm/LT(f))·f − (lcm/LT(g))·g; leading terms cancel."""
    mf, cf = f.leading_term(order)
    mg, cg = g.leading_term(order)
    if not (cf.is_constant() and cg.is_constant()):
        raise ValueError("leading coefficients must be rational")
    l = mono.lcm(mf, mg)
    tf = MPoly({mono.div(l, mf): 1 / cf.constant_value()})
    tg = MPoly({mono.div(l, mg): 1 / cg.constant_value()})
    return tf * f - tg * g


@dataclass(frozen=True)
class ReductionTrace:
    """Quotients and remainder with f = Σ quotients[i]·basis[i] + remainder."""

    quotients: tuple
    remainder: MPoly


@dataclass(frozen=True)
class SPairReport:
    total_pairs: int
    checked: int
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures


class GroebnerBasis:
    """An ordered, monic basis with its monomial order and variable order."""

    def __init__(self, elements, order: MonomialOrder, reduced_flag: bool,
                 meta: dict | None = None):
        self.elements = tuple(elements)
        self.order = order
        self.var_order = order.var_order
        self.reduced_flag = reduced_flag
        self.meta = dict(meta or {})
        self._prepared = [
            _Elt(e.rational_terms(), order) for e in self.elements
        ]

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroebnerBasis)
            and self.elements == other.elements
            and self.order == other.order
        )

    def leading_monomials(self) -> list[int]:
        return [e.lm for e in self._prepared]

    def normal_form(self, f: MPoly) -> ReductionTrace:
        if f.is_rational():
            terms: dict = f.rational_terms()
        else:
            terms = dict(f.terms)
        rem, quots = _reduce(terms, self._prepared, self.order,
                             want_quotients=True)
        return ReductionTrace(
            quotients=tuple(MPoly(q) for q in quots),
            remainder=MPoly(rem),
        )

    def remainder(self, f: MPoly) -> MPoly:
        terms = f.rational_terms() if f.is_rational() else dict(f.terms)
        rem, _ = _reduce(terms, self._prepared, self.order)
        return MPoly(rem)

    def is_member(self, f: MPoly) -> bool:
        return not self.remainder(f)

    def spair_closure(self, sample: int | None = None, seed: int = 0,
                      budget_seconds: float | None = None) -> SPairReport:
        """Certify the basis property by reducing S-pairs to zero.

        With sample=None every pair is checked; otherwise a seeded
        random sample of that many distinct pairs.
        """
        n = len(self._prepared)
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        total = len(pairs)
        if sample is not None and sample < total:
            rng = random.Random(seed)
            pairs = rng.sample(pairs, sample)
        t0 = time.monotonic()
        failures = []
        checked = 0
        for i, j in pairs:
            if budget_seconds is not None and time.monotonic() - t0 > budget_seconds:
                break
            s = _spoly_dict(self._prepared[i], self._prepared[j], self.order)
            rem, _ = _reduce(s, self._prepared, self.order)
            checked += 1
            if rem:
                failures.append((i, j))
        return SPairReport(total_pairs=total, checked=checked,
                           failures=tuple(failures))

    def to_text(self) -> str:
        lines = [e.to_str(self.order) for e in self.elements]
        return "\n".join(lines) + "\n"


def normal_form(f: MPoly, gb: GroebnerBasis) -> ReductionTrace:
    return gb.normal_form(f)


def is_member(f: MPoly, gb: GroebnerBasis) -> bool:
    return gb.is_member(f)


def buchberger(gens, order: MonomialOrder = DEGREVLEX, *,
               product_criterion: bool = True,
               chain_criterion: bool = True,
               budget_seconds: float | None = None,
               progress=None,
               progress_every: int = 500) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by gens.

    Normal selection strategy: pairs are processed by ascending lcm
    total degree, then a sugar-style phantom degree, then the lcm
    itself.  The optional pair criteria never change the reduced result,
    only how much work reaching it takes.  budget_seconds, when set,
    bounds wall-clock time; exceeding it raises BudgetExceededError.
    """
    polys = []
    for g in gens:
        if not isinstance(g, MPoly):
            raise TypeError("generators must be MPoly")
        if not g:
            continue
        if not g.is_rational():
            raise ValueError("generators must have rational coefficients")
        polys.append(g.rational_terms())
    if not polys:
        raise EmptyInputError("no nonzero generators")

    t0 = time.monotonic()
    key = order.key
    basis: list[_Elt] = []
    sugars: list[int] = []
    heap: list = []
    pending: set = set()
    pairs_done = 0

    def tdeg(m: int) -> int:
        return mono.total_degree(m)

    def add_element(poly: dict, sugar: int):
        e = _Elt(poly, order)
        t = len(basis)
        basis.append(e)
        sugars.append(sugar)
        for i in range(t):
            li = basis[i].lm
            l = mono.lcm(li, e.lm)
            if product_criterion and l == mono.mul(li, e.lm):
                continue
            pair_sugar = max(sugars[i] - tdeg(li), sugar - tdeg(e.lm)) + tdeg(l)
            heapq.heappush(heap, (tdeg(l), pair_sugar, key(l), i, t))
            pending.add((i, t))

    for d in polys:
        rem, _ = _reduce(d, basis, order)
        if rem:
            lm = max(rem, key=key)
            add_element(rem, tdeg(lm))

    while heap:
        if budget_seconds is not None and time.monotonic() - t0 > budget_seconds:
            raise BudgetExceededError(
                elapsed=time.monotonic() - t0,
                basis_size=len(basis),
                pairs_done=pairs_done,
                pairs_remaining=len(heap),
            )
        ldeg, sugar, lkey, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        pairs_done += 1
        if progress is not None and pairs_done % progress_every == 0:
            progress({
                "elapsed": time.monotonic() - t0,
                "basis_size": len(basis),
                "pairs_done": pairs_done,
                "pairs_pending": len(heap),
                "current_lcm_degree": ldeg,
            })
        if chain_criterion:
            li, lj = basis[i].lm, basis[j].lm
            l = mono.lcm(li, lj)
            skip = False
            for k in range(len(basis)):
                if k == i or k == j:
                    continue
                if mono.divides(basis[k].lm, l):
                    a = (i, k) if i < k else (k, i)
                    b = (j, k) if j < k else (k, j)
                    if a not in pending and b not in pending:
                        skip = True
                        break
            if skip:
                continue
        s = _spoly_dict(basis[i], basis[j], order)
        if not s:
            continue
        rem, _ = _reduce(s, basis, order)
        if rem:
            add_element(rem, sugar)

    reduced = _reduced_from_dicts([e.poly for e in basis], order)
    elapsed = time.monotonic() - t0
    return GroebnerBasis(
        reduced, order, reduced_flag=True,
        meta={"elapsed": elapsed, "pairs_done": pairs_done},
    )


def _reduced_from_dicts(polys: list[dict], order: MonomialOrder) -> list[MPoly]:
    """Minimalize and inter-reduce monic polynomials; canonical order."""
    key = order.key
    elts = [_Elt(dict(p), order) for p in polys if p]
    # Minimalize: drop any element whose lm is divisible by another kept lm.
    # Ascending scan sees potential divisors first.
    elts.sort(key=lambda e: key(e.lm))
    kept: list[_Elt] = []
    for e in elts:
        if not any(mono.divides(k.lm, e.lm) for k in kept):
            kept.append(e)
    # Inter-reduce tails until stable.  Leading monomials cannot change:
    # they are mutually irreducible after minimalization.
    changed = True
    while changed:
        changed = False
        for idx, e in enumerate(kept):
            others = kept[:idx] + kept[idx + 1:]
            rem, _ = _reduce(dict(e.poly), others, order)
            if rem != e.poly:
                kept[idx] = _Elt(rem, order)
                changed = True
    return [MPoly.from_rational_terms(e.poly.items()) for e in kept]


# -- disk cache ------------------------------------------------------------

CACHE_MAGIC = "gb-cache"
CACHE_VERSION = "v1"
CACHE_ENV = "SP6KIT_CACHE_DIR"


def generators_hash(gens, order: MonomialOrder = DEGREVLEX) -> str:
    h = hashlib.sha256()
    h.update(order.tag.encode())
    for g in gens:
        h.update(b"\n")
        h.update(g.to_str(order).encode())
    return h.hexdigest()


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "sp6kit"


def cache_path(group: str, order: MonomialOrder, gens_hash: str,
               cache_dir=None) -> Path:
    d = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    return d / f"{group}-{order.tag}-{gens_hash[:16]}.gb"


def save_cache(gb: GroebnerBasis, path, gens_hash: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = f"{CACHE_MAGIC} {CACHE_VERSION} {gb.order.tag} {gens_hash}\n"
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(header + gb.to_text(), encoding="utf-8")
    os.replace(tmp, path)


def load_cache(path, order: MonomialOrder, gens_hash: str) -> GroebnerBasis:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    lines = [ln for ln in text.split("\n") if ln.strip()]
    if not lines:
        raise CacheFormatError(f"{path}: empty cache file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != CACHE_MAGIC:
        raise CacheFormatError(f"{path}: bad header {lines[0]!r}")
    if head[1] != CACHE_VERSION:
        raise CacheFormatError(f"{path}: unsupported version {head[1]!r}")
    if head[2] != order.tag:
        raise CacheFormatError(
            f"{path}: order mismatch, file has {head[2]!r}, expected {order.tag!r}"
        )
    if head[3] != gens_hash:
        raise CacheFormatError(f"{path}: generator hash mismatch")
    elements = [mp.parse(ln) for ln in lines[1:]]
    if not elements:
        raise CacheFormatError(f"{path}: no basis elements")
    return GroebnerBasis(elements, order, reduced_flag=True,
                         meta={"from_cache": str(path)})


def group_basis(group: str, *, order: MonomialOrder = DEGREVLEX,
                cache_dir=None, use_cache: bool = True,
                write_cache: bool = True,
                budget_seconds: float | None = None,
                progress=None) -> GroebnerBasis:
    """Reduced basis for one of the named groups, with disk caching.

    group is "sp2", "sp4" or "sp6".  The cache file is keyed by a hash
    of the canonical generator serialization, so a stale or foreign file
    is rejected rather than silently used.
    """
    if group not in symplectic.GROUP_G:
        raise ValueError(f"unknown group {group!r}; expected one of "
                         f"{sorted(symplectic.GROUP_G)}")
    gens = symplectic.sp_generators(symplectic.GROUP_G[group])
    ghash = generators_hash(gens, order)
    path = cache_path(group, order, ghash, cache_dir)
    if use_cache and path.exists():
        gb = load_cache(path, order, ghash)
        gb.meta["group"] = group
        return gb
    gb = buchberger(gens, order, budget_seconds=budget_seconds,
                    progress=progress)
    gb.meta["group"] = group
    if write_cache:
        save_cache(gb, path, ghash)
        gb.meta["cache_file"] = str(path)
    return gb
