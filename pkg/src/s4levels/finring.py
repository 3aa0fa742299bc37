"""Rank-4 commutative algebras over Z/2^a and their ideals.

Elements are 4-vectors of residues mod 2^a; multiplication comes from a
structure-constant array.  Ideals are stored as additive subgroups in
Howell normal form, which is canonical over a residue ring (unlike plain
echelon form) and therefore gives unique bases, exact membership tests,
and canonical coset representatives for quotients.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import ChainTooShort

Element = tuple[int, int, int, int]

ZERO: Element = (0, 0, 0, 0)


def _v2(x: int) -> int:
    """2-adic valuation of a nonzero integer."""
    return (x & -x).bit_length() - 1


@dataclass(frozen=True)
class StructuredRing:
    """Commutative unital ring (Z/2^a)^4 with basis products from ``S``.

    Basis element 0 is the ring identity: S[0][j] == e_j.
    """

    a_exp: int
    S: tuple  # 4x4x4 nested tuples of int mod 2^a_exp

    @property
    def mod(self) -> int:
        return 1 << self.a_exp

    @property
    def size(self) -> int:
        return 1 << (4 * self.a_exp)

    @property
    def zero(self) -> Element:
        return ZERO

    @property
    def one(self) -> Element:
        return (1, 0, 0, 0)

    def basis(self) -> tuple[Element, ...]:
        return ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))

    def from_int(self, c: int) -> Element:
        return (c % self.mod, 0, 0, 0)

    def add(self, x: Element, y: Element) -> Element:
        m = self.mod
        return tuple((a + b) % m for a, b in zip(x, y))

    def sub(self, x: Element, y: Element) -> Element:
        m = self.mod
        return tuple((a - b) % m for a, b in zip(x, y))

    def neg(self, x: Element) -> Element:
        m = self.mod
        return tuple((-a) % m for a in x)

    def scale(self, c: int, x: Element) -> Element:
        m = self.mod
        return tuple((c * a) % m for a in x)

    def mul(self, x: Element, y: Element) -> Element:
        m = self.mod
        S = self.S
        acc = [0, 0, 0, 0]
        for i in range(4):
            xi = x[i]
            if xi == 0:
                continue
            Si = S[i]
            for j in range(4):
                c = xi * y[j]
                if c == 0:
                    continue
                Sij = Si[j]
                for h in range(4):
                    acc[h] += c * Sij[h]
        return tuple(a % m for a in acc)

    def pow(self, x: Element, t: int) -> Element:
        acc = self.one
        for _ in range(t):
            acc = self.mul(acc, x)
        return acc

    def elements(self):
        """All 2^(4a) elements; only sensible for small a_exp."""
        r = range(self.mod)
        return itertools.product(r, r, r, r)


# ---------------------------------------------------------------------------
# Howell normal form over Z/2^a
# ---------------------------------------------------------------------------

def howell_basis(rows, a_exp: int) -> tuple[Element, ...]:
    """Canonical basis of the additive subgroup of (Z/2^a)^4 spanned by rows.

    Pivots are powers of two at strictly increasing columns, entries above
    a pivot are reduced modulo it, and for every pivot 2^t the annihilator
    multiple 2^(a-t) * row is folded back in, which is what makes the form
    canonical over the non-domain Z/2^a.
    """
    mod = 1 << a_exp
    pivots: list = [None] * 4
    stack = [tuple(x % mod for x in r) for r in rows]
    while stack:
        v = list(stack.pop())
        for col in range(4):
            if v[col] % mod == 0:
                v[col] = 0
                continue
            t = _v2(v[col])
            uinv = pow(v[col] >> t, -1, mod)
            v = [(x * uinv) % mod for x in v]  # now v[col] == 2^t
            w = pivots[col]
            if w is None:
                pivots[col] = tuple(v)
                if t > 0:
                    stack.append(tuple((x << (a_exp - t)) % mod for x in v))
                v = None
                break
            tw = _v2(w[col])
            if t < tw:
                pivots[col] = tuple(v)
                if t > 0:
                    stack.append(tuple((x << (a_exp - t)) % mod for x in v))
                q = w[col] >> t
                v = [(w[i] - q * pivots[col][i]) % mod for i in range(4)]
            else:
                q = v[col] >> tw
                v = [(v[i] - q * w[i]) % mod for i in range(4)]
    # Normalize entries above each pivot.
    cols = [c for c in range(4) if pivots[c] is not None]
    for j in cols:
        tj = _v2(pivots[j][j])
        for i in cols:
            if i >= j:
                break
            q = pivots[i][j] >> tj
            if q:
                pivots[i] = tuple(
                    (pivots[i][x] - q * pivots[j][x]) % mod for x in range(4)
                )
    return tuple(pivots[c] for c in cols)


def reduce_against(v: Element, basis: tuple[Element, ...], a_exp: int) -> Element:
    """Canonical representative of v modulo the subgroup with Howell basis."""
    mod = 1 << a_exp
    v = [x % mod for x in v]
    for row in basis:
        col = next(c for c in range(4) if row[c])
        q = v[col] >> _v2(row[col])
        if q:
            v = [(v[i] - q * row[i]) % mod for i in range(4)]
    return tuple(v)


@dataclass(frozen=True, eq=False)
class RingIdeal:
    """Ideal of a StructuredRing, canonically represented.

    Two ideals of the same ring are equal iff their canonical bases are
    identical tuples; the generators they were built from do not matter.
    """

    ring: StructuredRing
    gens: tuple[Element, ...]
    basis: tuple[Element, ...]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingIdeal):
            return NotImplemented
        return self.ring == other.ring and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ring, self.basis))

    @cached_property
    def size(self) -> int:
        a = self.ring.a_exp
        n = 1
        for row in self.basis:
            col = next(c for c in range(4) if row[c])
            n <<= a - _v2(row[col])
        return n

    def reduce(self, x: Element) -> Element:
        return reduce_against(x, self.basis, self.ring.a_exp)

    def contains(self, x: Element) -> bool:
        return self.reduce(x) == ZERO

    def __le__(self, other: "RingIdeal") -> bool:
        return all(other.contains(r) for r in self.basis)

    def elements(self):
        """All elements, enumerated from basis-coefficient combinations."""
        a = self.ring.a_exp
        mod = 1 << a
        ranges = []
        for row in self.basis:
            col = next(c for c in range(4) if row[c])
            ranges.append(range(1 << (a - _v2(row[col]))))
        for coeffs in itertools.product(*ranges):
            acc = [0, 0, 0, 0]
            for c, row in zip(coeffs, self.basis):
                for i in range(4):
                    acc[i] += c * row[i]
            yield tuple(x % mod for x in acc)


def ideal_from_gens(ring: StructuredRing, gens) -> RingIdeal:
    """Smallest ideal containing ``gens``.

    Closes the additive span under multiplication by the four ring basis
    elements (which generate the multiplier action) until the canonical
    basis stabilizes; termination is guaranteed by finiteness.
    """
    gens = tuple(tuple(g) for g in gens)
    basis = howell_basis(gens, ring.a_exp)
    while True:
        prods = [ring.mul(b, e) for b in basis for e in ring.basis()]
        nb = howell_basis(list(basis) + prods, ring.a_exp)
        if nb == basis:
            return RingIdeal(ring=ring, gens=gens, basis=basis)
        basis = nb


def ideal_product(a: RingIdeal, b: RingIdeal) -> RingIdeal:
    """Product ideal, generated by pairwise products of canonical bases."""
    assert a.ring is b.ring or a.ring == b.ring
    ring = a.ring
    prods = [ring.mul(x, y) for x in a.basis for y in b.basis]
    basis = howell_basis(prods, ring.a_exp)
    return RingIdeal(ring=ring, gens=tuple(prods), basis=basis)


def unit_ideal(ring: StructuredRing) -> RingIdeal:
    return ideal_from_gens(ring, [ring.one])


def ideal_power(ideal: RingIdeal, t: int) -> RingIdeal:
    if t == 0:
        return unit_ideal(ideal.ring)
    acc = ideal
    for _ in range(t - 1):
        acc = ideal_product(acc, ideal)
    return acc


# ---------------------------------------------------------------------------
# Valuations against a precomputed chain of prime powers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Valuation:
    """Largest verified exponent j with x in p^j.

    ``capped`` means x lies in the deepest power of the chain (including
    x = 0), so the true valuation is only known to be >= value.
    """

    value: int
    capped: bool

    def at_least(self, j: int) -> bool:
        if j <= self.value:
            return True
        if not self.capped:
            return False
        raise ChainTooShort(f"need p^{j} but chain stops at p^{self.value}")

    def exactly(self, j: int) -> bool:
        if self.capped and j >= self.value:
            raise ChainTooShort(
                f"cannot decide v = {j} with chain capped at {self.value}"
            )
        return self.value == j


def valuation(x: Element, chain) -> Valuation:
    """Valuation of x against chain = [p^1, p^2, ..., p^N] (in order)."""
    v = 0
    for j, power in enumerate(chain, start=1):
        if not power.contains(x):
            return Valuation(value=j - 1, capped=False)
        v = j
    return Valuation(value=v, capped=True)


# ---------------------------------------------------------------------------
# Quotient rings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuotientRing:
    """Quotient of a StructuredRing by an ideal, via canonical coset reps."""

    parent: StructuredRing
    modulus_ideal: RingIdeal

    @property
    def size(self) -> int:
        return self.parent.size // self.modulus_ideal.size

    def reduce(self, x: Element) -> Element:
        return self.modulus_ideal.reduce(x)

    def add(self, x: Element, y: Element) -> Element:
        return self.reduce(self.parent.add(x, y))

    def mul(self, x: Element, y: Element) -> Element:
        return self.reduce(self.parent.mul(x, y))

    def representatives(self):
        """Canonical coset representatives, in deterministic order."""
        a = self.parent.a_exp
        pivot_val = {}
        for row in self.modulus_ideal.basis:
            col = next(c for c in range(4) if row[c])
            pivot_val[col] = 1 << _v2(row[col])
        ranges = [range(pivot_val.get(c, 1 << a)) for c in range(4)]
        return itertools.product(*ranges)


def quotient(ring: StructuredRing, ideal: RingIdeal) -> QuotientRing:
    return QuotientRing(parent=ring, modulus_ideal=ideal)
