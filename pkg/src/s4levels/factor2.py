"""Factorization of (2) in the ring of integers of a biquadratic field.

The strategy works entirely inside finite quotients: O_K/(2) has 16
elements, so its maximal ideals can be found by enumerating all additive
subspaces over the two-element field, and the ramification index is the
nilpotency exponent of their product.  Each maximal ideal is then lifted
to O_K/(2^a) for a large enough a, where the full chain of prime powers
p^1 .. p^(4e+1) is precomputed for use by the level dispatcher and the
brute-force oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import ChainTooShort, InconsistentFactorization, NoMaximalIdeal
from .finring import (
    Element,
    RingIdeal,
    StructuredRing,
    howell_basis,
    ideal_from_gens,
    ideal_product,
    unit_ideal,
    _v2,
)
from .numberfield import BiquadraticField, integral_basis, structure_mod

# Modulus exponent for the lifted chains: we need (2^a) contained in
# p^(4e+1), i.e. a*e >= 4e+1, which holds for every e >= 1 at a = 5.
LIFT_A_EXP = 5


@dataclass(frozen=True)
class PrimeAboveTwo:
    """One prime p | (2), with its precomputed power chain.

    ``chain[j-1]`` is p^j inside O_K/(2^LIFT_A_EXP), for j = 1 .. 4e+1;
    since (2^LIFT_A_EXP) lies in p^(4e+1), membership in these ideals
    agrees with membership in the true prime powers of O_K.
    """

    gens_mod2: tuple[Element, ...]
    e: int
    f: int
    ring: StructuredRing
    ideal: RingIdeal
    chain: tuple[RingIdeal, ...]
    uniformizer: Element

    def power(self, j: int) -> RingIdeal:
        if j == 0:
            return unit_ideal(self.ring)
        if j > len(self.chain):
            raise ChainTooShort(f"p^{j} requested, chain holds p^1..p^{len(self.chain)}")
        return self.chain[j - 1]


@dataclass(frozen=True)
class Factorization:
    """(2) = (p_1 ... p_g)^e with common inertial degree f."""

    field: BiquadraticField
    primes: tuple[PrimeAboveTwo, ...]
    shape: tuple[int, int, int]  # (e, f, g)

    @property
    def e(self) -> int:
        return self.shape[0]

    @property
    def f(self) -> int:
        return self.shape[1]

    @property
    def g(self) -> int:
        return self.shape[2]


def _all_subspaces(mod2_elements):
    """All additive subspaces of the 16-element vector space over F_2."""
    zero = (0, 0, 0, 0)
    seen = {frozenset({zero})}
    queue = [frozenset({zero})]
    while queue:
        W = queue.pop()
        for v in mod2_elements:
            if v in W:
                continue
            W2 = W | frozenset(
                tuple((w[i] + v[i]) % 2 for i in range(4)) for w in W
            )
            if W2 not in seen:
                seen.add(W2)
                queue.append(W2)
    return seen


def maximal_ideals(ring_mod2: StructuredRing) -> list[RingIdeal]:
    """All ideals I of the 16-element ring with ring/I a field.

    Enumerates the 67 subspaces of the underlying F_2-space and filters
    for multiplicative closure and an integral-domain quotient (a finite
    commutative integral domain is a field).
    """
    assert ring_mod2.a_exp == 1
    elements = list(ring_mod2.elements())
    found = []
    for W in _all_subspaces(elements):
        if len(W) == len(elements):
            continue  # quotient would be the zero ring
        if not all(ring_mod2.mul(e, w) in W for w in W for e in ring_mod2.basis()):
            continue
        outside = [x for x in elements if x not in W]
        if all(ring_mod2.mul(x, y) not in W for x in outside for y in outside):
            found.append(ideal_from_gens(ring_mod2, sorted(W)))
    if not found:
        raise NoMaximalIdeal("16-element ring has no maximal ideal (impossible)")
    found.sort(key=lambda ideal: ideal.basis)
    return found


def _lift_prime(big: StructuredRing, mod2_ideal: RingIdeal) -> RingIdeal:
    """Preimage of a mod-2 ideal in O_K/(2^a): lift generators, adjoin (2)."""
    gens = [tuple(int(c) for c in row) for row in mod2_ideal.basis]
    gens += [big.scale(2, e) for e in big.basis()]
    return ideal_from_gens(big, gens)


def _first_uniformizer(prime_ideal: RingIdeal, prime_sq: RingIdeal) -> Element:
    """First element of p \\ p^2 in deterministic enumeration order."""
    a = prime_ideal.ring.a_exp
    mod = 1 << a
    ranges = []
    for row in prime_ideal.basis:
        col = next(c for c in range(4) if row[c])
        ranges.append(range(1 << (a - _v2(row[col]))))
    for coeffs in itertools.product(*ranges):
        acc = [0, 0, 0, 0]
        for c, row in zip(coeffs, prime_ideal.basis):
            for i in range(4):
                acc[i] += c * row[i]
        x = tuple(v % mod for v in acc)
        if not prime_sq.contains(x):
            return x
    raise InconsistentFactorization("p == p^2: not a prime of a Dedekind ring")


def factor_two(field: BiquadraticField) -> Factorization:
    """Compute (2) = (p_1 ... p_g)^e with inertial degree f.

    e is the smallest exponent with (P_1 ... P_g)^e = (0) in O_K/(2);
    f comes from the quotient-field sizes.  The extension is Galois, so
    all primes share (e, f); anything else raises
    ``InconsistentFactorization``.
    """
    basis = integral_basis(field)
    ring2 = structure_mod(basis, 1)
    maxids = maximal_ideals(ring2)

    fs = set()
    for ideal in maxids:
        q = ring2.size // ideal.size
        fs.add(q.bit_length() - 1)
    if len(fs) != 1:
        raise InconsistentFactorization(
            f"{field}: primes above 2 have distinct inertial degrees {fs}"
        )
    f = fs.pop()
    g = len(maxids)

    prod = maxids[0]
    for ideal in maxids[1:]:
        prod = ideal_product(prod, ideal)
    e = 1
    power = prod
    while power.size > 1:
        power = ideal_product(power, prod)
        e += 1
        if e > 4:
            raise InconsistentFactorization(f"{field}: radical not nilpotent by e=4")
    if e * f * g != 4:
        raise InconsistentFactorization(f"{field}: e*f*g = {e}*{f}*{g} != 4")

    big = structure_mod(basis, LIFT_A_EXP)
    primes = []
    for ideal in maxids:
        lifted = _lift_prime(big, ideal)
        if big.size // lifted.size != 1 << f:
            raise InconsistentFactorization(
                f"{field}: lifted prime has wrong index {big.size // lifted.size}"
            )
        chain = [lifted]
        for _ in range(4 * e):
            chain.append(ideal_product(chain[-1], lifted))
        tau = _first_uniformizer(lifted, chain[1])
        primes.append(
            PrimeAboveTwo(
                gens_mod2=ideal.basis,
                e=e,
                f=f,
                ring=big,
                ideal=lifted,
                chain=tuple(chain),
                uniformizer=tau,
            )
        )
    return Factorization(field=field, primes=tuple(primes), shape=(e, f, g))
