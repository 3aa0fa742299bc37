"""Biquadratic fields Q(sqrt(m), sqrt(n)) and their rings of integers.

A biquadratic field contains a third square root sqrt(k) with
k = m*n / gcd(|m|,|n|)^2.  Up to permuting (m, n, k) the residues mod 4
fall into one of four patterns, each with a known integral basis
(1, a, b, c).  This module validates the input pair, classifies the
pattern, and computes the exact 4x4x4 integer structure constants of the
basis, which downstream modules reduce mod 2^a to obtain finite quotient
rings.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegenerateField,
    NoPatternMatch,
    NonIntegralStructure,
    NotSquareFree,
)


class Pattern(enum.Enum):
    """Residues mod 4 of the role-assigned triple (m, n, k)."""

    M3_N2_K2 = (3, 2, 2)
    M1_N3_K3 = (1, 3, 3)
    M1_N2_K2 = (1, 2, 2)
    M1_N1_K1 = (1, 1, 1)


@dataclass(frozen=True)
class BiquadraticField:
    """Validated pair (m, n) with derived data.

    ``roles`` is the triple (m, n, k) permuted so that its residues mod 4
    match ``pattern``; the permutation chosen is the lexicographically
    smallest index permutation that matches, so construction is
    deterministic.
    """

    m: int
    n: int
    d: int
    k: int
    pattern: Pattern
    roles: tuple[int, int, int]

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.m, self.n, self.k)

    def __str__(self) -> str:
        return f"Q(sqrt({self.m}),sqrt({self.n}))"


@dataclass(frozen=True)
class IntegralBasis:
    """Integral basis (1, a, b, c) with exact structure constants.

    ``structure[i][j][h]`` is the coefficient of basis element h in the
    product of basis elements i and j.  Always integral for a valid
    field; ``NonIntegralStructure`` signals a classification bug.
    """

    field: BiquadraticField
    description: tuple[str, str, str, str]
    structure: tuple  # 4x4x4 nested tuples of int


def is_square_free(x: int) -> bool:
    """Trial-division square-freeness test (inputs are small)."""
    if x == 0:
        return False
    x = abs(x)
    if x % 4 == 0:
        return False
    p = 3
    while p * p <= x:
        if x % (p * p) == 0:
            return False
        p += 2
    return True


def _classify(m: int, n: int, k: int) -> tuple[Pattern, tuple[int, int, int]]:
    triple = (m, n, k)
    for pattern in Pattern:
        for perm in itertools.permutations(range(3)):
            assigned = tuple(triple[i] for i in perm)
            if tuple(x % 4 for x in assigned) == pattern.value:
                return pattern, assigned
    raise NoPatternMatch(
        f"no residue pattern matches ({m}, {n}, {k}) mod 4; "
        "this should be unreachable for valid square-free input"
    )


def make_field(m: int, n: int) -> BiquadraticField:
    """Validate (m, n) and classify the field Q(sqrt(m), sqrt(n)).

    Raises ``NotSquareFree`` or ``DegenerateField`` on bad input.
    """
    for v in (m, n):
        if v in (0, 1):
            raise DegenerateField(f"m, n must not be in {{0, 1}}; got {v}")
    if m == n:
        raise DegenerateField(f"m = n = {m} does not generate a quartic field")
    for v in (m, n):
        if not is_square_free(v):
            raise NotSquareFree(v)
    d = math.gcd(abs(m), abs(n))
    k = (m * n) // (d * d)
    if not is_square_free(k):
        raise NotSquareFree(k)
    if k in (0, 1) or k == m or k == n:
        # Unreachable for square-free m != n, kept as a guard.
        raise DegenerateField(f"derived k = {k} degenerates the field")
    pattern, roles = _classify(m, n, k)
    return BiquadraticField(m=m, n=n, d=d, k=k, pattern=pattern, roles=roles)


# ---------------------------------------------------------------------------
# Exact arithmetic in the rational span of (1, sqrt(M), sqrt(N), sqrt(K)).
#
# Root convention: sqrt(M)*sqrt(N) = d'*sqrt(K) with d' = +sqrt(M*N/K) > 0,
# which forces sqrt(M)*sqrt(K) = (M/d')*sqrt(N) and
# sqrt(N)*sqrt(K) = (N/d')*sqrt(M).  Any consistent choice yields an
# isomorphic ring; fixing one makes the structure constants deterministic.
# ---------------------------------------------------------------------------

Vec = tuple[Fraction, Fraction, Fraction, Fraction]


def _root_coeff(a: int, b: int, c: int) -> int:
    """Positive integer r with sqrt(a)*sqrt(b) = r*sqrt(c), i.e. r^2 = ab/c."""
    q, rem = divmod(a * b, c)
    r = math.isqrt(q)
    if rem != 0 or r * r != q:
        raise NoPatternMatch(f"{a}*{b}/{c} is not a perfect square")
    return r


def _mul_table(M: int, N: int, K: int):
    """4x4 table of products of (1, sqrt(M), sqrt(N), sqrt(K)) as vectors."""
    dmn = _root_coeff(M, N, K)
    f = Fraction
    z = f(0)

    def vec(c0=0, c1=0, c2=0, c3=0):
        return (f(c0), f(c1), f(c2), f(c3))

    t = [[None] * 4 for _ in range(4)]
    t[0][0] = vec(1)
    t[0][1] = t[1][0] = vec(0, 1)
    t[0][2] = t[2][0] = vec(0, 0, 1)
    t[0][3] = t[3][0] = vec(0, 0, 0, 1)
    t[1][1] = vec(M)
    t[2][2] = vec(N)
    t[3][3] = vec(K)
    t[1][2] = t[2][1] = vec(0, 0, 0, dmn)
    t[1][3] = t[3][1] = (z, z, f(M, dmn), z)
    t[2][3] = t[3][2] = (z, f(N, dmn), z, z)
    return t


def _vmul(u: Vec, v: Vec, table) -> Vec:
    acc = [Fraction(0)] * 4
    for i in range(4):
        if u[i] == 0:
            continue
        for j in range(4):
            if v[j] == 0:
                continue
            coef = u[i] * v[j]
            prod = table[i][j]
            for h in range(4):
                acc[h] += coef * prod[h]
    return tuple(acc)


def _solve(basis: list[Vec], target: Vec) -> Vec:
    """Solve sum_h c_h * basis[h] = target by Gaussian elimination over Q."""
    # Columns are basis vectors, augmented with the target.
    rows = [[basis[h][i] for h in range(4)] + [target[i]] for i in range(4)]
    for col in range(4):
        piv = next(r for r in range(col, 4) if rows[r][col] != 0)
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [x * inv for x in rows[col]]
        for r in range(4):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return tuple(rows[i][4] for i in range(4))


def _basis_vectors(field: BiquadraticField):
    """Pattern-specific basis (1, a, b, c) as vectors over (1, sM, sN, sK)."""
    M, N, K = field.roles
    f = Fraction
    h = f(1, 2)
    one = (f(1), f(0), f(0), f(0))
    sM = (f(0), f(1), f(0), f(0))
    sN = (f(0), f(0), f(1), f(0))
    if field.pattern is Pattern.M3_N2_K2:
        vecs = [one, sM, sN, (f(0), f(0), h, h)]
        desc = ("1", f"sqrt({M})", f"sqrt({N})", f"(sqrt({N})+sqrt({K}))/2")
    elif field.pattern in (Pattern.M1_N3_K3, Pattern.M1_N2_K2):
        vecs = [one, (h, h, f(0), f(0)), sN, (f(0), f(0), h, h)]
        desc = ("1", f"(1+sqrt({M}))/2", f"sqrt({N})",
                f"(sqrt({N})+sqrt({K}))/2")
    else:  # M1_N1_K1
        # sqrt(M)*sqrt(K) = (M/d')*sqrt(N) under the fixed root convention;
        # the sign matters for integrality when M < 0.
        smk = M // _root_coeff(M, N, K)
        c = (f(1, 4), f(1, 4), f(smk, 4), f(1, 4))
        vecs = [one, (h, h, f(0), f(0)), (h, f(0), h, f(0)), c]
        desc = ("1", f"(1+sqrt({M}))/2", f"(1+sqrt({N}))/2",
                f"(1+sqrt({M}))(1+sqrt({K}))/4")
    return vecs, desc


def integral_basis(field: BiquadraticField) -> IntegralBasis:
    """Exact structure constants of the integral basis for ``field``."""
    M, N, K = field.roles
    table = _mul_table(M, N, K)
    vecs, desc = _basis_vectors(field)
    structure = []
    for i in range(4):
        row = []
        for j in range(4):
            coords = _solve(vecs, _vmul(vecs[i], vecs[j], table))
            for h, c in enumerate(coords):
                if c.denominator != 1:
                    raise NonIntegralStructure(
                        f"{field}: product of basis elements {i},{j} has "
                        f"non-integer coordinate {c} at position {h}"
                    )
            row.append(tuple(int(c) for c in coords))
        structure.append(tuple(row))
    return IntegralBasis(field=field, description=desc,
                         structure=tuple(structure))


def structure_mod(basis: IntegralBasis, a_exp: int):
    """Reduce the structure constants mod 2^a_exp into a finite ring."""
    from .finring import StructuredRing

    if a_exp < 1:
        raise ValueError("a_exp must be >= 1")
    mod = 1 << a_exp
    S = tuple(
        tuple(tuple(c % mod for c in cell) for cell in row)
        for row in basis.structure
    )
    return StructuredRing(a_exp=a_exp, S=S)
