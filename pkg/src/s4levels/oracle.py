"""Brute-force verification engine for fourth levels.

Everything here is independent of the closed-form theorems: levels are
found by enumerating all fourth powers in the finite quotient O_K/p^N
and growing sumsets until -1 is reached.  The quotient's additive group
is diagonalized once (integer row/column reduction of the ideal lattice)
so that enumeration, reduction and sumset convolution all become
vectorized numpy work on a product of cyclic 2-groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CapExceeded, VerificationFailure
from .factor2 import PrimeAboveTwo, factor_two
from .finring import Element
from .numberfield import IntegralBasis, integral_basis, make_field

BIRCH_CAP = 16  # a number field with finite fourth level has s4 <= 16


# ---------------------------------------------------------------------------
# Diagonalization of the quotient group (Z/2^a)^4 / lattice
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupChart:
    """Isomorphism (Z/2^a)^4 / L  ->  Z/d0 x Z/d1 x Z/d2 x Z/d3.

    ``to_group`` of an element x is (x @ V) mod d; the section back into
    ring coordinates is (g @ Vinv) mod 2^a.  V is unimodular, so the two
    maps are mutually inverse on coset representatives.
    """

    shape: tuple[int, int, int, int]
    V: np.ndarray
    Vinv: np.ndarray
    mod: int

    @property
    def size(self) -> int:
        n = 1
        for d in self.shape:
            n *= d
        return n

    def to_group(self, X: np.ndarray) -> np.ndarray:
        return (X @ self.V) % np.array(self.shape, dtype=np.int64)

    def to_ranks(self, X: np.ndarray) -> np.ndarray:
        G = self.to_group(X)
        return np.ravel_multi_index(G.T, self.shape)

    def all_elements(self) -> np.ndarray:
        """One canonical ring element per coset, rank-ordered."""
        G = np.indices(self.shape).reshape(4, -1).T.astype(np.int64)
        return (G @ self.Vinv) % self.mod


def _diagonalize_lattice(rows, a_exp: int) -> GroupChart:
    """Reduce the lattice spanned by ``rows`` + (2^a)Z^4 to diagonal form.

    Classic alternating row/column elimination over the integers; only
    the column transform (and its inverse) must be tracked, because row
    operations do not change the row span.
    """
    mod = 1 << a_exp
    A = [list(map(int, r)) for r in rows]
    A += [[mod if i == j else 0 for j in range(4)] for i in range(4)]
    m = len(A)
    V = [[int(i == j) for j in range(4)] for i in range(4)]
    Vinv = [[int(i == j) for j in range(4)] for i in range(4)]

    def col_swap(i, j):
        for r in range(m):
            A[r][i], A[r][j] = A[r][j], A[r][i]
        for r in range(4):
            V[r][i], V[r][j] = V[r][j], V[r][i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def col_sub(j, q, i):  # col_j -= q * col_i
        for r in range(m):
            A[r][j] -= q * A[r][i]
        for r in range(4):
            V[r][j] -= q * V[r][i]
        for c in range(4):
            Vinv[i][c] += q * Vinv[j][c]

    for i in range(4):
        while True:
            # smallest nonzero entry of the trailing block to (i, i)
            best = None
            for r in range(i, m):
                for c in range(i, 4):
                    if A[r][c] and (best is None or abs(A[r][c]) < best[0]):
                        best = (abs(A[r][c]), r, c)
            assert best is not None  # full rank: (2^a)Z^4 is included
            _, r, c = best
            if r != i:
                A[i], A[r] = A[r], A[i]
            if c != i:
                col_swap(i, c)
            piv = A[i][i]
            dirty = False
            for r in range(i + 1, m):
                q = A[r][i] // piv
                if q:
                    for cc in range(i, 4):
                        A[r][cc] -= q * A[i][cc]
                if A[r][i]:
                    dirty = True
            for c in range(i + 1, 4):
                q = A[i][c] // piv
                if q:
                    col_sub(c, q, i)
                if A[i][c]:
                    dirty = True
            if not dirty:
                break
    shape = tuple(abs(A[i][i]) for i in range(4))
    return GroupChart(
        shape=shape,
        V=np.array(V, dtype=np.int64),
        Vinv=np.array(Vinv, dtype=np.int64),
        mod=mod,
    )


def quotient_chart(prime: PrimeAboveTwo, N: int) -> GroupChart:
    """Diagonalized additive model of O_K/p^N."""
    chart = _diagonalize_lattice(prime.power(N).basis, prime.ring.a_exp)
    expected = 1 << (N * prime.f)
    if chart.size != expected:
        raise VerificationFailure(
            f"|O_K/p^{N}| = {chart.size}, expected 2^{N * prime.f}"
        )
    return chart


# ---------------------------------------------------------------------------
# Fourth-power residues
# ---------------------------------------------------------------------------

def _square_all(X: np.ndarray, S: np.ndarray, mod: int) -> np.ndarray:
    """Row-wise ring squares using the symmetry of the structure tensor."""
    Z = np.zeros_like(X)
    for i in range(4):
        Z += (X[:, i] * X[:, i])[:, None] * S[i, i][None, :]
        for j in range(i + 1, 4):
            Z += (2 * X[:, i] * X[:, j])[:, None] * S[i, j][None, :]
    return Z % mod


@dataclass(frozen=True)
class PowerResidueSet:
    """All fourth-power residues in O_K/p^N, as group ranks.

    ``reps[i]`` is one ring element whose fourth power realizes
    ``residues[i]``; ``unit_residues`` are the residues of elements
    outside p (equivalently: the residues that are units themselves).
    """

    prime: PrimeAboveTwo
    N: int
    chart: GroupChart
    residues: np.ndarray
    unit_residues: np.ndarray
    reps: np.ndarray
    minus_one: int

    def contains_minus_one(self) -> bool:
        return self.minus_one in set(self.residues.tolist())


def fourth_powers(prime: PrimeAboveTwo, N: int) -> PowerResidueSet:
    """Exact fourth-power residue set of O_K/p^N by full enumeration."""
    chart = quotient_chart(prime, N)
    S = np.array(prime.ring.S, dtype=np.int64)
    mod = prime.ring.mod

    X = chart.all_elements()
    sq = _square_all(X, S, mod)
    fp = _square_all(sq, S, mod)
    ranks = chart.to_ranks(fp)

    chart1 = quotient_chart(prime, 1)
    in_p = (chart1.to_group(X) == 0).all(axis=1)

    residues, first = np.unique(ranks, return_index=True)
    unit_residues = np.unique(ranks[~in_p])
    minus_one = int(chart.to_ranks(
        np.array([[mod - 1, 0, 0, 0]], dtype=np.int64))[0])
    return PowerResidueSet(
        prime=prime, N=N, chart=chart,
        residues=residues, unit_residues=unit_residues,
        reps=X[first], minus_one=minus_one,
    )


# ---------------------------------------------------------------------------
# Minimal sums of fourth powers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MinimalSum:
    """Minimal g with -1 a sum of g fourth powers, plus one witness."""

    g: int
    witness: tuple[Element, ...]  # ring elements x with sum of x^4 = -1
    witness_residues: tuple[int, ...]


def minimal_sum_to_minus_one(powers: PowerResidueSet,
                             cap: int = BIRCH_CAP) -> MinimalSum:
    """BFS sumset growth S_g = S_{g-1} + residues via cyclic convolution.

    Indicator arrays live on the product-of-cyclic-groups grid, so each
    growth step is one FFT convolution; float round-off stays orders of
    magnitude below the 0.5 decision threshold at these sizes.
    """
    shape = powers.chart.shape
    base = np.zeros(shape, dtype=np.float64)
    base.flat[powers.residues] = 1.0
    Fbase = np.fft.fftn(base)

    levels = [base > 0.5]
    target = np.unravel_index(powers.minus_one, shape)
    g = 1
    while not levels[-1][target]:
        if g >= cap:
            raise CapExceeded(
                f"-1 not a sum of {cap} fourth powers in O_K/p^{powers.N}"
            )
        grown = np.fft.ifftn(np.fft.fftn(levels[-1].astype(np.float64))
                             * Fbase).real > 0.5
        levels.append(grown)
        g += 1

    # Walk back through the levels to extract one explicit representation.
    rank_of = {int(r): i for i, r in enumerate(powers.residues)}
    dims = np.array(shape)
    coords = {int(r): np.array(np.unravel_index(int(r), shape))
              for r in powers.residues.tolist()}
    t = np.array(target)
    chosen = []
    for lvl in range(g, 0, -1):
        for r in powers.residues.tolist():
            rest = (t - coords[int(r)]) % dims
            if lvl == 1:
                ok = (rest == 0).all()
            else:
                ok = bool(levels[lvl - 2][tuple(rest)])
            if ok:
                chosen.append(int(r))
                t = rest
                break
        else:
            raise VerificationFailure("witness backtrack failed")
    unit_set = set(powers.unit_residues.tolist())
    if not any(r in unit_set for r in chosen):
        raise VerificationFailure(
            "representation of -1 without a unit fourth power"
        )
    witness = tuple(tuple(int(c) for c in powers.reps[rank_of[r]])
                    for r in chosen)
    return MinimalSum(g=g, witness=witness,
                      witness_residues=tuple(chosen))


def min_sum_to_minus_one(powers: PowerResidueSet, cap: int = BIRCH_CAP) -> int:
    return minimal_sum_to_minus_one(powers, cap).g


def oracle_level(prime: PrimeAboveTwo) -> int:
    """s4 of the completion at ``prime`` by pure enumeration at N=4e+1."""
    return min_sum_to_minus_one(fourth_powers(prime, 4 * prime.e + 1))


def hensel_modulus_equivalence(prime: PrimeAboveTwo) -> bool:
    """Whether the levels of O_K/p^(3e+1) and O_K/p^(4e+1) coincide."""
    lo = min_sum_to_minus_one(fourth_powers(prime, 3 * prime.e + 1))
    hi = min_sum_to_minus_one(fourth_powers(prime, 4 * prime.e + 1))
    return lo == hi


def fourth_power_congruence_check(prime: PrimeAboveTwo) -> bool:
    """x = y (mod p^e) forces x^4 = y^4 (mod p^(3e+1)); checked exhaustively.

    Requires e > 1 and f = 1.  Returns whether no counterexample pair
    exists in O_K/p^(3e+1).
    """
    assert prime.e > 1 and prime.f == 1
    N = 3 * prime.e + 1
    chart = quotient_chart(prime, N)
    chart_e = quotient_chart(prime, prime.e)
    S = np.array(prime.ring.S, dtype=np.int64)
    mod = prime.ring.mod

    X = chart.all_elements()
    fp_ranks = chart.to_ranks(_square_all(_square_all(X, S, mod), S, mod))
    cls = chart_e.to_ranks(X)
    pairs = np.unique(np.stack([cls, fp_ranks], axis=1), axis=0)
    # one fourth-power class per congruence class mod p^e
    return len(pairs) == len(np.unique(cls))


# ---------------------------------------------------------------------------
# Exact arithmetic in O_K (no modulus): the explicit witness identity
# ---------------------------------------------------------------------------

def exact_mul(basis: IntegralBasis, x, y):
    """Product of integer coordinate vectors over the integral basis."""
    S = basis.structure
    acc = [0, 0, 0, 0]
    for i in range(4):
        if x[i] == 0:
            continue
        for j in range(4):
            c = x[i] * y[j]
            if c == 0:
                continue
            for h in range(4):
                acc[h] += c * S[i][j][h]
    return tuple(acc)


def exact_pow4(basis: IntegralBasis, x):
    sq = exact_mul(basis, x, x)
    return exact_mul(basis, sq, sq)


@lru_cache(maxsize=1)
def witness_field_basis() -> IntegralBasis:
    return integral_basis(make_field(-2, -6))


def witness_terms():
    """The four elements of Q(sqrt(-2), sqrt(-6)) whose fourth powers
    sum to zero, in coordinates over the basis (1, sqrt(3), sqrt(-2),
    (sqrt(-2)+sqrt(-6))/2)."""
    return (
        ("(sqrt(-2)+sqrt(-6))/2", (0, 0, 0, 1)),
        ("(sqrt(-2)-sqrt(-6))/2", (0, 0, 1, -1)),
        ("sqrt(-2)+1", (1, 0, 1, 0)),
        ("sqrt(-2)-1", (-1, 0, 1, 0)),
    )


def witness_identity_sum():
    """Exact coordinates of the sum of the four fourth powers."""
    basis = witness_field_basis()
    acc = (0, 0, 0, 0)
    for _, coords in witness_terms():
        fp = exact_pow4(basis, coords)
        acc = tuple(a + b for a, b in zip(acc, fp))
    return acc


def witness_identity() -> bool:
    """Exact check that the four fourth powers sum to zero in O_K."""
    return witness_identity_sum() == (0, 0, 0, 0)


# ---------------------------------------------------------------------------
# Reference fourth-power tables for a totally ramified prime (e=4, f=1)
# ---------------------------------------------------------------------------

# Nonzero fourth-power classes mod p^8, as polynomials in tau.
MOD8_CLASSES = (
    ("1", ((1, 0),)),
    ("t4", ((1, 4),)),
    ("t4+2t2+1", ((1, 4), (2, 2), (1, 0))),
)

# Fourth powers mod p^13: (base element, its fourth power), both as
# polynomials in tau.
MOD13_TABLE = (
    ("1", ((1, 0),), ((1, 0),)),
    ("t+1", ((1, 1), (1, 0)),
     ((1, 4), (4, 3), (6, 2), (4, 1), (1, 0))),
    ("t2+1", ((1, 2), (1, 0)),
     ((1, 8), (6, 4), (4, 2), (1, 0))),
    ("t3+1", ((1, 3), (1, 0)),
     ((1, 12), (2, 6), (4, 3), (1, 0))),
    ("t+t2+1", ((1, 1), (1, 2), (1, 0)),
     ((1, 8), (2, 6), (3, 4), (2, 2), (4, 1), (1, 0))),
    ("t+t3+1", ((1, 1), (1, 3), (1, 0)),
     ((1, 12), (2, 6), (1, 4), (6, 2), (4, 1), (1, 0))),
    ("t2+t3+1", ((1, 2), (1, 3), (1, 0)),
     ((1, 8), (2, 6), (2, 4), (4, 3), (4, 2), (1, 0))),
    ("t+t2+t3+1", ((1, 1), (1, 2), (1, 3), (1, 0)),
     ((1, 12), (1, 8), (3, 4), (4, 3), (2, 2), (4, 1), (1, 0))),
    ("t", ((1, 1),), ((1, 4),)),
    ("t+t2", ((1, 1), (1, 2)), ((1, 8), (2, 6), (1, 4))),
    ("t+t3", ((1, 1), (1, 3)), ((1, 4),)),
    ("t+t2+t3", ((1, 1), (1, 2), (1, 3)), ((1, 8), (2, 6), (1, 4))),
    ("t2", ((1, 2),), ((1, 8),)),
    ("t2+t3", ((1, 2), (1, 3)), ((1, 12), (1, 8))),
    ("t3", ((1, 3),), ((1, 12),)),
)


def _poly(prime: PrimeAboveTwo, pows, terms) -> Element:
    ring = prime.ring
    acc = ring.zero
    for coeff, exp in terms:
        acc = ring.add(acc, ring.scale(coeff, pows[exp]))
    return acc


def residue_classes_mod8(prime: PrimeAboveTwo):
    """Compare enumerated nonzero fourth-power classes mod p^8 with the
    three reference polynomials.  Returns (all_match, per_line_report)."""
    assert (prime.e, prime.f) == (4, 1)
    from .level import tau_power_table

    powers = fourth_powers(prime, 8)
    pows = tau_power_table(prime, prime.uniformizer, upto=4)
    computed = set(powers.residues.tolist())
    zero_rank = int(powers.chart.to_ranks(
        np.zeros((1, 4), dtype=np.int64))[0])
    computed.discard(zero_rank)

    report = []
    expected = set()
    for name, terms in MOD8_CLASSES:
        val = np.array([_poly(prime, pows, terms)], dtype=np.int64)
        rank = int(powers.chart.to_ranks(val)[0])
        expected.add(rank)
        report.append((name, rank in computed))
    ok = expected == computed and all(m for _, m in report)
    return ok, report


def fourth_power_table_mod13(prime: PrimeAboveTwo):
    """Verify each printed congruence x^4 = poly(tau) mod p^13.
    Returns (all_match, per_line_report)."""
    assert (prime.e, prime.f) == (4, 1)
    from .level import tau_power_table

    chart = quotient_chart(prime, 13)
    pows = tau_power_table(prime, prime.uniformizer, upto=12)
    ring = prime.ring
    report = []
    for name, base_terms, fp_terms in MOD13_TABLE:
        x = _poly(prime, pows, base_terms)
        sq = ring.mul(x, x)
        lhs = np.array([ring.mul(sq, sq)], dtype=np.int64)
        rhs = np.array([_poly(prime, pows, fp_terms)], dtype=np.int64)
        report.append((name, int(chart.to_ranks(lhs)[0])
                       == int(chart.to_ranks(rhs)[0])))
    return all(m for _, m in report), report
