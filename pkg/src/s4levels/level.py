"""Closed-form computation of the fourth level s of a 2-adic completion.

Two independent entry points produce the same answer for biquadratic
fields and are cross-checked against the brute-force enumerator:

* ``level_from_ef`` dispatches on the ramification data (e, f) of one
  prime above 2, including the full case tree on alpha = v_p(tau^4 + 2)
  for the totally ramified e=4, f=1 situation;
* ``level_main2`` evaluates the congruence table on the role-assigned
  triple (m, n, k) of a biquadratic field directly, with no ring
  arithmetic at all.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import (
    AlphaTooSmall,
    AmbiguousSubcase,
    NoSubcase,
    UnsupportedEF,
)
from .factor2 import PrimeAboveTwo
from .finring import Element, valuation
from .numberfield import BiquadraticField, Pattern


@dataclass(frozen=True)
class LevelResult:
    """The level s together with the case that produced it.

    ``route`` is a short stable identifier of the fired case/subcase;
    ``alpha`` is v_p(tau^4+2) when the e=4, f=1 tree ran (13 means
    "at least 13"); ``witnesses`` names the condition expressions whose
    vanishing decided the subcase.
    """

    s: int
    route: str
    alpha: int | None = None
    witnesses: tuple[str, ...] = dc_field(default=())


# ---------------------------------------------------------------------------
# Condition-expression evaluation: polynomials in the uniformizer tau
# ---------------------------------------------------------------------------

def tau_power_table(prime: PrimeAboveTwo, tau: Element, upto: int = 12):
    """(1, tau, tau^2, ..., tau^upto) in O_K/(2^a)."""
    ring = prime.ring
    pows = [ring.one]
    for _ in range(upto):
        pows.append(ring.mul(pows[-1], tau))
    return pows


def poly_in_tau(prime: PrimeAboveTwo, pows, terms) -> Element:
    """Evaluate sum of coeff * tau^exp for (coeff, exp) in terms."""
    ring = prime.ring
    acc = ring.zero
    for coeff, exp in terms:
        acc = ring.add(acc, ring.scale(coeff, pows[exp]))
    return acc


def _pick_exclusive(route_prefix: str, candidates) -> tuple[int, str, tuple]:
    """Enforce that exactly one subcase condition holds, then return it.

    ``candidates`` is a list of (s, witness_names, holds) triples for the
    non-default subcases, optionally followed by a default via s < 0
    sentinel handled by the caller.
    """
    hits = [(s, names) for s, names, holds in candidates if holds]
    if len(hits) > 1:
        raise AmbiguousSubcase(
            f"{route_prefix}: multiple subcases fired: "
            f"{[s for s, _ in hits]}"
        )
    if not hits:
        raise NoSubcase(f"{route_prefix}: no subcase condition holds")
    s, names = hits[0]
    return s, f"{route_prefix}_s{s}", tuple(names)


def level_e4_f1(prime: PrimeAboveTwo, tau: Element | None = None) -> LevelResult:
    """Case tree on alpha = v_p(tau^4+2) for a totally ramified prime.

    The outcome is independent of which uniformizer ``tau`` in p \\ p^2
    is used; passing one explicitly exists to let tests verify exactly
    that.  All congruence conditions are membership tests against the
    precomputed chain p^1..p^13.
    """
    assert (prime.e, prime.f) == (4, 1)
    ring = prime.ring
    chain13 = prime.chain[:13]
    if tau is None:
        tau = prime.uniformizer

    t = tau_power_table(prime, tau, upto=12)
    tau4p2 = ring.add(t[4], ring.from_int(2))
    va = valuation(tau4p2, chain13)
    if va.capped:
        return LevelResult(s=2, route="e4f1_a13", alpha=13,
                           witnesses=("p13 | tau4+2",))
    alpha = va.value
    if alpha < 5:
        raise AlphaTooSmall(f"v_p(tau^4+2) = {alpha} < 5")

    p13 = prime.power(13)
    p12 = prime.power(12)

    if alpha == 5:
        exprs = [
            (3, "t12+t8+2t6+4t3+4", [(1, 12), (1, 8), (2, 6), (4, 3), (4, 0)]),
            (4, "t8+2t6+4t3+4", [(1, 8), (2, 6), (4, 3), (4, 0)]),
            (5, "t8+4t3+4t2+4", [(1, 8), (4, 3), (4, 2), (4, 0)]),
            (6, "t12+t8+4t3+4t2+4", [(1, 12), (1, 8), (4, 3), (4, 2), (4, 0)]),
        ]
        cands = [
            (s, [name], p13.contains(poly_in_tau(prime, t, terms)))
            for s, name, terms in exprs
        ]
        s, route, names = _pick_exclusive("e4f1_a5", cands)
        return LevelResult(s=s, route=route, alpha=5, witnesses=names)

    if alpha == 6:
        base = poly_in_tau(prime, t, [(1, 4), (2, 2), (2, 0)])  # t4+2t2+2
        t4p1 = ring.add(t[4], ring.one)
        A = [
            ring.add(poly_in_tau(prime, t, [(4, 3), (4, 2), (4, 1)]), base),
            ring.add(ring.scale(4, t[1]), ring.mul(t4p1, base)),
            ring.add(ring.scale(4, t[1]), base),
            ring.add(poly_in_tau(prime, t, [(4, 3), (4, 2), (4, 1)]),
                     ring.mul(t4p1, base)),
        ]
        in13 = [p13.contains(a) for a in A]
        in12not13 = [p12.contains(a) and not p13.contains(a) for a in A]
        shift12 = [p12.contains(ring.add(a, t[8])) for a in A]
        s1_names = [f"A{i+1} in p13" for i in range(4) if in13[i]]
        s2_names = [f"A{i+1} in p12\\p13" for i in range(4) if in12not13[i]]
        s2_names += [f"A{i+1}+t8 in p12" for i in range(4) if shift12[i]]
        cands = [
            (1, s1_names, bool(s1_names)),
            (2, s2_names, bool(s2_names)),
        ]
        if not any(holds for _, _, holds in cands):
            return LevelResult(s=3, route="e4f1_a6_s3", alpha=6)
        s, route, names = _pick_exclusive("e4f1_a6", cands)
        return LevelResult(s=s, route=route, alpha=6, witnesses=names)

    if alpha == 7:
        # t12 + 4t3 + 2(t4+2)
        expr = poly_in_tau(prime, t, [(1, 12), (2, 4), (4, 3), (4, 0)])
        if p13.contains(expr):
            return LevelResult(s=3, route="e4f1_a7_s3", alpha=7,
                               witnesses=("t12+4t3+2(t4+2)",))
        return LevelResult(s=4, route="e4f1_a7_s4", alpha=7)

    if alpha == 8:
        E = [(1, 8), (1, 4), (2, 0)]  # t8+t4+2
        two = [
            ("E", E),
            ("4t2+E", [(4, 2)] + E),
            ("t12+4t3+E", [(1, 12), (4, 3)] + E),
            ("t12+4t3+4t2+E", [(1, 12), (4, 3), (4, 2)] + E),
        ]
        three = [
            ("t12+E", [(1, 12)] + E),
            ("t12+4t2+E", [(1, 12), (4, 2)] + E),
            ("4t3+E", [(4, 3)] + E),
            ("4t3+4t2+E", [(4, 3), (4, 2)] + E),
        ]
        s2_names = [name for name, terms in two
                    if p13.contains(poly_in_tau(prime, t, terms))]
        s3_names = [name for name, terms in three
                    if p13.contains(poly_in_tau(prime, t, terms))]
        vE = valuation(poly_in_tau(prime, t, E), chain13)
        s4_holds = (not vE.capped) and vE.value == 9
        cands = [
            (2, s2_names, bool(s2_names)),
            (3, s3_names, bool(s3_names)),
            (4, ["p9 || E"], s4_holds),
        ]
        s, route, names = _pick_exclusive("e4f1_a8", cands)
        return LevelResult(s=s, route=route, alpha=8, witnesses=names)

    if alpha == 9:
        return LevelResult(s=4, route="e4f1_a9", alpha=9)

    if alpha == 10:
        exprs = [
            ("t12+4t3+4t2+t4+2", [(1, 12), (1, 4), (4, 3), (4, 2), (2, 0)]),
            ("t12+4t2+t4+2", [(1, 12), (1, 4), (4, 2), (2, 0)]),
        ]
        names = [name for name, terms in exprs
                 if p13.contains(poly_in_tau(prime, t, terms))]
        if names:
            return LevelResult(s=2, route="e4f1_a10_s2", alpha=10,
                               witnesses=tuple(names))
        return LevelResult(s=3, route="e4f1_a10_s3", alpha=10)

    if alpha == 11:
        expr = poly_in_tau(prime, t, [(4, 3), (1, 4), (2, 0)])
        if p13.contains(expr):
            return LevelResult(s=2, route="e4f1_a11_s2", alpha=11,
                               witnesses=("4t3+t4+2",))
        return LevelResult(s=3, route="e4f1_a11_s3", alpha=11)

    assert alpha == 12
    return LevelResult(s=3, route="e4f1_a12", alpha=12)


def level_from_ef(prime: PrimeAboveTwo) -> LevelResult:
    """Level of K_p from the ramification data of one prime above 2.

    Covers every (e, f) with e*f <= 4: the e=f=1 equivalence with s=15,
    the even-f bound s=2, the e=2,f=1 criterion pi^2 = 2 (mod p^4), the
    e=3,f=1 and e=1,f=3 constants, and the e=4,f=1 case tree.
    """
    e, f = prime.e, prime.f
    if e * f > 4:
        raise UnsupportedEF(f"(e, f) = ({e}, {f}) with e*f > 4")
    if f % 2 == 0:
        return LevelResult(s=2, route=f"e{e}f{f}_even_f")
    if (e, f) == (1, 1):
        return LevelResult(s=15, route="e1f1")
    if (e, f) == (2, 1):
        ring = prime.ring
        pi = prime.uniformizer
        expr = ring.sub(ring.mul(pi, pi), ring.from_int(2))
        if valuation(expr, prime.chain[:4]).at_least(4):
            return LevelResult(s=6, route="e2f1_pi2_eq_2",
                               witnesses=("pi^2 = 2 mod p4",))
        return LevelResult(s=4, route="e2f1_pi2_ne_2")
    if (e, f) == (3, 1):
        return LevelResult(s=9, route="e3f1")
    if (e, f) == (1, 3):
        return LevelResult(s=5, route="e1f3")
    assert (e, f) == (4, 1)
    return level_e4_f1(prime)


def _exact_power_of_two(t: int, j: int) -> bool:
    """2^j || t for nonzero t; zero is divisible by every power."""
    return t != 0 and t % (1 << j) == 0 and t % (1 << (j + 1)) != 0


def level_main2(fld: BiquadraticField) -> LevelResult:
    """Level of every completion above 2, straight from (m, n, k).

    Evaluates the closed-form congruence table on the role-assigned
    triple; no ring arithmetic.  All primes above 2 share this value
    (the extension is Galois), so a single number suffices.
    """
    M, N, K = fld.roles
    if fld.pattern is Pattern.M3_N2_K2:
        t = N + K
        nk4 = (N * K) // 4
        r = nk4 % 16
        if t == 0 or t % 32 == 0:
            if r == 15:
                return LevelResult(s=1, route="m3n2k2_v32_nk15")
            if r == 7:
                return LevelResult(s=2, route="m3n2k2_v32_nk7")
        elif _exact_power_of_two(t, 4):
            if r == 7:
                return LevelResult(s=1, route="m3n2k2_v16_nk7")
            if r == 15:
                return LevelResult(s=2, route="m3n2k2_v16_nk15")
        elif _exact_power_of_two(t, 3):
            return LevelResult(s=3, route="m3n2k2_v8")
        raise NoSubcase(
            f"{fld}: no row matches v2({N}+{K}), {N}*{K}/4 = {nk4} mod 16"
        )
    if fld.pattern is Pattern.M1_N3_K3:
        if M % 8 == 1:
            return LevelResult(s=4, route="m1n3k3_m1mod8")
        return LevelResult(s=2, route="m1n3k3_m5mod8")
    if fld.pattern is Pattern.M1_N2_K2:
        if M % 8 == 1:
            return LevelResult(s=6, route="m1n2k2_m1mod8")
        return LevelResult(s=2, route="m1n2k2_m5mod8")
    assert fld.pattern is Pattern.M1_N1_K1
    if M % 8 == 1 and N % 8 == 1 and K % 8 == 1:
        return LevelResult(s=15, route="m1n1k1_all1mod8")
    return LevelResult(s=2, route="m1n1k1_other")
