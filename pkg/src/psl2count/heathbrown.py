"""Scan for the primes feeding the conditional upper-bound argument.

Under a standard sieve-theoretic hypothesis there are infinitely many
primes p = 5 mod 72 for which p - 1 and p + 1 together carry at most 11
prime factors (with multiplicity), at most 8 on either side.  For every
such prime the divisor-split profile is pinned down far enough (k = 0,
l = 1, sigma = 0) that the four subgroup-class counts admit absolute upper
bounds.  Those bounds are derived here by pushing the extremal admissible
profiles through the count formulas rather than by quoting numbers.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import arith, invariants

HB_MODULUS = 72
HB_RESIDUE = 5
HB_TOTAL_LIMIT = 11   # Omega(p-1) + Omega(p+1)
HB_SIDE_LIMIT = 8     # Omega on either side


@dataclass(frozen=True)
class HbCandidate:
    """A prime with its factor-count data and qualification verdict."""

    p: int
    omega_minus: int  # Omega(p - 1)
    omega_plus: int   # Omega(p + 1)
    qualifies: bool
    profile: invariants.InvariantProfile | None


def qualifies(p: int) -> HbCandidate:
    """Check one prime against the congruence and factor-count conditions."""
    if not arith.is_prime(p):
        raise ValueError(f"qualifies requires a prime, got {p}")
    om = arith.big_omega(p - 1) if p > 2 else 0
    op = arith.big_omega(p + 1)
    ok = (
        p % HB_MODULUS == HB_RESIDUE
        and om + op <= HB_TOTAL_LIMIT
        and om <= HB_SIDE_LIMIT
        and op <= HB_SIDE_LIMIT
    )
    prof = invariants.profile(p) if p >= 5 else None
    return HbCandidate(p=p, omega_minus=om, omega_plus=op, qualifies=ok, profile=prof)


def scan_hb(limit: int) -> list[HbCandidate]:
    """All qualifying primes up to limit, ascending.

    Primes are sieved in segments and filtered to the residue class
    5 mod 72 before any factoring happens.  Every candidate's profile must
    show k = 0, l = 1 and sigma = 0; the congruence forces that, so a
    violation means a bug and raises.
    """
    if limit < HB_MODULUS + HB_RESIDUE:
        raise ValueError(f"limit below {HB_MODULUS + HB_RESIDUE} cannot contain a candidate beyond p=5")
    out = []
    for p in arith.primes_in_range(2, limit):
        if p % HB_MODULUS != HB_RESIDUE:
            continue
        cand = qualifies(p)
        if not cand.qualifies:
            continue
        prof = cand.profile
        if prof is not None and (prof.k, prof.l, prof.sigma) != (0, 1, 0):
            raise AssertionError(f"residue 5 mod 72 must force (k, l, sigma) = (0, 1, 0); p={p}")
        out.append(cand)
    return out


def derive_upper_bounds() -> tuple[int, int, int, int]:
    """Upper bounds for (i, c, s, n) over all qualifying primes.

    A qualifying prime has k = 0, l = 1, sigma = 0 and alpha at most 1.
    The 2-adic parts of p - 1 and p + 1 eat 3 of the 11 allowed prime
    factors, leaving an odd budget of 8 split across the two sides, with
    neither side's total exceeding its cap of 8.  tau of a number with
    Omega = j is at most 2**j, so pushing the whole odd budget onto one
    side gives delta <= 4, epsilon <= 2 * 2**6 = 128 (or the mirror
    split delta <= 128, epsilon <= 4).  The counts i, c and n weight
    epsilon more heavily than delta, so their extremes load the minus
    side; s weights the sides the other way round.  The numbers come out
    of the formulas, not a table.
    """
    shared = dict(k=0, l=1, sigma=0, alpha=1)
    # p is a placeholder: these extremal profiles do not belong to a
    # specific prime, they bound every admissible one.
    wide_minus = invariants.InvariantProfile(p=0, delta=2**2, epsilon=2**7, **shared)
    wide_plus = invariants.InvariantProfile(p=0, delta=2**7, epsilon=2**2, **shared)
    return (
        invariants.i_count(wide_minus),
        invariants.c_count(wide_minus),
        invariants.s_count(wide_plus),
        invariants.n_count(wide_minus),
    )
