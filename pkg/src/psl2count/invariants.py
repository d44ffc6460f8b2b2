"""Closed-form subgroup-class counts for PSL(2, p), p an odd prime >= 5.

Four quantities are computed for G = PSL(2, p):

  i  number of isomorphism types of proper nontrivial subgroups,
  c  number of conjugacy classes of proper nontrivial subgroups,
  s  number of those classes whose members are self-normalising,
  n  number of those classes whose members are not (so c = s + n).

All four are determined by a small parameter tuple extracted from the
divisor structure of (p + 1)/2 and (p - 1)/2.  The formulas are evaluated
in exact rational arithmetic and must come out integral; a fractional
result means the profile itself is corrupt, so it raises.

census() expands the counts into an explicit catalogue of subgroup classes
(cyclic, dihedral, affine, and the exceptional types A4, S4, A5) with class
multiplicities and self-normalisation flags, which a brute-force permutation
computation can confirm label by label for small p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import arith


@dataclass(frozen=True)
class InvariantProfile:
    """Parameter tuple controlling the subgroup-class counts of PSL(2, p).

    delta and epsilon are the divisor counts of (p+1)/2 and (p-1)/2, while
    k and l are their 2-adic valuations (exactly one of the halves is even,
    so exactly one of k, l is zero).  sigma is 1 when p = +-1 mod 8 (square
    root of 2 exists, so S4 embeds) and alpha is 1 when p = +-1 mod 5
    (A5 embeds).
    """

    p: int
    delta: int
    epsilon: int
    k: int
    l: int
    sigma: int
    alpha: int


def profile(p: int) -> InvariantProfile:
    """Compute the invariant profile of a prime p >= 5."""
    if p < 5 or not arith.is_prime(p):
        raise ValueError(f"profile requires a prime p >= 5, got {p}")
    m_plus = (p + 1) // 2
    m_minus = (p - 1) // 2
    prof = InvariantProfile(
        p=p,
        delta=arith.tau(m_plus),
        epsilon=arith.tau(m_minus),
        k=arith.two_adic_valuation(m_plus),
        l=arith.two_adic_valuation(m_minus),
        sigma=1 if p % 8 in (1, 7) else 0,
        alpha=1 if p % 5 in (1, 4) else 0,
    )
    assert (prof.k == 0) != (prof.l == 0)
    return prof


def _as_int(value: Fraction, what: str, prof: InvariantProfile) -> int:
    if value.denominator != 1:
        raise ArithmeticError(f"{what} came out non-integral ({value}) for profile {prof}")
    return int(value)


def i_count(prof: InvariantProfile) -> int:
    """Number of isomorphism types of proper nontrivial subgroups."""
    val = 2 * prof.delta + 3 * prof.epsilon - 3 + prof.sigma + prof.alpha
    return val


def c_count(prof: InvariantProfile) -> int:
    """Number of conjugacy classes of proper nontrivial subgroups."""
    val = (
        (2 + Fraction(prof.k, prof.k + 1)) * prof.delta
        + (3 + Fraction(prof.l, prof.l + 1)) * prof.epsilon
        - 4
        + 3 * prof.sigma
        + 2 * prof.alpha
    )
    # (k+1) divides delta and (l+1) divides epsilon, so this is integral.
    return _as_int(val, "c", prof)


def s_count(prof: InvariantProfile) -> int:
    """Number of self-normalising conjugacy classes of proper nontrivial subgroups."""
    val = (
        Fraction(prof.delta, prof.k + 1)
        + Fraction(prof.epsilon, prof.l + 1)
        + 2 * (prof.sigma + prof.alpha)
    )
    return _as_int(val, "s", prof)


def n_count(prof: InvariantProfile) -> int:
    """Number of non-self-normalising classes; checked against c - s."""
    val = (
        (2 + Fraction(prof.k - 1, prof.k + 1)) * prof.delta
        + (3 + Fraction(prof.l - 1, prof.l + 1)) * prof.epsilon
        - 4
        + prof.sigma
    )
    n = _as_int(val, "n", prof)
    cross = c_count(prof) - s_count(prof)
    if n != cross:
        raise ArithmeticError(f"n formula ({n}) disagrees with c - s ({cross}) for {prof}")
    return n


def counts(prof: InvariantProfile) -> tuple[int, int, int, int]:
    """The quadruple (i, c, s, n)."""
    return i_count(prof), c_count(prof), s_count(prof), n_count(prof)


# ---------------------------------------------------------------------------
# Explicit class catalogue


KIND_CYCLIC_PLUS = "CyclicPlus"
KIND_DIHEDRAL_PLUS = "DihedralPlus"
KIND_CYCLIC_MINUS = "CyclicMinus"
KIND_DIHEDRAL_MINUS = "DihedralMinus"
KIND_AFFINE = "Affine"
KIND_A4 = "A4"
KIND_S4 = "S4"
KIND_A5 = "A5"

_KINDS = (
    KIND_CYCLIC_PLUS,
    KIND_DIHEDRAL_PLUS,
    KIND_CYCLIC_MINUS,
    KIND_DIHEDRAL_MINUS,
    KIND_AFFINE,
    KIND_A4,
    KIND_S4,
    KIND_A5,
)


def _label_order(label: str, p: int) -> int:
    """Group order encoded by a class label."""
    if label == "A4":
        return 12
    if label == "S4":
        return 24
    if label == "A5":
        return 60
    if label.startswith("E"):
        head, _, tail = label.partition(":")
        if not tail.startswith("C"):
            raise ValueError(f"bad affine label {label!r}")
        return int(head[1:]) * int(tail[1:])
    if label.startswith("C"):
        return int(label[1:])
    if label.startswith("D"):
        return 2 * int(label[1:])
    raise ValueError(f"unrecognised label {label!r}")


@dataclass(frozen=True)
class ClassEntry:
    """One isomorphism type of proper nontrivial subgroup, with its class data."""

    label: str
    kind: str
    order: int
    num_classes: int
    self_normalising: bool

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.num_classes not in (1, 2):
            raise ValueError(f"num_classes must be 1 or 2, got {self.num_classes}")
        if self.order < 2:
            raise ValueError("census entries are nontrivial subgroups")


@dataclass(frozen=True)
class ClassCensus:
    """Catalogue of the proper nontrivial subgroup classes of one PSL(2, p)."""

    p: int
    entries: tuple[ClassEntry, ...]

    def __post_init__(self):
        labels = [e.label for e in self.entries]
        if len(labels) != len(set(labels)):
            raise ValueError("census labels must be pairwise distinct")
        for e in self.entries:
            if _label_order(e.label, self.p) != e.order:
                raise ValueError(f"label {e.label!r} does not encode order {e.order}")

    @property
    def i(self) -> int:
        return len(self.entries)

    @property
    def c(self) -> int:
        return sum(e.num_classes for e in self.entries)

    @property
    def s(self) -> int:
        return sum(e.num_classes for e in self.entries if e.self_normalising)

    @property
    def n(self) -> int:
        return self.c - self.s

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "entries": [
                {
                    "label": e.label,
                    "order": e.order,
                    "classes": e.num_classes,
                    "self_normalising": e.self_normalising,
                }
                for e in self.entries
            ],
            "i": self.i,
            "c": self.c,
            "s": self.s,
            "n": self.n,
        }


def census(p: int) -> ClassCensus:
    """Explicit subgroup-class catalogue of PSL(2, p) for a prime p >= 5.

    Construction rules, with m+ = (p+1)/2 and m- = (p-1)/2:

    * each divisor d != 1 of m+ gives a cyclic class C_d (never
      self-normalising) and dihedral classes D_d of order 2d: two classes
      when m+/d is even, one when odd; D_d is self-normalising exactly when
      d > 2 and m+/d is odd (D_2 sits inside A4, D_d with even quotient
      inside D_2d);
    * divisors of m- contribute symmetrically;
    * every divisor e of m- (including e = 1) gives one class of affine
      subgroups of order p*e, self-normalising only for e = m- (the point
      stabiliser); the Sylow-p subgroup itself is the e = 1 entry;
    * A4 is always present: two classes when sigma = 1 (fused inside S4,
      not self-normalising), one self-normalising class when sigma = 0;
    * S4 appears exactly when sigma = 1 (two self-normalising classes);
    * A5 appears exactly when alpha = 1 (two self-normalising classes).
    """
    prof = profile(p)
    m_plus = (p + 1) // 2
    m_minus = (p - 1) // 2
    entries: list[ClassEntry] = []

    for m, cyc_kind, dih_kind in (
        (m_plus, KIND_CYCLIC_PLUS, KIND_DIHEDRAL_PLUS),
        (m_minus, KIND_CYCLIC_MINUS, KIND_DIHEDRAL_MINUS),
    ):
        for d in arith.divisors(m):
            if d == 1:
                continue
            quotient_odd = (m // d) % 2 == 1
            entries.append(ClassEntry(f"C{d}", cyc_kind, d, 1, False))
            entries.append(
                ClassEntry(
                    f"D{d}",
                    dih_kind,
                    2 * d,
                    1 if quotient_odd else 2,
                    d > 2 and quotient_odd,
                )
            )

    for e in arith.divisors(m_minus):
        entries.append(ClassEntry(f"E{p}:C{e}", KIND_AFFINE, p * e, 1, e == m_minus))

    entries.append(ClassEntry("A4", KIND_A4, 12, 1 + prof.sigma, prof.sigma == 0))
    if prof.sigma == 1:
        entries.append(ClassEntry("S4", KIND_S4, 24, 2, True))
    if prof.alpha == 1:
        entries.append(ClassEntry("A5", KIND_A5, 60, 2, True))

    entries.sort(key=lambda entry: (entry.order, entry.label))
    result = ClassCensus(p, tuple(entries))

    # The catalogue must aggregate to the closed-form counts.
    if (result.i, result.c, result.s, result.n) != counts(prof):
        raise AssertionError(f"census aggregates disagree with formulas for p={p}")
    return result


# ---------------------------------------------------------------------------
# Known-values table for small primes


@dataclass(frozen=True)
class GoldenRow:
    p: int
    delta: int
    epsilon: int
    k: int
    l: int
    sigma: int
    alpha: int
    i: int
    c: int
    s: int
    n: int

    def csv(self) -> str:
        return ",".join(
            str(v)
            for v in (
                self.p,
                self.delta,
                self.epsilon,
                self.k,
                self.l,
                self.sigma,
                self.alpha,
                self.i,
                self.c,
                self.s,
                self.n,
            )
        )


# Regression data for primes 3..61, kept exactly as published.  Three cells
# are known not to follow the formulas:
#   * row p=7 prints c = 14, but its own split gives s + n = 5 + 8 = 13 and
#     the class-count formula gives 13; verify_golden reports this one cell
#     as a known issue rather than a failure;
#   * row p=3 has divisor-split columns that do not match the defining
#     arithmetic (PSL(2,3) is solvable and sits outside the formulas), so
#     only its four counts are checked, against the brute-force census;
#   * row p=47's alpha was printed as "0." and is recorded as 0.
_GOLDEN = (
    (3, 1, 2, 0, 1, 0, 0, 3, 3, 1, 2),
    (5, 2, 2, 0, 1, 0, 0, 7, 7, 3, 4),
    (7, 3, 2, 2, 0, 1, 0, 10, 14, 5, 8),
    (11, 4, 2, 1, 0, 0, 1, 12, 14, 6, 8),
    (13, 2, 4, 0, 1, 0, 0, 13, 14, 4, 10),
    (17, 3, 4, 0, 3, 1, 0, 16, 20, 6, 14),
    (19, 4, 3, 1, 0, 0, 1, 15, 17, 7, 10),
    (23, 6, 2, 2, 0, 1, 0, 16, 21, 6, 15),
    (29, 4, 4, 0, 1, 0, 1, 18, 20, 8, 12),
    (31, 5, 4, 4, 0, 1, 1, 21, 27, 9, 18),
    (37, 2, 6, 0, 1, 0, 0, 19, 21, 5, 16),
    (41, 4, 6, 0, 2, 1, 1, 25, 31, 10, 21),
    (43, 4, 4, 1, 0, 0, 0, 17, 18, 6, 12),
    (47, 8, 2, 3, 0, 1, 0, 20, 27, 6, 21),
    (53, 4, 4, 0, 1, 0, 0, 17, 18, 6, 12),
    (59, 8, 2, 1, 0, 0, 1, 20, 24, 8, 16),
    (61, 2, 8, 0, 1, 0, 1, 26, 30, 8, 22),
)

KNOWN_ISSUES = {(7, "c"), (7, "oracle_c")}


def golden_table() -> list[GoldenRow]:
    """The embedded reference table for primes 3 through 61."""
    return [GoldenRow(*row) for row in _GOLDEN]


@dataclass(frozen=True)
class CellCheck:
    p: int
    column: str
    expected: int
    computed: int
    status: str  # "match" | "known-issue" | "mismatch"


@dataclass(frozen=True)
class GoldenReport:
    checks: tuple[CellCheck, ...]

    @property
    def mismatches(self) -> list[CellCheck]:
        return [c for c in self.checks if c.status == "mismatch"]

    @property
    def known_issues(self) -> list[CellCheck]:
        return [c for c in self.checks if c.status == "known-issue"]

    @property
    def ok(self) -> bool:
        return not self.mismatches


_PROFILE_COLUMNS = ("delta", "epsilon", "k", "l", "sigma", "alpha")
_COUNT_COLUMNS = ("i", "c", "s", "n")


def _check(p: int, column: str, expected: int, computed: int) -> CellCheck:
    if expected == computed:
        status = "match"
    elif (p, column) in KNOWN_ISSUES:
        status = "known-issue"
    else:
        status = "mismatch"
    return CellCheck(p, column, expected, computed, status)


def verify_golden(*, oracle_rows: bool = False) -> GoldenReport:
    """Recompute every reference-table cell and report cell-level status.

    Rows with p >= 5 are checked column by column against profile() and the
    count formulas.  The p = 3 row is checked on its four counts only, using
    the brute-force census.  With oracle_rows=True the rows p = 5, 7, 11, 13
    are additionally recomputed by brute force.
    """
    # Imported here: the brute-force module depends on this one for its
    # census types, so a top-level import would be circular.
    from . import oracle

    checks: list[CellCheck] = []
    for row in golden_table():
        if row.p == 3:
            cen = oracle.oracle_census(3)
            got = (cen.i, cen.c, cen.s, cen.n)
            for col, exp, comp in zip(_COUNT_COLUMNS, (row.i, row.c, row.s, row.n), got):
                checks.append(_check(3, col, exp, comp))
            continue
        prof = profile(row.p)
        for col in _PROFILE_COLUMNS:
            checks.append(_check(row.p, col, getattr(row, col), getattr(prof, col)))
        quad = counts(prof)
        for col, exp, comp in zip(_COUNT_COLUMNS, (row.i, row.c, row.s, row.n), quad):
            checks.append(_check(row.p, col, exp, comp))
        if oracle_rows and row.p in (5, 7, 11, 13):
            cen = oracle.oracle_census(row.p)
            got = (cen.i, cen.c, cen.s, cen.n)
            for col, exp, comp in zip(_COUNT_COLUMNS, (row.i, row.c, row.s, row.n), got):
                checks.append(_check(row.p, "oracle_" + col, exp, comp))
    return GoldenReport(tuple(checks))
