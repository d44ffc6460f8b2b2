"""Bateman-Horn style estimates for families of integer polynomials.

For a family f_1, ..., f_m satisfying the usual hypotheses (positive
leading coefficients, irreducible, product with no fixed prime divisor),
the predicted count of t <= x at which every f_i(t) is prime is

    E(x) = C * integral from a to x of dt / prod_i ln f_i(t),

where a is the first integer at which all values reach 2 and C is the
Hardy-Littlewood product over primes of
(1 - 1/p)^(-m) * (1 - omega(p)/p), with omega(p) the number of roots of
the product modulo p.

Polynomials are dense coefficient tuples in ascending order, so (5, 12)
is 5 + 12*t.  Degrees above 2 are not supported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import arith


@dataclass(frozen=True)
class PolynomialFamily:
    """A finite family of integer polynomials, coefficients ascending."""

    polys: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.polys:
            raise ValueError("family must contain at least one polynomial")
        for coeffs in self.polys:
            if not coeffs or not any(coeffs):
                raise ValueError("zero polynomial in family")
            if any(abs(c) > arith.U64_MAX for c in coeffs):
                raise ValueError("coefficients must fit in 64 bits")

    @property
    def m(self) -> int:
        return len(self.polys)

    def degrees(self) -> tuple[int, ...]:
        return tuple(_degree(c) for c in self.polys)

    def value(self, index: int, t: int) -> int:
        acc = 0
        for c in reversed(self.polys[index]):
            acc = acc * t + c
        return acc

    def values(self, t: int) -> tuple[int, ...]:
        return tuple(self.value(i, t) for i in range(self.m))


def family(*polys: tuple[int, ...]) -> PolynomialFamily:
    return PolynomialFamily(tuple(tuple(c) for c in polys))


def _degree(coeffs: tuple[int, ...]) -> int:
    for i in range(len(coeffs) - 1, -1, -1):
        if coeffs[i]:
            return i
    return 0


def _leading(coeffs: tuple[int, ...]) -> int:
    return coeffs[_degree(coeffs)]


@dataclass(frozen=True)
class ShReport:
    """Outcome of the three admissibility checks for a polynomial family."""

    positive_leading: bool
    all_irreducible: bool
    no_fixed_prime_divisor: bool
    failing_prime: int | None

    @property
    def ok(self) -> bool:
        return self.positive_leading and self.all_irreducible and self.no_fixed_prime_divisor


def _is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def check_sh(fam: PolynomialFamily) -> ShReport:
    """Admissibility checks: leading signs, irreducibility, fixed divisors.

    Irreducibility is decided per degree: linear polynomials always pass,
    quadratics pass when the discriminant is not a perfect square, and
    constants fail (they take a single value).  Degree 3 and above raises.

    A fixed prime divisor q of the product can only arise from q at most
    the product's degree (a nonzero polynomial mod q of smaller degree
    cannot vanish at all residues) or from q dividing every coefficient,
    so those two finite checks decide the matter.  The smallest offender
    is reported.
    """
    positive = all(_leading(c) > 0 for c in fam.polys)

    irreducible = True
    for coeffs in fam.polys:
        deg = _degree(coeffs)
        if deg == 0:
            irreducible = False
        elif deg == 1:
            pass
        elif deg == 2:
            a, b, c = coeffs[2], coeffs[1], coeffs[0]
            if _is_square(b * b - 4 * a * c):
                irreducible = False
        else:
            raise ValueError(f"degree {deg} polynomials are not supported")

    total_degree = sum(fam.degrees())
    candidates = set(arith.primes_in_range(2, max(2, total_degree)))
    content = 0
    for coeffs in fam.polys:
        for c in coeffs:
            content = math.gcd(content, abs(c))
    if content > 1:
        candidates.update(q for q, _ in arith.factorize(content).factors)

    failing = None
    for q in sorted(candidates):
        if all(_product_mod(fam, t, q) == 0 for t in range(q)):
            failing = q
            break

    return ShReport(
        positive_leading=positive,
        all_irreducible=irreducible,
        no_fixed_prime_divisor=failing is None,
        failing_prime=failing,
    )


def _product_mod(fam: PolynomialFamily, t: int, q: int) -> int:
    prod = 1
    for i in range(fam.m):
        prod = prod * (fam.value(i, t) % q) % q
        if prod == 0:
            return 0
    return prod


def _sqrt_mod(a: int, p: int) -> int:
    """A square root of a modulo an odd prime p; a must be a QR (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # write p - 1 = q * 2^s with q odd
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _roots_mod(coeffs: tuple[int, ...], p: int) -> set[int] | None:
    """Roots of one polynomial mod p, or None when it vanishes identically."""
    reduced = [c % p for c in coeffs]
    deg = 0
    for i in range(len(reduced) - 1, -1, -1):
        if reduced[i]:
            deg = i
            break
    else:
        return None
    if deg == 0:
        return set()
    if deg == 1:
        b, a = reduced[0], reduced[1]
        return {(-b * pow(a, -1, p)) % p}
    # quadratic; p is odd here (the brute-force path covers small primes)
    c0, b, a = reduced[0], reduced[1], reduced[2]
    disc = (b * b - 4 * a * c0) % p
    if disc == 0:
        return {(-b * pow(2 * a, -1, p)) % p}
    if pow(disc, (p - 1) // 2, p) != 1:
        return set()
    root = _sqrt_mod(disc, p)
    inv2a = pow(2 * a, -1, p)
    return {(-b + root) * inv2a % p, (-b - root) * inv2a % p}


def omega_roots(fam: PolynomialFamily, p: int, *, brute_threshold: int = 100) -> int:
    """Number of t mod p at which the family product vanishes.

    Below brute_threshold every residue is tried directly; above it the
    roots of each factor are collected explicitly and deduplicated, which
    agrees with the brute force on all primes (tested) and returns p for a
    product vanishing identically.
    """
    if p < 2 or not arith.is_prime(p):
        raise ValueError("omega_roots requires a prime modulus")
    if p < brute_threshold:
        return sum(1 for t in range(p) if _product_mod(fam, t, p) == 0)
    roots: set[int] = set()
    for coeffs in fam.polys:
        poly_roots = _roots_mod(coeffs, p)
        if poly_roots is None:
            return p
        roots.update(poly_roots)
    return len(roots)


@dataclass(frozen=True)
class HlConstant:
    """Truncated Hardy-Littlewood product with its truncation point and a
    heuristic bound on the neglected tail."""

    value: float
    truncation: int
    tail_bound: float


def hl_constant(fam: PolynomialFamily, truncation: int) -> HlConstant:
    """Product over primes p <= truncation of (1-1/p)^(-m) * (1-omega(p)/p).

    Accumulated in log space with exact compensated summation, so the result
    is independent of how the prime range might be blocked or parallelised.

    The tail bound comes from the second-order expansion of the log factor:
    for all but finitely many p the product polynomial has exactly
    m = sum of degrees distinct roots, making the 1/p terms cancel and
    leaving (m - m^2)/(2 p^2) + O(1/p^3); summed over p > P this is about
    m(m-1)/2 * 1/(P ln P), and a factor of two is folded in for safety.
    """
    if truncation < 1000:
        raise ValueError("truncation below 1000 gives meaningless constants")
    report = check_sh(fam)
    if not report.ok:
        raise ValueError(f"family fails admissibility checks: {report}")
    m = fam.m
    terms = []
    for p in arith.primes_in_range(2, truncation):
        w = omega_roots(fam, p)
        terms.append(-m * math.log1p(-1.0 / p) + math.log1p(-w / p))
    value = math.exp(math.fsum(terms))
    root_count = sum(fam.degrees())
    tail = value * root_count * max(root_count - 1, 0) / (truncation * math.log(truncation))
    return HlConstant(value=value, truncation=truncation, tail_bound=tail)


# ---------------------------------------------------------------------------
# Quadrature

_GL_NODES, _GL_WEIGHTS = None, None


def _gl7():
    global _GL_NODES, _GL_WEIGHTS
    if _GL_NODES is None:
        import numpy as np

        nodes, weights = np.polynomial.legendre.leggauss(7)
        _GL_NODES, _GL_WEIGHTS = nodes, weights
    return _GL_NODES, _GL_WEIGHTS


def _panel(f, lo: float, hi: float) -> float:
    nodes, weights = _gl7()
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    return half * float((weights * f(mid + half * nodes)).sum())


def integrate_adaptive(f, lo: float, hi: float, *, rel_tol: float = 1e-8, max_panels: int = 200000):
    """Adaptive composite quadrature with a posteriori error accounting.

    Panels start on a geometric subdivision (the integrands here live on
    ranges spanning many decades), each panel compares a 7-point Gauss rule
    against its bisected refinement, and panels are split until the local
    estimate fits a width-proportional share of the global budget.  Returns
    (integral, error_estimate); raises if the panel budget is exhausted.

    f must accept a numpy array of abscissae.
    """
    if not hi > lo:
        raise ValueError("integrate_adaptive requires hi > lo")
    bounds = [lo]
    width = 1.0
    while bounds[-1] + width < hi:
        bounds.append(bounds[-1] + width)
        width *= 2.0
    bounds.append(hi)

    rough = math.fsum(_panel(f, a, b) for a, b in zip(bounds, bounds[1:]))
    budget = max(abs(rough), 1e-300) * rel_tol
    span = hi - lo

    total = []
    err_total = []
    stack = list(zip(bounds, bounds[1:]))
    panels = 0
    while stack:
        a, b = stack.pop()
        panels += 1
        if panels > max_panels:
            raise RuntimeError(
                f"quadrature did not converge within {max_panels} panels (rel_tol={rel_tol})"
            )
        mid = 0.5 * (a + b)
        coarse = _panel(f, a, b)
        fine = _panel(f, a, mid) + _panel(f, mid, b)
        err = abs(fine - coarse)
        if err <= budget * (b - a) / span or (b - a) <= abs(mid) * 1e-14:
            total.append(fine)
            err_total.append(err)
        else:
            stack.append((a, mid))
            stack.append((mid, b))
    return math.fsum(total), math.fsum(err_total)


@dataclass(frozen=True)
class BhcEstimate:
    """Predicted prime-tuple count E(x) with its ingredients."""

    x: float
    a: int
    constant: HlConstant
    integral: float
    e_value: float
    quadrature_error: float


def integration_lower_limit(fam: PolynomialFamily) -> int:
    """Smallest integer t >= 0 at which every family value is at least 2."""
    t = 0
    while True:
        if all(v >= 2 for v in fam.values(t)):
            return t
        t += 1
        if t > 10**6:
            raise ValueError("no integration lower limit below 10**6")


def estimate_E(fam: PolynomialFamily, x: float, constant: HlConstant, *, rel_tol: float = 1e-8) -> BhcEstimate:
    """Evaluate E(x) = C * integral from a to x of dt / prod ln f_i(t)."""
    import numpy as np

    a = integration_lower_limit(fam)
    if x <= a:
        raise ValueError(f"x must exceed the integration lower limit {a}")

    coeff_arrays = [np.array(c, dtype=float) for c in fam.polys]

    def integrand(ts):
        acc = np.ones_like(ts)
        for coeffs in coeff_arrays:
            vals = np.zeros_like(ts)
            for c in coeffs[::-1]:
                vals = vals * ts + c
            acc = acc * np.log(vals)
        return 1.0 / acc

    integral, err = integrate_adaptive(integrand, float(a), float(x), rel_tol=rel_tol)
    return BhcEstimate(
        x=float(x),
        a=a,
        constant=constant,
        integral=integral,
        e_value=constant.value * integral,
        quadrature_error=constant.value * err,
    )


def compare(q_count: int, estimate: BhcEstimate) -> float:
    """Relative error (E - Q) / Q of the estimate against an observed count."""
    if q_count <= 0:
        raise ValueError("q_count must be positive")
    return (estimate.e_value - q_count) / q_count
