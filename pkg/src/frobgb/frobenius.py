"""Frobenius powers, the three basis statistics and q-sweeps."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import CharMismatch, ContextMismatch, ExponentOverflow
from .field import is_prime
from .groebner import DEFAULT_STRATEGY, CompletionStrategy, GroebnerBasis, Ideal, reduced_groebner
from .poly import EXP_LIMIT, Polynomial


@dataclass(frozen=True)
class FrobeniusExponent:
    p: int
    e: int

    def __post_init__(self):
        if self.e < 0:
            raise ValueError(f"negative Frobenius exponent {self.e}")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def q(self) -> int:
        return self.p**self.e


@dataclass(frozen=True)
class Metrics:
    delta: int  # largest exponent of the least variable
    Delta: int  # largest total degree
    c: int  # number of basis elements

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.delta, self.Delta, self.c)


@dataclass(frozen=True)
class SweepRow:
    e: int
    q: int
    metrics: Metrics
    basis: GroebnerBasis
    matched_family: Optional[str] = None


def _frobenius_once(f: Polynomial) -> Polynomial:
    ring = f.ring
    p = ring.p
    shift = ring.deg_shift
    terms = []
    for m, c in f._terms:
        if (m >> shift) * p >= EXP_LIMIT:
            raise ExponentOverflow("Frobenius power leaves the 64-bit exponent range")
        terms.append((m * p, pow(c, p, p)))
    # scaling every exponent by p preserves grevlex order
    return Polynomial(ring, tuple(terms))


def frobenius_power(f: Polynomial, fe: FrobeniusExponent) -> Polynomial:
    """f^q computed as e applications of the Frobenius map."""
    if fe.p != f.ring.p:
        raise CharMismatch(f"Frobenius exponent for p={fe.p} in characteristic {f.ring.p}")
    for _ in range(fe.e):
        f = _frobenius_once(f)
    return f


def ideal_frobenius(ideal: Ideal, fe: FrobeniusExponent) -> Ideal:
    return Ideal(ideal.ring, [frobenius_power(g, fe) for g in ideal.generators])


def metrics_of(G: Iterable[Polynomial]) -> Metrics:
    G = list(G)
    if not G:
        return Metrics(0, 0, 0)
    last = G[0].ring.n - 1
    return Metrics(
        delta=max(g.degree(last) for g in G),
        Delta=max(g.total_degree() for g in G),
        c=len(G),
    )


def sweep(
    I: Ideal,
    J: Ideal,
    p: int,
    e_range: Iterable[int],
    strategy: CompletionStrategy = DEFAULT_STRATEGY,
) -> list[SweepRow]:
    """Reduced bases of J + I^[p^e] for each e, in ascending e."""
    if I.ring != J.ring:
        raise ContextMismatch(f"{I.ring} vs {J.ring}")
    if p != I.ring.p:
        raise CharMismatch(f"sweep over p={p} in characteristic {I.ring.p}")
    rows = []
    for e in sorted(e_range):
        fe = FrobeniusExponent(p, e)
        G = reduced_groebner(J + ideal_frobenius(I, fe), strategy)
        rows.append(SweepRow(e, fe.q, metrics_of(G), G))
    return rows
