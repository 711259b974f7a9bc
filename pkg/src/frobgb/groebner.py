"""Buchberger completion and reduced Groebner bases."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from heapq import heappop, heappush
from typing import Iterable, Sequence

from .errors import ContextMismatch
from .poly import Polynomial, PolyRing, _normal_form, _spoly


@dataclass(frozen=True)
class CompletionStrategy:
    pair_selection: str = "min_lcm_degree"
    use_coprime_criterion: bool = True
    use_chain_criterion: bool = True

    def __post_init__(self):
        if self.pair_selection not in ("min_lcm_degree", "fifo"):
            raise ValueError(f"unknown pair selection {self.pair_selection!r}")


DEFAULT_STRATEGY = CompletionStrategy()
# plain Buchberger, used as the verification oracle for the optimized engine
NAIVE_STRATEGY = CompletionStrategy("fifo", False, False)

STRATEGIES = {"default": DEFAULT_STRATEGY, "fifo-naive": NAIVE_STRATEGY}


class Ideal:
    """A finitely generated ideal; zero generators are dropped."""

    def __init__(self, ring: PolyRing, generators: Iterable[Polynomial] = ()):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise ContextMismatch(f"generator in {g.ring}, ideal in {ring}")
            if g:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)

    @classmethod
    def parse(cls, ring: PolyRing, texts: Iterable[str]) -> "Ideal":
        return cls(ring, [ring.parse(t) for t in texts])

    def __add__(self, other: "Ideal") -> "Ideal":
        if self.ring != other.ring:
            raise ContextMismatch(f"{self.ring} vs {other.ring}")
        return Ideal(self.ring, self.generators + other.generators)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]}, p={self.ring.p})"


class GroebnerBasis(Sequence):
    """Reduced Groebner basis: monic elements sorted ascending by leading monomial."""

    def __init__(self, ring: PolyRing, elements: Iterable[Polynomial]):
        self.ring = ring
        self.elements = tuple(elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        if isinstance(other, GroebnerBasis):
            return self.ring == other.ring and self.elements == other.elements
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.elements))

    def strings(self) -> list[str]:
        return [str(g) for g in self.elements]

    def __repr__(self):
        return f"GroebnerBasis({self.strings()}, p={self.ring.p})"


def buchberger(ideal: Ideal, strategy: CompletionStrategy = DEFAULT_STRATEGY) -> list[Polynomial]:
    """A (not necessarily reduced) Groebner basis containing the monic generators."""
    ring = ideal.ring
    p = ring.p
    inv = ring.modulus.inv
    divides = ring.divides

    basis: list[tuple] = []
    for g in ideal.generators:
        g = g.monic()
        if g._terms not in basis:
            basis.append(g._terms)
    lms = [b[0][0] for b in basis]
    table = [(b[0][0], 1, b[1:]) for b in basis]

    fifo = strategy.pair_selection == "fifo"
    queue = deque() if fifo else []
    pending: set[tuple[int, int]] = set()
    counter = 0

    def push(i, j):
        nonlocal counter
        pending.add((i, j))
        if fifo:
            queue.append((i, j))
        else:
            L = ring.lcm(lms[i], lms[j])
            heappush(queue, (ring.sort_key(L), counter, i, j))
            counter += 1

    for j in range(len(basis)):
        for i in range(j):
            push(i, j)

    while queue:
        if fifo:
            i, j = queue.popleft()
        else:
            _, _, i, j = heappop(queue)
        pending.discard((i, j))
        L = ring.lcm(lms[i], lms[j])
        if strategy.use_coprime_criterion and L == lms[i] + lms[j]:
            continue
        if strategy.use_chain_criterion and _chain_skip(i, j, L, lms, pending, divides):
            continue
        rem = _normal_form(ring, _spoly(ring, basis[i], basis[j])._terms, table)
        if not rem:
            continue
        lc = rem[0][1]
        if lc != 1:
            c = inv(lc)
            rem = [(m, v * c % p) for m, v in rem]
        new = tuple(rem)
        basis.append(new)
        lms.append(new[0][0])
        table.append((new[0][0], 1, new[1:]))
        k = len(basis) - 1
        for i2 in range(k):
            push(i2, k)

    return [Polynomial(ring, b) for b in basis]


def _chain_skip(i, j, L, lms, pending, divides) -> bool:
    for k, lm in enumerate(lms):
        if k == i or k == j or not divides(lm, L):
            continue
        if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
            continue
        return True
    return False


def interreduce(ring: PolyRing, polys: Sequence[Polynomial]) -> list[Polynomial]:
    """Turn a Groebner basis into the reduced one (monic, tail-reduced, sorted)."""
    elems = [g.monic()._terms for g in polys if g]
    # drop elements whose leading monomial is divisible by another's
    keep = []
    for idx, t in enumerate(elems):
        lm = t[0][0]
        redundant = False
        for jdx, s in enumerate(elems):
            if jdx == idx:
                continue
            other = s[0][0]
            if ring.divides(other, lm) and (other != lm or jdx < idx):
                redundant = True
                break
        if not redundant:
            keep.append(t)
    elems = keep

    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(elems):
            table = [(t[0][0], 1, t[1:]) for k, t in enumerate(elems) if k != i]
            rem = _normal_form(ring, elems[i], table)
            if not rem:
                del elems[i]
                changed = True
                continue
            lc = rem[0][1]
            if lc != 1:
                c = ring.modulus.inv(lc)
                rem = [(m, v * c % ring.p) for m, v in rem]
            rem = tuple(rem)
            if rem != elems[i]:
                elems[i] = rem
                changed = True
            i += 1

    elems.sort(key=lambda t: ring.sort_key(t[0][0]))
    return [Polynomial(ring, t) for t in elems]


def reduced_groebner(ideal: Ideal, strategy: CompletionStrategy = DEFAULT_STRATEGY) -> GroebnerBasis:
    return GroebnerBasis(ideal.ring, interreduce(ideal.ring, buchberger(ideal, strategy)))


def is_groebner(polys: Sequence[Polynomial]) -> bool:
    """Buchberger's criterion checked on every pair, with no shortcuts."""
    polys = [g for g in polys if g]
    if not polys:
        return True
    ring = polys[0].ring
    table = [(g._terms[0][0], ring.modulus.inv(g._terms[0][1]), g._terms[1:]) for g in polys]
    for j in range(len(polys)):
        for i in range(j):
            s = _spoly(ring, polys[i]._terms, polys[j]._terms)
            if s and _normal_form(ring, s._terms, table):
                return False
    return True


def is_reduced(G: Sequence[Polynomial]) -> bool:
    """Monic, and no term of any element divisible by another element's leading monomial."""
    for i, g in enumerate(G):
        if not g.is_monic():
            return False
        for j, h in enumerate(G):
            if i == j:
                continue
            lm = h._terms[0][0]
            if any(g.ring.divides(lm, m) for m, _ in g._terms):
                return False
    return True


def ideal_equal(a: Ideal, b: Ideal, strategy: CompletionStrategy = DEFAULT_STRATEGY) -> bool:
    if a.ring != b.ring:
        raise ContextMismatch(f"{a.ring} vs {b.ring}")
    return reduced_groebner(a, strategy) == reduced_groebner(b, strategy)


def is_whole_ring(ideal: Ideal) -> bool:
    G = reduced_groebner(ideal)
    return len(G) == 1 and G[0] == ideal.ring.one
