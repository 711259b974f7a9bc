"""Monomials, graded reverse lexicographic order and sparse polynomials over F_p.

Monomials are exponent tuples at the API surface.  Inside a ring they are
packed into a single int: variable ``i`` occupies bits ``[64*i, 64*i + 64)``
(the top bit of each field is a guard bit that must stay clear) and the total
degree sits above all variable fields.  With that layout

* multiplying monomials is integer addition,
* ``a | b`` is ``((b | GUARD) - a) & GUARD == GUARD``,
* grevlex order is the integer order of ``m - 2 * (m & EXP_MASK)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from heapq import heapify, heappop, heappush
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import (
    ContextMismatch,
    DimensionMismatch,
    ExponentOverflow,
    NotDivisible,
    ZeroPolynomial,
)
from .field import FieldElement, PrimeModulus

Monomial = tuple[int, ...]

FIELD_BITS = 64
FIELD_MASK = (1 << FIELD_BITS) - 1
EXP_LIMIT = 1 << (FIELD_BITS - 1)


@dataclass(frozen=True)
class VariableOrder:
    """Variable names listed from greatest to least; the last one is x_n."""

    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("at least one variable is required")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            if not (name.isidentifier() and name.isascii()):
                raise ValueError(f"invalid variable name {name!r}")

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    @property
    def least(self) -> str:
        return self.names[-1]


class Term(NamedTuple):
    coeff: FieldElement
    mono: Monomial


# -- tuple-level monomial operations ---------------------------------------


def _check_dims(a: Sequence[int], b: Sequence[int]):
    if len(a) != len(b):
        raise DimensionMismatch(f"monomials of length {len(a)} and {len(b)}")


def grevlex_cmp(a: Sequence[int], b: Sequence[int]) -> int:
    """Compare exponent vectors in grevlex: -1 if a < b, 0 if equal, 1 if a > b."""
    _check_dims(a, b)
    da, db = sum(a), sum(b)
    if da != db:
        return -1 if da < db else 1
    for x, y in zip(reversed(a), reversed(b)):
        if x != y:
            return -1 if x > y else 1
    return 0


def grevlex_key(a: Sequence[int]):
    """Sort key that orders exponent vectors ascending in grevlex."""
    return (sum(a), tuple(-x for x in reversed(a)))


def monomial_lcm(a: Sequence[int], b: Sequence[int]) -> Monomial:
    _check_dims(a, b)
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_gcd(a: Sequence[int], b: Sequence[int]) -> Monomial:
    _check_dims(a, b)
    return tuple(min(x, y) for x, y in zip(a, b))


def monomial_divides(a: Sequence[int], b: Sequence[int]) -> bool:
    """True when x^a divides x^b."""
    _check_dims(a, b)
    return all(x <= y for x, y in zip(a, b))


def monomial_quotient(a: Sequence[int], b: Sequence[int]) -> Monomial:
    """x^a / x^b; requires x^b | x^a."""
    _check_dims(a, b)
    if not monomial_divides(b, a):
        raise NotDivisible(f"{tuple(b)} does not divide {tuple(a)}")
    return tuple(x - y for x, y in zip(a, b))


def monomial_ops(op: str, a: Sequence[int], b: Sequence[int]):
    if op == "lcm":
        return monomial_lcm(a, b)
    if op == "gcd":
        return monomial_gcd(a, b)
    if op == "divides":
        return monomial_divides(a, b)
    if op == "quotient":
        return monomial_quotient(a, b)
    raise ValueError(f"unknown monomial operation {op!r}")


# -- rings -------------------------------------------------------------------


class PolyRing:
    """F_p[x_1, ..., x_n] with grevlex order on the declared variable order."""

    def __init__(self, p: int | PrimeModulus, names: Iterable[str] | VariableOrder):
        self.modulus = p if isinstance(p, PrimeModulus) else PrimeModulus(p)
        self.order = names if isinstance(names, VariableOrder) else VariableOrder(tuple(names))
        self.p = self.modulus.p
        self.n = len(self.order)
        self.deg_shift = FIELD_BITS * self.n
        self.exp_mask = (1 << self.deg_shift) - 1
        self.guard = sum(1 << (FIELD_BITS * i + FIELD_BITS - 1) for i in range(self.n))
        self.zero = Polynomial(self, ())
        self.one = Polynomial(self, ((0, 1),))

    @property
    def names(self) -> tuple[str, ...]:
        return self.order.names

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.p == other.p and self.names == other.names

    def __hash__(self):
        return hash((self.p, self.names))

    def __repr__(self):
        return f"PolyRing(p={self.p}, vars={','.join(self.names)})"

    # packing

    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self.n:
            raise DimensionMismatch(f"expected {self.n} exponents, got {len(exps)}")
        m = 0
        deg = 0
        for i, e in enumerate(exps):
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            if e >= EXP_LIMIT:
                raise ExponentOverflow(f"exponent {e} exceeds 64-bit range")
            m |= e << (FIELD_BITS * i)
            deg += e
        if deg >= EXP_LIMIT:
            raise ExponentOverflow(f"total degree {deg} exceeds 64-bit range")
        return m | (deg << self.deg_shift)

    def unpack(self, m: int) -> Monomial:
        return tuple((m >> (FIELD_BITS * i)) & FIELD_MASK for i in range(self.n))

    def check_packed(self, m: int) -> int:
        """Raise if an addition of packed monomials overflowed a field."""
        if m & self.guard or (m >> self.deg_shift) >= EXP_LIMIT:
            raise ExponentOverflow("exponent overflow in monomial product")
        return m

    def degree_of(self, m: int) -> int:
        return m >> self.deg_shift

    def sort_key(self, m: int) -> int:
        """Ascending-grevlex integer key of a packed monomial."""
        return m - 2 * (m & self.exp_mask)

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((b | g) - a) & g == g

    def lcm(self, a: int, b: int) -> int:
        out = 0
        deg = 0
        for i in range(self.n):
            sh = FIELD_BITS * i
            x = (a >> sh) & FIELD_MASK
            y = (b >> sh) & FIELD_MASK
            z = x if x > y else y
            out |= z << sh
            deg += z
        return out | (deg << self.deg_shift)

    # construction

    def gens(self) -> list["Polynomial"]:
        out = []
        for i in range(self.n):
            exps = [0] * self.n
            exps[i] = 1
            out.append(self.monomial(exps))
        return out

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> "Polynomial":
        return self.from_dict({tuple(exps): coeff})

    def constant(self, c: int) -> "Polynomial":
        return self.from_dict({(0,) * self.n: c})

    def from_dict(self, mapping: Mapping[Sequence[int], int | FieldElement]) -> "Polynomial":
        acc: dict[int, int] = {}
        p = self.p
        for exps, c in mapping.items():
            m = self.pack(tuple(exps))
            acc[m] = (acc.get(m, 0) + self._coeff(c)) % p
        return self._from_packed(acc)

    def from_terms(self, terms: Iterable[tuple[int | FieldElement, Sequence[int]]]) -> "Polynomial":
        acc: dict[int, int] = {}
        p = self.p
        for c, exps in terms:
            m = self.pack(tuple(exps))
            acc[m] = (acc.get(m, 0) + self._coeff(c)) % p
        return self._from_packed(acc)

    def binomial(self, lead: Sequence[int], tail: Sequence[int], coeff: int = 1) -> "Polynomial":
        """x^lead - coeff * x^tail."""
        return self.from_terms([(1, lead), (-coeff, tail)])

    def _coeff(self, c) -> int:
        if isinstance(c, FieldElement):
            if c.modulus != self.modulus:
                raise ContextMismatch(f"coefficient mod {c.p} in ring mod {self.p}")
            return c.value
        return int(c)

    def _from_packed(self, acc: Mapping[int, int]) -> "Polynomial":
        key = self.sort_key
        items = [(m, c) for m, c in acc.items() if c]
        items.sort(key=lambda t: key(t[0]), reverse=True)
        return Polynomial(self, tuple(items))

    def element(self, value: int) -> FieldElement:
        return FieldElement(value, self.modulus)

    def parse(self, text: str) -> "Polynomial":
        from .parsing import parse_poly

        return parse_poly(text, self)


class Polynomial:
    """Immutable sparse polynomial; terms are kept strictly descending in grevlex.

    ``_terms`` is a tuple of ``(packed_monomial, residue)`` pairs with nonzero
    residues.  The zero polynomial has no terms.
    """

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: PolyRing, terms: tuple):
        self.ring = ring
        self._terms = terms

    # inspection

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    @property
    def terms(self) -> list[Term]:
        r = self.ring
        return [Term(FieldElement(c, r.modulus), r.unpack(m)) for m, c in self._terms]

    def items(self) -> list[tuple[Monomial, int]]:
        """(exponents, residue) pairs, descending."""
        r = self.ring
        return [(r.unpack(m), c) for m, c in self._terms]

    def as_dict(self) -> dict[Monomial, int]:
        return dict(self.items())

    def leading_term(self) -> Term:
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        m, c = self._terms[0]
        return Term(FieldElement(c, self.ring.modulus), self.ring.unpack(m))

    @property
    def lm(self) -> Monomial:
        return self.leading_term().mono

    @property
    def lc(self) -> int:
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self._terms[0][1]

    def total_degree(self) -> int:
        """Largest total degree of a term; 0 for the zero polynomial."""
        r = self.ring
        return max((r.degree_of(m) for m, _ in self._terms), default=0)

    def degree(self, var: int | str) -> int:
        """Largest exponent of one variable over all terms."""
        i = self.ring.order.index(var) if isinstance(var, str) else var
        sh = FIELD_BITS * i
        return max(((m >> sh) & FIELD_MASK for m, _ in self._terms), default=0)

    def is_monic(self) -> bool:
        return bool(self._terms) and self._terms[0][1] == 1

    # arithmetic

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise ContextMismatch(f"{self.ring} vs {other.ring}")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, FieldElement)):
            return self.ring.constant(self.ring._coeff(other))
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return _linear_combination(self.ring, self._terms, 0, 1, other._terms, 0, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return _linear_combination(self.ring, self._terms, 0, 1, other._terms, 0, -1)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, tuple((m, p - c) for m, c in self._terms))

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(self.ring._coeff(other))
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        r = self.ring
        p = r.p
        acc: dict[int, int] = {}
        for m1, c1 in self._terms:
            for m2, c2 in other._terms:
                m = m1 + m2
                acc[m] = (acc.get(m, 0) + c1 * c2) % p
        for m in acc:
            r.check_packed(m)
        return r._from_packed(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        """Naive repeated multiplication; the Frobenius map is the fast route."""
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.p
        c %= p
        if c == 0:
            return self.ring.zero
        return Polynomial(self.ring, tuple((m, cc * c % p) for m, cc in self._terms))

    def mul_monomial(self, exps: Sequence[int], coeff: int = 1) -> "Polynomial":
        r = self.ring
        t = r.pack(tuple(exps))
        p = r.p
        coeff %= p
        if coeff == 0:
            return r.zero
        return Polynomial(r, tuple((r.check_packed(m + t), c * coeff % p) for m, c in self._terms))

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        lc = self._terms[0][1]
        if lc == 1:
            return self
        return self.scale(self.ring.modulus.inv(lc))

    # comparison & display

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, int):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self._terms))

    def __str__(self):
        from .parsing import format_poly

        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({str(self)!r}, p={self.ring.p})"


def _linear_combination(ring, a, sa, ca, b, sb, cb) -> Polynomial:
    """ca * x^sa * A + cb * x^sb * B on packed term tuples."""
    p = ring.p
    acc: dict[int, int] = {}
    for m, c in a:
        acc[m + sa] = c * ca % p
    for m, c in b:
        mm = m + sb
        acc[mm] = (acc.get(mm, 0) + c * cb) % p
    return ring._from_packed(acc)


# -- division -----------------------------------------------------------------


def leading_term(f: Polynomial) -> Term:
    return f.leading_term()


def _divisor_table(G: Sequence[Polynomial]):
    table = []
    for g in G:
        if not g:
            raise ZeroPolynomial("cannot divide by the zero polynomial")
        lm, lc = g._terms[0]
        table.append((lm, g.ring.modulus.inv(lc), g._terms[1:]))
    return table


def _normal_form(ring: PolyRing, terms, table, record=None) -> list:
    """Full reduction of packed ``terms`` by ``table``.

    Always rewrites the greatest reducible term using the first divisor (in
    table order) whose leading monomial divides it.  Returns the remainder as a
    descending list of packed terms.  When ``record`` is a list of lists, the
    multiplier ``(shift, coeff)`` of each step is appended to ``record[idx]``.
    """
    p = ring.p
    guard = ring.guard
    emask = ring.exp_mask
    work = {}
    heap = []
    for m, c in terms:
        work[m] = c
        heap.append(((m & emask) * 2 - m, m))
    heapify(heap)
    out = []
    while heap:
        m = heappop(heap)[1]
        c = work.pop(m, 0)
        if not c:
            continue
        mg = m | guard
        for idx, (lm, linv, tail) in enumerate(table):
            if (mg - lm) & guard == guard:
                break
        else:
            out.append((m, c))
            continue
        f = c * linv % p
        shift = m - lm
        if record is not None:
            record[idx].append((shift, f))
        for tm, tc in tail:
            mm = tm + shift
            old = work.get(mm)
            if old is None:
                work[mm] = -f * tc % p
                heappush(heap, ((mm & emask) * 2 - mm, mm))
            else:
                v = (old - f * tc) % p
                if v:
                    work[mm] = v
                else:
                    del work[mm]
    return out


def reduce(f: Polynomial, G: Sequence[Polynomial]) -> Polynomial:
    """Normal form of f modulo G; no term of the result is divisible by any lm(g)."""
    for g in G:
        f._check(g)
    if not f:
        return f
    rem = _normal_form(f.ring, f._terms, _divisor_table(G))
    return Polynomial(f.ring, tuple(rem))


def divide(f: Polynomial, G: Sequence[Polynomial]) -> tuple[list[Polynomial], Polynomial]:
    """Division with recorded quotients: f == sum(q_i * g_i) + r."""
    for g in G:
        f._check(g)
    ring = f.ring
    record = [[] for _ in G]
    rem = _normal_form(ring, f._terms, _divisor_table(G), record) if f else []
    quotients = []
    for steps in record:
        acc: dict[int, int] = {}
        for shift, c in steps:
            acc[shift] = (acc.get(shift, 0) + c) % ring.p
        quotients.append(ring._from_packed(acc))
    return quotients, Polynomial(ring, tuple(rem))


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    """(L/lt f) f - (L/lt g) g with L the lcm of the leading monomials."""
    f._check(g)
    if not f or not g:
        raise ZeroPolynomial("S-polynomial of the zero polynomial")
    return _spoly(f.ring, f._terms, g._terms)


def _spoly(ring: PolyRing, a, b) -> Polynomial:
    la, ca = a[0]
    lb, cb = b[0]
    L = ring.lcm(la, lb)
    inv = ring.modulus.inv
    return _linear_combination(ring, a[1:], L - la, inv(ca), b[1:], L - lb, -inv(cb))
