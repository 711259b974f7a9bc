"""Closed-form bases for named example families, plus principal-binomial tools."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import gcd
from typing import Callable, Mapping, NamedTuple, Optional, Sequence

from .errors import (
    ContextMismatch,
    DomainNotCovered,
    NotComaximal,
    SameTypeUnsupported,
    UnknownFamily,
)
from .field import FieldElement
from .frobenius import Metrics
from .groebner import GroebnerBasis, Ideal, is_whole_ring
from .poly import Monomial, Polynomial, PolyRing, grevlex_cmp

__all__ = [
    "PrincipalBinomial",
    "BinomialType",
    "Substitution",
    "FamilySpec",
    "Prediction",
    "FAMILIES",
    "get_family",
    "e_infinity",
    "thm32_basis",
    "predicted_basis",
    "same_type",
    "monoidalize",
]


@dataclass(frozen=True)
class PrincipalBinomial:
    """x^u * (x^v - coeff * x^w) with gcd(x^v, x^w) = 1 and x^v > x^w."""

    ring: PolyRing
    u: Monomial
    v: Monomial
    w: Monomial
    coeff: int = 1

    def __post_init__(self):
        n = self.ring.n
        for name in ("u", "v", "w"):
            exps = tuple(getattr(self, name))
            if len(exps) != n or any(e < 0 for e in exps):
                raise ValueError(f"{name} must be {n} non-negative exponents")
            object.__setattr__(self, name, exps)
        c = self.coeff.value if isinstance(self.coeff, FieldElement) else int(self.coeff)
        c %= self.ring.p
        if c == 0:
            raise ValueError("binomial coefficient must be a unit")
        object.__setattr__(self, "coeff", c)
        if any(a and b for a, b in zip(self.v, self.w)):
            raise ValueError("x^v and x^w must be coprime")
        if grevlex_cmp(self.v, self.w) <= 0:
            raise ValueError("x^v must be greater than x^w")

    @classmethod
    def from_polynomial(cls, f: Polynomial) -> "PrincipalBinomial":
        if len(f) != 2:
            raise ValueError(f"{f} is not a binomial")
        (lead, lc), (tail, tc) = f.items()
        u = tuple(min(a, b) for a, b in zip(lead, tail))
        v = tuple(a - b for a, b in zip(lead, u))
        w = tuple(a - b for a, b in zip(tail, u))
        p = f.ring.p
        return cls(f.ring, u, v, w, (-tc * f.ring.modulus.inv(lc)) % p)

    def poly(self) -> Polynomial:
        lead = tuple(a + b for a, b in zip(self.u, self.v))
        tail = tuple(a + b for a, b in zip(self.u, self.w))
        return self.ring.binomial(lead, tail, self.coeff)

    def ideal(self) -> Ideal:
        return Ideal(self.ring, [self.poly()])

    def core(self) -> Polynomial:
        """The coprime part x^v - coeff * x^w."""
        return self.ring.binomial(self.v, self.w, self.coeff)


@dataclass(frozen=True)
class BinomialType:
    B: Monomial
    C: Monomial
    l: int
    m: int


def _primitive(v: Monomial, w: Monomial):
    d = gcd(*v, *w)
    return tuple(x // d for x in v), tuple(x // d for x in w), d


def same_type(f: PrincipalBinomial, g: PrincipalBinomial) -> Optional[BinomialType]:
    """Common primitive direction (B, C) of (v, w) and (b, c), if there is one."""
    B, C, l = _primitive(f.v, f.w)
    B2, C2, m = _primitive(g.v, g.w)
    if (B, C) != (B2, C2):
        return None
    return BinomialType(B, C, l, m)


def e_infinity(a: Sequence[int], b: Sequence[int], u: Sequence[int], q: int) -> Monomial:
    """Stable value of lcm(x^(a+jb), x^(qu)) / x^(jb) as j grows."""
    if q < 1:
        raise ValueError("q must be positive")
    if not (len(a) == len(b) == len(u)):
        raise ValueError("exponent vectors differ in length")
    return tuple(ai if bi > 0 else max(ai, q * ui) for ai, bi, ui in zip(a, b, u))


def thm32_basis(I: PrincipalBinomial, J: PrincipalBinomial, q: int) -> list[Polynomial]:
    """Four-element basis of J + I^[q] for comaximal pure binomials (w = c = 0).

    Elements: the two generators (I raised to q), the monomial
    lcm(x^(q(u+v)), x^a) / x^(qv) and the stable monomial from e_infinity.
    Duplicates are collapsed.
    """
    ring = I.ring
    if J.ring != ring:
        raise ContextMismatch(f"{I.ring} vs {J.ring}")
    if any(I.w) or any(J.w):
        raise ValueError("both binomials need a constant tail (w = c = 0)")
    if not is_whole_ring(Ideal(ring, [I.core(), J.core()])):
        raise NotComaximal(f"({I.core()}, {J.core()}) is a proper ideal")
    p = ring.p
    qu = tuple(q * x for x in I.u)
    qv = tuple(q * x for x in I.v)
    first = ring.binomial(tuple(x + y for x, y in zip(qu, qv)), qu, pow(I.coeff, q, p))
    third = tuple(max(x + y, a) - y for x, y, a in zip(qu, qv, J.u))
    out = []
    for f in (first, J.poly(), ring.monomial(third), ring.monomial(e_infinity(J.u, J.v, I.u, q))):
        if f not in out:
            out.append(f)
    return out


# variable scalings x_i -> k_i * x_i


@dataclass(frozen=True)
class Substitution:
    scales: tuple[int, ...]
    case: str

    def apply(self, f: Polynomial) -> Polynomial:
        p = f.ring.p
        terms = []
        for exps, c in f.items():
            for k, e in zip(self.scales, exps):
                c = c * pow(k, e, p) % p
            terms.append((c, exps))
        return f.ring.from_terms(terms)

    def apply_binomial(self, b: PrincipalBinomial) -> PrincipalBinomial:
        """Image of b, rescaled so the leading coefficient is 1."""
        return PrincipalBinomial.from_polynomial(self.apply(b.poly()).monic())


def _power(k: Sequence[int], exps: Sequence[int], p: int) -> int:
    out = 1
    for ki, e in zip(k, exps):
        out = out * pow(ki, e, p) % p
    return out


def _balanced(k, b: PrincipalBinomial) -> bool:
    p = b.ring.p
    return _power(k, b.v, p) == b.coeff * _power(k, b.w, p) % p


def _two_step(first: PrincipalBinomial, second: PrincipalBinomial) -> Optional[list[int]]:
    # first is fixed through one of its own variables, then second through a
    # variable that first does not involve
    n, p = first.ring.n, first.ring.p
    free = [i for i in range(n) if second.v[i] + second.w[i] > 0 and first.v[i] + first.w[i] == 0]
    if not free:
        return None
    own = [j for j in range(n) if first.v[j] + first.w[j] > 0]
    i = free[0]
    for j in own:
        k = [1] * n
        for t in range(1, p):
            k[j] = t
            if _balanced(k, first):
                break
        else:
            continue
        for s in range(1, p):
            k[i] = s
            if _balanced(k, second):
                return k
    return None


def monoidalize(
    I: PrincipalBinomial, J: PrincipalBinomial
) -> Optional[tuple[Ideal, Ideal, Substitution]]:
    """Scale variables by units of F_p so both generators get coefficient 1.

    Returns None when no scaling exists over the base field.
    """
    if I.ring != J.ring:
        raise ContextMismatch(f"{I.ring} vs {J.ring}")
    if same_type(I, J) is not None:
        raise SameTypeUnsupported("binomials of the same type")
    ring = I.ring
    n, p = ring.n, ring.p

    k = None
    case = ""
    if I.coeff == 1 and J.coeff == 1:
        k, case = [1] * n, "identity"
    if k is None:
        k = _two_step(J, I)
        case = "IIa"
    if k is None:
        k = _two_step(I, J)
        case = "IIb"
    if k is None:
        # first coordinate varies fastest
        for rev in product(range(1, p), repeat=n):
            cand = rev[::-1]
            if _balanced(cand, I) and _balanced(cand, J):
                k, case = list(cand), "I"
                break
    if k is None:
        return None
    sub = Substitution(tuple(k), case)
    return sub.apply_binomial(I).ideal(), sub.apply_binomial(J).ideal(), sub


# named families


def _div(num: int, den: int) -> int:
    if num % den:
        raise ValueError(f"{num}/{den} is not integral")
    return num // den


class Prediction(NamedTuple):
    basis: GroebnerBasis
    metrics: Metrics


Rule = tuple[str, int]  # (behavior kind, onset)


@dataclass(frozen=True)
class FamilySpec:
    name: str
    p: int
    variables: tuple[str, ...]
    ideal_i: tuple[str, ...]
    ideal_j: tuple[str, ...]
    basis: Callable[[int, int], list[str]]
    metrics: Callable[[int, int], tuple[int, int, int]]
    swap: bool = False
    e_min: int = 0
    e_range: tuple[int, int] = (0, 4)
    # below-domain values: e -> (metrics, basis strings or None)
    stated: Mapping[int, tuple[tuple[int, int, int], Optional[tuple[str, ...]]]] = field(default_factory=dict)
    summary: Optional[tuple[Rule, Rule, Rule]] = None
    exact: bool = True  # False: basis is a Groebner basis, metrics are upper bounds
    description: str = ""

    def ring(self) -> PolyRing:
        return PolyRing(self.p, self.variables)

    def ideals(self) -> tuple[Ideal, Ideal]:
        """(frobenius side, fixed side) as fed to the sweep."""
        ring = self.ring()
        I = Ideal.parse(ring, self.ideal_i)
        J = Ideal.parse(ring, self.ideal_j)
        return (J, I) if self.swap else (I, J)

    def covers(self, e: int) -> bool:
        return e >= self.e_min


def _p41(q, e):
    return [
        "y^3 - x*y",
        f"x^{q - 1}*y^2*z^{q} - x^{2 * q}",
        f"x^{2 * q}*y - x^{q}*y*z^{q}",
        f"x^{3 * q + 1} - x^{2 * q + 1}*z^{q}",
    ]


def _p42(q, e):
    out = ["y^2*z - x^2", f"y^{3 * q} - x^{q}*y^{q}"]
    out += [f"x^{2 * k}*y^{3 * q - 2 * k} - x^{q + 2 * k}*y^{q - 2 * k}" for k in range(1, (q - 1) // 2 + 1)]
    out += [f"x^{q - 1 + 2 * j}*y^{2 * q + 1 - 2 * j} - x^{2 * q - 1}*y*z^{j}" for j in range(1, q + 1)]
    out.append(f"x^{3 * q + 1} - x^{2 * q + 1}*z^{q}")
    return out


def _p42_char2(q, e):
    out = ["y^2*z - x^2"]
    out += [f"x^{2 * k}*y^{3 * q - 2 * k} - x^{q + 2 * k}*y^{q - 2 * k}" for k in range(0, (q - 2) // 2 + 1)]
    out += [f"x^{q + 2 * j}*y^{2 * q - 2 * j} - x^{2 * q}*z^{j}" for j in range(0, q + 1)]
    return out


def _p44(q, e):
    out = ["x*y^2*z^3*w^2 - x^3*y*z*w^3"]
    for i in range(_div(3 * q - 1, 2) + 1):
        out.append(
            f"x^{6 * q - 1 + 2 * i}*y^{_div(3 * q + 1, 2) - i}*z*w^{_div(3 * q - 1, 2) + i}"
            f" - x^{3 * q - 2 + 2 * i}*y^{2 * q + 1 - i}*z^2*w^{2 * q - 1 + i}"
        )
    return out


def _p45(q, e):
    out = ["x^5*y^2*z*w - x*y^3*z^2*w"]
    if e % 2 == 0:
        out.append(
            f"x*y^{_div(9 * q - 1, 4)}*z^{_div(13 * q - 1, 4)}*w^{2 * q}"
            f" - x^3*y^{_div(7 * q - 3, 4)}*z^{_div(7 * q - 3, 4)}*w^{3 * q}"
        )
    else:
        out.append(
            f"x^3*y^{_div(9 * q - 3, 4)}*z^{_div(13 * q - 3, 4)}*w^{2 * q}"
            f" - x*y^{_div(7 * q - 1, 4)}*z^{_div(7 * q - 1, 4)}*w^{3 * q}"
        )
        out.append(
            f"x*y^{_div(9 * q + 1, 4)}*z^{_div(13 * q + 1, 4)}*w^{2 * q}"
            f" - x^3*y^{_div(7 * q - 1, 4)}*z^{_div(7 * q - 1, 4)}*w^{3 * q}"
        )
    return out


def _p45_metrics(q, e):
    if e % 2:
        return (3 * q, _div(15 * q + 3, 2), 3)
    return (3 * q, _div(15 * q + 1, 2), 2)


def _p46(q, e):
    out = ["x*y^2*z^5 - x^2*y*z"]
    if e % 2 == 0:
        out += [
            f"x^{_div(9 * q - 1, 4) + k}*y^{_div(7 * q + 1, 4) - k}*z"
            f" - x^{_div(3 * q - 1, 2) + k}*y^{_div(q + 1, 2) - k}*z^2"
            for k in range(_div(q - 1, 2) + 1)
        ]
        out += [
            f"x^{_div(11 * q + 1, 4) + j}*y^{_div(5 * q - 1, 4) - j}*z - x^{2 * q - 1}*y*z^{6 + 4 * j}"
            for j in range(_div(q - 3, 2) + 1)
        ]
        out.append(f"x^{2 * q - 1}*y*z^{2 * q + 4} - x^{_div(13 * q - 1, 4)}*y^{_div(3 * q + 1, 4)}*z")
    else:
        out.append(
            f"x^{_div(9 * q - 3, 4)}*y^{_div(7 * q + 3, 4)}*z^3"
            f" - x^{_div(3 * q - 1, 2)}*y^{_div(q + 1, 2)}*z^2"
        )
        out += [
            f"x^{_div(9 * q + 1, 4) + k}*y^{_div(7 * q - 1, 4) - k}*z"
            f" - x^{_div(3 * q - 1, 2) + k}*y^{_div(q + 1, 2) - k}*z^4"
            for k in range(_div(q - 1, 2) + 1)
        ]
        out += [
            f"x^{_div(11 * q + 3, 4) + j}*y^{_div(5 * q - 3, 4) - j}*z - x^{2 * q - 1}*y*z^{8 + 4 * j}"
            for j in range(_div(q - 3, 2) + 1)
        ]
        out.append(f"x^{2 * q - 1}*y*z^{2 * q + 6} - x^{_div(13 * q + 1, 4)}*y^{_div(3 * q - 1, 4)}*z")
    return out


def _p46_metrics(q, e):
    if e % 2 == 0:
        return (2 * q + 4, 4 * q + 4, q + 2)
    return (2 * q + 6, 4 * q + 6, q + 3)


def _p47(q, e):
    out = [
        "x*y^2*z^5 - x^2*y*z",
        f"x^{_div(9 * q, 4) - 1}*y^{_div(7 * q, 4) + 1}*z^4 - x^{_div(3 * q, 2) - 1}*y^{q // 2 + 1}*z^4",
    ]
    out += [
        f"x^{_div(9 * q, 4) + j}*y^{_div(7 * q, 4) - j}*z - x^{_div(3 * q, 2) + j}*y^{q // 2 - j}*z"
        for j in range(_div(q - 2, 2) + 1)
    ]
    out += [
        f"x^{_div(11 * q, 4) + k}*y^{_div(5 * q, 4) - k}*z - x^{2 * q - 1}*y*z^{5 + 4 * k}"
        for k in range(_div(q - 2, 2) + 1)
    ]
    # last element: S-polynomial of the first generator with the final
    # x^(11q/4+k) element, reduced once by that generator
    out.append(f"x^{2 * q - 1}*y*z^{2 * q + 5} - x^{_div(13 * q, 4)}*y^{_div(3 * q, 4)}*z")
    return out


def _p48(q, e):
    out = ["x*y^2*z^3*w - x*y*z*w^3"]
    out += [
        f"x^{2 * q}*y^{_div(3 * q + 1 - 2 * k, 2)}*z*w^{6 * q - 1 + 2 * k} - x^{q}*y*z^{2 * k + 2}*w^{4 * q - 2}"
        for k in range(_div(3 * q - 1, 2) + 1)
    ]
    return out


# constant-tail pair used for the four-element construction
_T32_I = PrincipalBinomial(PolyRing(3, ("x", "y")), (1, 0), (1, 1), (0, 0), 1)
_T32_J = PrincipalBinomial(PolyRing(3, ("x", "y")), (0, 1), (2, 2), (0, 0), 2)


def _t32(q, e):
    return [str(f) for f in thm32_basis(_T32_I, _T32_J, q)]


def _t32_bounds(q, e):
    u, v, a, b = _T32_I.u, _T32_I.v, _T32_J.u, _T32_J.v
    return (
        max((u[-1] + v[-1]) * q, a[-1] + b[-1]),
        max((sum(u) + sum(v)) * q, sum(a) + sum(b)),
        4,
    )


LIN = ("linear", 0)
CONST = ("constant", 0)

_XYZ = ("x", "y", "z")
_XYZW = ("x", "y", "z", "w")
_P41_I = ("y^2*z - x^2",)
_P41_J = ("y^3 - x*y",)
_P44_I = ("x^5*y^2*z*w - x*y^3*z^2*w",)
_P44_J = ("x*y^2*z^3*w^2 - x^3*y*z*w^3",)
_P46_I = ("x^2*y^2*z - x*y*z^2",)
_P46_J = ("x*y^2*z^5 - x^2*y*z",)


FAMILIES: dict[str, FamilySpec] = {
    f.name: f
    for f in [
        FamilySpec(
            "P4.1", 3, _XYZ, _P41_I, _P41_J, _p41, lambda q, e: (q, 3 * q + 1, 4),
            e_range=(0, 4), summary=(LIN, LIN, CONST),
            description="four elements for every q",
        ),
        FamilySpec(
            "P4.1-anyp", 5, _XYZ, _P41_I, _P41_J, _p41, lambda q, e: (q, 3 * q + 1, 4),
            e_range=(0, 2), description="same sets in characteristic 5",
        ),
        FamilySpec(
            "P4.2", 3, _XYZ, _P41_I, _P41_J, _p42, lambda q, e: (q, 3 * q + 1, _div(3 * q + 5, 2)),
            swap=True, e_range=(0, 4), summary=(LIN, LIN, LIN),
            description="roles exchanged; cardinality grows linearly",
        ),
        FamilySpec(
            "P4.2-char2", 2, _XYZ, _P41_I, _P41_J, _p42_char2, lambda q, e: (q, 3 * q, _div(3 * q, 2) + 2),
            swap=True, e_min=1, e_range=(1, 5),
            description="roles exchanged in characteristic 2",
        ),
        FamilySpec(
            "P4.3a", 2, _XYZ, ("x^2 - y^2",), ("x*y - z^2",),
            lambda q, e: ["x*y - z^2", f"x^{2 * q} - y^{2 * q}", f"y^{2 * q + 1} - x^{2 * q - 1}*z^2"],
            lambda q, e: (2, 2 * q + 1, 3),
            e_range=(0, 6), summary=(CONST, LIN, CONST),
            description="bounded least-variable degree",
        ),
        FamilySpec(
            "P4.3b", 2, _XYZ, ("x^2 - y^2",), ("x*y - z^2",),
            lambda q, e: ["x^2 - y^2", f"y^{2 * q} - z^{2 * q}"],
            lambda q, e: (2 * q, 2 * q, 2),
            swap=True, e_min=1, e_range=(0, 6),
            stated={0: ((2, 3, 3), None)},
            summary=(LIN, ("eventually-linear", 1), ("eventually-constant", 1)),
            description="roles exchanged; two elements once q >= 2",
        ),
        FamilySpec(
            "P4.4", 3, _XYZW, _P44_I, _P44_J, _p44,
            lambda q, e: (_div(7 * q - 3, 2), 12 * q - 1, _div(3 * q + 3, 2)),
            e_min=1, e_range=(0, 4),
            stated={0: ((3, 12, 3), _P44_J + _P44_I + ("x^7*y*z*w^3 - x^3*y^2*z^2*w^3",))},
            summary=(("eventually-linear", 1), ("eventually-linear", 1), LIN),
            description="least-variable degree linear only from q = 3",
        ),
        FamilySpec(
            "P4.5", 3, ("y", "x", "z", "w"), _P44_I, _P44_J, _p45, _p45_metrics,
            swap=True, e_min=1, e_range=(0, 4),
            stated={0: ((3, 12, 3), _P44_I + _P44_J + ("x^7*y*z*w^3 - x^3*y^2*z^2*w^3",))},
            summary=(LIN, ("periodic2-linear", 1), ("periodic2-constant", 1)),
            description="roles exchanged with y > x; parity-dependent shape",
        ),
        FamilySpec(
            "P4.6", 3, _XYZ, _P46_I, _P46_J, _p46, _p46_metrics,
            e_min=2, e_range=(0, 4),
            stated={
                0: ((6, 8, 3), _P46_J + _P46_I + ("x*y*z^6 - x^3*y*z",)),
                1: ((8, 15, 5), _P46_J + (
                    "x^6*y^6*z^3 - x^4*y^2*z^2",
                    "x^7*y^5*z - x^4*y^2*z^4",
                    "x^8*y^4*z - x^5*y*z^4",
                    "x^5*y*z^8 - x^9*y^3*z",
                )),
            },
            summary=(("periodic2-linear", 2),) * 3,
            description="parity-dependent shape from q = 9",
        ),
        FamilySpec(
            "P4.7", 2, _XYZ, _P46_I, _P46_J, _p47, lambda q, e: (2 * q + 5, 4 * q + 5, q + 3),
            e_min=3, e_range=(0, 6),
            description="characteristic-2 variant; no periodicity",
        ),
        FamilySpec(
            "P4.8", 3, _XYZW, ("x^2*y^2*z*w^5 - x*y*z^2*w^2",), ("x*y^2*z^3*w - x*y*z*w^3",), _p48,
            lambda q, e: (9 * q - 2, 11 * q, _div(3 * (q + 1), 2)),
            e_range=(0, 3), summary=(LIN, LIN, LIN),
            description="total degree 11q exceeds q times the generator degrees",
        ),
        FamilySpec(
            "T3.2", 3, ("x", "y"), (str(_T32_I.poly()),), (str(_T32_J.poly()),), _t32, _t32_bounds,
            e_min=1, e_range=(0, 3), exact=False,
            description="comaximal constant-tail pair; at most four elements",
        ),
    ]
}


def get_family(name: str) -> FamilySpec:
    try:
        return FAMILIES[name]
    except KeyError:
        raise UnknownFamily(name) from None


def predicted_basis(spec: FamilySpec | str, e: int) -> Prediction:
    """Closed-form basis and metrics at q = p^e; canonical, sorted like a reduced basis."""
    if isinstance(spec, str):
        spec = get_family(spec)
    if not spec.covers(e):
        raise DomainNotCovered(f"{spec.name} closed form starts at e={spec.e_min}, got e={e}")
    q = spec.p**e
    ring = spec.ring()
    polys = [ring.parse(t).monic() for t in spec.basis(q, e)]
    polys.sort(key=lambda f: ring.sort_key(f._terms[0][0]))
    return Prediction(GroebnerBasis(ring, polys), Metrics(*spec.metrics(q, e)))
