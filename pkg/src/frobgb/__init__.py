"""Reduced Groebner bases of J + I^[q] over prime fields, and how they grow with q."""

from .errors import (
    CharMismatch,
    ContextMismatch,
    DivisionByZero,
    DomainNotCovered,
    ExponentOverflow,
    FrobGBError,
    NotComaximal,
    ParseError,
    SameTypeUnsupported,
    UnknownFamily,
)
from .families import (
    FAMILIES,
    PrincipalBinomial,
    e_infinity,
    monoidalize,
    predicted_basis,
    same_type,
    thm32_basis,
)
from .field import FieldElement, PrimeModulus
from .frobenius import FrobeniusExponent, Metrics, frobenius_power, ideal_frobenius, metrics_of, sweep
from .groebner import (
    DEFAULT_STRATEGY,
    NAIVE_STRATEGY,
    CompletionStrategy,
    GroebnerBasis,
    Ideal,
    buchberger,
    ideal_equal,
    is_groebner,
    is_reduced,
    is_whole_ring,
    reduced_groebner,
)
from .harness import BehaviorClass, ExperimentConfig, classify, run, verify_family
from .poly import Polynomial, PolyRing, divide, reduce, s_polynomial

__version__ = "0.1.0"
