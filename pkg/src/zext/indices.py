"""Vertex-degree-based index registry and exact arithmetic for exponential values.

A vertex-degree-based (VDB) index assigns a weight ``phi(i, j)`` to every edge
whose endpoints have degrees i and j, and sums the weights.  Its exponential
variant sums ``e**phi(i, j)`` instead.  For indices with integer weights (the
first and second Zagreb indices) the exponential value is an integer-coefficient
combination of powers of e, which this module represents exactly as a sparse
``{exponent: coefficient}`` map.  Because e is transcendental, such a
combination vanishes only when the map is empty, so comparisons have a certain
sign and can be settled by interval arithmetic at adaptive precision.

Indices with irrational weights are evaluated in log space with a stable
max-shifted accumulation; their comparisons use a documented relative
tolerance (``LOGSPACE_EQ_TOL``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Mapping

import mpmath
from mpmath import iv, mp

from .errors import (
    DegreeOutOfRange,
    EmptyTree,
    KindMismatch,
    NonPositiveValue,
    PrecisionExceeded,
    UnknownIndex,
)
from .trees import Tree, edge_spectrum

__all__ = [
    "ExponentKind",
    "IndexDef",
    "INDEX_REGISTRY",
    "get_index",
    "phi_value",
    "vdb_index",
    "exp_vdb_index",
    "BigExpValue",
    "Ordering",
    "compare",
    "approx_log",
    "LOGSPACE_EQ_TOL",
    "DEFAULT_PREC_START",
    "DEFAULT_PREC_CAP",
]

# relative tolerance under which two log-space values count as equal
LOGSPACE_EQ_TOL = 1e-12

# adaptive precision schedule for exact sign determination, in bits
DEFAULT_PREC_START = 128
DEFAULT_PREC_CAP = 65536


class ExponentKind(Enum):
    INTEGER = "integer"
    REAL = "real"


@dataclass(frozen=True)
class IndexDef:
    """A named VDB index: edge weight function plus exponent kind."""

    name: str
    phi: Callable[[int, int], float]
    exponent_kind: ExponentKind

    def __repr__(self):
        return f"IndexDef({self.name})"


def _phi_m1(i: int, j: int) -> int:
    return i + j


def _phi_m2(i: int, j: int) -> int:
    return i * j


def _phi_randic(i: int, j: int) -> float:
    return 1.0 / math.sqrt(i * j)


def _phi_harmonic(i: int, j: int) -> float:
    return 2.0 / (i + j)


def _phi_ga(i: int, j: int) -> float:
    return 2.0 * math.sqrt(i * j) / (i + j)


def _phi_sc(i: int, j: int) -> float:
    return 1.0 / math.sqrt(i + j)


def _phi_abc(i: int, j: int) -> float:
    if i + j == 2:
        raise DegreeOutOfRange("ABC is undefined on a (1,1) edge")
    return math.sqrt((i + j - 2) / (i * j))


def _phi_az(i: int, j: int) -> float:
    if i + j == 2:
        raise DegreeOutOfRange("AZ is undefined on a (1,1) edge")
    return (i * j / (i + j - 2)) ** 3


# Formulas for H, GA, SC, ABC, AZ follow the standard literature definitions.
INDEX_REGISTRY: dict[str, IndexDef] = {
    "M1": IndexDef("M1", _phi_m1, ExponentKind.INTEGER),
    "M2": IndexDef("M2", _phi_m2, ExponentKind.INTEGER),
    "RANDIC": IndexDef("RANDIC", _phi_randic, ExponentKind.REAL),
    "H": IndexDef("H", _phi_harmonic, ExponentKind.REAL),
    "GA": IndexDef("GA", _phi_ga, ExponentKind.REAL),
    "SC": IndexDef("SC", _phi_sc, ExponentKind.REAL),
    "ABC": IndexDef("ABC", _phi_abc, ExponentKind.REAL),
    "AZ": IndexDef("AZ", _phi_az, ExponentKind.REAL),
}

INDEX_NAMES = tuple(INDEX_REGISTRY)


def get_index(name: str | IndexDef) -> IndexDef:
    """Look up an index by name, case-insensitively."""
    if isinstance(name, IndexDef):
        return name
    key = name.strip().upper()
    try:
        return INDEX_REGISTRY[key]
    except KeyError:
        raise UnknownIndex(
            f"unknown index {name!r}; choose from {' '.join(INDEX_REGISTRY)}"
        ) from None


def phi_value(index: str | IndexDef, i: int, j: int) -> float:
    """Edge weight of ``index`` for a degree pair, requiring 1 <= i <= j."""
    idx = get_index(index)
    if i < 1 or j < i:
        raise DegreeOutOfRange(f"need 1 <= i <= j, got ({i}, {j})")
    return idx.phi(i, j)


def vdb_index(t: Tree, index: str | IndexDef) -> float:
    """Plain index value: sum of spectrum count times edge weight."""
    idx = get_index(index)
    if t.n < 2:
        raise EmptyTree("index of a single vertex is undefined")
    total = 0 if idx.exponent_kind is ExponentKind.INTEGER else 0.0
    for (i, j), count in edge_spectrum(t).entries.items():
        total += count * idx.phi(i, j)
    return total


# ---------------------------------------------------------------------------
# exact / log-space values
# ---------------------------------------------------------------------------

class Ordering(Enum):
    LESS = "LESS"
    EQUAL = "EQUAL"
    GREATER = "GREATER"


def _logsumexp(pairs: list[tuple[float, float]]) -> float:
    """log(sum of w * e**x) over (x, w) pairs with positive weights."""
    m = max(x for x, _ in pairs)
    s = math.fsum(w * math.exp(x - m) for x, w in pairs)
    return m + math.log(s)


@dataclass(frozen=True)
class BigExpValue:
    """Exact or log-space value of a sum of weighted e-powers.

    ``kind="exact"``: ``terms`` maps nonnegative integer exponents to nonzero
    integer coefficients; the value is sum of c * e**x.  The map is empty iff
    the value is zero (integer combinations of distinct e-powers cannot vanish
    otherwise).  ``log_approx`` caches a float log for positive values.

    ``kind="log"``: the value is e**log_value for a finite float log_value.
    """

    kind: str
    terms: Mapping[int, int] | None = None
    log_value: float | None = None
    log_approx: float | None = field(default=None, compare=False)

    @staticmethod
    def exact(terms: Mapping[int, int]) -> "BigExpValue":
        clean = {int(x): int(c) for x, c in terms.items() if c != 0}
        for x in clean:
            if x < 0:
                raise ValueError(f"negative exponent {x} in exact value")
        log_approx = None
        if clean and all(c > 0 for c in clean.values()):
            log_approx = _logsumexp([(float(x), float(c)) for x, c in clean.items()])
        return BigExpValue(kind="exact", terms=clean, log_approx=log_approx)

    @staticmethod
    def logspace(log_value: float) -> "BigExpValue":
        if not math.isfinite(log_value):
            raise ValueError("log-space value must be finite")
        return BigExpValue(kind="log", log_value=log_value)

    def is_zero(self) -> bool:
        if self.kind == "exact":
            return not self.terms
        return False

    def __add__(self, other: "BigExpValue") -> "BigExpValue":
        if self.kind != "exact" or other.kind != "exact":
            raise KindMismatch("term arithmetic is defined for exact values only")
        merged = dict(self.terms)
        for x, c in other.terms.items():
            merged[x] = merged.get(x, 0) + c
        return BigExpValue.exact(merged)

    def __sub__(self, other: "BigExpValue") -> "BigExpValue":
        if self.kind != "exact" or other.kind != "exact":
            raise KindMismatch("term arithmetic is defined for exact values only")
        merged = dict(self.terms)
        for x, c in other.terms.items():
            merged[x] = merged.get(x, 0) - c
        return BigExpValue.exact(merged)

    def to_json_dict(self) -> dict:
        if self.kind == "exact":
            return {
                "kind": "exact",
                "terms": {str(x): c for x, c in sorted(self.terms.items())},
            }
        return {"kind": "log", "log_value": self.log_value}

    @staticmethod
    def from_json_dict(data: Mapping) -> "BigExpValue":
        if data.get("kind") == "exact":
            return BigExpValue.exact({int(x): int(c) for x, c in data["terms"].items()})
        if data.get("kind") == "log":
            return BigExpValue.logspace(float(data["log_value"]))
        raise ValueError(f"not a serialized value: {data!r}")


def exp_vdb_index(t: Tree, index: str | IndexDef) -> BigExpValue:
    """Exponential index value of a tree.

    Integer-weight indices produce an exact term map with the spectrum count
    at each exponent (equal exponents merge).  Real-weight indices produce a
    log-space value by stable accumulation.
    """
    idx = get_index(index)
    if t.n < 2:
        raise EmptyTree("exponential index of a single vertex is undefined")
    spec = edge_spectrum(t)
    if idx.exponent_kind is ExponentKind.INTEGER:
        terms: dict[int, int] = {}
        for (i, j), count in spec.entries.items():
            x = idx.phi(i, j)
            terms[x] = terms.get(x, 0) + count
        return BigExpValue.exact(terms)
    pairs = [(idx.phi(i, j), float(count)) for (i, j), count in spec.entries.items()]
    return BigExpValue.logspace(_logsumexp(pairs))


# ---------------------------------------------------------------------------
# sign-certain comparison
# ---------------------------------------------------------------------------

# interval enclosures of e**x keyed by (precision, exponent)
_iv_exp_cache: dict[tuple[int, int], object] = {}


def _interval_exp(x: int, prec: int):
    key = (prec, x)
    enc = _iv_exp_cache.get(key)
    if enc is None:
        enc = iv.exp(x)
        _iv_exp_cache[key] = enc
    return enc


def exact_sign(
    terms: Mapping[int, int],
    prec_start: int = DEFAULT_PREC_START,
    prec_cap: int = DEFAULT_PREC_CAP,
) -> int:
    """Certain sign of sum of c * e**x.

    Evaluates an interval enclosure, doubling the working precision from
    ``prec_start`` until the interval excludes zero.  Termination is
    guaranteed for nonzero maps because e is transcendental; the configurable
    cap converts a runaway doubling into PrecisionExceeded instead of a wrong
    answer.
    """
    if not terms:
        return 0
    prec = prec_start
    saved = iv.prec
    try:
        while prec <= prec_cap:
            iv.prec = prec
            total = iv.mpf(0)
            for x, c in terms.items():
                total += c * _interval_exp(x, prec)
            if total.a > 0:
                return 1
            if total.b < 0:
                return -1
            prec *= 2
    finally:
        iv.prec = saved
    raise PrecisionExceeded(
        f"sign of {len(terms)}-term e-power sum unresolved at {prec_cap} bits"
    )


def compare(
    a: BigExpValue,
    b: BigExpValue,
    prec_start: int = DEFAULT_PREC_START,
    prec_cap: int = DEFAULT_PREC_CAP,
) -> Ordering:
    """Order two values of the same kind.

    Exact values: the difference map is empty exactly when the values are
    equal; otherwise its certain sign decides.  Log-space values: equal when
    the logs agree to LOGSPACE_EQ_TOL relative, else ordered by log.
    """
    if a.kind != b.kind:
        raise KindMismatch(f"cannot compare {a.kind} with {b.kind}")
    if a.kind == "exact":
        diff = a - b
        if not diff.terms:
            return Ordering.EQUAL
        sign = exact_sign(diff.terms, prec_start, prec_cap)
        return Ordering.GREATER if sign > 0 else Ordering.LESS
    la, lb = a.log_value, b.log_value
    if abs(la - lb) <= LOGSPACE_EQ_TOL * max(1.0, abs(la), abs(lb)):
        return Ordering.EQUAL
    return Ordering.GREATER if la > lb else Ordering.LESS


def approx_log(
    a: BigExpValue,
    prec_start: int = DEFAULT_PREC_START,
    prec_cap: int = DEFAULT_PREC_CAP,
) -> float:
    """Natural log of a positive value, to 1e-12 relative.

    Exact values with all-positive coefficients use the cached max-shifted
    accumulation, which never overflows regardless of exponent size.  Mixed
    signs fall back to high-precision evaluation so cancellation cannot
    corrupt the result.
    """
    if a.kind == "log":
        return a.log_value
    if not a.terms:
        raise NonPositiveValue("log of zero")
    if a.log_approx is not None:
        return a.log_approx
    if exact_sign(a.terms, prec_start, prec_cap) <= 0:
        raise NonPositiveValue("log of a non-positive value")
    shift = max(a.terms)
    prec = max(prec_start, 64)
    saved = mp.prec
    try:
        while prec <= prec_cap:
            mp.prec = prec
            total = mpmath.mpf(0)
            for x, c in a.terms.items():
                total += c * mpmath.exp(x - shift)
            # positive by the sign check; guard the float conversion anyway
            if total > 0:
                result = shift + mpmath.log(total)
                coeff_mass = sum(abs(c) for c in a.terms.values())
                err = mpmath.mpf(2) ** (-prec + 6) * coeff_mass
                if err < abs(total) * mpmath.mpf("1e-14"):
                    return float(result)
            prec *= 2
    finally:
        mp.prec = saved
    raise PrecisionExceeded("log evaluation hit the precision cap")
