"""Per-level cohomological degrees of a weight along a direct system.

At level ``i`` the weight pulls back to ``nu_i`` on the torus of the
semisimple part of M.  The degree ``q_i`` counts positive roots ``g`` with
``<nu_i + rho, g> < 0``; the weight is finite when ``q_i`` settles.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .dirsys import DiagonalSystemDescriptor, Levels
from .errors import InputError, NotDominant, UnsupportedTruncation
from .roots import (WeightedRootSystem, add, dot, make_dominant, rho, sub)

FINITE = "cohomologically_finite"
CLASSICAL = "classically_cohomologically_finite"
NOT_FINITE = "not_finite_within_depth"
SINGULAR_TAIL = "singular_tail"


@dataclass(frozen=True)
class WeightSpec:
    """Finitely supported weight; ``support`` maps 1-based coordinates to values.

    ``psi`` lists 1-based simple roots of the M-system generating the
    subsystem on which the weight must be dominant.
    """

    support: dict
    psi: tuple = ()

    def __post_init__(self):
        clean = {}
        for k, v in dict(self.support).items():
            k = int(k)
            if k < 1:
                raise InputError(f"weight coordinate {k} must be at least 1")
            v = Fraction(v)
            if v:
                clean[k] = v
        object.__setattr__(self, "support", clean)
        object.__setattr__(self, "psi", tuple(sorted(int(i) for i in self.psi)))

    @classmethod
    def from_dict(cls, data: dict) -> "WeightSpec":
        try:
            return cls({int(k): Fraction(str(v)) for k, v in data.get("coords", {}).items()},
                       tuple(data.get("psi") or ()))
        except (TypeError, ValueError, AttributeError) as exc:
            raise InputError(f"malformed weight: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "WeightSpec":
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_vector(cls, coords, psi=()) -> "WeightSpec":
        return cls({i + 1: c for i, c in enumerate(coords)}, psi)


def _check_integral(v, sys: WeightedRootSystem):
    if not v:
        return
    if sys.trace_zero:
        if any((a - v[0]).denominator != 1 for a in v):
            raise InputError("weight is not integral: coordinates must differ by integers")
        return
    halves = {(2 * a).denominator == 1 and a.denominator == 2 for a in v}
    ints = all(a.denominator == 1 for a in v)
    if not ints and halves != {True}:
        raise InputError("weight is not integral: use all integers or all half-integers")


def _psi_subsystem(sys: WeightedRootSystem, psi):
    idx = set(i - 1 for i in psi)
    for i in idx:
        if i >= sys.rank:
            raise InputError(f"psi index {i + 1} exceeds the M-system rank {sys.rank}")
    out = []
    for g in sys.positive_roots:
        coeffs = sys.simple_coefficients(g)
        if all(not c or i in idx for i, c in enumerate(coeffs)):
            out.append(g)
    return out


def pullback(nu: WeightSpec, m_sys: WeightedRootSystem) -> tuple:
    """Restrict ``nu`` to the first ``ambient_dim`` torus coordinates."""
    n = m_sys.ambient_dim
    for k, v in nu.support.items():
        if k > n:
            raise UnsupportedTruncation(
                f"coordinate {k} = {v} is nonzero but the torus has rank {n}")
    vec = tuple(nu.support.get(k, Fraction(0)) for k in range(1, n + 1))
    _check_integral(vec, m_sys)
    for g in _psi_subsystem(m_sys, nu.psi):
        if dot(vec, g) < 0:
            raise NotDominant(f"weight pairs negatively with {g} in the psi subsystem")
    return vec


@dataclass(frozen=True)
class LevelDegree:
    level: int
    singular: bool
    annihilating_root: tuple | None
    q: int
    length: int
    word: tuple
    nu: tuple
    nu_tilde: tuple
    inverted: frozenset


def degree(nu_i, m_sys: WeightedRootSystem, level: int = 0) -> LevelDegree:
    r = rho(m_sys)
    v = add(tuple(Fraction(a) for a in nu_i), r)
    inverted = frozenset(g for g in m_sys.positives if dot(v, g) < 0)
    res = make_dominant(v, m_sys)
    return LevelDegree(level, res.singular, res.singular_root, len(inverted), res.length,
                       res.word, tuple(nu_i), sub(res.dominant, r), inverted)


def _pad(vectors, n):
    return frozenset(tuple(g) + (Fraction(0),) * (n - len(g)) for g in vectors)


@dataclass
class DegreeReport:
    levels: list
    verdict: str
    q: int | None = None
    threshold: int | None = None
    notes: list = field(default_factory=list)

    @property
    def is_finite(self) -> bool:
        return self.verdict in (FINITE, CLASSICAL)


def finiteness_verdict(nu: WeightSpec, desc: DiagonalSystemDescriptor,
                       levels: Levels | None = None) -> DegreeReport:
    """Degrees at every level and a finite-prefix verdict on their tail."""
    levels = levels or Levels(desc)
    recs = []
    for lv in levels:
        recs.append(degree(pullback(nu, lv.m_system), lv.m_system, lv.n))
    notes = ["finite-prefix evidence only"]
    if recs[-1].singular:
        return DegreeReport(recs, SINGULAR_TAIL, notes=notes)
    start = len(recs) - 1
    while start > 0 and not recs[start - 1].singular and recs[start - 1].q == recs[-1].q:
        start -= 1
    if len(recs) - start < 2:
        return DegreeReport(recs, NOT_FINITE, notes=notes)
    early = [r.level for r in recs[:start] if r.singular]
    if early:
        notes.append(f"singular before the threshold at levels {early}")
    tail = recs[start:]
    width = max(levels[r.level].m_system.ambient_dim for r in tail)
    stable = len({_pad(r.inverted, width) for r in tail}) == 1
    verdict = CLASSICAL if stable else FINITE
    return DegreeReport(recs, verdict, recs[-1].q, start, notes)
