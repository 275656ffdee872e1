"""Diagonal-embedding direct systems of classical groups.

Level ``n + 1`` receives level ``n`` by ``g -> diag(g, ..., g, delta(g), ...,
delta(g), 1, ..., 1)`` with ``r`` plain copies, ``s`` twisted copies and
padding ones.  Everything here is a verdict about a finite prefix of the
system: "eventually" means "from some index on, within the given depth".
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple

from .errors import (DepthTooSmall, InputError, InvariantViolation,
                     NotClassifiable, RankZero)
from .linalg import _reduce
from .parabolic import (AEmbedding, centralizer_condition, hypothesis_holds,
                        is_parabolic_component, rho_restriction_holds)
from .roots import (RealFormDescriptor, WeightedRootSystem, build_restricted_system,
                    rho, trace_free, type_A, type_B, type_C, type_D)

UNITARY = ("SU", "U", "SO_pq", "O_pq", "Sp_pq")
CASE_OF_FAMILY = {"SL": "a", "GL": "a", "SO_pq": "b", "O_pq": "b", "SOC": "c",
                  "OC": "c", "U": "d", "Sp_pq": "e", "SpF": "f", "SOstar": "g"}
_FIXED_FIELD = {"SO_pq": "R", "O_pq": "R", "Sp_pq": "H", "SOC": "C", "OC": "C",
                "SOstar": "H", "U": "C"}


def _family_case(family, fld):
    if family == "SU":
        return {"R": "b", "C": "d", "H": "e"}[fld]
    return CASE_OF_FAMILY[family]


def _extend(seq, depth, name):
    seq = list(seq or [])
    if not seq:
        return [0] * depth
    if any(int(x) != x or x < 0 for x in seq):
        raise InputError(f"sequence {name} must hold nonnegative integers")
    seq = [int(x) for x in seq[:depth]]
    return seq + [seq[-1]] * (depth - len(seq))


@dataclass(frozen=True)
class DiagonalSystemDescriptor:
    """Family, field, initial dimension(s) and step sequences ``r, s, t``
    (or ``t1, t2`` for the unitary families).  Entry ``k`` of a sequence
    drives the step from level ``k`` to level ``k + 1``; short sequences
    repeat their last entry."""

    family: str
    field: str | None
    initial: tuple
    r: tuple
    s: tuple = ()
    t: tuple = ()
    t1: tuple = ()
    t2: tuple = ()
    depth: int = 4

    def __post_init__(self):
        fam = self.family
        if fam not in CASE_OF_FAMILY and fam != "SU":
            raise InputError(f"unknown family {fam!r}")
        fld = self.field or _FIXED_FIELD.get(fam)
        object.__setattr__(self, "field", fld)
        init = self.initial
        init = (init,) if isinstance(init, int) else tuple(int(x) for x in init)
        object.__setattr__(self, "initial", init)
        if self.depth < 0:
            raise InputError("depth must be nonnegative")
        d = self.depth
        for name in ("r", "s", "t", "t1", "t2"):
            object.__setattr__(self, name, tuple(_extend(getattr(self, name), d, name)))
        unitary = self.is_unitary
        if len(init) != (2 if unitary else 1) or any(x < 0 for x in init) or sum(init) <= 0:
            raise InputError("initial must be d0 > 0, or [d0', d0''] for unitary families")
        for k in range(d):
            if self.r[k] + self.s[k] <= 0:
                raise InvariantViolation(f"r + s must be positive (step {k + 1})")
        if (fld == "H" and unitary) or fam == "SpF":
            if any(self.s):
                raise InvariantViolation(f"{fam} over {fld} admits no twisted copies (s must be 0)")
        # validates family/field pairs
        self.level_descriptor(0)
        if fam in ("O_pq", "OC"):
            for n, dims in enumerate(self.dims):
                if sum(dims) % 2 == 0:
                    raise InvariantViolation(
                        f"{fam} needs every dimension odd; level {n} has {sum(dims)}")

    @property
    def is_unitary(self) -> bool:
        return self.family in UNITARY

    @property
    def family_case(self) -> str:
        return _family_case(self.family, self.field)

    def step(self, k):
        """Step from level ``k`` to ``k + 1``: ``(r, s, pad)``."""
        pad = (self.t1[k], self.t2[k]) if self.is_unitary else (self.t[k],)
        return self.r[k], self.s[k], pad

    @cached_property
    def dims(self) -> tuple:
        out = [self.initial]
        for k in range(self.depth):
            r, s, pad = self.step(k)
            out.append(tuple(x * (r + s) + p for x, p in zip(out[-1], pad)))
        return tuple(out)

    def level_descriptor(self, n) -> RealFormDescriptor:
        dims = self.dims[n] if n else self.initial
        return RealFormDescriptor(self.family, self.field, dims)

    def mu(self, n) -> int:
        if not self.is_unitary:
            return 0
        a, b = self.dims[n]
        return abs(a - b)

    def with_depth(self, depth) -> "DiagonalSystemDescriptor":
        return DiagonalSystemDescriptor(self.family, self.field, self.initial, self.r,
                                        self.s, self.t, self.t1, self.t2, depth)

    def to_dict(self) -> dict:
        out = {"family": self.family, "field": self.field,
               "initial": list(self.initial) if self.is_unitary else self.initial[0],
               "r": list(self.r), "s": list(self.s), "depth": self.depth}
        if self.is_unitary:
            out.update(t=None, t1=list(self.t1), t2=list(self.t2))
        else:
            out.update(t=list(self.t), t1=None, t2=None)
        return out

    @classmethod
    def from_dict(cls, data: dict, depth: int | None = None) -> "DiagonalSystemDescriptor":
        try:
            family = data["family"]
            d = int(data["depth"] if depth is None else depth)
            return cls(family, data.get("field"), data["initial"],
                       tuple(data.get("r") or ()), tuple(data.get("s") or ()),
                       tuple(data.get("t") or ()), tuple(data.get("t1") or ()),
                       tuple(data.get("t2") or ()), d)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"malformed system descriptor: {exc}") from exc

    @classmethod
    def from_json(cls, text: str, depth: int | None = None):
        return cls.from_dict(json.loads(text), depth)


# ---------------------------------------------------------------------------
# Levels


def _m_system(desc: DiagonalSystemDescriptor, mu: int) -> WeightedRootSystem:
    """Root system of the semisimple part of M on its torus, unit multiplicities."""
    if not desc.is_unitary or mu == 0:
        return WeightedRootSystem.empty(0)
    fld = desc.field
    if fld == "C":
        return type_A(mu)
    if fld == "H":
        return type_C(mu)
    if mu == 1:
        return WeightedRootSystem.empty(0)
    return type_B(mu // 2) if mu % 2 else type_D(mu // 2)


def _system_for(rd: RealFormDescriptor) -> WeightedRootSystem:
    try:
        return build_restricted_system(rd)
    except RankZero:
        if rd.kind == "linear":
            return type_A(rd.params[0])
        return WeightedRootSystem.empty(0)


@dataclass(frozen=True)
class LevelData:
    n: int
    dims: tuple
    mu: int
    descriptor: RealFormDescriptor
    system: WeightedRootSystem
    rho: tuple
    m_system: WeightedRootSystem


class Levels:
    """Lazily built, cached levels of a system."""

    def __init__(self, desc: DiagonalSystemDescriptor):
        self.desc = desc
        self._cache = {}
        self._steps = {}

    def __getitem__(self, n) -> LevelData:
        if n not in self._cache:
            rd = self.desc.level_descriptor(n)
            sys = _system_for(rd)
            mu = self.desc.mu(n)
            self._cache[n] = LevelData(n, self.desc.dims[n], mu, rd, sys, rho(sys),
                                       _m_system(self.desc, mu))
        return self._cache[n]

    def __len__(self):
        return self.desc.depth + 1

    def __iter__(self):
        return (self[n] for n in range(len(self)))

    def embedding(self, n) -> AEmbedding:
        """Torus data of the step from level ``n`` to ``n + 1``."""
        if n not in self._steps:
            self._steps[n] = step_embedding(self.desc, n, self[n].system, self[n + 1].system)
        return self._steps[n]


def generate_levels(desc: DiagonalSystemDescriptor, depth: int | None = None) -> list:
    if depth is not None and depth != desc.depth:
        desc = desc.with_depth(depth)
    return list(Levels(desc))


def _has_outer(desc: DiagonalSystemDescriptor, n) -> bool:
    """Whether the twist is an outer automorphism at level ``n``."""
    fam, fld = desc.family, desc.field
    if fam in ("SL", "GL", "U", "SOstar"):
        return True
    if fam == "SU":
        return fld == "C" or (fld == "R" and sum(desc.dims[n]) % 2 == 0)
    if fam in ("SO_pq", "SOC"):
        return sum(desc.dims[n]) % 2 == 0
    return False


def _twist_flips_last(desc, lower: WeightedRootSystem) -> bool:
    return lower.type_label.startswith("D") and lower.rank >= 2 and desc.family != "SOstar"


def step_embedding(desc: DiagonalSystemDescriptor, n: int, lower: WeightedRootSystem,
                   upper: WeightedRootSystem) -> AEmbedding:
    """Torus map and centralizing complement for the step ``n -> n + 1``.

    Linear families place copies first and padding last; the others place
    the extra hyperbolic pairs first, then the copies.
    """
    r, s, pad = desc.step(n)
    L, U = lower.ambient_dim, upper.ambient_dim
    zero = Fraction(0)
    if desc.family in ("SL", "GL"):
        d = desc.dims[n][0]
        iota = []
        for j in range(L):
            v = [zero] * U
            for k in range(r):
                v[k * d + j] = Fraction(1)
            for k in range(s):
                v[(r + k) * d + (d - 1 - j)] = Fraction(-1)
            iota.append(tuple(v))
        gens = []
        for k in range(r + s):
            v = [zero] * U
            for j in range(d):
                v[k * d + j] = Fraction(1)
            gens.append(tuple(v))
        for j in range((r + s) * d, U):
            gens.append(tuple(Fraction(int(i == j)) for i in range(U)))
        pivots, rows = _reduce([{i: c for i, c in enumerate(trace_free(g)) if c} for g in gens])
        complement = [tuple(row.get(i, zero) for i in range(U)) for row in rows]
        return AEmbedding.from_torus_map(lower, upper, iota, complement)

    extras = U - (r + s) * L
    if extras < 0:
        raise InputError("upper level is too small for the copies")
    if desc.is_unitary:
        pairs = min(pad)
    elif desc.family == "SpF":
        pairs = pad[0]
    else:
        pairs = pad[0] // 2
    pairs = min(pairs, extras)
    flip = s and _twist_flips_last(desc, lower)
    iota = []
    for j in range(L):
        v = [zero] * U
        for k in range(r + s):
            sign = -1 if (k >= r and flip and j == L - 1) else 1
            v[extras + k * L + j] = Fraction(sign)
        iota.append(tuple(v))
    complement = [tuple(Fraction(int(i == j)) for i in range(U)) for j in range(pairs)]
    return AEmbedding.from_torus_map(lower, upper, iota, complement)


# ---------------------------------------------------------------------------
# Verdicts


def iwasawa_aligned(desc: DiagonalSystemDescriptor) -> list:
    """Per step: does the M-subgroup of level n land inside that of n + 1?"""
    return [desc.mu(n) <= desc.mu(n + 1) if desc.is_unitary else True
            for n in range(desc.depth)]


def extract_cofinal_aligned(desc: DiagonalSystemDescriptor) -> tuple:
    """Longest index subsequence along which mu is nondecreasing.

    Ties prefer later indices, so the result hugs the tail of the prefix.
    """
    mus = [desc.mu(n) for n in range(desc.depth + 1)]
    length = [1] * len(mus)
    nxt = [None] * len(mus)
    for i in range(len(mus) - 1, -1, -1):
        for j in range(len(mus) - 1, i, -1):
            if mus[i] <= mus[j] and length[j] + 1 > length[i]:
                length[i], nxt[i] = length[j] + 1, j
    top = max(length) if length else 0
    if top < 2:
        raise DepthTooSmall("no two levels with nondecreasing mu within depth")
    start = max(i for i in range(len(mus)) if length[i] == top)
    out = [start]
    while nxt[out[-1]] is not None:
        out.append(nxt[out[-1]])
    return tuple(out)


class ClassicalVerdict(NamedTuple):
    holds: bool
    threshold: int | None


def is_classical_type(desc: DiagonalSystemDescriptor) -> ClassicalVerdict:
    """``r + s = 1`` for every step past some level, within the prefix."""
    bad = [k for k in range(desc.depth) if desc.r[k] + desc.s[k] != 1]
    if not bad:
        return ClassicalVerdict(True, 0)
    last = bad[-1] + 1
    if last >= desc.depth:
        return ClassicalVerdict(False, None)
    return ClassicalVerdict(True, last)


def restriction_fiber_count(desc: DiagonalSystemDescriptor, n: int, levels: Levels | None = None):
    """Least number of upper roots over the complement restricting to a lower root.

    Returns ``math.inf`` when level ``n`` has no roots.
    """
    levels = levels or Levels(desc)
    if not 0 <= n < desc.depth:
        raise InputError(f"level {n} has no successor within depth {desc.depth}")
    e = levels.embedding(n)
    if not e.lower.mult:
        return math.inf
    over = e.upper_roots_over_complement()
    return min(len(over.get(g, [])) for g in e.lower.mult)


@dataclass
class StepCertificate:
    step: int
    vacuous: bool
    hypothesis: bool
    rho_restriction: bool
    centralizer: bool
    parabolic_component: bool | None

    @property
    def passes(self) -> bool:
        return self.hypothesis and self.rho_restriction

    @property
    def agree(self) -> bool:
        vals = {self.rho_restriction, self.centralizer}
        if self.parabolic_component is not None:
            vals.add(self.parabolic_component)
        return len(vals) == 1


def certify_step(desc, n, levels: Levels, with_diagrams: bool = False) -> StepCertificate:
    e = levels.embedding(n)
    comp = None
    if with_diagrams and e.upper.mult:
        from .satake import satake_of
        try:
            comp = is_parabolic_component(e, satake_of(levels[n].descriptor),
                                          satake_of(levels[n + 1].descriptor))
        except RankZero:
            comp = None
    return StepCertificate(n, not e.lower.mult, hypothesis_holds(e),
                           rho_restriction_holds(e), centralizer_condition(e), comp)


@dataclass
class WeakParabolicVerdict:
    holds: bool
    certificates: list
    first_failure: int | None = None


def is_weakly_parabolic(desc: DiagonalSystemDescriptor, levels: Levels | None = None,
                        with_diagrams: bool = False, stop_early: bool = True) -> WeakParabolicVerdict:
    """Every step within depth splits the torus and restricts rho correctly."""
    levels = levels or Levels(desc)
    certs, failure = [], None
    for n in range(desc.depth):
        c = certify_step(desc, n, levels, with_diagrams)
        certs.append(c)
        if not c.passes and failure is None:
            failure = n
            if stop_early:
                break
    return WeakParabolicVerdict(failure is None, certs, failure)


# ---------------------------------------------------------------------------
# Classification


@dataclass(frozen=True)
class CanonicalForm:
    family_case: str
    delta_variant: bool
    base_params: tuple
    family: str
    field: str
    depth: int
    notes: tuple = field(default=(), compare=False)

    _UNIT_PAD = {"a": 1, "b": 1, "c": 2, "d": 1, "e": 1, "f": 1, "g": 2}

    def to_descriptor(self) -> DiagonalSystemDescriptor:
        r, s = (0, 1) if self.delta_variant else (1, 0)
        u = self._UNIT_PAD[self.family_case]
        if self.family_case in ("b", "d", "e"):
            return DiagonalSystemDescriptor(self.family, self.field, self.base_params,
                                            (r,), (s,), (), (u,), (u,), self.depth)
        return DiagonalSystemDescriptor(self.family, self.field, self.base_params,
                                        (r,), (s,), (u,), (), (), self.depth)

    def label(self) -> str:
        twist = "twisted" if self.delta_variant else "untwisted"
        return f"case ({self.family_case}), {twist}, base {list(self.base_params)}"


def canonicalize(desc: DiagonalSystemDescriptor, levels: Levels | None = None) -> CanonicalForm:
    """Normal form of a weakly parabolic system of classical type."""
    levels = levels or Levels(desc)
    if desc.depth < 1:
        raise NotClassifiable("need at least one step to classify")
    cl = is_classical_type(desc)
    if not cl.holds:
        raise NotClassifiable("not of classical type within depth (r + s = 1 never settles)")
    wp = is_weakly_parabolic(desc, levels)
    if not wp.holds:
        raise NotClassifiable(f"not weakly parabolic: step {wp.first_failure} fails")
    if not levels[desc.depth].system.mult:
        raise NotClassifiable("final level is compact")
    notes = []
    twisted = [desc.s[k] > 0 and _has_outer(desc, k) for k in range(desc.depth)]
    final = twisted[-1]
    if final:
        base_level = twisted.index(True)
    else:
        base_level = max((k + 1 for k, tw in enumerate(twisted) if tw), default=0)
    if len(set(twisted)) > 1:
        notes.append("mixed twisted and untwisted steps; the last step decides the variant")
    if cl.threshold:
        notes.append(f"steps before level {cl.threshold} have r + s != 1")
    pads = {desc.step(k)[2] for k in range(desc.depth)}
    unit = CanonicalForm._UNIT_PAD[desc.family_case]
    if any(max(p) > unit for p in pads):
        notes.append("steps with larger padding are split into unit steps")
    if desc.family in ("SO_pq", "SOC", "SU") and any(sum(d) == 8 for d in desc.dims):
        if desc.family != "SU" or desc.field == "R":
            notes.append("dimension 8 reached: only the standard twist is used, triality ignored")
    return CanonicalForm(desc.family_case, final, desc.dims[base_level], desc.family,
                         desc.field, desc.depth, tuple(notes))


# ---------------------------------------------------------------------------
# L_p parameters


@dataclass
class LpVerdict:
    accepted: bool
    sigma_matches: bool
    rho_restricts: bool
    rho_levels: list


def lp_parameter_check(desc: DiagonalSystemDescriptor, p, sigma, i0: int = 0,
                       levels: Levels | None = None) -> LpVerdict:
    """Is ``sigma`` (real part, at level ``i0``) an L_p parameter for the limit?

    ``p`` is a positive rational or ``math.inf``.
    """
    levels = levels or Levels(desc)
    if not 0 <= i0 <= desc.depth:
        raise InputError(f"level {i0} outside 0..{desc.depth}")
    base = levels[i0]
    sigma = tuple(Fraction(x) for x in sigma)
    if len(sigma) != base.system.ambient_dim:
        raise InputError(f"sigma has {len(sigma)} coordinates; level {i0} needs "
                         f"{base.system.ambient_dim}")
    rhos = [levels[n].rho for n in range(i0, desc.depth + 1)]
    if p == math.inf:
        ok = not any(sigma)
        return LpVerdict(ok, ok, True, rhos)
    p = Fraction(p)
    if p < 1:
        raise InputError("p must be at least 1")
    target = tuple(2 / p * x for x in base.rho)
    match = base.system.normalize(sigma) == base.system.normalize(target)
    restricts = all(rho_restriction_holds(levels.embedding(n)) and
                    hypothesis_holds(levels.embedding(n))
                    for n in range(i0, desc.depth))
    return LpVerdict(match and restricts, match, restricts, rhos)
