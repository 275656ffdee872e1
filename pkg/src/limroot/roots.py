"""Weighted restricted root systems in exact rational coordinates.

A root is a tuple of ``Fraction`` in an orthonormal ambient basis
``e_1, ..., e_N``.  Type A systems live in the trace-zero hyperplane of an
``n``-dimensional ambient space; types B, C, D and BC use ``rank`` ambient
coordinates.  Multiplicities are positive integers carried per root.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import InputError, RankZero, UnsupportedFamily, ZeroRoot

RootVector = tuple  # tuple[Fraction, ...]


def vec(*xs) -> RootVector:
    return tuple(Fraction(x) for x in xs)


def zero(n: int) -> RootVector:
    return (Fraction(0),) * n


def unit(n: int, i: int, c=1) -> RootVector:
    """``c * e_{i+1}`` in dimension ``n`` (``i`` is 0-based)."""
    v = [Fraction(0)] * n
    v[i] = Fraction(c)
    return tuple(v)


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v):
    c = Fraction(c)
    return tuple(c * a for a in v)


def dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def is_zero(v) -> bool:
    return not any(v)


def is_lex_positive(v) -> bool:
    for a in v:
        if a:
            return a > 0
    return False


def trace_free(v) -> RootVector:
    """Project onto the trace-zero hyperplane."""
    if not v:
        return v
    mean = sum(v, Fraction(0)) / len(v)
    return tuple(a - mean for a in v)


def format_vector(v) -> str:
    return "(" + ", ".join(str(a) for a in v) + ")"


def _simple_sort_key(v):
    first = next((i for i, a in enumerate(v) if a), len(v))
    return (first, tuple(v))


# ---------------------------------------------------------------------------
# Classification of a root set into a type label


def _components(roots: Sequence[RootVector]):
    """Split roots into mutually orthogonal irreducible pieces."""
    remaining = list(roots)
    comps = []
    while remaining:
        comp = [remaining.pop()]
        grew = True
        while grew:
            grew = False
            for r in list(remaining):
                if any(dot(r, c) for c in comp):
                    comp.append(r)
                    remaining.remove(r)
                    grew = True
        comps.append(comp)
    return comps


def _label_component(comp, simples):
    rootset = set(comp)
    r = len(simples)
    if any(scale(2, g) in rootset for g in comp):
        return f"BC{r}"
    norms = {dot(g, g) for g in comp}
    if len(norms) == 1:
        (nm,) = norms
        if r == 1:
            return {Fraction(1): "B1", Fraction(4): "C1"}.get(nm, "A1")
        coords = [[a for a in g if a] for g in comp]
        two_term = all(len(c) == 2 for c in coords)
        has_plus = any(len(c) == 2 and c[0] == c[1] for c in coords)
        return f"D{r}" if two_term and has_plus else f"A{r}"
    short, long_ = min(norms), max(norms)
    if long_ == 4 * short:
        # only reachable for non-reduced sets, handled above
        return f"BC{r}"
    n_short = sum(1 for s in simples if dot(s, s) == short)
    if r == 2:
        return "B2" if short == 1 else "C2"
    return f"B{r}" if n_short == 1 else f"C{r}"


def classify(roots: Iterable[RootVector]) -> str:
    """Type label such as ``"A2"``, ``"BC1"`` or ``"A1+A1"``; ``"A0"`` if empty."""
    roots = list(roots)
    if not roots:
        return "A0"
    labels = []
    for comp in _components(roots):
        pos = [g for g in comp if is_lex_positive(g)]
        simples = _indecomposable(pos)
        labels.append(_label_component(comp, simples))
    return "+".join(sorted(labels))


def _indecomposable(positives):
    pos = set(positives)
    out = []
    for g in positives:
        if not any(sub(g, h) in pos for h in positives if h != g):
            out.append(g)
    return sorted(out, key=_simple_sort_key)


# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class WeightedRootSystem:
    """Restricted root system with multiplicities.

    ``mult`` maps every root (positive and negative) to its multiplicity.
    ``trace_zero`` marks the type-A coordinate convention, where functionals
    are only defined modulo the all-ones vector.
    """

    ambient_dim: int
    mult: Mapping[RootVector, int]
    positives: frozenset
    simples: tuple
    type_label: str
    trace_zero: bool = False

    def __post_init__(self):
        object.__setattr__(self, "mult", dict(self.mult))
        for g, m in self.mult.items():
            if len(g) != self.ambient_dim:
                raise InputError(f"root {format_vector(g)} has wrong dimension")
            if m <= 0:
                raise InputError(f"multiplicity of {format_vector(g)} must be positive")
            neg = scale(-1, g)
            if self.mult.get(neg) != m:
                raise InputError(f"roots not closed under negation at {format_vector(g)}")
        for g in self.positives:
            if scale(-1, g) in self.positives or g not in self.mult:
                raise InputError("positives must pick one root of each +/- pair")
        if len(self.positives) * 2 != len(self.mult):
            raise InputError("positives must cover half the roots")
        if "BC" not in self.type_label:
            for g in self.positives:
                if scale(2, g) in self.mult:
                    raise InputError(f"{self.type_label} must be reduced")
        for g in self.positives:
            coeffs = self.simple_coefficients(g)
            if any(c < 0 or c.denominator != 1 for c in coeffs):
                raise InputError(
                    f"positive root {format_vector(g)} is not a nonnegative "
                    "integer combination of simples")

    @classmethod
    def from_roots(cls, ambient_dim, mult, type_label=None, trace_zero=False):
        """Build a system from a root->multiplicity map, choosing lex-positive
        roots and indecomposable simples."""
        positives = frozenset(g for g in mult if is_lex_positive(g))
        simples = tuple(_indecomposable(sorted(positives)))
        if type_label is None:
            type_label = classify(mult)
        return cls(ambient_dim, mult, positives, simples, type_label, trace_zero)

    @classmethod
    def empty(cls, ambient_dim=0, trace_zero=False):
        return cls(ambient_dim, {}, frozenset(), (), "A0", trace_zero)

    def __eq__(self, other):
        if not isinstance(other, WeightedRootSystem):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim
                and self.mult == other.mult
                and self.positives == other.positives)

    def __hash__(self):
        return hash((self.ambient_dim, frozenset(self.mult.items())))

    def __repr__(self):
        return (f"WeightedRootSystem({self.type_label}, ambient_dim="
                f"{self.ambient_dim}, roots={len(self.mult)})")

    @property
    def rank(self) -> int:
        return len(self.simples)

    @property
    def a_dim(self) -> int:
        """Dimension of the split torus the coordinates describe."""
        return self.ambient_dim - (1 if self.trace_zero and self.ambient_dim else 0)

    @property
    def roots(self):
        return sorted(self.mult, key=_simple_sort_key)

    @cached_property
    def positive_roots(self):
        return sorted(self.positives, key=_simple_sort_key)

    def multiplicity(self, g) -> int:
        return self.mult.get(tuple(g), 0)

    def is_root(self, g) -> bool:
        return tuple(g) in self.mult

    def normalize(self, v) -> RootVector:
        """Canonical representative of a functional in these coordinates."""
        v = tuple(Fraction(a) for a in v)
        return trace_free(v) if self.trace_zero else v

    @cached_property
    def _gram_inverse(self):
        from .linalg import solve
        gram = [[dot(a, b) for b in self.simples] for a in self.simples]
        k = len(gram)
        cols = [solve(gram, [Fraction(int(i == j)) for i in range(k)]) for j in range(k)]
        return [tuple(col[i] for col in cols) for i in range(k)]

    def simple_coefficients(self, g):
        """Coordinates of ``g`` in the basis of simple roots."""
        if not self.simples:
            return ()
        memo = self.__dict__.setdefault("_coeff_memo", {})
        if g not in memo:
            rhs = [dot(g, s) for s in self.simples]
            memo[g] = tuple(dot(row, rhs) for row in self._gram_inverse)
        return memo[g]


# ---------------------------------------------------------------------------
# Standard constructors


def _pm(n, i, j, si, sj):
    v = [Fraction(0)] * n
    v[i] += si
    v[j] += sj
    return tuple(v)


def _with_negatives(pos_mult):
    out = {}
    for g, m in pos_mult.items():
        out[g] = m
        out[scale(-1, g)] = m
    return out


def type_A(n: int, mult: int = 1) -> WeightedRootSystem:
    """A_{n-1} on ``n`` coordinates: roots ``e_i - e_j``."""
    pos = {_pm(n, i, j, 1, -1): mult for i in range(n) for j in range(i + 1, n)}
    simples = tuple(_pm(n, i, i + 1, 1, -1) for i in range(n - 1))
    return WeightedRootSystem(n, _with_negatives(pos), frozenset(pos), simples,
                              f"A{max(n - 1, 0)}", trace_zero=True)


def _long_pairs(m, mult):
    pos = {}
    for i in range(m):
        for j in range(i + 1, m):
            pos[_pm(m, i, j, 1, -1)] = mult
            pos[_pm(m, i, j, 1, 1)] = mult
    return pos


def type_B(m: int, long_mult: int = 1, short_mult: int = 1) -> WeightedRootSystem:
    pos = _long_pairs(m, long_mult)
    for i in range(m):
        pos[unit(m, i)] = short_mult
    simples = tuple(_pm(m, i, i + 1, 1, -1) for i in range(m - 1)) + (unit(m, m - 1),)
    return WeightedRootSystem(m, _with_negatives(pos), frozenset(pos), simples, f"B{m}")


def type_C(m: int, short_mult: int = 1, long_mult: int = 1) -> WeightedRootSystem:
    pos = _long_pairs(m, short_mult)
    for i in range(m):
        pos[unit(m, i, 2)] = long_mult
    simples = tuple(_pm(m, i, i + 1, 1, -1) for i in range(m - 1)) + (unit(m, m - 1, 2),)
    return WeightedRootSystem(m, _with_negatives(pos), frozenset(pos), simples, f"C{m}")


def type_D(m: int, mult: int = 1) -> WeightedRootSystem:
    if m == 1:
        return WeightedRootSystem.empty(1)
    pos = _long_pairs(m, mult)
    simples = tuple(_pm(m, i, i + 1, 1, -1) for i in range(m - 1))
    simples += (_pm(m, m - 2, m - 1, 1, 1),)
    return WeightedRootSystem(m, _with_negatives(pos), frozenset(pos), simples, f"D{m}")


def type_BC(m: int, pair_mult: int, short_mult: int, long_mult: int) -> WeightedRootSystem:
    pos = _long_pairs(m, pair_mult)
    for i in range(m):
        pos[unit(m, i)] = short_mult
        pos[unit(m, i, 2)] = long_mult
    simples = tuple(_pm(m, i, i + 1, 1, -1) for i in range(m - 1)) + (unit(m, m - 1),)
    return WeightedRootSystem(m, _with_negatives(pos), frozenset(pos), simples, f"BC{m}")


# ---------------------------------------------------------------------------
# Real forms

FAMILIES = ("SL", "GL", "SU", "U", "SO_pq", "O_pq", "Sp_pq", "SpF", "SOC", "OC", "SOstar")
_FIXED_FIELD = {"SO_pq": "R", "O_pq": "R", "Sp_pq": "H", "SOC": "C", "OC": "C",
                "SOstar": "H", "U": "C"}
_ALLOWED_FIELDS = {"SL": "RCH", "GL": "RC", "SU": "RCH", "U": "C", "SO_pq": "R",
                   "O_pq": "R", "Sp_pq": "H", "SpF": "RC", "SOC": "C", "OC": "C",
                   "SOstar": "H"}
_FIELD_DIM = {"R": 1, "C": 2, "H": 4}


@dataclass(frozen=True)
class RealFormDescriptor:
    """A classical real form.

    ``params`` is ``(n,)`` for SL, GL, SpF, SOC, OC and SOstar (SOstar n means
    SO*(2n)), and ``(p, q)`` for the indefinite unitary families.  SU over R
    is SO(p, q) and SU over H is Sp(p, q).
    """

    family: str
    field: str | None = None
    params: tuple = ()

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UnsupportedFamily(f"unknown family {self.family!r}")
        fld = self.field or _FIXED_FIELD.get(self.family)
        if fld is None:
            raise InputError(f"family {self.family} needs a field (R, C or H)")
        if fld not in _ALLOWED_FIELDS[self.family]:
            raise UnsupportedFamily(f"family {self.family} is not defined over {fld}")
        object.__setattr__(self, "field", fld)
        params = tuple(int(x) for x in self.params)
        object.__setattr__(self, "params", params)
        want = 2 if self.kind == "unitary" else 1
        if len(params) != want:
            raise InputError(f"family {self.family} takes {want} integer parameter(s)")
        if any(x < 0 for x in params):
            raise InputError("parameters must be nonnegative")
        if self.family in ("O_pq", "OC") and sum(params) % 2 == 0:
            raise InputError("orthogonal O-families require odd total dimension")

    @property
    def kind(self) -> str:
        return {"SL": "linear", "GL": "linear", "SU": "unitary", "U": "unitary",
                "SO_pq": "unitary", "O_pq": "unitary", "Sp_pq": "unitary",
                "SpF": "symplectic", "SOC": "complex_orthogonal",
                "OC": "complex_orthogonal", "SOstar": "sostar"}[self.family]

    @property
    def field_dim(self) -> int:
        return _FIELD_DIM[self.field]

    @property
    def matrix_size(self) -> int:
        """Size of the complex matrices realizing the complexification."""
        h = 2 if self.field == "H" else 1
        if self.kind == "linear":
            return self.params[0] * h
        if self.kind == "unitary":
            return sum(self.params) * h
        if self.kind == "symplectic":
            return 2 * self.params[0]
        if self.kind == "sostar":
            return 2 * self.params[0]
        return self.params[0]

    @property
    def is_semisimple(self) -> bool:
        return self.family not in ("GL", "U")

    def label(self) -> str:
        p = self.params
        return {
            "linear": lambda: f"{'S' if self.family == 'SL' else 'G'}L({p[0]},{self.field})",
            "unitary": lambda: {"R": f"SO({p[0]},{p[1]})", "C": f"SU({p[0]},{p[1]})",
                                "H": f"Sp({p[0]},{p[1]})"}[self.field]
            if self.family not in ("U", "O_pq") else f"{self.family[0]}({p[0]},{p[1]})",
            "symplectic": lambda: f"Sp({p[0]},{self.field})",
            "complex_orthogonal": lambda: f"{self.family[:-1]}({p[0]},C)",
            "sostar": lambda: f"SO*({2 * p[0]})",
        }[self.kind]()


def build_restricted_system(desc: RealFormDescriptor) -> WeightedRootSystem:
    """Catalog restricted root system with multiplicities for ``desc``."""
    d = desc.field_dim
    kind = desc.kind
    if kind == "linear":
        n = desc.params[0]
        if n < 2:
            raise RankZero(f"{desc.label()} has no split part")
        return type_A(n, d)
    if kind == "unitary":
        p, q = desc.params
        m, mu = min(p, q), abs(p - q)
        if m == 0:
            raise RankZero(f"{desc.label()} is compact")
        if desc.field == "R":
            if mu == 0:
                return type_D(m, 1)
            return type_B(m, 1, mu)
        if mu == 0:
            return type_C(m, d, d - 1)
        return type_BC(m, d, d * mu, d - 1)
    if kind == "symplectic":
        n = desc.params[0]
        if n < 1:
            raise RankZero("Sp(0) is trivial")
        return type_C(n, d, d)
    if kind == "complex_orthogonal":
        n = desc.params[0]
        m = n // 2
        if m == 0:
            raise RankZero(f"{desc.label()} has no split part")
        if n % 2:
            return type_B(m, 2, 2)
        return type_D(m, 2)
    n = desc.params[0]
    m = n // 2
    if m == 0:
        raise RankZero(f"{desc.label()} is compact")
    if n % 2:
        return type_BC(m, 4, 4, 1)
    return type_C(m, 4, 1)


# ---------------------------------------------------------------------------
# Operations


def rho(sys: WeightedRootSystem) -> RootVector:
    """Half the multiplicity-weighted sum of the positive roots."""
    total = zero(sys.ambient_dim)
    for g in sys.positives:
        total = add(total, scale(sys.mult[g], g))
    return scale(Fraction(1, 2), total)


class RhoProdRow(NamedTuple):
    simple: RootVector
    lhs: Fraction
    rhs: int
    equal: bool


def rho_prod_check(sys: WeightedRootSystem) -> list:
    """Compare ``2<rho, psi>/<psi, psi>`` with ``mult(psi) + 2 mult(2 psi)``
    for every simple root ``psi``."""
    r = rho(sys)
    out = []
    for s in sys.simples:
        lhs = 2 * dot(r, s) / dot(s, s)
        rhs = sys.multiplicity(s) + 2 * sys.multiplicity(scale(2, s))
        out.append(RhoProdRow(s, lhs, rhs, lhs == rhs))
    return out


def reflect(v, root) -> RootVector:
    nn = dot(root, root)
    if not nn:
        raise ZeroRoot("cannot reflect in the zero vector")
    return sub(tuple(v), scale(2 * dot(v, root) / nn, root))


class DominanceResult(NamedTuple):
    dominant: RootVector
    word: tuple  # 1-based simple-root indices, applied left to right
    length: int
    singular_root: RootVector | None

    @property
    def singular(self) -> bool:
        return self.singular_root is not None


def singular_root(v, sys: WeightedRootSystem):
    """First positive root orthogonal to ``v``, or ``None``."""
    for g in sys.positive_roots:
        if not dot(v, g):
            return g
    return None


def make_dominant(v, sys: WeightedRootSystem) -> DominanceResult:
    """Reflect ``v`` into the closed dominant chamber.

    Always applies the lowest-index simple reflection that has a negative
    pairing, so words are reproducible.
    """
    v = tuple(Fraction(a) for a in v)
    sing = singular_root(v, sys)
    word = []
    while True:
        for i, s in enumerate(sys.simples):
            if dot(v, s) < 0:
                v = reflect(v, s)
                word.append(i + 1)
                break
        else:
            break
    return DominanceResult(v, tuple(word), len(word), sing)


def inversion_count(v, sys: WeightedRootSystem) -> int:
    return sum(1 for g in sys.positives if dot(v, g) < 0)


def weyl_orbit_word_apply(v, sys: WeightedRootSystem, word) -> RootVector:
    for i in word:
        v = reflect(v, sys.simples[i - 1])
    return v
