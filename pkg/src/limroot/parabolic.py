"""Real parabolic subalgebras and the rho-restriction test for embeddings."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .errors import DiagramMismatch, InputError
from .linalg import nullspace, rank, solve
from .roots import WeightedRootSystem, classify, dot, is_zero, rho
from .satake import (SatakeDiagram, delete_classes, drop_black_components,
                     isomorphic, restriction_classes)


def _check_phi(sys: WeightedRootSystem, phi) -> tuple:
    phi = tuple(sorted(set(int(i) for i in phi)))
    for i in phi:
        if not 1 <= i <= sys.rank:
            raise InputError(f"simple-root index {i} is outside 1..{sys.rank}")
    return phi


@dataclass(frozen=True)
class ParabolicSplit:
    phi: tuple
    a_phi_equations: tuple  # functionals psi with psi(xi) = 0 on a_phi
    m_phi_roots: dict
    n_phi_roots: dict
    levi_rank: int


def split(sys: WeightedRootSystem, phi) -> ParabolicSplit:
    """Levi and nilradical root data of the parabolic attached to ``phi``."""
    phi = _check_phi(sys, phi)
    inside = {i - 1 for i in phi}
    m_roots, n_roots = {}, {}
    for g, mult in sys.mult.items():
        coeffs = sys.simple_coefficients(g)
        if all(not c or i in inside for i, c in enumerate(coeffs)):
            m_roots[g] = mult
        elif g not in sys.positives:
            n_roots[g] = mult
    eqs = tuple(sys.simples[i - 1] for i in phi)
    return ParabolicSplit(phi, eqs, m_roots, n_roots, len(phi))


def levi_system(sys: WeightedRootSystem, phi) -> WeightedRootSystem:
    sp = split(sys, phi)
    positives = frozenset(g for g in sp.m_phi_roots if g in sys.positives)
    simples = sp.a_phi_equations
    return WeightedRootSystem(sys.ambient_dim, sp.m_phi_roots, positives, simples,
                              classify(sp.m_phi_roots), sys.trace_zero)


# ---------------------------------------------------------------------------


def _apply(matrix, v):
    return tuple(dot(row, v) for row in matrix)


def _transpose(matrix, ncols):
    return [tuple(row[j] for row in matrix) for j in range(ncols)]


@dataclass(frozen=True, eq=False)
class AEmbedding:
    """Split-torus data of an embedding of a lower group into an upper one.

    ``restriction`` has one row per lower ambient coordinate and sends an
    upper functional to its restriction.  ``complement`` spans the part of
    the upper torus that should centralize the lower group, as upper
    ambient vectors; a functional ``g`` vanishes on it when ``g . c = 0``.
    """

    lower: WeightedRootSystem
    upper: WeightedRootSystem
    restriction: tuple
    complement: tuple = ()

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in r) for r in self.restriction)
        if len(rows) != self.lower.ambient_dim or any(
                len(r) != self.upper.ambient_dim for r in rows):
            raise InputError("restriction matrix has the wrong shape")
        object.__setattr__(self, "restriction", rows)
        object.__setattr__(self, "complement", tuple(
            tuple(Fraction(x) for x in c) for c in self.complement))

    @classmethod
    def from_torus_map(cls, lower, upper, iota, complement=()):
        """Build from the torus map ``iota``: one upper vector per lower coordinate."""
        return cls(lower, upper, tuple(tuple(c) for c in iota), complement)

    @property
    def complement_dim(self) -> int:
        return len(self.complement)

    def restrict(self, g):
        return self.lower.normalize(_apply(self.restriction, g))

    def torus_image(self, xi):
        """Push a lower torus element (ambient vector) into the upper torus."""
        cols = _transpose(self.restriction, self.upper.ambient_dim)
        return tuple(dot(c, xi) for c in cols)

    def vanishes_on_complement(self, g) -> bool:
        return all(not dot(g, c) for c in self.complement)

    @property
    def hypothesis_holds(self) -> bool:
        return hypothesis_holds(self)

    def upper_roots_over_complement(self):
        """Upper roots vanishing on the complement, keyed by their restriction."""
        out = {}
        for g, m in self.upper.mult.items():
            if self.vanishes_on_complement(g):
                out.setdefault(self.restrict(g), []).append((g, m))
        return out


def torus_rank(e: AEmbedding) -> int:
    """Dimension of the image of the lower split torus in the upper one."""
    basis = _torus_basis(e.lower)
    images = [e.torus_image(x) for x in basis]
    if e.upper.trace_zero:
        images = [e.upper.normalize(v) for v in images]
    return rank([{j: v for j, v in enumerate(img) if v} for img in images])


def _torus_basis(sys: WeightedRootSystem):
    n = sys.ambient_dim
    if sys.trace_zero and n:
        return [tuple(Fraction(int(j == k) - int(j == n - 1)) for j in range(n))
                for k in range(n - 1)]
    return [tuple(Fraction(int(j == k)) for j in range(n)) for k in range(n)]


def hypothesis_holds(e: AEmbedding) -> bool:
    """Whether the upper torus is the direct sum of the image and the complement."""
    comp = list(e.complement)
    if e.upper.trace_zero:
        comp = [e.upper.normalize(v) for v in comp]
    images = [e.torus_image(x) for x in _torus_basis(e.lower)]
    if e.upper.trace_zero:
        images = [e.upper.normalize(v) for v in images]
    total = rank([{j: v for j, v in enumerate(b) if v} for b in images + comp])
    return total == torus_rank(e) + len(comp) == e.upper.a_dim


class RhoWitness(NamedTuple):
    simple: tuple       # lower simple root psi, used as a torus element
    image: tuple        # its image in the upper torus
    upper_value: Fraction
    lower_value: Fraction


def rho_restriction_witnesses(e: AEmbedding) -> list:
    """Pair both rho's against each lower simple root and its image."""
    r_up, r_lo = rho(e.upper), rho(e.lower)
    out = []
    for s in e.lower.simples:
        img = e.torus_image(s)
        out.append(RhoWitness(s, img, dot(r_up, img), dot(r_lo, s)))
    return out


def rho_restriction_holds(e: AEmbedding) -> bool:
    return e.restrict(rho(e.upper)) == e.lower.normalize(rho(e.lower))


def centralizer_mismatches(e: AEmbedding) -> list:
    """Functionals where upper multiplicities over the complement differ from lower ones."""
    over = e.upper_roots_over_complement()
    out = []
    for gbar in sorted(set(over) | set(e.lower.mult)):
        up = sum(m for _, m in over.get(gbar, []))
        lo = e.lower.multiplicity(gbar)
        if is_zero(gbar):
            if up:
                out.append((gbar, up, 0))
            continue
        if up != lo:
            out.append((gbar, up, lo))
    return out


def centralizer_condition(e: AEmbedding) -> bool:
    return not centralizer_mismatches(e)


def phi_from_complement(e: AEmbedding) -> tuple:
    """Upper simple roots (1-based) that vanish on the complement."""
    return tuple(i for i, s in enumerate(e.upper.simples, start=1)
                 if e.vanishes_on_complement(s))


def candidate_component(e: AEmbedding, upper_diag: SatakeDiagram) -> SatakeDiagram:
    phi = set(phi_from_complement(e))
    drop = [i for i in range(1, e.upper.rank + 1) if i not in phi]
    return delete_classes(upper_diag, drop)


def is_parabolic_component(e: AEmbedding, lower_diag: SatakeDiagram,
                           upper_diag: SatakeDiagram) -> bool:
    """Diagram test: is the lower diagram, modulo black-only pieces, the
    deletion of the upper diagram cut out by the complement?"""
    for diag, sys, name in ((lower_diag, e.lower, "lower"), (upper_diag, e.upper, "upper")):
        if len(restriction_classes(diag)) != sys.rank:
            raise DiagramMismatch(
                f"{name} diagram has {len(restriction_classes(diag))} restriction "
                f"classes but the {name} system has rank {sys.rank}")
    cand = drop_black_components(candidate_component(e, upper_diag))
    return isomorphic(drop_black_components(lower_diag), cand)


@dataclass
class CriteriaReport:
    rho_restriction: bool
    centralizer: bool
    parabolic_component: bool | None
    hypothesis: bool
    witnesses: list = field(default_factory=list)

    @property
    def agree(self) -> bool:
        vals = {self.rho_restriction, self.centralizer}
        if self.parabolic_component is not None:
            vals.add(self.parabolic_component)
        return len(vals) == 1


def evaluate(e: AEmbedding, lower_diag=None, upper_diag=None) -> CriteriaReport:
    comp = None
    if lower_diag is not None and upper_diag is not None:
        comp = is_parabolic_component(e, lower_diag, upper_diag)
    return CriteriaReport(rho_restriction_holds(e), centralizer_condition(e), comp,
                          hypothesis_holds(e), rho_restriction_witnesses(e))


# ---------------------------------------------------------------------------


def embedding_from_split(sys: WeightedRootSystem, phi) -> AEmbedding:
    """The Levi of ``phi`` inside ``sys``, in shared coordinates."""
    phi = _check_phi(sys, phi)
    lower = levi_system(sys, phi)
    n = sys.ambient_dim
    basis = [sys.simples[i - 1] for i in phi]
    gram = [[dot(a, b) for b in basis] for a in basis]
    # orthogonal projection onto span(phi)
    proj = []
    for j in range(n):
        ej = tuple(Fraction(int(k == j)) for k in range(n))
        coeffs = solve(gram, [dot(b, ej) for b in basis]) if basis else ()
        proj.append(tuple(sum((c * b[k] for c, b in zip(coeffs, basis)), Fraction(0))
                          for k in range(n)))
    restriction = _transpose(proj, n)
    rows = [{k: v for k, v in enumerate(b) if v} for b in basis]
    if sys.trace_zero and n:
        rows.append({k: Fraction(1) for k in range(n)})
    complement = [tuple(v.get(k, Fraction(0)) for k in range(n))
                  for v in nullspace(rows, range(n))]
    return AEmbedding(lower, sys, tuple(restriction), tuple(complement))


def levi_diagram(diag: SatakeDiagram, rank_: int, phi) -> SatakeDiagram:
    keep = set(phi)
    return delete_classes(diag, [i for i in range(1, rank_ + 1) if i not in keep])
