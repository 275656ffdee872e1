"""Brute-force restricted roots from explicit matrix models.

Each real form is realized as the Lie algebra of ``N x N`` matrices over
R, C or H that preserve a split invariant form (or satisfy a trace
condition).  The form's Gram matrix is anti-diagonal on hyperbolic pairs,
so the split torus is a real diagonal and every computation stays in Q.

Matrix entries are quaternions stored as 4-tuples ``(re, i, j, k)``; complex
and real entries just leave the tail at zero.  Unknowns are the real
components ``A[a][b]^w`` of a general matrix; the algebra is the nullspace
of the linear constraints, computed one joint weight block at a time.
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NonRationalEigenvalue, OracleMismatch, RankZero, SizeBound
from .linalg import nullspace, solve
from .roots import (RealFormDescriptor, WeightedRootSystem, _indecomposable,
                    classify, is_lex_positive, scale, unit, zero)

DEFAULT_BOUND = 8

_Q0 = (Fraction(0),) * 4
_ONE = (Fraction(1), Fraction(0), Fraction(0), Fraction(0))
_I = (Fraction(0), Fraction(1), Fraction(0), Fraction(0))
_UNITS = tuple(tuple(Fraction(int(i == w)) for i in range(4)) for w in range(4))


def qmul(p, q):
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)


def qconj(p):
    return (p[0], -p[1], -p[2], -p[3])


def qadd(p, q):
    return tuple(x + y for x, y in zip(p, q))


def _real(c):
    return (Fraction(c), Fraction(0), Fraction(0), Fraction(0))


def size_bound() -> int:
    raw = os.environ.get("LIMROOT_ORACLE_BOUND")
    return int(raw) if raw else DEFAULT_BOUND


# ---------------------------------------------------------------------------
# Model layout per family


@dataclass
class _Layout:
    n: int                 # number of F-coordinates
    f: int                 # real dimension of F
    positions: list        # ambient weight of each diagonal slot
    ambient: int
    trace_zero: bool
    form: dict | None      # sparse Gram matrix {(a, b): quaternion}
    form_kind: str | None  # "sesqui" (A*S + SA) or "bilinear" (A^T S + SA)
    trace_parts: tuple     # components of tr(A) forced to vanish
    a_basis: list          # real diagonal vectors of length n


def _split_layout(n, m, middle_sign, pair_sign=None, middle_entry=None):
    """Positions and Gram matrix for ``v_1..v_m, W, v'_m..v'_1``."""
    positions = []
    form = {}
    for a in range(n):
        b = n - 1 - a
        if a < m:
            positions.append(unit(m, a))
        elif a >= n - m:
            positions.append(unit(m, b, -1))
        else:
            positions.append(zero(m))
        if a < m or a >= n - m:
            s = 1 if pair_sign is None or a < b else -1
            form[(a, b)] = _real(s)
        elif middle_entry is not None:
            form[(a, a)] = middle_entry
        else:
            form[(a, a)] = _real(middle_sign)
    a_basis = []
    for k in range(m):
        h = [Fraction(0)] * n
        h[k], h[n - 1 - k] = Fraction(1), Fraction(-1)
        a_basis.append(h)
    return positions, form, a_basis


def _layout(desc: RealFormDescriptor) -> _Layout:
    f = desc.field_dim
    kind = desc.kind
    if kind == "linear":
        n = desc.params[0]
        positions = [unit(n, a) for a in range(n)]
        if desc.family == "SL":
            a_basis = []
            for k in range(n - 1):
                h = [Fraction(0)] * n
                h[k], h[n - 1] = Fraction(1), Fraction(-1)
                a_basis.append(h)
            parts = {"R": (0,), "C": (0, 1), "H": (0,)}[desc.field]
        else:
            a_basis = [[Fraction(int(i == k)) for i in range(n)] for k in range(n)]
            parts = ()
        return _Layout(n, f, positions, n, True, None, None, parts, a_basis)
    if kind == "unitary":
        p, q = desc.params
        n, m = p + q, min(p, q)
        positions, form, a_basis = _split_layout(n, m, 1 if p >= q else -1)
        parts = (1,) if desc.family == "SU" and desc.field == "C" else ()
        return _Layout(n, f, positions, m, False, form, "sesqui", parts, a_basis)
    if kind == "symplectic":
        n = desc.params[0]
        positions, form, a_basis = _split_layout(2 * n, n, 1, pair_sign=True)
        fk = "sesqui" if desc.field == "R" else "bilinear"
        return _Layout(2 * n, f, positions, n, False, form, fk, (), a_basis)
    if kind == "complex_orthogonal":
        n = desc.params[0]
        positions, form, a_basis = _split_layout(n, n // 2, 1)
        return _Layout(n, f, positions, n // 2, False, form, "bilinear", (), a_basis)
    n = desc.params[0]
    positions, form, a_basis = _split_layout(n, n // 2, 1, pair_sign=True, middle_entry=_I)
    return _Layout(n, f, positions, n // 2, False, form, "sesqui", (), a_basis)


# ---------------------------------------------------------------------------
# Model


@dataclass
class MatrixAlgebraModel:
    """Explicit matrix realization of a real form.

    ``basis`` holds sparse F-matrices ``{(a, b): quaternion}``; ``blocks``
    groups the basis by joint ``ad(a)``-eigenvalue, given as the tuple of
    eigenvalues on ``a_basis``.
    """

    desc: RealFormDescriptor
    layout: _Layout
    blocks: dict
    constraint_rows: list = field(repr=False)
    block_unknowns: dict = field(repr=False)

    @property
    def real_dim(self) -> int:
        return sum(len(v) for v in self.blocks.values())

    @property
    def basis(self) -> list:
        return [x for key in sorted(self.blocks) for x in self.blocks[key]]

    @property
    def a_basis(self) -> list:
        """Split torus basis as sparse diagonal matrices."""
        return [{(a, a): _real(h[a]) for a in range(self.layout.n) if h[a]}
                for h in self.layout.a_basis]

    @property
    def rank(self) -> int:
        return len(self.layout.a_basis)

    def realify(self, x) -> list:
        """Dense real matrix of ``x`` acting on ``F^n`` viewed as ``R^{nf}``."""
        n, f = self.layout.n, self.layout.f
        out = [[Fraction(0)] * (n * f) for _ in range(n * f)]
        for (a, b), q in x.items():
            for u in range(f):
                prod = qmul(q, _UNITS[u])
                for t in range(f):
                    out[a * f + t][b * f + u] = prod[t]
        return out

    # -- checks ------------------------------------------------------------

    def satisfies_constraints(self, x) -> bool:
        vec = _encode(x, self.layout)
        return all(not sum((c * vec.get(k, 0) for k, c in row.items()), Fraction(0))
                   for row in self.constraint_rows)

    def bracket_closure_check(self, samples: int = 20, seed: int = 0) -> bool:
        rng = random.Random(seed)
        basis = self.basis
        for _ in range(samples):
            x, y = rng.choice(basis), rng.choice(basis)
            if not self.satisfies_constraints(commutator(x, y)):
                return False
        return True

    def a_is_valid(self) -> bool:
        """Torus elements lie in the algebra, commute, and are theta-negative."""
        hs = self.a_basis
        if not all(self.satisfies_constraints(h) for h in hs):
            return False
        for h in hs:
            if theta(h) != {k: tuple(-c for c in v) for k, v in h.items()}:
                return False
            for g in hs:
                if commutator(h, g):
                    return False
        return True

    def _zero_block_with(self, sign) -> int:
        key = (Fraction(0),) * self.rank
        unknowns = self.block_unknowns.get(key, [])
        rows = [r for r in self.constraint_rows if r and next(iter(r)) in set(unknowns)]
        lay = self.layout
        extra = []
        for k in unknowns:
            a, b, w = _decode(k, lay)
            partner = _index(b, a, w, lay)
            s = 1 if w == 0 else -1
            extra.append({k: Fraction(1), partner: Fraction(sign * s)}
                         if partner != k else {k: Fraction(1 + sign * s)})
        extra = [{c: v for c, v in r.items() if v} for r in extra]
        return len(nullspace(rows + extra, unknowns))

    def m_dimension(self) -> int:
        """Dimension of the centralizer of the torus in the compact part."""
        return self._zero_block_with(+1)

    def a_is_maximal(self) -> bool:
        return self._zero_block_with(-1) == self.rank


def _index(a, b, w, lay):
    return (a * lay.n + b) * lay.f + w


def _decode(k, lay):
    w = k % lay.f
    ab = k // lay.f
    return ab // lay.n, ab % lay.n, w


def _encode(x, lay):
    out = {}
    for (a, b), q in x.items():
        for w in range(lay.f):
            if q[w]:
                out[_index(a, b, w, lay)] = q[w]
    return out


def matmul(x, y):
    out = {}
    for (a, c), p in x.items():
        for (c2, b), q in y.items():
            if c == c2:
                out[(a, b)] = qadd(out.get((a, b), _Q0), qmul(p, q))
    return {k: v for k, v in out.items() if any(v)}


def commutator(x, y):
    xy, yx = matmul(x, y), matmul(y, x)
    out = dict(xy)
    for k, v in yx.items():
        out[k] = qadd(out.get(k, _Q0), tuple(-c for c in v))
    return {k: v for k, v in out.items() if any(v)}


def theta(x):
    """Cartan involution: minus the conjugate transpose."""
    return {(b, a): tuple(-c for c in qconj(q)) for (a, b), q in x.items()}


# ---------------------------------------------------------------------------


def _constraints(lay: _Layout):
    n, f = lay.n, lay.f

    def entry(a, b):
        return {_index(a, b, w, lay): _UNITS[w] for w in range(f)}

    rows = []
    if lay.form is not None:
        by_row, by_col = {}, {}
        for (a, c), s in lay.form.items():
            by_row.setdefault(a, []).append((c, s))
            by_col.setdefault(c, []).append((a, s))
        for a in range(n):
            for b in range(n):
                form = {}
                # (A' S)_ab with A' the adjoint or transpose
                for c, s in by_col.get(b, []):
                    for k, u in entry(c, a).items():
                        u = qconj(u) if lay.form_kind == "sesqui" else u
                        form[k] = qadd(form.get(k, _Q0), qmul(u, s))
                for c, s in by_row.get(a, []):
                    for k, u in entry(c, b).items():
                        form[k] = qadd(form.get(k, _Q0), qmul(s, u))
                for t in range(f):
                    row = {k: q[t] for k, q in form.items() if q[t]}
                    if row:
                        rows.append(row)
    for t in lay.trace_parts:
        rows.append({_index(a, a, t, lay): Fraction(1) for a in range(n)})
    return rows


def realize(desc: RealFormDescriptor, bound: int | None = None) -> MatrixAlgebraModel:
    bound = size_bound() if bound is None else bound
    if desc.matrix_size > bound:
        raise SizeBound(f"matrix size {desc.matrix_size} exceeds oracle bound {bound}")
    lay = _layout(desc)
    if not lay.a_basis:
        raise RankZero(f"{desc.label()} has no split part")
    rows = _constraints(lay)

    def weight(k):
        a, b, _ = _decode(k, lay)
        return tuple(h[a] - h[b] for h in lay.a_basis)

    block_unknowns = {}
    for a in range(lay.n):
        for b in range(lay.n):
            for w in range(lay.f):
                k = _index(a, b, w, lay)
                block_unknowns.setdefault(weight(k), []).append(k)
    block_rows = {}
    for row in rows:
        ws = {weight(k) for k in row}
        if len(ws) != 1:
            raise OracleMismatch("constraint mixes joint weight spaces")
        block_rows.setdefault(ws.pop(), []).append(row)

    blocks = {}
    for key, unknowns in block_unknowns.items():
        vecs = nullspace(block_rows.get(key, []), unknowns)
        if not vecs:
            continue
        mats = []
        for v in vecs:
            x = {}
            for k, c in v.items():
                a, b, w = _decode(k, lay)
                q = list(x.get((a, b), _Q0))
                q[w] += c
                x[(a, b)] = tuple(q)
            mats.append(x)
        blocks[key] = mats
    model = MatrixAlgebraModel(desc, lay, {}, rows, block_unknowns)
    # recompute eigenvalues by actually applying ad(h) to each basis vector
    hs = model.a_basis
    for key, mats in blocks.items():
        for x in mats:
            lam = tuple(_eigenvalue(commutator(h, x), x) for h in hs)
            if lam != key:
                raise OracleMismatch("joint eigenvalue disagrees with block weight")
    model.blocks = blocks
    return model


def _eigenvalue(y, x):
    (k0, q0), = list(x.items())[:1]
    t = next(t for t in range(4) if q0[t])
    lam = y.get(k0, _Q0)[t] / q0[t]
    for k in set(x) | set(y):
        lhs = y.get(k, _Q0)
        rhs = tuple(lam * c for c in x.get(k, _Q0))
        if lhs != rhs:
            raise NonRationalEigenvalue("basis vector is not an ad-eigenvector")
    return lam


def restricted_roots(model: MatrixAlgebraModel) -> WeightedRootSystem:
    """Read off roots and multiplicities from the joint eigenspaces."""
    lay = model.layout
    matrix = _ambient_matrix(lay)
    mult, positives = {}, set()
    for key, mats in model.blocks.items():
        if not any(key):
            continue
        rhs = list(key)
        m = matrix
        if lay.trace_zero and len(key) < lay.ambient:
            m = matrix + [[Fraction(1)] * lay.ambient]
            rhs = rhs + [Fraction(0)]
        try:
            g = solve(m, rhs)
        except ValueError as exc:
            raise OracleMismatch(f"cannot express eigenvalue {key}: {exc}") from exc
        mult[g] = len(mats)
        if is_lex_positive(key):
            positives.add(g)
    for g, m_ in mult.items():
        if mult.get(scale(-1, g)) != m_:
            raise OracleMismatch("eigenspace dimensions are not symmetric under negation")
    simples = tuple(_indecomposable(sorted(positives)))
    return WeightedRootSystem(lay.ambient, mult, frozenset(positives), simples,
                              classify(mult), lay.trace_zero)


def _ambient_matrix(lay: _Layout):
    """Row k is the ambient vector c with ``<gamma, c> = gamma(h_k)``."""
    rows = []
    for h in lay.a_basis:
        row = [Fraction(0)] * lay.ambient
        for a in range(lay.n):
            pos = lay.positions[a]
            for j, c in enumerate(pos):
                if c == 1:
                    row[j] = h[a]
        rows.append(row)
    return rows


def compare_with_catalog(desc: RealFormDescriptor, bound: int | None = None):
    """Return ``(oracle_system, catalog_system, differences)``."""
    from .roots import build_restricted_system, format_vector
    model = realize(desc, bound)
    got = restricted_roots(model)
    want = build_restricted_system(desc)
    diffs = []
    if got.ambient_dim != want.ambient_dim:
        diffs.append(f"ambient dimension {got.ambient_dim} != {want.ambient_dim}")
    for g in sorted(set(got.mult) | set(want.mult)):
        a, b = got.mult.get(g, 0), want.mult.get(g, 0)
        if a != b:
            diffs.append(f"root {format_vector(g)}: oracle {a}, catalog {b}")
    if got.positives != want.positives:
        diffs.append("positive systems differ")
    return got, want, diffs
