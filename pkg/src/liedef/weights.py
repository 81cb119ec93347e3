"""Weights of solvable-algebra modules by the constructive common-eigenvector
recursion.

The recursion is the classical one: split off a codimension-one ideal
containing the derived subalgebra, take its joint eigenspace, and extend the
character by an eigenvalue of the leftover direction acting on that space.
The invariance of the eigenspace under the whole algebra (the trace argument
behind Lie's theorem, valid in characteristic zero) is not taken on faith: it
is rechecked on every restriction, so misuse on a non-solvable action fails
loudly instead of returning garbage.

Everything runs over the fixed tower Q < Q(i).  When a needed eigenvalue
lives outside it, the computation returns Indeterminate rather than guessing.
Characters are value rows against the acting algebra's basis: char[j] is the
character evaluated on basis element j.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import Indeterminate, InputError, InternalCheckError
from .lie import LieAlgebra
from .linalg import (Mat, char_poly, coords_in_basis, inverse, is_zero_vec,
                     kernel, reduce_against, span_basis)
from .poly import gaussian_roots
from .scalars import gauss


@dataclass(frozen=True)
class WeightEntry:
    values: tuple          # GaussRat value on each basis element of the algebra
    multiplicity: int
    real: bool


@dataclass(frozen=True)
class WeightTable:
    algebra_dim: int
    module_dim: int
    entries: tuple

    def all_real(self) -> bool:
        return all(e.real for e in self.entries)

    def nonreal(self):
        return [e for e in self.entries if not e.real]

    def is_zero(self) -> bool:
        return all(all(not v for v in e.values) for e in self.entries)


def _complete_hyperplane(alg: LieAlgebra):
    """A codim-1 ideal containing [g,g] (as rref rows), plus a leftover basis
    direction.  Any hyperplane above the derived subalgebra is an ideal."""
    derived = alg.bracket_span(alg.basis(), alg.basis())
    if len(derived) >= alg.dim:
        raise InputError("acting algebra is not solvable")
    rows = list(derived)
    for i in range(alg.dim):
        if len(rows) == alg.dim - 1:
            break
        cand = alg.basis_vector(i)
        pivots = [next(j for j, c in enumerate(r) if c) for r in rows]
        if not is_zero_vec(reduce_against(rows, pivots, cand)):
            rows = span_basis(rows + [cand])
    pivots = [next(j for j, c in enumerate(r) if c) for r in rows]
    z = None
    for i in range(alg.dim):
        cand = alg.basis_vector(i)
        if not is_zero_vec(reduce_against(rows, pivots, cand)):
            z = cand
            break
    if z is None:
        raise InternalCheckError("hyperplane completion failed")
    return rows, z


def _restrict(m: Mat, basis):
    cols = []
    for v in basis:
        c = coords_in_basis(basis, m @ v)
        if c is None:
            raise InternalCheckError(
                "joint eigenspace is not invariant; the action is not from a "
                "solvable family")
        cols.append(c)
    return Mat.from_cols(cols)


def _action_mat(mats, coeffs):
    out = None
    for c, m in zip(coeffs, mats):
        if not c:
            continue
        term = m * c
        out = term if out is None else out + term
    if out is None:
        return mats[0] * Fraction(0)
    return out


def _pick_root(b: Mat, real_rational_only: bool):
    """(status, value) with status one of ok / nonreal / indeterminate."""
    roots, _ = gaussian_roots(char_poly(b))
    roots.sort(key=lambda rm: (rm[0].re, rm[0].im))
    if real_rational_only:
        for lam, _ in roots:
            if lam.is_real():
                return "ok", lam
        for lam, _ in roots:
            if not lam.is_real():
                return "nonreal", lam
        return "indeterminate", None
    if roots:
        return "ok", roots[0][0]
    return "indeterminate", None


def common_eigenspace(alg: LieAlgebra, mats, space, real_rational_only=False,
                      lift=None):
    """One joint character of the action and its full common eigenspace.

    space is a basis of an invariant subspace of the module.  Returns a
    tagged tuple: ("ok", char_row, eigenspace_basis), ("nonreal", element,
    eigenvalue) with the element in the top-level algebra's coordinates, or
    ("indeterminate", reason, None).
    """
    if lift is None:
        lift = Mat.identity(alg.dim)
    if alg.dim == 0:
        return "ok", (), list(space)
    if not space:
        raise InternalCheckError("empty module in eigenvector recursion")
    hyp, z = _complete_hyperplane(alg)
    if hyp:
        sub, incl = alg.subalgebra(hyp)
        sub_mats = [_action_mat(mats, row) for row in incl]
        sub_lift = Mat.from_cols([lift @ row for row in incl])
        res = common_eigenspace(sub, sub_mats, space, real_rational_only,
                                lift=sub_lift)
        if res[0] != "ok":
            return res
        _, char0, w0 = res
    else:
        char0, w0 = (), list(space)
    mz = _action_mat(mats, z)
    b = _restrict(mz, w0)
    status, lam = _pick_root(b, real_rational_only)
    if status == "nonreal":
        return "nonreal", lift @ z, lam
    if status == "indeterminate":
        return "indeterminate", (
            "an eigenvalue of the action lies outside Q(i), or outside Q on "
            "a direction that must stay rational"), None
    shifted = b - lam * Mat.identity(len(w0))
    eig_coords = kernel(shifted)
    if not eig_coords:
        raise InternalCheckError("chosen eigenvalue has no eigenvector")
    eig = []
    for k in eig_coords:
        v = [gauss(0)] * len(space[0])
        for coeff, vec in zip(k, w0):
            if coeff:
                v = [x + coeff * y for x, y in zip(v, vec)]
        eig.append(tuple(v))
    # character on this algebra's basis: coordinates in the (hyperplane, z)
    # frame contract against the collected eigenvalues
    t = Mat.from_cols(list(hyp) + [z])
    inv_t = inverse(t)
    aug = list(char0) + [lam]
    char = tuple(sum((aug[k] * inv_t.rows[k][j] for k in range(alg.dim)),
                     gauss(0)) for j in range(alg.dim))
    return "ok", char, eig


def _peel_quotient(mats, w):
    """Quotient the module by the invariant line spanned by w.

    Returns the induced matrices and the basis-change matrix T whose columns
    are (w, completion); quotient coordinates are the completion columns.
    """
    d = len(w)
    rows = span_basis([w])
    pivot = next(j for j, c in enumerate(rows[0]) if c)
    completion = [rows[0]] + [
        tuple(gauss(int(i == j)) for j in range(d))
        for i in range(d) if i != pivot]
    t = Mat.from_cols(completion)
    inv_t = inverse(t)
    out = []
    for m in mats:
        conj = inv_t @ m @ t
        out.append(Mat([r[1:] for r in conj.rows[1:]]))
    return out, t


def module_weights(alg: LieAlgebra, mats):
    """Composition-series weight table of a solvable action, over Q(i).

    Returns a WeightTable or an Indeterminate.  Weights are checked to vanish
    on the derived subalgebra and multiplicities to sum to the module
    dimension.
    """
    mats = [m if isinstance(m, Mat) else Mat(m) for m in mats]
    if len(mats) != alg.dim:
        raise InputError("one action matrix per basis element is required")
    if not alg.is_solvable():
        raise InputError("weights are defined here for solvable actions only")
    dim0 = mats[0].nrows if mats else 0
    if alg.dim == 0:
        entries = (WeightEntry((), dim0, True),) if dim0 else ()
        return WeightTable(0, dim0, entries)
    cur = [m.map(gauss) for m in mats]
    collected = []
    while cur[0].nrows > 0:
        d = cur[0].nrows
        space = [tuple(gauss(int(i == j)) for j in range(d)) for i in range(d)]
        res = common_eigenspace(alg, cur, space)
        if res[0] == "indeterminate":
            return Indeterminate(res[1])
        if res[0] == "nonreal":
            raise InternalCheckError("unrestricted recursion reported nonreal")
        _, char, eig = res
        collected.append(char)
        cur, _ = _peel_quotient(cur, eig[0])
    derived = alg.bracket_span(alg.basis(), alg.basis())
    merged = {}
    for char in collected:
        for dvec in derived:
            val = sum((c * x for c, x in zip(char, dvec)), gauss(0))
            if val:
                raise InternalCheckError(
                    "weight does not vanish on the derived subalgebra")
        merged[char] = merged.get(char, 0) + 1
    entries = tuple(
        WeightEntry(values, mult, all(v.is_real() for v in values))
        for values, mult in sorted(
            merged.items(),
            key=lambda kv: tuple((v.re, v.im) for v in kv[0])))
    if sum(e.multiplicity for e in entries) != dim0:
        raise InternalCheckError(
            "weight multiplicities do not sum to the module dimension")
    return WeightTable(alg.dim, dim0, entries)


def adjoint_weights(alg: LieAlgebra):
    """Weight table of the adjoint module of a solvable algebra."""
    return module_weights(alg, [alg.ad(alg.basis_vector(i))
                                for i in range(alg.dim)])


def real_flag(alg: LieAlgebra, mats):
    """A complete flag of invariant subspaces with rational characters.

    Peels rational common eigenvectors from the module until it is exhausted.
    Returns ("ok", flag_vectors, step_characters) with flag vectors in module
    coordinates (prefix spans give the flag), ("nonreal", element,
    eigenvalue), or ("indeterminate", reason, None).
    """
    mats = [m if isinstance(m, Mat) else Mat(m) for m in mats]
    if not mats:
        return "ok", [], []
    cur = [m.map(gauss) for m in mats]
    dim0 = cur[0].nrows
    flag_vecs = []
    chars = []
    lift = Mat.identity(dim0).map(gauss)
    while cur[0].nrows > 0:
        d = cur[0].nrows
        space = [tuple(gauss(int(i == j)) for j in range(d)) for i in range(d)]
        res = common_eigenspace(alg, cur, space, real_rational_only=True)
        if res[0] != "ok":
            return res
        _, char, eig = res
        w = eig[0]
        flag_vecs.append(tuple(lift @ w))
        chars.append(char)
        cur, t = _peel_quotient(cur, w)
        if t.ncols > 1:
            lift = lift @ Mat.from_cols([t.col(j) for j in range(1, t.ncols)])
    return "ok", flag_vecs, chars
