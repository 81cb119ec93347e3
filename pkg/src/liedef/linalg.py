"""Exact dense linear algebra over Fraction and GaussRat entries.

Everything downstream (brackets, flags, certificates, representations) runs on
this layer, so the expensive invariants are checked where they are cheap to
state: Smith forms are verified against their unimodular transforms on every
call, and Jordan decompositions are verified semisimple-plus-nilpotent before
they are returned.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .errors import Indeterminate, InputError, InternalCheckError
from .poly import Poly, gaussian_roots, poly_gcd, squarefree_part
from .scalars import GaussRat, gauss


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v):
    return tuple(c * a for a in v)


def is_zero_vec(v) -> bool:
    return all(not a for a in v)


class Mat:
    """Immutable matrix; entries are Fraction, GaussRat, or int."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(r) for r in rows)
        if self.rows:
            n = len(self.rows[0])
            if any(len(r) != n for r in self.rows):
                raise ValueError("ragged matrix")

    @staticmethod
    def zeros(m: int, n: int) -> "Mat":
        return Mat([[Fraction(0)] * n for _ in range(m)])

    @staticmethod
    def identity(n: int) -> "Mat":
        return Mat([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @staticmethod
    def from_cols(cols) -> "Mat":
        cols = list(cols)
        if not cols:
            return Mat([])
        return Mat([[col[i] for col in cols] for i in range(len(cols[0]))])

    @staticmethod
    def diag(entries) -> "Mat":
        entries = list(entries)
        n = len(entries)
        return Mat([[entries[i] if i == j else Fraction(0) for j in range(n)]
                    for i in range(n)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def col(self, j: int):
        return tuple(r[j] for r in self.rows)

    def cols(self):
        return [self.col(j) for j in range(self.ncols)]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Mat) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(" ".join(str(c) for c in r) for r in self.rows)
        return f"Mat[{body}]"

    def is_zero(self) -> bool:
        return all(not c for r in self.rows for c in r)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __add__(self, other: "Mat") -> "Mat":
        return Mat([vadd(a, b) for a, b in zip(self.rows, other.rows)])

    def __sub__(self, other: "Mat") -> "Mat":
        return Mat([vsub(a, b) for a, b in zip(self.rows, other.rows)])

    def __neg__(self) -> "Mat":
        return Mat([[-c for c in r] for r in self.rows])

    def __mul__(self, scalar) -> "Mat":
        return Mat([[c * scalar for c in r] for r in self.rows])

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Mat):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            cols = other.cols()
            return Mat([[_dot(r, c) for c in cols] for r in self.rows])
        # matrix times column vector
        if self.ncols != len(other):
            raise ValueError("shape mismatch")
        return tuple(_dot(r, other) for r in self.rows)

    def transpose(self) -> "Mat":
        return Mat([self.col(j) for j in range(self.ncols)])

    def trace(self):
        return sum((self.rows[i][i] for i in range(self.nrows)), Fraction(0))

    def conj(self) -> "Mat":
        return Mat([[c.conj() if isinstance(c, GaussRat) else c for c in r]
                    for r in self.rows])

    def map(self, fn) -> "Mat":
        return Mat([[fn(c) for c in r] for r in self.rows])

    def flatten(self):
        return tuple(c for r in self.rows for c in r)

    def is_upper_triangular(self, strict: bool = False) -> bool:
        lo = 1 if strict else 0
        return all(not self.rows[i][j]
                   for i in range(self.nrows)
                   for j in range(min(i + lo, self.ncols)))


def _dot(u, v):
    return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))


def mat_pow(a: Mat, k: int) -> Mat:
    out = Mat.identity(a.nrows)
    base = a
    while k:
        if k & 1:
            out = out @ base
        base = base @ base if k > 1 else base
        k >>= 1
    return out


def kron(a: Mat, b: Mat) -> Mat:
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append([x * y for x in ra for y in rb])
    return Mat(rows)


def block_diag(mats) -> Mat:
    mats = list(mats)
    n = sum(m.nrows for m in mats)
    p = sum(m.ncols for m in mats)
    rows = [[Fraction(0)] * p for _ in range(n)]
    i0 = j0 = 0
    for m in mats:
        for i, r in enumerate(m.rows):
            for j, c in enumerate(r):
                rows[i0 + i][j0 + j] = c
        i0 += m.nrows
        j0 += m.ncols
    return Mat(rows)


# -- elimination ---------------------------------------------------------------


def rref(m: Mat):
    """Reduced row echelon form; returns (R, pivot column indices)."""
    rows = [list(r) for r in m.rows]
    nr, nc = len(rows), m.ncols
    pivots = []
    r = 0
    for c in range(nc):
        pr = next((i for i in range(r, nr) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return Mat(rows), tuple(pivots)


def rank(m: Mat) -> int:
    return len(rref(m)[1])


def kernel(m: Mat):
    """Basis of the right null space, as a list of tuples."""
    R, pivots = rref(m)
    nc = m.ncols
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * nc
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -R.rows[i][fc]
        basis.append(tuple(v))
    return basis


def solve(a: Mat, b):
    """One solution x of a @ x = b, or None if inconsistent."""
    aug = Mat([list(r) + [bv] for r, bv in zip(a.rows, b)])
    R, pivots = rref(aug)
    nc = a.ncols
    if nc in pivots:
        return None
    x = [Fraction(0)] * nc
    for i, pc in enumerate(pivots):
        x[pc] = R.rows[i][nc]
    return tuple(x)


def inverse(a: Mat) -> Mat:
    if not a.is_square():
        raise ValueError("inverse of a non-square matrix")
    n = a.nrows
    aug = Mat([list(r) + [Fraction(int(i == j)) for j in range(n)]
               for i, r in enumerate(a.rows)])
    R, pivots = rref(aug)
    if list(pivots) != list(range(n)):
        raise ValueError("singular matrix")
    return Mat([r[n:] for r in R.rows])


def det(a: Mat):
    if not a.is_square():
        raise ValueError("determinant of a non-square matrix")
    rows = [list(r) for r in a.rows]
    n = len(rows)
    sign = 1
    out = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if rows[i][c]), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            sign = -sign
        out = out * rows[c][c]
        inv = rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] / inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return out * sign


# -- span utilities ----------------------------------------------------------


def span_basis(vectors):
    """Canonical (rref) basis of the span of the given row vectors."""
    vectors = [v for v in vectors if not is_zero_vec(v)]
    if not vectors:
        return []
    R, pivots = rref(Mat(vectors))
    return [tuple(R.rows[i]) for i in range(len(pivots))]


def reduce_against(basis_rows, pivots, v):
    """Residual of v after eliminating along rref rows; zero iff v in span."""
    v = list(v)
    for row, p in zip(basis_rows, pivots):
        if v[p]:
            c = v[p] / row[p]
            v = [a - c * b for a, b in zip(v, row)]
    return tuple(v)


def span_contains(vectors, v) -> bool:
    rows = span_basis(vectors)
    if not rows:
        return is_zero_vec(v)
    pivots = [next(j for j, c in enumerate(r) if c) for r in rows]
    return is_zero_vec(reduce_against(rows, pivots, v))


def coords_in_basis(basis, v):
    """Coefficients of v in the given (independent) vectors, or None."""
    if not basis:
        return () if is_zero_vec(v) else None
    return solve(Mat.from_cols(basis), v)


def intersect_spans(a, b, n: int):
    """Basis of span(a) intersect span(b) inside an n-dimensional space."""
    a = span_basis(a)
    b = span_basis(b)
    if not a or not b:
        return []
    cols = [list(v) for v in a] + [[-c for c in v] for v in b]
    out = []
    for k in kernel(Mat.from_cols(cols)):
        v = [Fraction(0)] * n
        for coeff, vec in zip(k[:len(a)], a):
            if coeff:
                v = [x + coeff * y for x, y in zip(v, vec)]
        out.append(tuple(v))
    return span_basis(out)


# -- invariants of a single operator --------------------------------------------


def char_poly(a: Mat) -> Poly:
    """Characteristic polynomial det(xI - a), monic, by Faddeev-LeVerrier."""
    if not a.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = a.nrows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = Mat.zeros(n, n)
    ident = Mat.identity(n)
    for k in range(1, n + 1):
        m = a @ m + coeffs[n - k + 1] * ident
        coeffs[n - k] = -(a @ m).trace() / k
    return Poly(coeffs)


def poly_at(p: Poly, a: Mat) -> Mat:
    out = Mat.zeros(a.nrows, a.nrows)
    ident = Mat.identity(a.nrows)
    for c in reversed(p.coeffs):
        out = out @ a + c * ident
    return out


def minimal_poly(a: Mat) -> Poly:
    if not a.is_square():
        raise ValueError("minimal polynomial of a non-square matrix")
    n = a.nrows
    powers = [Mat.identity(n).flatten()]
    cur = Mat.identity(n)
    for k in range(1, n + 1):
        cur = cur @ a
        c = coords_in_basis(powers, cur.flatten())
        if c is not None:
            return Poly(list(-x for x in c) + [Fraction(1)])
        powers.append(cur.flatten())
    raise InternalCheckError("minimal polynomial exceeded the dimension bound")


def jordan_chevalley(a: Mat):
    """Split a = s + n with s semisimple, n nilpotent, s n = n s, both in Q[a].

    Newton iteration against the squarefree part of the characteristic
    polynomial.  The decomposition is verified before being returned.
    """
    n_dim = a.nrows
    f = squarefree_part(char_poly(a))
    x = a
    fx = poly_at(f, x)
    for _ in range(max(1, n_dim).bit_length() + 2):
        if fx.is_zero():
            break
        try:
            corr = inverse(poly_at(f.derivative(), x)) @ fx
        except ValueError:
            raise InternalCheckError(
                "derivative became singular during the Jordan split")
        x = x - corr
        fx = poly_at(f, x)
    if not fx.is_zero():
        raise InternalCheckError("Jordan split did not converge")
    s = x
    nil = a - s
    if s @ nil != nil @ s:
        raise InternalCheckError("Jordan split parts do not commute")
    if not mat_pow(nil, n_dim).is_zero():
        raise InternalCheckError("Jordan split second part is not nilpotent")
    mp = minimal_poly(s)
    if poly_gcd(mp, mp.derivative()).degree != 0:
        raise InternalCheckError("Jordan split first part is not semisimple")
    return s, nil


def is_nilpotent_mat(a: Mat) -> bool:
    return mat_pow(a, a.nrows).is_zero()


# -- integer lattices ----------------------------------------------------------


def _int_rows(m) -> list:
    rows = m.rows if isinstance(m, Mat) else m
    out = []
    for r in rows:
        row = []
        for c in r:
            ic = int(c)
            if ic != c:
                raise ValueError("integer matrix expected")
            row.append(ic)
        out.append(row)
    return out


def smith_normal_form(m):
    """U, D, V with U @ m @ V = D, U and V unimodular, D a divisibility chain.

    Verified on every call: the transform identity, the chain, and that both
    determinants are +-1.
    """
    a = _int_rows(m)
    nr = len(a)
    nc = len(a[0]) if a else 0
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def row_op(i, j, q):
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):
        for r in a:
            r[i] -= q * r[j]
        for r in v:
            r[i] -= q * r[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(nr, nc):
        pivot = None
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] and (best is None or abs(a[i][j]) < best):
                    best = abs(a[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t]:
                        swap_rows(i, t)
                        dirty = True
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j]:
                        swap_cols(j, t)
                        dirty = True
            if dirty:
                continue
            stray = next(((i, j) for i in range(t + 1, nr)
                          for j in range(t + 1, nc)
                          if a[i][j] % a[t][t] != 0), None)
            if stray is None:
                break
            # fold the offending row in so the pivot can shrink
            a[t] = [x + y for x, y in zip(a[t], a[stray[0]])]
            u[t] = [x + y for x, y in zip(u[t], u[stray[0]])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    um, dm, vm = Mat(u), Mat(a), Mat(v)
    mm = Mat(_int_rows(m))
    if um @ mm @ vm != dm:
        raise InternalCheckError("Smith transform identity failed")
    diag = [dm.rows[i][i] for i in range(min(nr, nc))]
    for i in range(nr):
        for j in range(nc):
            if i != j and dm.rows[i][j]:
                raise InternalCheckError("Smith form is not diagonal")
    for x, y in zip(diag, diag[1:]):
        if x == 0 and y != 0:
            raise InternalCheckError("Smith diagonal has a zero before a nonzero")
        if x and y % x != 0:
            raise InternalCheckError("Smith diagonal is not a divisibility chain")
    if abs(det(um.map(Fraction))) != 1 or abs(det(vm.map(Fraction))) != 1:
        raise InternalCheckError("Smith transforms are not unimodular")
    return um, dm, vm


def integer_left_kernel(m):
    """Basis of the lattice of integer rows v with v @ m = 0 (a saturated basis)."""
    mm = Mat(_int_rows(m))
    if mm.nrows == 0:
        return []
    u, d, _ = smith_normal_form(mm)
    r = sum(1 for i in range(min(d.nrows, d.ncols)) if d.rows[i][i])
    basis = [u.rows[i] for i in range(r, mm.nrows)]
    for b in basis:
        if not is_zero_vec(tuple(_dot(b, c) for c in mm.cols())):
            raise InternalCheckError("left kernel row fails to annihilate")
    return [tuple(b) for b in basis]


def clear_denominators(v):
    """Scale a rational vector to a primitive integer vector."""
    den = 1
    for c in v:
        den = lcm(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in v]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g > 1:
        ints = [c // g for c in ints]
    return tuple(ints)


# -- joint spectral decomposition ------------------------------------------------


def restrict_to_span(a: Mat, basis):
    """Matrix of a on an invariant span, in the given basis coordinates."""
    cols = []
    for v in basis:
        c = coords_in_basis(basis, a @ v)
        if c is None:
            raise InputError("matrix does not preserve the span")
        cols.append(c)
    return Mat.from_cols(cols)


def simultaneous_eigenspace(mats):
    """Joint generalized eigenspaces of a commuting family, with weights.

    Returns a list of (weight tuple over GaussRat, basis list) whose spaces
    sum to the full ambient space, or an Indeterminate when some
    characteristic polynomial does not split over Q(i).  Generalized
    eigenspaces of commuting matrices are invariant under the whole family,
    which is what makes the refinement well defined.
    """
    mats = [m if isinstance(m, Mat) else Mat(m) for m in mats]
    if not mats:
        raise InputError("empty matrix family")
    n = mats[0].nrows
    pieces = [((), [tuple(Mat.identity(n).rows[i]) for i in range(n)])]
    for a in mats:
        refined = []
        for weight, basis in pieces:
            b = restrict_to_span(a, basis)
            roots, leftover = gaussian_roots(char_poly(b))
            if leftover:
                return Indeterminate(
                    "characteristic polynomial has a factor with no root in Q(i)")
            covered = 0
            for lam, mult in roots:
                shifted = b - lam * Mat.identity(len(basis))
                sub = kernel(mat_pow(shifted, mult))
                if len(sub) != mult:
                    raise InternalCheckError(
                        "generalized eigenspace dimension mismatch")
                covered += mult
                lifted = []
                for k in sub:
                    v = [gauss(0)] * n
                    for coeff, vec in zip(k, basis):
                        if coeff:
                            v = [x + coeff * y for x, y in zip(v, vec)]
                    lifted.append(tuple(v))
                refined.append((weight + (lam,), lifted))
            if covered != len(basis):
                raise InternalCheckError("eigenspaces do not fill the span")
        pieces = refined
    return pieces
