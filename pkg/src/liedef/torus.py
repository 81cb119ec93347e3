"""Closure equations for integer-weight rotation tori.

A one-parameter family of plane rotations with weight row w sweeps the
curve (cos(w.phi), sin(w.phi)) in each block; the group generated by
several parameters is dense in the algebraic subgroup cut out by the
character relations of the weight lattice.  This module computes those
relations through the integer left kernel of the weight matrix and turns
each one into exact binomial equations in the block coordinates, certified
by substituting the circle parametrization as formal Laurent monomials.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, InternalCheckError, UnsupportedError
from .linalg import integer_left_kernel
from .scalars import GaussRat, gauss


@dataclass(frozen=True)
class TorusWeights:
    """One integer weight row per rotation block; columns index parameters."""
    rows: tuple

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        if not self.rows:
            raise InputError("at least one block row is required")
        width = len(self.rows[0])
        if any(len(r) != width for r in self.rows):
            raise InputError("weight rows must share one length")
        if width == 0:
            raise InputError("at least one parameter column is required")
        for r in self.rows:
            for w in r:
                if not isinstance(w, int) or isinstance(w, bool):
                    raise UnsupportedError(
                        "weights must be integers; rescale rational data first")

    @property
    def blocks(self) -> int:
        return len(self.rows)

    @property
    def params(self) -> int:
        return len(self.rows[0])


class MPoly:
    """Polynomial in c1,s1,...,cn,sn with Gaussian rational coefficients.

    Variable 2j is c_{j+1}, variable 2j+1 is s_{j+1}; terms are a map from
    exponent tuples to nonzero coefficients.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        for exps, coeff in (terms or {}).items():
            coeff = gauss(coeff)
            if coeff:
                clean[tuple(exps)] = coeff
        self.terms = clean

    @staticmethod
    def constant(nvars: int, value) -> "MPoly":
        return MPoly(nvars, {(0,) * nvars: gauss(value)})

    @staticmethod
    def variable(nvars: int, index: int) -> "MPoly":
        exps = tuple(int(i == index) for i in range(nvars))
        return MPoly(nvars, {exps: GaussRat(1)})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, MPoly) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.items(),
                                              key=lambda kv: kv[0]))))

    def _same_arity(self, other: "MPoly"):
        if self.nvars != other.nvars:
            raise InputError("polynomials live in different variable sets")

    def __add__(self, other: "MPoly") -> "MPoly":
        self._same_arity(other)
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            out[exps] = out.get(exps, GaussRat(0)) + coeff
        return MPoly(self.nvars, out)

    def __sub__(self, other: "MPoly") -> "MPoly":
        self._same_arity(other)
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            out[exps] = out.get(exps, GaussRat(0)) - coeff
        return MPoly(self.nvars, out)

    def __mul__(self, other: "MPoly") -> "MPoly":
        self._same_arity(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, GaussRat(0)) + c1 * c2
        return MPoly(self.nvars, out)

    def scale(self, c) -> "MPoly":
        c = gauss(c)
        return MPoly(self.nvars, {e: v * c for e, v in self.terms.items()})

    def power(self, k: int) -> "MPoly":
        out = MPoly.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def real_part(self) -> "MPoly":
        return MPoly(self.nvars, {e: GaussRat(c.re) for e, c in self.terms.items()})

    def imag_part(self) -> "MPoly":
        return MPoly(self.nvars, {e: GaussRat(c.im) for e, c in self.terms.items()})

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.terms.values())

    def __repr__(self):
        return f"MPoly({self.as_string()!r})"

    def as_string(self) -> str:
        """Deterministic reading order: lower degree first, then exponents."""
        if not self.terms:
            return "0"
        names = []
        for j in range(self.nvars // 2):
            names.extend((f"c{j + 1}", f"s{j + 1}"))
        parts = []
        for exps in sorted(self.terms, key=_display_key):
            coeff = self.terms[exps]
            factors = []
            for v, e in enumerate(exps):
                if e == 1:
                    factors.append(names[v])
                elif e > 1:
                    factors.append(f"{names[v]}^{e}")
            body = "*".join(factors)
            parts.append((coeff, body))
        out = ""
        for coeff, body in parts:
            text = _coeff_str(coeff, bare=not body)
            if not body:
                term = text
            elif text == "1":
                term = body
            elif text == "-1":
                term = "-" + body
            else:
                term = f"{text}*{body}"
            if not out:
                out = term
            elif term.startswith("-"):
                out += " - " + term[1:]
            else:
                out += " + " + term
        return out


def _display_key(exps):
    return (-sum(exps), tuple(-e for e in exps))


def _coeff_str(c: GaussRat, bare: bool) -> str:
    if c.is_real():
        return str(c.re)
    if not c.re:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{c.im}*i"
    sign = "+" if c.im > 0 else "-"
    return f"({c.re} {sign} {abs(c.im)}*i)"


@dataclass(frozen=True)
class TorusClosure:
    """Certified equation set for the closure of a weight torus."""
    weights: TorusWeights
    relations: tuple
    relation_equations: tuple
    circle_equations: tuple

    @property
    def equations(self) -> tuple:
        return self.relation_equations + self.circle_equations

    def equation_strings(self):
        return [p.as_string() for p in self.equations]


def _normalize_relation(m):
    last = next((v for v in reversed(m) if v), None)
    if last is not None and last < 0:
        return tuple(-v for v in m)
    return tuple(m)


def _leading_sign_fix(p: MPoly) -> MPoly:
    if not p.terms:
        return p
    c = p.terms[min(p.terms, key=_display_key)]
    if c.re < 0 or (c.re == 0 and c.im < 0):
        return p.scale(-1)
    return p


# -- formal circle parametrization ------------------------------------------------

def _laurent_mul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            key = tuple(x + y for x, y in zip(e1, e2))
            s = out.get(key, GaussRat(0)) + c1 * c2
            if s:
                out[key] = s
            elif key in out:
                del out[key]
    return out


def _substitute(poly: MPoly, cos_sub, sin_sub, nparams):
    zero_exp = (0,) * nparams
    total = {}
    for exps, coeff in poly.terms.items():
        term = {zero_exp: coeff}
        for v, e in enumerate(exps):
            base = cos_sub[v // 2] if v % 2 == 0 else sin_sub[v // 2]
            for _ in range(e):
                term = _laurent_mul(term, base)
        for key, c in term.items():
            s = total.get(key, GaussRat(0)) + c
            if s:
                total[key] = s
            elif key in total:
                del total[key]
    return total


def torus_parametrization(tw: TorusWeights):
    """Laurent substitutions (cos rows, sin rows) for the weight torus."""
    half = GaussRat(Fraction(1, 2))
    half_over_i = GaussRat(0, Fraction(-1, 2))
    cos_sub = []
    sin_sub = []
    for row in tw.rows:
        pos = tuple(row)
        neg = tuple(-w for w in row)
        if pos == neg:
            cos_sub.append({pos: GaussRat(1)})
            sin_sub.append({})
        else:
            cos_sub.append({pos: half, neg: half})
            sin_sub.append({pos: half_over_i, neg: -half_over_i})
    return cos_sub, sin_sub


def vanishes_on_torus(tw: TorusWeights, poly: MPoly) -> bool:
    """Exact test that a block-coordinate polynomial kills the whole torus."""
    if poly.nvars != 2 * tw.blocks:
        raise InputError("polynomial variable count does not match the blocks")
    cos_sub, sin_sub = torus_parametrization(tw)
    return not _substitute(poly, cos_sub, sin_sub, tw.params)


def parse_equation(nvars: int, text: str) -> MPoly:
    """Inverse of as_string for real rational coefficients."""
    out = MPoly(nvars, {})
    src = text.replace(" - ", " + -").strip()
    if not src:
        raise InputError("empty polynomial text")
    for chunk in src.split(" + "):
        chunk = chunk.strip()
        if not chunk:
            raise InputError("empty term in polynomial text")
        sign = Fraction(1)
        if chunk.startswith("-"):
            sign = Fraction(-1)
            chunk = chunk[1:]
        coeff = sign
        exps = [0] * nvars
        for factor in chunk.split("*"):
            factor = factor.strip()
            if not factor:
                raise InputError("empty factor in polynomial text")
            if factor[0] in "cs":
                name, _, power = factor.partition("^")
                kind, idx = name[0], name[1:]
                if not idx.isdigit() or int(idx) < 1:
                    raise InputError(f"bad variable {factor!r}")
                v = 2 * (int(idx) - 1) + (0 if kind == "c" else 1)
                if v >= nvars:
                    raise InputError(f"variable {name} out of range")
                e = 1
                if power:
                    if not power.isdigit():
                        raise InputError(f"bad exponent in {factor!r}")
                    e = int(power)
                exps[v] += e
            else:
                try:
                    coeff = coeff * Fraction(factor)
                except (ValueError, ZeroDivisionError):
                    raise InputError(f"bad coefficient {factor!r}")
        out = out + MPoly(nvars, {tuple(exps): GaussRat(coeff)})
    return out


def torus_zariski_closure(tw: TorusWeights) -> TorusClosure:
    """Equations cutting out the closure of the weight torus, verified.

    Each lattice relation m with m @ W = 0 forces the character identity
    prod z_j^{m_j} = 1 on block coordinates z_j = c_j + i s_j; splitting the
    binomial into real and imaginary parts gives rational equations, and the
    circle equations close the system.  Every emitted polynomial is checked
    to vanish identically under c_j + i s_j -> t^(W row j) as formal Laurent
    monomials, which is the parametrization of the torus itself.
    """
    if not isinstance(tw, TorusWeights):
        tw = TorusWeights(tuple(tw))
    n = tw.blocks
    nvars = 2 * n
    relations = tuple(_normalize_relation(m)
                      for m in integer_left_kernel(tw.rows))

    relation_eqs = []
    for m in relations:
        lhs = MPoly.constant(nvars, 1)
        rhs = MPoly.constant(nvars, 1)
        for j, mj in enumerate(m):
            zj = (MPoly.variable(nvars, 2 * j)
                  + MPoly.variable(nvars, 2 * j + 1).scale(GaussRat(0, 1)))
            if mj > 0:
                lhs = lhs * zj.power(mj)
            elif mj < 0:
                rhs = rhs * zj.power(-mj)
        diff = lhs - rhs
        for part in (diff.real_part(), diff.imag_part()):
            if part:
                relation_eqs.append(_leading_sign_fix(part))

    circle_eqs = []
    for j in range(n):
        cj = MPoly.variable(nvars, 2 * j)
        sj = MPoly.variable(nvars, 2 * j + 1)
        circle_eqs.append(cj * cj + sj * sj - MPoly.constant(nvars, 1))

    cos_sub, sin_sub = torus_parametrization(tw)
    for eq in relation_eqs + circle_eqs:
        if _substitute(eq, cos_sub, sin_sub, tw.params):
            raise InternalCheckError(
                "closure equation fails on the torus parametrization")

    return TorusClosure(tw, relations, tuple(relation_eqs), tuple(circle_eqs))
