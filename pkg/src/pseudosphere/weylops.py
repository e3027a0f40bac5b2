"""Exact arithmetic for normal-ordered differential operators.

Operators live in d ambient variables s_1..s_d with Laurent-polynomial
coefficients over Q, extended by a formal parameter ``h`` (the quantum
constant).  A term is ``c(h) * s^A * D^B`` with A an integer exponent
vector (negative entries allowed) and B a nonnegative one over the
partial derivatives.  Every operator is kept in canonical normal order:
all coordinate factors to the left of all derivative factors, equal
(A, B) keys merged, zero scalars pruned.  Equality of canonical forms is
therefore plain structural equality.

Negative coordinate powers compose through falling factorials, which is
valid on the open set where the relevant coordinates do not vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

Mono = tuple[int, ...]
HPoly = dict[int, Fraction]
LaurentPoly = dict[Mono, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class DimensionMismatch(ValueError):
    """Raised when operands over different ambient dimensions are mixed."""


class NotDivisible(ValueError):
    """Raised when an operator has no overall factor of h."""


# ---------------------------------------------------------------------------
# scalar polynomials in h

def _hp_add(a: HPoly, b: HPoly) -> HPoly:
    out = dict(a)
    for k, v in b.items():
        w = out.get(k, _ZERO) + v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out

def _hp_mul(a: HPoly, b: HPoly) -> HPoly:
    out: HPoly = {}
    for i, u in a.items():
        for j, v in b.items():
            k = i + j
            w = out.get(k, _ZERO) + u * v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
    return out

def _hp_scale(a: HPoly, c: Fraction) -> HPoly:
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}

def _hp_eval(a: HPoly, h: Fraction) -> Fraction:
    return sum((v * h**k for k, v in a.items()), _ZERO)


def _falling(k: int, j: int) -> int:
    """k (k-1) ... (k-j+1), valid for negative k as well."""
    out = 1
    for t in range(j):
        out *= k - t
    return out


@dataclass(frozen=True)
class Metric:
    """Diagonal pseudo-Riemannian metric with entries +-1.

    The pseudo-sphere it defines is the quadric ``sum_i g_ii s_i^2 = -1``;
    an all-positive metric has no real points on that quadric but the
    algebra (and the constraint rewrite) remain well defined over Q.
    """

    diag: tuple[int, ...]

    def __post_init__(self):
        if not self.diag or any(e not in (1, -1) for e in self.diag):
            raise ValueError("metric entries must be +1 or -1")

    @property
    def dim(self) -> int:
        return len(self.diag)

    @property
    def signature(self) -> tuple[int, int]:
        plus = sum(1 for e in self.diag if e == 1)
        return (plus, len(self.diag) - plus)


class WeylOp:
    """A normal-ordered differential operator with exact coefficients.

    ``terms`` maps (coordinate exponents, derivative exponents) to the
    scalar polynomial in h.  Instances are treated as immutable values;
    all arithmetic returns new operators.
    """

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: dict[tuple[Mono, Mono], HPoly] | None = None):
        self.dim = dim
        self.terms = {} if terms is None else terms

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> "WeylOp":
        return cls(dim)

    @classmethod
    def term(cls, dim: int, coeff, smon: Mono = None, dmon: Mono = None,
             hpow: int = 0) -> "WeylOp":
        c = Fraction(coeff)
        if not c:
            return cls(dim)
        A = tuple(smon) if smon is not None else (0,) * dim
        B = tuple(dmon) if dmon is not None else (0,) * dim
        if len(A) != dim or len(B) != dim or any(b < 0 for b in B):
            raise ValueError("bad exponent vectors")
        return cls(dim, {(A, B): {hpow: c}})

    @classmethod
    def const(cls, dim: int, coeff, hpow: int = 0) -> "WeylOp":
        return cls.term(dim, coeff, hpow=hpow)

    @classmethod
    def coord(cls, dim: int, i: int, power: int = 1) -> "WeylOp":
        smon = tuple(power if k == i else 0 for k in range(dim))
        return cls.term(dim, 1, smon=smon)

    @classmethod
    def deriv(cls, dim: int, i: int, power: int = 1) -> "WeylOp":
        dmon = tuple(power if k == i else 0 for k in range(dim))
        return cls.term(dim, 1, dmon=dmon)

    # -- basic structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeylOp):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, self.sorted_terms()))

    def sorted_terms(self) -> tuple:
        """Deterministic (lexicographic) presentation of the term list."""
        return tuple(
            (key, tuple(sorted(self.terms[key].items())))
            for key in sorted(self.terms)
        )

    def __repr__(self) -> str:
        if self.is_zero():
            return "WeylOp(0)"
        bits = []
        for (A, B), hp in self.sorted_terms():
            sc = " + ".join(
                f"{c}" + (f"*h^{k}" if k else "") for k, c in hp
            )
            mono = "".join(f"*s{i + 1}^{e}" for i, e in enumerate(A) if e)
            dmon = "".join(f"*D{i + 1}^{e}" for i, e in enumerate(B) if e)
            bits.append(f"({sc}){mono}{dmon}")
        return "WeylOp[" + " + ".join(bits) + "]"

    def _check(self, other: "WeylOp"):
        if self.dim != other.dim:
            raise DimensionMismatch(f"dimension {self.dim} != {other.dim}")

    # -- linear arithmetic --------------------------------------------------

    def __add__(self, other: "WeylOp") -> "WeylOp":
        self._check(other)
        out = dict(self.terms)
        for key, hp in other.terms.items():
            merged = _hp_add(out.get(key, {}), hp)
            if merged:
                out[key] = merged
            else:
                out.pop(key, None)
        return WeylOp(self.dim, out)

    def __neg__(self) -> "WeylOp":
        return self.scale(Fraction(-1))

    def __sub__(self, other: "WeylOp") -> "WeylOp":
        return self + (-other)

    def scale(self, c) -> "WeylOp":
        c = Fraction(c)
        if not c:
            return WeylOp(self.dim)
        return WeylOp(self.dim, {k: _hp_scale(hp, c) for k, hp in self.terms.items()})

    def scale_h(self, hpow: int = 1) -> "WeylOp":
        """Multiply by h**hpow."""
        return WeylOp(self.dim, {
            k: {e + hpow: c for e, c in hp.items()} for k, hp in self.terms.items()
        })

    def __mul__(self, other):
        if isinstance(other, WeylOp):
            return compose(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def max_hdegree(self) -> int:
        return max((max(hp) for hp in self.terms.values()), default=0)


# ---------------------------------------------------------------------------
# core operations

def _leibniz_axis(b: int, c: int):
    """Nonzero contributions of D^b composed with s^c along one axis.

    Yields (j, coefficient) with D^b s^c = sum_j C(b,j) c^(falling j)
    s^(c-j) D^(b-j); for c >= 0 the falling factorial truncates the sum.
    """
    for j in range(b + 1):
        f = _falling(c, j)
        if f:
            yield j, comb(b, j) * f


def compose(lhs: WeylOp, rhs: WeylOp) -> WeylOp:
    """Operator product lhs o rhs in canonical normal order."""
    lhs._check(rhs)
    d = lhs.dim
    out: dict[tuple[Mono, Mono], HPoly] = {}
    for (A, B), ca in lhs.terms.items():
        for (C, D), cb in rhs.terms.items():
            base = _hp_mul(ca, cb)
            if not base:
                continue
            # distribute D^B across s^C axis by axis
            parts = [(tuple(), 1)]
            for ax in range(d):
                if B[ax] == 0 or C[ax] == 0:
                    parts = [(j + (0,), c) for j, c in parts]
                    continue
                new = []
                for j, c in parts:
                    for jx, cx in _leibniz_axis(B[ax], C[ax]):
                        new.append((j + (jx,), c * cx))
                parts = new
            for jvec, cf in parts:
                smon = tuple(A[i] + C[i] - jvec[i] for i in range(d))
                dmon = tuple(B[i] - jvec[i] + D[i] for i in range(d))
                key = (smon, dmon)
                hp = _hp_scale(base, Fraction(cf)) if cf != 1 else base
                merged = _hp_add(out.get(key, {}), hp)
                if merged:
                    out[key] = merged
                else:
                    out.pop(key, None)
    return WeylOp(d, out)


def commutator(lhs: WeylOp, rhs: WeylOp) -> WeylOp:
    return compose(lhs, rhs) - compose(rhs, lhs)


def anticommutator(lhs: WeylOp, rhs: WeylOp) -> WeylOp:
    return compose(lhs, rhs) + compose(rhs, lhs)


def divide_by_hbar(op: WeylOp) -> WeylOp:
    """Strip one overall factor of h; error if any term has an h^0 part."""
    out = {}
    for key, hp in op.terms.items():
        if 0 in hp:
            raise NotDivisible(f"term {key} has h-constant part {hp[0]}")
        out[key] = {e - 1: c for e, c in hp.items()}
    return WeylOp(op.dim, out)


def specialize_hbar(op: WeylOp, h) -> WeylOp:
    """Evaluate the formal h at a rational value."""
    h = Fraction(h)
    out = {}
    for key, hp in op.terms.items():
        v = _hp_eval(hp, h)
        if v:
            out[key] = {0: v}
    return WeylOp(op.dim, out)


def apply_op(op: WeylOp, f: LaurentPoly, hbar=None) -> LaurentPoly:
    """Act with op on a Laurent polynomial, term by term.

    ``hbar`` must be supplied (as a rational) unless every scalar of op
    is h-free; the formal h is rejected here because the result is a
    plain Laurent polynomial.
    """
    if hbar is None:
        if any(set(hp) - {0} for hp in op.terms.values()):
            raise ValueError("operator contains formal h; pass hbar=")
        h = _ONE
    else:
        h = Fraction(hbar)
    d = op.dim
    out: LaurentPoly = {}
    for (A, B), hp in op.terms.items():
        scal = _hp_eval(hp, h)
        if not scal:
            continue
        for K, c in f.items():
            cf = scal * c
            ok = True
            for ax in range(d):
                fall = _falling(K[ax], B[ax])
                if not fall:
                    ok = False
                    break
                cf *= fall
            if not ok:
                continue
            mono = tuple(K[i] - B[i] + A[i] for i in range(d))
            w = out.get(mono, _ZERO) + cf
            if w:
                out[mono] = w
            else:
                out.pop(mono, None)
    return out


def lp_eval(f: LaurentPoly, point) -> Fraction:
    """Evaluate a Laurent polynomial at a rational point (no zero coords
    where a negative exponent occurs)."""
    total = _ZERO
    pt = [Fraction(x) for x in point]
    for mono, c in f.items():
        v = c
        for x, e in zip(pt, mono):
            v *= x**e
        total += v
    return total


def shift_coord(op: WeylOp, axis: int, power: int) -> WeylOp:
    """Left-multiply by s_axis**power (a unit of the Laurent ring)."""
    out = {}
    for (A, B), hp in op.terms.items():
        A2 = tuple(a + power if i == axis else a for i, a in enumerate(A))
        out[(A2, B)] = hp
    return WeylOp(op.dim, out)


def vanishes_mod_constraint(op: WeylOp, metric: Metric) -> bool:
    """Membership of op in the left ideal generated by the quadric.

    Negative powers of the pivot coordinate are cleared by an even power
    of s_d (a unit) before rewriting; the result is zero exactly when op
    annihilates every restriction to the constraint surface.
    """
    last = op.dim - 1
    low = min((key[0][last] for key in op.terms), default=0)
    if low < 0:
        op = shift_coord(op, last, 2 * ((-low + 1) // 2))
    return reduce_mod_constraint(op, metric).is_zero()


def reduce_mod_constraint(op: WeylOp, metric: Metric) -> WeylOp:
    """Normal form modulo the quadric g_ii s_i^2 summed = -1.

    Coordinate monomials with exponent >= 2 in the last coordinate are
    rewritten via s_d^2 -> g_dd (-1 - sum_{i<d} g_ii s_i^2) until none
    remain; coefficients stay exact and the result is idempotent.
    """
    if metric.dim != op.dim:
        raise DimensionMismatch(f"metric dim {metric.dim} != {op.dim}")
    d = op.dim
    last = d - 1
    gdd = metric.diag[last]
    # replacement for s_d^2 as a list of (smon, rational) pairs
    repl: list[tuple[Mono, Fraction]] = [((0,) * d, Fraction(-gdd))]
    for i in range(last):
        mono = tuple(2 if k == i else 0 for k in range(d))
        repl.append((mono, Fraction(-gdd * metric.diag[i])))

    out: dict[tuple[Mono, Mono], HPoly] = {}
    work = [(key, hp) for key, hp in op.terms.items()]
    while work:
        (A, B), hp = work.pop()
        if A[last] >= 2:
            Ared = tuple(a - 2 if i == last else a for i, a in enumerate(A))
            for mono, c in repl:
                key = (tuple(Ared[i] + mono[i] for i in range(d)), B)
                work.append((key, _hp_scale(hp, c)))
            continue
        merged = _hp_add(out.get((A, B), {}), hp)
        if merged:
            out[(A, B)] = merged
        else:
            out.pop((A, B), None)
    return WeylOp(d, out)
