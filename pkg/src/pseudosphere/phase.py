"""Classical phase-space mirror of the operator algebra.

Polynomials in momenta p_i with Laurent coefficients in the coordinates
s_i, exact Poisson brackets with {s_i, p_j} = delta_ij, the classical
generic system, and the quantum -> classical correspondence check.
"""

from __future__ import annotations

from fractions import Fraction

from .weylops import Metric, WeylOp
from .model import ModelParams

Mono = tuple[int, ...]

_ZERO = Fraction(0)


class PhasePoly:
    """terms: (s exponents, p exponents) -> rational coefficient.

    s exponents may be negative (Laurent), p exponents are >= 0.
    Values are immutable by convention; arithmetic returns new objects.
    """

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: dict[tuple[Mono, Mono], Fraction] | None = None):
        self.dim = dim
        self.terms = {} if terms is None else terms

    @classmethod
    def zero(cls, dim):
        return cls(dim)

    @classmethod
    def term(cls, dim, coeff, smon: Mono = None, pmon: Mono = None) -> "PhasePoly":
        c = Fraction(coeff)
        if not c:
            return cls(dim)
        A = tuple(smon) if smon is not None else (0,) * dim
        B = tuple(pmon) if pmon is not None else (0,) * dim
        if len(A) != dim or len(B) != dim or any(b < 0 for b in B):
            raise ValueError("bad exponent vectors")
        return cls(dim, {(A, B): c})

    @classmethod
    def coord(cls, dim, i, power=1):
        return cls.term(dim, 1, smon=tuple(power if k == i else 0 for k in range(dim)))

    @classmethod
    def momentum(cls, dim, i, power=1):
        return cls.term(dim, 1, pmon=tuple(power if k == i else 0 for k in range(dim)))

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, PhasePoly):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if self.is_zero():
            return "PhasePoly(0)"
        bits = []
        for (A, B), c in sorted(self.terms.items()):
            sm = "".join(f"*s{i + 1}^{e}" for i, e in enumerate(A) if e)
            pm = "".join(f"*p{i + 1}^{e}" for i, e in enumerate(B) if e)
            bits.append(f"({c}){sm}{pm}")
        return "PhasePoly[" + " + ".join(bits) + "]"

    def _check(self, other):
        if self.dim != other.dim:
            raise ValueError(f"dimension {self.dim} != {other.dim}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            w = out.get(key, _ZERO) + c
            if w:
                out[key] = w
            else:
                out.pop(key, None)
        return PhasePoly(self.dim, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return PhasePoly(self.dim)
        return PhasePoly(self.dim, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, PhasePoly):
            return self.scale(other)
        self._check(other)
        out: dict[tuple[Mono, Mono], Fraction] = {}
        for (A, B), u in self.terms.items():
            for (C, D), v in other.terms.items():
                key = (tuple(a + c for a, c in zip(A, C)),
                       tuple(b + d for b, d in zip(B, D)))
                w = out.get(key, _ZERO) + u * v
                if w:
                    out[key] = w
                else:
                    out.pop(key, None)
        return PhasePoly(self.dim, out)

    def __rmul__(self, other):
        return self.scale(other)

    def diff_s(self, i) -> "PhasePoly":
        out = {}
        for (A, B), c in self.terms.items():
            if A[i] == 0:
                continue
            A2 = tuple(a - 1 if k == i else a for k, a in enumerate(A))
            out[(A2, B)] = c * A[i]
        return PhasePoly(self.dim, out)

    def diff_p(self, i) -> "PhasePoly":
        out = {}
        for (A, B), c in self.terms.items():
            if B[i] == 0:
                continue
            B2 = tuple(b - 1 if k == i else b for k, b in enumerate(B))
            out[(A, B2)] = c * B[i]
        return PhasePoly(self.dim, out)


def poisson_bracket(f: PhasePoly, g: PhasePoly) -> PhasePoly:
    """{f, g} with the convention {s_i, p_j} = delta_ij."""
    f._check(g)
    out = PhasePoly(f.dim)
    for i in range(f.dim):
        out += f.diff_s(i) * g.diff_p(i)
        out -= f.diff_p(i) * g.diff_s(i)
    return out


def reduce_mod_constraint_cl(f: PhasePoly, metric: Metric) -> PhasePoly:
    """Rewrite s_d^2 via the quadric, as in the operator kernel."""
    d = f.dim
    last = d - 1
    gdd = metric.diag[last]
    repl = [((0,) * d, Fraction(-gdd))]
    for i in range(last):
        repl.append((tuple(2 if k == i else 0 for k in range(d)),
                     Fraction(-gdd * metric.diag[i])))
    out: dict[tuple[Mono, Mono], Fraction] = {}
    work = list(f.terms.items())
    while work:
        (A, B), c = work.pop()
        if A[last] >= 2:
            Ared = tuple(a - 2 if i == last else a for i, a in enumerate(A))
            for mono, r in repl:
                key = (tuple(Ared[i] + mono[i] for i in range(d)), B)
                work.append((key, c * r))
            continue
        w = out.get((A, B), _ZERO) + c
        if w:
            out[(A, B)] = w
        else:
            out.pop((A, B), None)
    return PhasePoly(d, out)


def vanishes_mod_constraint_cl(f: PhasePoly, metric: Metric) -> bool:
    last = f.dim - 1
    low = min((key[0][last] for key in f.terms), default=0)
    if low < 0:
        shift = 2 * ((-low + 1) // 2)
        f = PhasePoly(f.dim, {
            (tuple(a + shift if i == last else a for i, a in enumerate(A)), B): c
            for (A, B), c in f.terms.items()
        })
    return reduce_mod_constraint_cl(f, metric).is_zero()


# ---------------------------------------------------------------------------
# the classical generic system

def build_J_cl(metric: Metric, i, j) -> PhasePoly:
    d = metric.dim
    g = metric.diag
    return (PhasePoly.coord(d, i) * PhasePoly.momentum(d, j)).scale(g[j]) \
        - (PhasePoly.coord(d, j) * PhasePoly.momentum(d, i)).scale(g[i])


def build_H_cl(metric: Metric, params: ModelParams) -> PhasePoly:
    d = metric.dim
    g = metric.diag
    H = PhasePoly.zero(d)
    for i in range(d):
        for j in range(i + 1, d):
            J = build_J_cl(metric, i, j)
            H += (J * J).scale(g[i] * g[j])
    for i in range(d):
        if params.a[i]:
            H += PhasePoly.coord(d, i, -2).scale(Fraction(g[i]) * params.a[i])
    return H


def build_Q_cl(metric: Metric, params: ModelParams, i, j) -> PhasePoly:
    if i == j:
        raise ValueError("Q requires two distinct indices")
    d = metric.dim
    gg = metric.diag[i] * metric.diag[j]
    J = build_J_cl(metric, i, j)
    Q = (J * J).scale(-gg)
    for (u, v) in ((i, j), (j, i)):
        if params.a[u]:
            mono = [0] * d
            mono[u] = -2
            mono[v] = 2
            Q += PhasePoly.term(d, params.a[u] * gg, smon=tuple(mono))
    return Q


def build_C_cl(metric: Metric, params: ModelParams, i, j, k) -> PhasePoly:
    """Classical C_ijk, defined directly as {Q_ij, Q_ik}."""
    return poisson_bracket(build_Q_cl(metric, params, i, j),
                           build_Q_cl(metric, params, i, k))


def build_classical_model(metric: Metric, params: ModelParams) -> dict:
    """All classical generators: H, every Q_ij, every C_ijk (i<j<k rep)."""
    d = metric.dim
    out = {"H": build_H_cl(metric, params)}
    for i in range(d):
        for j in range(i + 1, d):
            out[("Q", i, j)] = build_Q_cl(metric, params, i, j)
    for i in range(d):
        for j in range(d):
            for k in range(d):
                if len({i, j, k}) == 3:
                    out[("C", i, j, k)] = build_C_cl(metric, params, i, j, k)
    return out


def classical_relation_residual(family: str, idx, metric: Metric,
                                params: ModelParams) -> PhasePoly:
    """LHS - RHS of the classical bracket relation (same measured
    orientation as the quantum table; products commute here)."""
    a = params.a
    Q = lambda i, j: build_Q_cl(metric, params, i, j)
    C = lambda i, j, k: build_C_cl(metric, params, i, j, k)

    if family == "symmetry":
        (i, j) = idx
        return poisson_bracket(build_H_cl(metric, params), Q(i, j))
    if family == "qq_c":
        (i, j, k) = idx
        return poisson_bracket(Q(i, j), Q(i, k)) - C(i, j, k)
    if family == "qc_adjacent":
        (i, j, k) = idx
        lhs = poisson_bracket(Q(j, k), C(i, j, k))
        rhs = (Q(i, k) * Q(j, k)).scale(-8) + (Q(j, k) * Q(i, j)).scale(8) \
            - Q(i, k).scale(16 * a[j]) + Q(i, j).scale(16 * a[k])
        return lhs - rhs
    if family == "qc_disjoint":
        (i, j, k, l) = idx
        lhs = poisson_bracket(Q(k, l), C(i, j, k))
        rhs = (Q(i, k) * Q(j, l)).scale(-8) + (Q(i, l) * Q(j, k)).scale(8)
        return lhs - rhs
    if family == "cc_share2":
        (i, j, k, l) = idx
        lhs = poisson_bracket(C(i, j, k), C(j, k, l))
        rhs = (C(j, k, l) * Q(i, j)).scale(-8) + (C(i, k, l) * Q(j, k)).scale(8) \
            + (C(i, j, k) * Q(j, l)).scale(8) + C(i, k, l).scale(16 * a[j])
        return lhs - rhs
    if family == "cc_share1":
        (i, j, k, l, m) = idx
        lhs = poisson_bracket(C(i, j, k), C(k, l, m))
        rhs = (C(i, l, m) * Q(j, k)).scale(-8) + (Q(i, k) * C(j, l, m)).scale(8)
        return lhs - rhs
    if family == "cc_disjoint":
        (i, j, k, l, m, n) = idx
        return poisson_bracket(C(i, j, k), C(l, m, n))
    raise ValueError(f"unknown relation family {family!r}")


def verify_classical_relation(family: str, idx, metric: Metric,
                              params: ModelParams) -> dict:
    residual = classical_relation_residual(family, tuple(idx), metric, params)
    passed = residual.is_zero()
    reduced = False
    if not passed:
        reduced = True
        passed = vanishes_mod_constraint_cl(residual, metric)
    return {"family": family, "indices": tuple(idx), "passed": passed,
            "reduced": reduced and passed,
            "residual_terms": 0 if passed else len(residual.terms)}


# ---------------------------------------------------------------------------
# quantum -> classical correspondence

def principal_symbol(op: WeylOp) -> PhasePoly:
    """Map h d_k -> p_k term by term and then set h = 0.

    A normal-ordered term c(h) s^A D^B contributes the coefficient of
    h^|B| in c times s^A p^B; higher powers of h vanish in the limit.
    """
    out: dict[tuple[Mono, Mono], Fraction] = {}
    for (A, B), hp in op.terms.items():
        c = hp.get(sum(B), _ZERO)
        if c:
            out[(A, B)] = out.get((A, B), _ZERO) + c
    return PhasePoly(op.dim, {k: v for k, v in out.items() if v})


def correspondence_check(metric: Metric, params: ModelParams,
                         pairs=None) -> dict:
    """Compare sigma((1/h)[X, Y]) at h = 0 with +-{sigma X, sigma Y}.

    Records the sign that matches for every generator pair and asserts
    it is one global constant (0-sign entries mean both sides vanished).
    """
    from .model import build_Q, build_C
    from .weylops import commutator, divide_by_hbar

    d = metric.dim
    if pairs is None:
        pairs = []
        for i in range(d):
            for j in range(i + 1, d):
                for k in range(j + 1, d):
                    pairs.append((("Q", i, j), ("Q", i, k)))
                    pairs.append((("Q", j, k), ("C", i, j, k)))

    def q_op(tag):
        if tag[0] == "Q":
            return build_Q(metric, params, tag[1], tag[2])
        return build_C(metric, params, tag[1], tag[2], tag[3])

    records = []
    signs = set()
    for (x, y) in pairs:
        Xq, Yq = q_op(x), q_op(y)
        lhs = principal_symbol(divide_by_hbar(commutator(Xq, Yq)))
        rhs = poisson_bracket(principal_symbol(Xq), principal_symbol(Yq))
        if lhs.is_zero() and rhs.is_zero():
            sign = 0
        elif lhs == rhs:
            sign = 1
        elif lhs == rhs.scale(-1):
            sign = -1
        else:
            sign = None
        records.append({"pair": (x, y), "sign": sign})
        if sign:
            signs.add(sign)
    return {
        "passed": None not in {r["sign"] for r in records} and len(signs) <= 1,
        "global_sign": signs.pop() if len(signs) == 1 else None,
        "records": records,
    }
