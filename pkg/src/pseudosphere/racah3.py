"""Daskaloyannis machinery for the d = 3 system.

Structure constants of the (A, B, C) quadratic algebra, the Casimir,
the factorized structure function Phi, finite-dimensional unitary
representations and the algebraic discrete spectrum, all in exact
rational arithmetic, cross-checked against the operator realization.

Conventions (measured against the realization, not assumed):
the published structure-constant list holds after the substitutions
H -> -H in delta, zeta, z and epsilon -> 16(-1 + a_1 + a_2); the
published realized Casimir K(H) holds after H -> -H.  The engine's
default constants are the measured ones; the published variant is kept
for comparison.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .weylops import (
    Metric,
    WeylOp,
    compose,
    commutator,
    anticommutator,
    specialize_hbar,
    vanishes_mod_constraint,
)
from .model import ModelParams, build_H, build_Q, discover_linear_relation

LEADING_COEFF = 824633720832  # = 256 * 3221225472 = 3 * 2**38

H2_SIGNS = (-1, -1, 1)
S2_SIGNS = (-1, -1, -1)

HLin = tuple[Fraction, Fraction]  # c0 + c1 * h, h a formal central element


def _hlin(c0, c1=0) -> HLin:
    return (Fraction(c0), Fraction(c1))


@dataclass(frozen=True)
class QuadraticAlgebraConstants:
    """Constants of [A,C] = alpha A^2 + gamma {A,B} + delta A + epsilon B + zeta,
    [B,C] = a A^2 - gamma B^2 - alpha {A,B} + d A - delta B + z."""

    alpha: Fraction
    gamma: Fraction
    epsilon: Fraction
    a_const: Fraction
    delta: HLin
    d_const: HLin
    zeta: HLin
    z_const: HLin
    convention: str = "measured"


def structure_constants(params: ModelParams,
                        convention: str = "measured") -> QuadraticAlgebraConstants:
    """Structure constants of the realization A = Q_12, B = Q_13, C = [A, B].

    convention "measured" is the set verified as exact operator
    identities; "published" is the commonly quoted list (differing by
    H -> -H in delta, zeta, z and by the epsilon factor).
    """
    a1, a2, a3 = params.a
    d0 = Fraction(-16) * (-1 + a1 + a3)
    delta0 = 4 * (-2 + 6 * a1 + 2 * a2 + 2 * a3)
    zeta0 = 4 * (-4 * a1 + 4 * a1 * a1 + 4 * a1 * a2 - 2 * a3 + 4 * a1 * a3)
    z0 = -4 * (-4 * a1 + 4 * a1 * a1 - 2 * a2 + 4 * a1 * a2 + 4 * a1 * a3)
    if convention == "measured":
        return QuadraticAlgebraConstants(
            alpha=Fraction(8), gamma=Fraction(8),
            epsilon=Fraction(16) * (-1 + a1 + a2), a_const=Fraction(0),
            delta=_hlin(delta0, 8),
            d_const=_hlin(d0),
            zeta=_hlin(zeta0, 8 * (-1 + 2 * a1)),
            z_const=_hlin(z0, -8 * (-1 + 2 * a1)),
            convention="measured",
        )
    if convention == "published":
        return QuadraticAlgebraConstants(
            alpha=Fraction(8), gamma=Fraction(8),
            epsilon=Fraction(16), a_const=Fraction(0),
            delta=_hlin(delta0, -8),
            d_const=_hlin(d0),
            zeta=_hlin(zeta0, -8 * (-1 + 2 * a1)),
            z_const=_hlin(z0, 8 * (-1 + 2 * a1)),
            convention="published",
        )
    raise ValueError(f"unknown convention {convention!r}")


@dataclass(frozen=True)
class ABCRealization:
    A: WeylOp
    B: WeylOp
    C: WeylOp
    H: WeylOp
    Q23: WeylOp
    q23_residual_vanishes: bool


def abc_realization(metric: Metric, params: ModelParams) -> ABCRealization:
    """A = Q_12, B = Q_13, C = [A, B] at hbar = 1, plus Q_23 reconstructed
    from the discovered linear relation (residual checked, not assumed)."""
    if metric.dim != 3:
        raise ValueError("the Daskaloyannis treatment is for d = 3")
    A = specialize_hbar(build_Q(metric, params, 0, 1), 1)
    B = specialize_hbar(build_Q(metric, params, 0, 2), 1)
    H = specialize_hbar(build_H(metric, params), 1)
    C = commutator(A, B)
    rel = discover_linear_relation(metric, params)
    # sum alpha_ij Q_ij - alpha_0 H - alpha_00 = 0, solved for Q_23
    a23 = rel.alpha[(1, 2)]
    Q23 = (H.scale(rel.alpha_0) + WeylOp.const(3, rel.alpha_00)
           - A.scale(rel.alpha[(0, 1)])
           - B.scale(rel.alpha[(0, 2)])).scale(Fraction(1) / a23)
    direct = specialize_hbar(build_Q(metric, params, 1, 2), 1)
    resid = Q23 - direct
    ok = resid.is_zero() or vanishes_mod_constraint(resid, metric)
    return ABCRealization(A=A, B=B, C=C, H=H, Q23=Q23, q23_residual_vanishes=ok)


def _hlin_op(c: HLin, H: WeylOp) -> WeylOp:
    return WeylOp.const(3, c[0]) + H.scale(c[1])


def verify_daskaloyannis_form(metric: Metric, params: ModelParams,
                              convention: str = "measured") -> dict:
    """Check [A,C] and [B,C] against the structure-constant form as exact
    operator identities (modulo the constraint).  Failure is data."""
    k = structure_constants(params, convention)
    r = abc_realization(metric, params)
    A, B, C, H = r.A, r.B, r.C, r.H
    delta = _hlin_op(k.delta, H)
    rhs_ac = (compose(A, A).scale(k.alpha) + anticommutator(A, B).scale(k.gamma)
              + compose(delta, A) + B.scale(k.epsilon) + _hlin_op(k.zeta, H))
    res_ac = commutator(A, C) - rhs_ac
    rhs_bc = (compose(A, A).scale(k.a_const) - compose(B, B).scale(k.gamma)
              - anticommutator(A, B).scale(k.alpha)
              + compose(_hlin_op(k.d_const, H), A)
              - compose(delta, B) + _hlin_op(k.z_const, H))
    res_bc = commutator(B, C) - rhs_bc
    ok_ac = res_ac.is_zero() or vanishes_mod_constraint(res_ac, metric)
    ok_bc = res_bc.is_zero() or vanishes_mod_constraint(res_bc, metric)
    return {
        "convention": convention,
        "signature": metric.signature,
        "AC": ok_ac,
        "BC": ok_bc,
        "q23_reconstruction": r.q23_residual_vanishes,
        "passed": ok_ac and ok_bc and r.q23_residual_vanishes,
    }


@dataclass(frozen=True)
class CasimirExpr:
    """realized_form / published_realized_form: {power of h: coefficient}."""
    params: ModelParams
    constants: QuadraticAlgebraConstants
    realized_form: dict
    published_realized_form: dict

    def realized_eval(self, h) -> Fraction:
        h = Fraction(h)
        return sum((c * h ** n for n, c in self.realized_form.items()),
                   Fraction(0))


def casimir(params: ModelParams) -> CasimirExpr:
    """The Casimir with the printed "( alpha, gamma - delta)" token resolved
    to (alpha*gamma - delta); realized form measured as K(H) = K_pub(-H)."""
    a1, a2, a3 = params.a
    k2 = 4 * (-3 + 4 * a1)
    k1 = -8 * (6 - 21 * a1 + 4 * a1 * a1 - 3 * a2 + 4 * a1 * a2
               - 3 * a3 + 4 * a1 * a3)
    k0 = 4 * (20 * a1 - 39 * a1 * a1 + 4 * a1 ** 3 + 4 * a2 - 30 * a1 * a2
              + 8 * a1 * a1 * a2 - 3 * a2 * a2 + 4 * a1 * a2 * a2
              + 4 * a3 - 30 * a1 * a3 + 8 * a1 * a1 * a3 + 6 * a2 * a3
              - 8 * a1 * a2 * a3 - 3 * a3 * a3 + 4 * a1 * a3 * a3)
    published = {2: Fraction(k2), 1: Fraction(k1), 0: Fraction(k0)}
    realized = {2: Fraction(k2), 1: Fraction(-k1), 0: Fraction(k0)}
    return CasimirExpr(params=params,
                       constants=structure_constants(params),
                       realized_form=realized,
                       published_realized_form=published)


def casimir_operator(metric: Metric, params: ModelParams) -> WeylOp:
    """Generator-form Casimir expanded in the operator realization."""
    k = structure_constants(params)
    r = abc_realization(metric, params)
    A, B, C, H = r.A, r.B, r.C, r.H
    delta = _hlin_op(k.delta, H)
    dd = _hlin_op(k.d_const, H)
    zeta = _hlin_op(k.zeta, H)
    z = _hlin_op(k.z_const, H)
    one = lambda c: WeylOp.const(3, c)
    K = compose(C, C)
    K -= anticommutator(compose(A, A), B).scale(k.alpha)
    K -= anticommutator(A, compose(B, B)).scale(k.gamma)
    K += compose(one(k.alpha * k.gamma) - delta, anticommutator(A, B))
    K += compose(B, B).scale(k.gamma * k.gamma - k.epsilon)
    K += compose(delta.scale(k.gamma) - zeta.scale(2), B)
    K += compose(A, compose(A, A)).scale(2 * k.a_const / 3)
    K += compose(dd + one(k.a_const * k.gamma / 3 + k.alpha * k.alpha),
                 compose(A, A))
    K += compose(one(k.a_const * k.epsilon / 3) + delta.scale(k.alpha)
                 + z.scale(2), A)
    return K


def verify_casimir(metric: Metric, params: ModelParams) -> dict:
    """Three independent exact checks certifying the (alpha*gamma - delta)
    resolution: operator equality with the realized K(H), and centrality
    with respect to A and B."""
    r = abc_realization(metric, params)
    K = casimir_operator(metric, params)
    ce = casimir(params)
    H = r.H
    K_real = (compose(H, H).scale(ce.realized_form[2])
              + H.scale(ce.realized_form[1])
              + WeylOp.const(3, ce.realized_form[0]))
    res = K - K_real
    eq = res.is_zero() or vanishes_mod_constraint(res, metric)
    cA = commutator(K, r.A)
    cB = commutator(K, r.B)
    central_A = cA.is_zero() or vanishes_mod_constraint(cA, metric)
    central_B = cB.is_zero() or vanishes_mod_constraint(cB, metric)
    return {"signature": metric.signature,
            "equals_realized": eq,
            "central_A": central_A,
            "central_B": central_B,
            "passed": eq and central_A and central_B}


# ---------------------------------------------------------------------------
# structure function and spectrum

def _rational_sqrt(x: Fraction) -> Fraction:
    from math import isqrt
    if x < 0:
        raise ValueError("negative radicand")
    pn, pd = isqrt(x.numerator), isqrt(x.denominator)
    if pn * pn != x.numerator or pd * pd != x.denominator:
        raise ValueError(f"{x} has no rational square root")
    return Fraction(pn, pd)


def m_values(params: ModelParams) -> tuple[Fraction, Fraction, Fraction]:
    """m_i = nonnegative root of m_i^2 = 1 + 4 a_i (m_i = 2 l_i)."""
    if params.l is not None:
        return tuple(2 * abs(Fraction(li)) for li in params.l)
    ms = []
    for ai in params.a:
        rad = 1 + 4 * Fraction(ai)
        if rad < 0:
            raise ValueError("a_i < -1/4 (complex m_i) is out of scope")
        ms.append(_rational_sqrt(rad))
    return tuple(ms)


def structure_function_roots(params: ModelParams, Etilde) -> tuple:
    """The eight roots N_1..N_8, fully symmetric pattern
    (2 +- (m1 +- m2))/4 and (2 +- (Etilde +- m3))/4."""
    m1, m2, m3 = m_values(params)
    Et = Fraction(Etilde)
    return (
        Fraction(2 - (m1 - m2), 4), Fraction(2 + (m1 - m2), 4),
        Fraction(2 - (m1 + m2), 4), Fraction(2 + (m1 + m2), 4),
        Fraction(2 - (Et - m3), 4), Fraction(2 + (Et - m3), 4),
        Fraction(2 - (Et + m3), 4), Fraction(2 + (Et + m3), 4),
    )


def structure_function_eval(x, Etilde, params: ModelParams) -> Fraction:
    """Phi(x) = 824633720832 * prod_r (x - N_r), exact."""
    x = Fraction(x)
    val = Fraction(LEADING_COEFF)
    for root in structure_function_roots(params, Etilde):
        val *= x - root
    return val


def rep_parameter_u(signs, params: ModelParams) -> Fraction:
    """u = (2 + m1 eps1 + m2 eps2)/4; always one of the roots N_1..N_4."""
    e1, e2 = signs
    m1, m2, m3 = m_values(params)
    return Fraction(2 + m1 * e1 + m2 * e2, 4)


@dataclass(frozen=True)
class RepSolution:
    signs: tuple            # (eps1, eps2, eps3)
    u: Fraction             # shift with Phi(u) = 0 for this solution
    p: int
    E: Fraction             # algebraic energy, E = (1 - Etilde^2)/4
    Etilde: Fraction        # 4(p+1) - eps3 m3 - eps2 m2 - eps1 m1
    degeneracy: int
    certified: bool


ALL_SIGN_PATTERNS = tuple(itertools.product((1, -1), repeat=3))


def _candidates(params, signs, max_p, flip):
    m1, m2, m3 = m_values(params)
    e1, e2, e3 = signs
    # Phi(0 + u) = 0 demands u be an (m1, m2)-root; with the Etilde
    # convention below, the consistent choice is eps -> -eps in u.
    u = rep_parameter_u((-e1, -e2), params)
    out = []
    for p in range(max_p + 1):
        Etilde = 4 * (p + 1) - e3 * m3 - e2 * m2 - e1 * m1
        if flip is not None and not (flip * Etilde < 0):
            # bound-state direction: flip * (eps.l - 2(p+1)) > 0
            continue
        certified = all(
            structure_function_eval(nu + u, Etilde, params) > 0
            for nu in range(1, p + 1))
        if not certified:
            continue
        out.append(RepSolution(signs=signs, u=u, p=p,
                               E=Fraction(1 - Etilde * Etilde, 4),
                               Etilde=Etilde, degeneracy=p + 1,
                               certified=True))
    return out


def find_spectrum(params: ModelParams, max_p: int,
                  sign_mode="all", flip=None) -> list[RepSolution]:
    """Enumerate finite-dimensional unitary representations.

    sign_mode: "all" (all 8 patterns), "h2" (pattern (-,-,+) with the
    bound-state direction of the two-sheeted hyperboloid), "s2"
    (pattern (-,-,-), global Hamiltonian sign flipped), or an explicit
    (eps1, eps2, eps3) tuple.  Each emitted solution carries the exact
    positivity certificate Phi(nu) > 0 for nu = 1..p.  An empty list is
    a valid result.
    """
    if sign_mode == "h2":
        patterns, flip = [H2_SIGNS], 1
    elif sign_mode == "s2":
        patterns, flip = [S2_SIGNS], -1
    elif sign_mode == "all":
        patterns = list(ALL_SIGN_PATTERNS)
    else:
        patterns = [tuple(sign_mode)]
    out = []
    for signs in patterns:
        out.extend(_candidates(params, signs, max_p, flip))
    return out


def match_spectrum_to_signature(metric: Metric, params: ModelParams,
                                max_p: int = 6) -> dict:
    """Search the 8 sign patterns and the global Hamiltonian sign for the
    pattern whose algebraic spectrum equals the analytic
    separation-of-variables spectrum of the surface named by the metric."""
    from .specsolver import analytic_spectrum_h2, analytic_spectrum_s2

    if metric.dim != 3:
        raise ValueError("d = 3 only")
    n_minus = metric.diag.count(-1)
    if params.l is None:
        raise ValueError("l parameters required")
    l = tuple(abs(Fraction(x)) for x in params.l)
    if n_minus in (0, 3):
        surface = "s2"
        analytic = analytic_spectrum_s2(l, max_levels=max_p + 1)
    else:
        surface = "h2"
        analytic = analytic_spectrum_h2(l)
    target = {(lv.E, lv.degeneracy) for lv in analytic if lv.P <= max_p}

    matches = []
    for signs in ALL_SIGN_PATTERNS:
        for flip in (1, -1):
            sols = find_spectrum(params, max_p, sign_mode=signs, flip=flip)
            got = {(flip * s.E, s.degeneracy) for s in sols}
            if got == target:
                matches.append({"signs": signs, "global_flip": flip})
    return {
        "surface": surface,
        "signature": metric.signature,
        "analytic_levels": sorted(target),
        "matches": matches,
        "vacuous": not target,
        "passed": bool(matches),
    }
