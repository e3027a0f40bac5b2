"""Walkthrough: the Schrodinger-equation oracle.

Separation of variables reduces the H^2 and S^2 problems to
Poschl-Teller Sturm-Liouville equations; a finite-difference solver
with Richardson extrapolation reproduces the closed-form levels and
confirms the algebraic spectrum from the other side."""

from fractions import Fraction as F

from pseudosphere.specsolver import (
    GridSpec,
    analytic_spectrum_h2,
    analytic_spectrum_s2,
    angular_problem,
    solve_sturm_liouville,
    pde_spectrum,
    group_numeric,
)


def main():
    grid = GridSpec(nodes=2048)

    print("=" * 70)
    print("1. The angular Poschl-Teller channel")
    print("=" * 70)
    l1, l2 = F(1, 2), F(1, 2)
    lams = solve_sturm_liouville(angular_problem(l1, l2), grid, 3)
    print(f"  numeric lambda_m: {[round(v, 6) for v in lams]}")
    print(f"  closed form (l1+l2+2m+1)^2: "
          f"{[float((l1 + l2 + 2 * m + 1)**2) for m in range(3)]}")

    print()
    print("=" * 70)
    print("2. H^2, l = (1/2, 1/2, 13/2)")
    print("=" * 70)
    l = (F(1, 2), F(1, 2), F(13, 2))
    analytic = analytic_spectrum_h2(l)
    print(f"  analytic: {[(str(x.E), x.degeneracy) for x in analytic]}")
    numeric = pde_spectrum("h2", l, counts=(3, 3), grid=grid)
    print(f"  numeric (grouped): "
          f"{[(round(E, 5), mult) for E, mult in group_numeric(numeric)]}")

    print()
    print("=" * 70)
    print("3. S^2, l = (1/2, 1/2, 1/2)")
    print("=" * 70)
    l = (F(1, 2), F(1, 2), F(1, 2))
    analytic = analytic_spectrum_s2(l, max_levels=3)
    print(f"  analytic: {[(str(x.E), x.degeneracy) for x in analytic]}")
    numeric = [x for x in pde_spectrum("s2", l, counts=(3, 3), grid=grid)
               if x.P <= 2]
    print(f"  numeric (grouped): "
          f"{[(round(E, 5), mult) for E, mult in group_numeric(numeric)]}")

    print()
    print("=" * 70)
    print("4. An empty discrete spectrum is detected numerically too")
    print("=" * 70)
    l = (F(1, 2), F(1, 2), F(2))
    print(f"  l = {tuple(map(str, l))}: analytic levels = "
          f"{analytic_spectrum_h2(l)}")
    print(f"  numeric bound states below threshold: "
          f"{pde_spectrum('h2', l, counts=(2, 2), grid=grid)}")


if __name__ == "__main__":
    main()
