"""Generalized Samuel multiplicities of base ideals at the origin.

Run from the repository root:

    python3 demos/03_generalized_samuel.py
"""

from brmult import (
    FreeModuleSpec,
    LocalQuery,
    ModulePresentation,
    QQ,
    RingSpec,
    SubmoduleSpec,
    generalized_samuel_report,
    has_maximal_analytic_spread,
    lambda_local,
    samuel_function,
)


def main():
    ring = RingSpec(QQ, ("x", "y"), ())
    module = ModulePresentation(FreeModuleSpec(ring, ((0, 0),)))
    x, y = ring.gen("x"), ring.gen("y")

    ideals = [
        ("(x, y)", (x, y)),
        ("(x)", (x,)),
        ("(x^2, y^2)", (x * x, y * y)),
    ]
    for label, gens in ideals:
        ideal = SubmoduleSpec(ring, 0, gens)
        q = LocalQuery(module, ideal)
        report = generalized_samuel_report(q)
        spread = has_maximal_analytic_spread(q)
        print(f"I = {label}:")
        print(f"  e(I, M) = {report.e}  (r = {report.r}, k = {report.k},"
              f" next k agrees: {report.e == report.e_next_k})")
        print(f"  maximal analytic spread: {spread}")
        print()

    # For an m-primary ideal the associated-graded length function agrees
    # with the plain Samuel function once k is large enough.
    squares = SubmoduleSpec(ring, 0, (x * x, y * y))
    q = LocalQuery(module, squares)
    print("lambda(n) versus length(M / I^{n+1} M) for I = (x^2, y^2):")
    for n in range(5):
        via_graded = lambda_local(q, n, k=6)
        via_quotient = samuel_function(module, squares, n)
        marker = "==" if via_graded == via_quotient else "!="
        print(f"  n={n}: {via_graded} {marker} {via_quotient}")
    print()
    print("The ideal (x) has a one-dimensional zero locus, so its degree-2")
    print("coefficient vanishes: e = 0 and the spread is not maximal.")


if __name__ == "__main__":
    main()
