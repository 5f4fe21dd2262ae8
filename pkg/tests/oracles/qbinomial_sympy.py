"""Independent oracle for q-integers and q-binomials: sympy rational-function cancellation.

Run directly to print the frozen values used in test_qcoeff.py as [exponent, coefficient] lists.
"""
import sympy as sp

q = sp.symbols("q")


def qint(n):
    return (q**n - q**-n) / (q - 1 / q)


def qfact(n):
    out = sp.Integer(1)
    for k in range(1, n + 1):
        out *= qint(k)
    return out


def qbinom(n, k):
    return qfact(n) / (qfact(k) * qfact(n - k))


def laurent_terms(expr):
    expr = sp.cancel(sp.together(expr))
    num, den = sp.fraction(expr)
    den_poly = sp.Poly(den, q)
    assert len(den_poly.terms()) == 1, "not a Laurent polynomial"
    (dexp,), dcoef = den_poly.terms()[0]
    out = {}
    for (e,), c in sp.Poly(num, q).terms():
        out[e - dexp] = sp.Rational(c, dcoef)
    return sorted([e, int(c)] for e, c in out.items())


if __name__ == "__main__":
    for n, k in [(2, 1), (4, 2), (5, 2), (6, 3)]:
        print(f"binomial({n},{k})", laurent_terms(qbinom(n, k)))
    print("factorial(3)", laurent_terms(qfact(3)))
