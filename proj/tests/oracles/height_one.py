# Frozen values for the exact-coefficient tests: cyclotomic relations,
# multiplicative preparation, Euler images, Honda p-series, delta values.
import sympy as sp
x, y, t = sp.symbols('x y t')

print("cyclotomic Phi_{p^m}(1+x), ascending")
for p in (2, 3):
    for m in (1, 2, 3):
        c = sp.Poly(sp.expand(sp.cyclotomic_poly(p**m, x).subs(x, 1 + x)), x).all_coeffs()[::-1]
        print(p, m, [int(v) for v in c], "rank", sp.totient(p**m))

print("euler image in Z[x]/Phi_{p^m}(1+x)")
for p, m in ((2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (5, 1)):
    q = p**m
    rel = sp.Poly(sp.cyclotomic_poly(q, x).subs(x, 1 + x), x)
    prod = sp.Integer(1)
    for i in range(1, q):
        prod = sp.rem(sp.expand(prod * ((1 + x)**i - 1)), rel.as_expr(), x)
    print(p, m, sp.expand(prod))

print("honda [p](x) over Q then mod p^N, ascending to T")
def honda_pseries(p, n, T, N):
    X = sp.symbols('X')
    ell = sum(X**(p**(n * k)) / sp.Integer(p)**k for k in range(0, 8) if p**(n * k) < T)
    # compositional inverse by fixed point e = X - (ell(e) - e)
    e = X
    for _ in range(T):
        e = sp.expand(X - (ell.subs(X, e) - e))
        e = sum(e.coeff(X, i) * X**i for i in range(1, T))
    ps = sp.expand(e.subs(X, p * ell))
    return [int(sp.Rational(ps.coeff(X, i)) % p**N) if sp.Rational(ps.coeff(X, i)).q == 1 else 'nonint'
            for i in range(0, T)]
for p, n, T, N in ((2, 1, 12, 1), (2, 2, 12, 1), (3, 1, 12, 1), (3, 2, 12, 1), (2, 1, 8, 3), (3, 1, 8, 2)):
    print(p, n, T, N, honda_pseries(p, n, T, N))

print("delta")
a = t**2 + 3 * t - 1
print("p=2 delta(t^2+3t-1)", sp.expand((a.subs(t, t**2) - a**2) / 2))
print("p=3 delta(t^2+3t-1)", sp.expand((a.subs(t, t**3) - a**3) / 3))
print("p=2 delta(5)", (5 - 25) // 2, "p=3 delta(5)", (5 - 125) // 3)
