"""Counts distinct pencils in each enumerated family over small primes by
direct expansion of the defining forms and RREF deduplication."""

from common import divisor_form, divisors, linear, points, polymul, polypow, rref_key


def primitive_root(p):
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in {r for r in range(2, p) if (p - 1) % r == 0 and all(r % s for s in range(2, r))}):
            return g
    raise ValueError


def alpha_reps(p, m):
    from math import gcd
    q1 = p - 1
    h = (q1 // 2) * gcd(m, q1) // gcd(q1 // 2, gcd(m, q1))
    index = q1 // h
    g = primitive_root(p)
    return [pow(g, i, p) for i in range(index)]


def cyclic(n, p):
    seen = set()
    pts = points(p)
    for P in pts:
        for Q in pts:
            if P != Q:
                seen.add(rref_key([polypow(linear(P, p), n, p), polypow(linear(Q, p), n, p)], p))
    return len(seen)


def dihedral(m, p):
    n = 2 * m
    seen = set()
    from itertools import product
    for alpha in alpha_reps(p, m):
        am = pow(alpha, m, p)
        for a, b, c, d in product(range(p), repeat=4):
            if (a * d - b * c) % p == 0:
                continue
            l1, l2 = [c, -a % p], [d, -b % p]
            A = polymul(polypow(l1, m, p), polypow(l2, m, p), p)
            B = [(am * x + y) % p for x, y in zip(polypow(l1, n, p), polypow(l2, n, p))]
            seen.add(rref_key([A, B], p))
    return len(seen)


def fiber(n, m, p):
    D2 = (0,) * m          # m [0:1]
    D3 = (1,) * m          # m [1:0]  (index 1 is [1:0])
    seen = set()
    for D1 in divisors(p, n - m):
        seen.add(rref_key([divisor_form(D1 + D2, p), divisor_form(D1 + D3, p)], p))
    return len(seen)


def stratum(n, m, p):
    dm = divisors(p, m)
    seen = set()
    for D1 in divisors(p, n - m):
        g = divisor_form(D1, p)
        for D2 in dm:
            f2 = polymul(g, divisor_form(D2, p), p)
            for D3 in dm:
                if set(D2) & set(D3):
                    continue
                seen.add(rref_key([f2, polymul(g, divisor_form(D3, p), p)], p))
    return len(seen)


if __name__ == "__main__":
    print("C3", cyclic(3, 7), cyclic(3, 13))
    print("C4", cyclic(4, 13), cyclic(4, 29))
    print("D3", dihedral(3, 7), dihedral(3, 13), dihedral(3, 37))
    print("fiber5,3", fiber(5, 3, 7), fiber(5, 3, 13))
    print("X3,2", stratum(3, 2, 7), stratum(3, 2, 13))
