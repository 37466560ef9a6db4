"""Small exact helpers over prime fields, independent of the C++ library."""

from itertools import product


def polymul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def polypow(a, e, p):
    out = [1]
    for _ in range(e):
        out = polymul(out, a, p)
    return out


def linear(P, p):
    """Coefficients of c*x - a*y for the point P = (a, c), x^(1-i) y^i order."""
    a, c = P
    return [c % p, (-a) % p]


def points(p):
    """P^1(F_p) in canonical order: [0:1], then [1:t] for t = 0..p-1."""
    return [(0, 1)] + [(1, t) for t in range(p)]


def rref_key(rows, p):
    """Canonical reduced row echelon form of a list of rows, as a tuple."""
    m = [list(r) for r in rows]
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][col], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        r += 1
    return tuple(tuple(row) for row in m[:r])


def divisors(p, d):
    """Every effective degree-d divisor on rational points, as sorted tuples of point indices."""
    pts = list(range(p + 1))

    def rec(start, left):
        if left == 0:
            yield ()
            return
        for i in range(start, len(pts)):
            for rest in rec(i, left - 1):
                yield (i,) + rest

    return list(rec(0, d))


def divisor_form(D, p):
    pts = points(p)
    f = [1]
    for i in D:
        f = polymul(f, linear(pts[i], p), p)
    return f


def pgl2(p):
    """Canonical representatives: first nonzero of (a, b) equal to 1."""
    for a, b, c, d in product(range(p), repeat=4):
        if (a * d - b * c) % p == 0:
            continue
        lead = a if a else b
        if lead != 1:
            continue
        yield (a, b, c, d)
