"""Extension-field conventions computed by brute force.

Elements of F_{p^k} are coded as sum c_i p^i. The modulus is the monic
irreducible x^k + c_{k-1} x^{k-1} + ... + c_0 minimizing (c_{k-1}, ..., c_0)
lexicographically; the generator is the primitive element of smallest code.
"""

from itertools import product


def pmod(a, m, p):
    a = a[:]
    while len(a) >= len(m):
        f = a[-1]
        if f:
            s = len(a) - len(m)
            for i, c in enumerate(m):
                a[s + i] = (a[s + i] - f * c) % p
        a.pop()
    return a


def mul(a, b, m, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    r = pmod(out, m, p)
    return r + [0] * (len(m) - 1 - len(r))


def monic_polys(p, d):
    for low in product(range(p), repeat=d):
        yield list(low) + [1]


def divides(g, f, p):
    r = pmod(f, g, p)
    return not any(r)


def irreducible(f, p):
    k = len(f) - 1
    for d in range(1, k // 2 + 1):
        for g in monic_polys(p, d):
            if divides(g, f, p):
                return False
    return True


def modulus(p, k):
    best = None
    for top in product(range(p), repeat=k):  # (c_{k-1}, ..., c_0), lexicographic
        f = list(reversed(top)) + [1]
        if irreducible(f, p):
            return f
    return best


def decode(v, p, k):
    return [(v // p ** i) % p for i in range(k)]


def encode(c, p):
    return sum(x * p ** i for i, x in enumerate(c))


def order(v, m, p, k):
    one = decode(1, p, k)
    x = decode(v, p, k)
    cur, n = x, 1
    while cur != one:
        cur = mul(cur, x, m, p)
        n += 1
    return n


if __name__ == "__main__":
    for p, k in [(3, 2), (5, 2), (7, 2), (13, 2), (3, 3), (3, 4), (5, 3)]:
        m = modulus(p, k)
        q = p ** k
        gen = next(v for v in range(1, q) if order(v, m, p, k) == q - 1)
        a, b = q - 2, (q // 2) + 1
        prod = encode(mul(decode(a, p, k), decode(b, p, k), m, p), p)
        print(f"p={p} k={k} modulus={m} generator={gen} {a}*{b}={prod}")
