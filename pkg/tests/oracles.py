"""Independent reference computations on plain nested lists.

Nothing here imports planeform; these are the brute-force counterparts the
tests compare against.
"""

from fractions import Fraction


def mat(rows):
    return [[Fraction(x) for x in r] for r in rows]


def mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def transpose(a):
    return [list(r) for r in zip(*a)]


def inv2(a):
    d = a[0][0] * a[1][1] - a[0][1] * a[1][0]
    return [[a[1][1] / d, -a[0][1] / d], [-a[1][0] / d, a[0][0] / d]]


def enumerate_group(gens, limit=500):
    """All finite products of the generators (naive fixed-point loop, no BFS queue)."""
    ident = mat([[1, 0], [0, 1]])
    elems = [ident]
    changed = True
    while changed:
        changed = False
        for a in list(elems):
            for g in gens:
                p = mul(a, g)
                if p not in elems:
                    elems.append(p)
                    changed = True
                    if len(elems) > limit:
                        raise RuntimeError("group too large")
    return elems


def orbit_average(elems, gram):
    acc = [[Fraction(0)] * 2 for _ in range(2)]
    for g in elems:
        m = mul(mul(transpose(g), gram), g)
        acc = [[acc[i][j] + m[i][j] for j in range(2)] for i in range(2)]
    return [[x / len(elems) for x in r] for r in acc]


def det_x_minus(m):
    """Coefficients (c1, c0) of det(xI - M) = x^2 + c1 x + c0, by expanding the 2x2 determinant."""
    # (x - a)(x - d) - b c = x^2 - (a + d) x + (a d - b c)
    (a, b), (c, d) = m
    return -(a + d), a * d - b * c


def ruler_by_recurrence(a, b, k, l, n):
    """Build the ruler from c[i+1] = 2 c[i] - c[i-1] alone.

    With c[l] = b fixed and c[l+1] = x unknown, each c[i] is tracked as the
    affine expression u + v*x per coordinate; c[k] = a then pins x.
    """
    out = []
    for bi, ai in zip(b, a):
        expr = {l: (Fraction(bi), Fraction(0)), l + 1: (Fraction(0), Fraction(1))}
        for i in range(l + 2, n + 1):
            (u1, v1), (u0, v0) = expr[i - 1], expr[i - 2]
            expr[i] = (2 * u1 - u0, 2 * v1 - v0)
        for i in range(l - 1, -1, -1):
            (u1, v1), (u2, v2) = expr[i + 1], expr[i + 2]
            expr[i] = (2 * u1 - u2, 2 * v1 - v2)
        u, v = expr[k]
        x = (Fraction(ai) - u) / v
        out.append([expr[i][0] + expr[i][1] * x for i in range(n + 1)])
    return [list(p) for p in zip(*out)]


def rulers_by_search(a, b, k, l, n, grid):
    """Every integer-recurrence sequence over ``grid`` with c[k] = a, c[l] = b (per coordinate)."""
    per_coord = []
    for ai, bi in zip(a, b):
        hits = []
        for x0 in grid:
            for x1 in grid:
                seq = [x0, x1]
                while len(seq) < n + 1:
                    seq.append(2 * seq[-1] - seq[-2])
                if seq[k] == ai and seq[l] == bi:
                    hits.append(seq)
        per_coord.append(hits)
    return [list(zip(*combo)) for combo in _product(per_coord)]


def _product(lists):
    if not lists:
        yield ()
        return
    for head in lists[0]:
        for rest in _product(lists[1:]):
            yield (head,) + rest
