"""Plain Fraction Gaussian elimination, kept independent of the package.

Used as the hand-row-reduction oracle for the fraction-free path.
"""
from fractions import Fraction


def naive_rref(rows, cols):
    m = [[Fraction(x) for x in r] for r in rows]
    piv = []
    top = 0
    for c in range(cols):
        sel = next((i for i in range(top, len(m)) if m[i][c] != 0), None)
        if sel is None:
            continue
        m[top], m[sel] = m[sel], m[top]
        p = m[top][c]
        m[top] = [x / p for x in m[top]]
        for i in range(len(m)):
            if i != top and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[top])]
        piv.append(c)
        top += 1
    return m, piv


def naive_kernel(rows, ncols):
    red, piv = naive_rref(rows, ncols)
    pivset = set(piv)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for k, p in enumerate(piv):
            v[p] = -red[k][f]
        out.append(tuple(v))
    return out


def naive_solve(rows, ncols, b):
    aug = [list(r) + [Fraction(bb)] for r, bb in zip(rows, b)]
    red, piv = naive_rref(aug, ncols + 1)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for k, p in enumerate(piv):
        x[p] = red[k][ncols]
    return tuple(x)
