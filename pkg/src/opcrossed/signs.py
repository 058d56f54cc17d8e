"""Koszul sign bookkeeping.

Package-wide convention: an element of C(V) in arity r is a desuspended
word of suspended letters, so a letter holding a degree-d vector works in
degree d+1, and the word itself carries one extra -1 shift. Splitting an
inner block out of a word costs a uniform -1 (the s s^{-1} = -1 rule);
maps applied inside a word pass the letters to their left with the usual
Koszul rule. All helpers here are pure.
"""
from __future__ import annotations

from fractions import Fraction


def parity(n: int) -> Fraction:
    return Fraction(-1 if n & 1 else 1)


def perm_sign(perm) -> int:
    """Sign of a permutation given as a tuple of images (0-based)."""
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def koszul_rearrange_sign(order, degrees) -> int:
    """Sign of rearranging graded letters (x_1..x_r) into (x_{order_1}..).

    degrees[i] is the degree of letter i; an inverted pair (i, j) costs
    (-1)^(d_i d_j).
    """
    exp = 0
    for t in range(len(order)):
        for u in range(t + 1, len(order)):
            if order[t] > order[u]:
                exp += degrees[order[t]] * degrees[order[u]]
    return -1 if exp & 1 else 1


def sort_letters(keys, degrees):
    """Stable-sort letters by key with Koszul swap signs.

    Returns (sign, order) where order lists original positions in sorted
    key order; sign is 0 when two equal keys of odd degree collide (the
    element dies in the graded exterior quotient).
    """
    order = sorted(range(len(keys)), key=lambda t: (keys[t], t))
    sign = koszul_rearrange_sign(order, degrees)
    for t in range(len(order) - 1):
        a, b = order[t], order[t + 1]
        if keys[a] == keys[b] and degrees[a] % 2 == 1:
            return 0, tuple(order)
    return sign, tuple(order)


def prefix_sign(map_degree: int, passed_degrees) -> int:
    """Sign for moving a map of the given degree past letters of the given degrees."""
    total = sum(passed_degrees)
    return -1 if (map_degree * total) & 1 else 1
