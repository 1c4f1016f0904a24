"""Brute-force reference implementations, deliberately independent of the
package's fast paths."""

from __future__ import annotations

import itertools


def all_invertible(ell):
    """Every invertible 2x2 matrix mod ell, as (a, b, c, d) tuples."""
    return [
        m for m in itertools.product(range(ell), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % ell
    ]


def mat_mul(m, n, ell):
    a, b, c, d = m
    e, f, g, h = n
    return ((a * e + b * g) % ell, (a * f + b * h) % ell, (c * e + d * g) % ell, (c * f + d * h) % ell)


def mat_inv(m, ell):
    a, b, c, d = m
    det_inv = pow(a * d - b * c, -1, ell)
    return (d * det_inv % ell, -b * det_inv % ell, -c * det_inv % ell, a * det_inv % ell)


def conjugacy_partition(ell):
    """Conjugacy classes of GL2(F_ell) as a list of frozensets, by direct orbit sweep."""
    group = all_invertible(ell)
    inverses = {g: mat_inv(g, ell) for g in group}
    unseen = set(group)
    classes = []
    for m in group:
        if m not in unseen:
            continue
        cls = frozenset(mat_mul(mat_mul(g, m, ell), inverses[g], ell) for g in group)
        unseen -= cls
        classes.append(cls)
    return classes


def union_find_orbits(images):
    """Number of orbits of <p> via union-find over the edges i -> p(i)."""
    parent = list(range(len(images)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in enumerate(images):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    return sum(1 for i in range(len(images)) if find(i) == i)


def naive_point_count(A, B, p):
    """#E(F_p) by testing every (x, y) pair, plus the point at infinity."""
    return 1 + sum(
        1 for x in range(p) for y in range(p) if (y * y - (x**3 + A * x + B)) % p == 0
    )


def squares_mod(ell):
    return {x * x % ell for x in range(1, ell)}
