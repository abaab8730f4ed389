"""Symmetric-function kernels for standard permutation actions.

When every generator of a parabolic subgroup acts on the variables by an
adjacent transposition, the subgroup is a product of symmetric groups on
variable intervals ("blocks"), and the Demazure operator of its longest
element collapses monomial-by-monomial:

    del_{w_K}(x^alpha) = sign * s_mu(block vars)   or 0,

where within each block the exponents must be pairwise distinct, sign is
the parity of the descending sort, and mu = sorted(alpha) - staircase.
This is the bialternant identity antisym(x^alpha) = sign * a_{sorted},
divided by the Vandermonde.  It turns long Demazure words (for example
the Frobenius trace of S_7) into a linear pass over the input terms.

Schur polynomials are expanded through the branching rule
s_mu(x_1..x_c) = sum over interlacing nu of s_nu(x_1..x_{c-1}) x_c^{|mu|-|nu|},
memoized per (shape, variable count).
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .poly import Polynomial, PolyRing

Shape = tuple  # partition: weakly decreasing positive ints, no trailing zeros


def normalize_shape(parts: Iterable[int]) -> Shape:
    parts = tuple(p for p in parts if p)
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)) or any(p < 0 for p in parts):
        raise ValueError(f"not a partition: {parts}")
    return parts


def partitions_in_box(rows: int, cols: int) -> list[Shape]:
    """All partitions with at most `rows` parts, each at most `cols`."""
    out: list[Shape] = []

    def rec(prefix: list[int], maxpart: int, left: int):
        out.append(normalize_shape(prefix))
        if left == 0:
            return
        for p in range(min(maxpart, cols), 0, -1):
            rec(prefix + [p], p, left - 1)

    rec([], cols, rows)
    return sorted(set(out), key=lambda sh: (sum(sh), sh))


def partitions_of(total: int, max_parts: int) -> list[Shape]:
    """All partitions of `total` with at most `max_parts` parts."""
    if total == 0:
        return [()]
    out: list[Shape] = []

    def rec(prefix: list[int], maxpart: int, left: int):
        if left == 0:
            out.append(tuple(prefix))
            return
        if len(prefix) == max_parts:
            return
        for p in range(min(maxpart, left), 0, -1):
            rec(prefix + [p], p, left - p)

    rec([], total, total)
    return out


def box_complement(shape: Shape, rows: int, cols: int) -> Shape:
    """The 180-degree rotated complement of a partition in a rows x cols box."""
    padded = list(shape) + [0] * (rows - len(shape))
    return normalize_shape(tuple(cols - padded[rows - 1 - i] for i in range(rows)))


@lru_cache(maxsize=None)
def schur_expand(shape: Shape, nvars: int) -> tuple[tuple[tuple, int], ...]:
    """Monomial expansion of s_shape(x_1..x_nvars): ((exps, coeff), ...).

    Coefficients are the Kostka numbers; callers must not mutate.
    """
    shape = normalize_shape(shape)
    if len(shape) > nvars:
        return ()
    if nvars == 0:
        return (((), 1),)
    if not shape:
        return (((0,) * nvars, 1),)
    acc: dict[tuple, int] = {}
    total = sum(shape)
    padded = shape + (0,)
    ranges = [range(padded[i + 1], padded[i] + 1) for i in range(len(shape))]
    for nu_full in itertools.product(*ranges):
        nu = normalize_shape(nu_full)
        last = total - sum(nu)
        for exps, c in schur_expand(nu, nvars - 1):
            key = exps + (last,)
            acc[key] = acc.get(key, 0) + c
    return tuple(sorted(acc.items()))


def schur_in_vars(ring: PolyRing, shape: Shape, var_idxs: Sequence[int]) -> Polynomial:
    """s_shape in the given 0-based ring variables (zero if too many rows)."""
    var_idxs = list(var_idxs)
    terms = {}
    one = ring.domain.coerce(1)
    for exps, c in schur_expand(normalize_shape(shape), len(var_idxs)):
        full = [0] * ring.nvars
        for v, e in zip(var_idxs, exps):
            full[v] = e
        terms[tuple(full)] = c * one
    return ring.poly(terms)


def complete_symmetric(ring: PolyRing, var_idxs: Sequence[int], i: int) -> Polynomial:
    """h_i in the given variables: the sum of all degree-i monomials there.

    h_0 = 1 and h_i = 0 for i < 0.
    """
    if i < 0:
        return ring.zero()
    one = ring.domain.coerce(1)
    return ring.poly({m: one for m in ring.monomials_of_degree(i, var_idxs)})


def elementary_symmetric(ring: PolyRing, var_idxs: Sequence[int], i: int) -> Polynomial:
    if i < 0 or i > len(var_idxs):
        return ring.zero()
    one = ring.domain.coerce(1)
    terms = {}
    for combo in itertools.combinations(sorted(var_idxs), i):
        exps = [0] * ring.nvars
        for v in combo:
            exps[v] = 1
        terms[tuple(exps)] = one
    return ring.poly(terms)


# -- blocks -------------------------------------------------------------------


def blocks_from_positions(positions: Iterable[int], nvars: int) -> tuple[tuple[int, ...], ...]:
    """Variable blocks of the parabolic generated by adjacent swaps.

    `positions` holds p for each generator swapping variables p, p+1
    (0-based).  Returns the nontrivial blocks as sorted index tuples.
    """
    pos = sorted(set(positions))
    blocks = []
    i = 0
    while i < len(pos):
        j = i
        while j + 1 < len(pos) and pos[j + 1] == pos[j] + 1:
            j += 1
        blocks.append(tuple(range(pos[i], pos[j] + 2)))
        i = j + 1
    return tuple(blocks)


def staircase_exponents(blocks: Sequence[Sequence[int]], nvars: int) -> tuple:
    """Exponent tuple of the product of per-block staircase monomials."""
    exps = [0] * nvars
    for block in blocks:
        c = len(block)
        for k, v in enumerate(block):
            exps[v] = c - 1 - k
    return tuple(exps)


def _sort_sign(sub: Sequence[int]) -> tuple[tuple, int] | None:
    """Descending sort with permutation sign; None when entries repeat."""
    n = len(sub)
    inv = 0
    for i in range(n):
        for j in range(i + 1, n):
            if sub[i] == sub[j]:
                return None
            if sub[i] < sub[j]:
                inv += 1
    return tuple(sorted(sub, reverse=True)), (-1) ** inv


def block_collapse(f: Polynomial, blocks: Sequence[Sequence[int]]) -> Polynomial:
    """del_{w_K}(f) for the parabolic with the given variable blocks."""
    ring = f.ring
    nv = ring.nvars
    in_block = set()
    for b in blocks:
        in_block.update(b)
    others = [v for v in range(nv) if v not in in_block]

    acc: dict[tuple, object] = {}
    for mono, c in f.terms.items():
        sign = 1
        shapes = []
        dead = False
        for block in blocks:
            res = _sort_sign([mono[v] for v in block])
            if res is None:
                dead = True
                break
            sorted_desc, sg = res
            cblock = len(block)
            shapes.append(tuple(e - (cblock - 1 - k) for k, e in enumerate(sorted_desc)))
            sign *= sg
        if dead:
            continue
        key = (tuple(shapes), tuple(mono[v] for v in others))
        acc[key] = acc.get(key, 0) + sign * c

    out: dict[tuple, object] = {}
    for (shapes, other_exps), c in acc.items():
        if c == 0:
            continue
        base = [0] * nv
        for v, e in zip(others, other_exps):
            base[v] = e
        partial = {tuple(base): c}
        for block, shape in zip(blocks, shapes):
            expansion = schur_expand(normalize_shape(shape), len(block))
            new: dict[tuple, object] = {}
            for g, cg in partial.items():
                glist = list(g)
                for exps, k in expansion:
                    for v, e in zip(block, exps):
                        glist[v] = e
                    key = tuple(glist)
                    new[key] = new.get(key, 0) + cg * k
            partial = new
        for key, cg in partial.items():
            out[key] = out.get(key, 0) + cg
    return ring.poly(out)
