"""Coxeter systems with exact element arithmetic.

A Coxeter system is given by its Coxeter matrix (m_ss = 1, m_st in
{2, 3, 4, 6} or 0 standing for infinity).  Group elements are stored as
the exact integer matrices of the reflection representation on the root
lattice: the basis is the simple roots, and s acts by

    s(alpha_j) = alpha_j - a(s, j) * alpha_s

with a(s, j) the Cartan integers chosen so a(s,t)*a(t,s) = 4cos^2(pi/m_st).
For the bond orders supported here these are integers, the representation
is faithful on the types we target (A/B/D, dihedral with m in {2,3,4,6},
and any tree-shaped diagram), and matrix equality decides group equality.
Lengths, descents and reduced words come from the sign of roots: s is a
right descent of w exactly when the column w(alpha_s) is non-positive.

Bond orders outside {2, 3, 4, 6, infinity} would need irrational entries
and are rejected.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

INFINITY = 0  # marker for m_st = infinity inside the Coxeter matrix

_CARTAN_PRODUCT = {2: 0, 3: 1, 4: 2, 6: 3, INFINITY: 4}

_LETTERS = ("s", "t", "u", "v", "w", "x", "y", "z")

DEFAULT_CAP = 10080


class CapExceededError(Exception):
    """A parabolic enumeration passed the configured size cap."""


class UnsupportedCoxeterMatrixError(Exception):
    """Bond order without an exact integer Cartan realization."""


def _default_names(rank: int) -> tuple[str, ...]:
    if rank <= len(_LETTERS):
        return _LETTERS[:rank]
    return tuple(f"s{i + 1}" for i in range(rank))


class CoxeterSystem:
    """A Coxeter system (W, S) with its Cartan-integer reflection matrices."""

    def __init__(self, matrix: Sequence[Sequence[int]], names: Sequence[str] | None = None):
        rank = len(matrix)
        m = tuple(tuple(int(v) for v in row) for row in matrix)
        for i in range(rank):
            if len(m[i]) != rank:
                raise ValueError("Coxeter matrix must be square")
            if m[i][i] != 1:
                raise ValueError("Coxeter matrix diagonal must be 1")
            for j in range(rank):
                if m[i][j] != m[j][i]:
                    raise ValueError("Coxeter matrix must be symmetric")
                if i != j and m[i][j] not in _CARTAN_PRODUCT:
                    raise UnsupportedCoxeterMatrixError(
                        f"bond order {m[i][j]} has no exact integer realization here")
        self.rank = rank
        self.matrix = m
        self.names = _default_names(rank) if names is None else tuple(names)
        if len(self.names) != rank or len(set(self.names)) != rank:
            raise ValueError("need distinct generator names, one per generator")
        self.cartan = self._build_cartan()
        self._check_tree_consistency()
        ident = tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank))
        self._identity_rows = ident
        self._gen_cache: dict[int, GroupElement] = {}

    def _build_cartan(self) -> tuple[tuple[int, ...], ...]:
        rank = self.rank
        cartan = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            cartan[i][i] = 2
            for j in range(rank):
                if i == j:
                    continue
                prod = _CARTAN_PRODUCT[self.matrix[i][j]]
                if prod == 0:
                    continue
                # orient the edge so the smaller index carries -1
                if i < j:
                    cartan[i][j] = -1
                    cartan[j][i] = -prod
        return tuple(tuple(row) for row in cartan)

    def _check_tree_consistency(self):
        """Reject asymmetric bonds around diagram cycles.

        The Cartan matrices used here are conjugate to the standard
        geometric representation exactly when the diagram admits a
        positive symmetrizer; for trees it always does, and for cycles it
        requires the edge-ratio product around every cycle to be 1.
        """
        rank = self.rank
        ratio: dict[int, Fraction] = {}
        for start in range(rank):
            if start in ratio:
                continue
            ratio[start] = Fraction(1)
            stack = [start]
            while stack:
                i = stack.pop()
                for j in range(rank):
                    if i == j or self.matrix[i][j] == 2:
                        continue
                    want = ratio[i] * Fraction(self.cartan[i][j], self.cartan[j][i])
                    if j in ratio:
                        if ratio[j] != want:
                            raise UnsupportedCoxeterMatrixError(
                                "diagram cycle with asymmetric bonds is not supported")
                    else:
                        ratio[j] = want
                        stack.append(j)

    # -- hashing / identity ------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, CoxeterSystem) and other.matrix == self.matrix \
            and other.names == self.names

    def __hash__(self):
        return hash((self.matrix, self.names))

    def __repr__(self):
        return f"CoxeterSystem(rank {self.rank}: {','.join(self.names)})"

    # -- elements -----------------------------------------------------------

    def identity(self) -> "GroupElement":
        return GroupElement(self, self._identity_rows)

    def generator(self, i: int) -> "GroupElement":
        if i not in self._gen_cache:
            rank = self.rank
            rows = [[int(i2 == j) for j in range(rank)] for i2 in range(rank)]
            for j in range(rank):
                rows[i][j] -= self.cartan[i][j]
            self._gen_cache[i] = GroupElement(self, tuple(tuple(r) for r in rows))
        return self._gen_cache[i]

    def generators(self) -> list["GroupElement"]:
        return [self.generator(i) for i in range(self.rank)]

    def from_word(self, word: Iterable[int]) -> "GroupElement":
        w = self.identity()
        for s in word:
            w = w.mul_gen(s)
        return w

    def gen_index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no generator named {name!r}") from None

    def subset(self, spec: Iterable[str] | Iterable[int] | str) -> frozenset[int]:
        """Parse a generator subset from names, indices, or 's,u' text."""
        if isinstance(spec, str):
            spec = [p for p in spec.split(",") if p]
        out = set()
        for item in spec:
            out.add(item if isinstance(item, int) else self.gen_index(item))
        if any(not 0 <= i < self.rank for i in out):
            raise ValueError(f"generator index out of range in {spec}")
        return frozenset(out)

    def subset_names(self, I: Iterable[int]) -> list[str]:
        return [self.names[i] for i in sorted(I)]


class GroupElement:
    """An element of W as its exact matrix on the root lattice."""

    __slots__ = ("system", "rows", "_hash", "_len", "_word", "_inv")

    def __init__(self, system: CoxeterSystem, rows: tuple):
        self.system = system
        self.rows = rows
        self._hash = None
        self._len = None
        self._word = None
        self._inv = None

    def __eq__(self, other):
        return (
            isinstance(other, GroupElement)
            and other.system == self.system
            and other.rows == self.rows
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def is_identity(self) -> bool:
        return self.rows == self.system._identity_rows

    # -- multiplication ------------------------------------------------------

    def mul_gen(self, s: int) -> "GroupElement":
        """Right multiplication w * s (cheap rank-one column update)."""
        cartan_s = self.system.cartan[s]
        rows = self.rows
        new_rows = tuple(
            tuple(row[j] - cartan_s[j] * row[s] for j in range(len(row)))
            for row in rows
        )
        return GroupElement(self.system, new_rows)

    def gen_mul(self, s: int) -> "GroupElement":
        """Left multiplication s * w (rank-one row update)."""
        cartan_s = self.system.cartan[s]
        rows = list(self.rows)
        rank = self.system.rank
        new_s = tuple(
            rows[s][j] - sum(cartan_s[k] * rows[k][j] for k in range(rank) if cartan_s[k])
            for j in range(rank)
        )
        rows[s] = new_s
        return GroupElement(self.system, tuple(rows))

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if not isinstance(other, GroupElement):
            return NotImplemented
        if other.system != self.system:
            raise ValueError("elements of different Coxeter systems")
        a, b = self.rows, other.rows
        rank = self.system.rank
        cols_b = list(zip(*b))
        new_rows = tuple(
            tuple(sum(ra[k] * cb[k] for k in range(rank)) for cb in cols_b)
            for ra in a
        )
        return GroupElement(self.system, new_rows)

    def root_image(self, s: int) -> tuple:
        """Coordinates of w(alpha_s) in the simple-root basis."""
        return tuple(row[s] for row in self.rows)

    # -- descents / length / words --------------------------------------------

    def right_descents(self) -> frozenset[int]:
        out = []
        for s in range(self.system.rank):
            if all(row[s] <= 0 for row in self.rows):
                out.append(s)
        return frozenset(out)

    def left_descents(self) -> frozenset[int]:
        return self.inverse().right_descents()

    def length(self) -> int:
        if self._len is None:
            self._len = len(self.word())
        return self._len

    def word(self) -> tuple[int, ...]:
        """The lexicographically least reduced word for this element."""
        if self._word is None:
            letters = []
            v = self.inverse()
            while not v.is_identity():
                ds = v.right_descents()
                if not ds:
                    raise RuntimeError("no descent found; broken representation")
                s = min(ds)
                letters.append(s)
                v = v.mul_gen(s)
            self._word = tuple(letters)
            self._len = len(letters)
        return self._word

    def inverse(self) -> "GroupElement":
        if self._inv is None:
            w = self
            rev = []
            while not w.is_identity():
                s = min(w.right_descents())
                rev.append(s)
                w = w.mul_gen(s)
            inv = self.system.from_word(rev)
            self._inv = inv
            if inv._inv is None:
                inv._inv = self
        return self._inv

    def reduced_words(self) -> list[tuple[int, ...]]:
        """All reduced words, in lexicographic order."""
        if self.is_identity():
            return [()]
        out = []
        for s in sorted(self.left_descents()):
            for tail in self.gen_mul(s).reduced_words():
                out.append((s,) + tail)
        return out

    def names(self) -> str:
        return "".join(self.system.names[s] for s in self.word()) or "e"

    def __repr__(self):
        return f"<{self.names()}>"


# -- Bruhat order ---------------------------------------------------------------


@lru_cache(maxsize=200000)
def bruhat_leq(x: GroupElement, y: GroupElement) -> bool:
    """Bruhat order via the descent/lifting recursion on y."""
    if x.system != y.system:
        raise ValueError("elements of different Coxeter systems")
    if x.length() > y.length():
        return False
    if x == y or x.is_identity():
        return True
    if y.is_identity():
        return False
    s = min(y.right_descents())
    ys = y.mul_gen(s)
    xs = x.mul_gen(s)
    if xs.length() < x.length():
        return bruhat_leq(xs, ys)
    return bruhat_leq(x, ys)


# -- parabolic subgroups ----------------------------------------------------------


@lru_cache(maxsize=4096)
def enumerate_parabolic(system: CoxeterSystem, I: frozenset[int],
                        cap: int = DEFAULT_CAP) -> tuple[GroupElement, ...]:
    """All elements of W_I by BFS, or raise CapExceededError past cap."""
    gens = sorted(I)
    seen = {system.identity()}
    frontier = [system.identity()]
    while frontier:
        new = []
        for w in frontier:
            for s in gens:
                ws = w.mul_gen(s)
                if ws not in seen:
                    seen.add(ws)
                    new.append(ws)
                    if len(seen) > cap:
                        raise CapExceededError(
                            f"|W_I| exceeds cap {cap} for I = {system.subset_names(I)}")
        frontier = new
    return tuple(sorted(seen, key=lambda w: (w.length(), w.word())))


def is_finitary(system: CoxeterSystem, I: Iterable[int], cap: int = DEFAULT_CAP) -> bool:
    try:
        enumerate_parabolic(system, frozenset(I), cap)
        return True
    except CapExceededError:
        return False


@lru_cache(maxsize=4096)
def longest_element(system: CoxeterSystem, I: frozenset[int],
                    cap: int = DEFAULT_CAP) -> GroupElement:
    """w_I by greedy ascent; raises CapExceededError if I is not finitary."""
    w = system.identity()
    steps = 0
    limit = cap * 64  # generous: length of w_I is far below |W_I| in our range
    while True:
        ds = w.right_descents()
        up = [s in I and s not in ds for s in range(system.rank)]
        s = next((i for i, flag in enumerate(up) if flag), None)
        if s is None:
            return w
        w = w.mul_gen(s)
        steps += 1
        if steps > limit:
            raise CapExceededError(f"no longest element found within {limit} steps")


def coset_min(system: CoxeterSystem, I: frozenset[int], w: GroupElement,
              J: frozenset[int]) -> GroupElement:
    """The Bruhat-minimal element of the double coset W_I w W_J."""
    changed = True
    while changed:
        changed = False
        for s in sorted(I & w.left_descents()):
            w = w.gen_mul(s)
            changed = True
            break
        else:
            for s in sorted(J & w.right_descents()):
                w = w.mul_gen(s)
                changed = True
                break
    return w


def enumerate_double_coset(system: CoxeterSystem, I: frozenset[int], w: GroupElement,
                           J: frozenset[int], cap: int = DEFAULT_CAP) -> tuple[GroupElement, ...]:
    """All elements of W_I w W_J by BFS closure."""
    seen = {w}
    frontier = [w]
    while frontier:
        new = []
        for v in frontier:
            for s in I:
                x = v.gen_mul(s)
                if x not in seen:
                    seen.add(x)
                    new.append(x)
            for s in J:
                x = v.mul_gen(s)
                if x not in seen:
                    seen.add(x)
                    new.append(x)
        if len(seen) > cap:
            raise CapExceededError(f"double coset exceeds cap {cap}")
        frontier = new
    return tuple(sorted(seen, key=lambda v: (v.length(), v.word())))


def coset_max(system: CoxeterSystem, I: frozenset[int], w: GroupElement,
              J: frozenset[int], cap: int = DEFAULT_CAP) -> GroupElement:
    """The Bruhat-maximal element, found by exhausting the finite coset."""
    elements = enumerate_double_coset(system, I, w, J, cap)
    top_len = max(v.length() for v in elements)
    tops = [v for v in elements if v.length() == top_len]
    if len(tops) != 1:
        raise RuntimeError("double coset has no unique longest element")
    return tops[0]


# -- built-in types ------------------------------------------------------------------


def coxeter_A(n: int, names: Sequence[str] | None = None) -> CoxeterSystem:
    """Type A_n (symmetric group S_{n+1})."""
    m = [[1 if i == j else (3 if abs(i - j) == 1 else 2) for j in range(n)] for i in range(n)]
    return CoxeterSystem(m, names)


def symmetric_group(n: int, names: Sequence[str] | None = None) -> CoxeterSystem:
    """The symmetric group S_n as the Coxeter system A_{n-1}."""
    if n < 1:
        raise ValueError("need n >= 1")
    return coxeter_A(n - 1, names)


def coxeter_BC(n: int, names: Sequence[str] | None = None) -> CoxeterSystem:
    """Type B_n = C_n; the last bond has order 4."""
    if n < 2:
        raise ValueError("need n >= 2")
    m = [[1 if i == j else (3 if abs(i - j) == 1 else 2) for j in range(n)] for i in range(n)]
    m[n - 2][n - 1] = m[n - 1][n - 2] = 4
    return CoxeterSystem(m, names)


def coxeter_D(n: int, names: Sequence[str] | None = None) -> CoxeterSystem:
    """Type D_n: a chain 0..n-2 with the extra node n-1 attached to n-3."""
    if n < 4:
        raise ValueError("need n >= 4")
    m = [[2] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 1
    for i in range(n - 2):
        m[i][i + 1] = m[i + 1][i] = 3
    m[n - 3][n - 1] = m[n - 1][n - 3] = 3
    return CoxeterSystem(m, names)


def dihedral(m: int, names: Sequence[str] | None = None) -> CoxeterSystem:
    """The dihedral system I_2(m); m in {2, 3, 4, 6} or INFINITY."""
    return CoxeterSystem([[1, m], [m, 1]], names)


def affine_A(n: int, names: Sequence[str] | None = None) -> CoxeterSystem:
    """Affine type A~_{n-1}: a cycle of n nodes, all bonds of order 3."""
    if n < 3:
        raise ValueError("need n >= 3 for the cyclic diagram")
    m = [[2] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 1
        j = (i + 1) % n
        m[i][j] = m[j][i] = 3
    return CoxeterSystem(m, names)
