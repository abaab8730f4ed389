"""Parabolic double cosets: redundancies, cores, atoms, coset Demazure operators.

An (I, J)-coset p in W_I \\ W / W_J is stored by its Bruhat-minimal and
maximal elements (the maximum is found by exhausting the coset, which is
the most trustworthy oracle at desk scale).  Cosets are identified by
(I, J, min).

Conventions:
  leftred(p)  = I intersect pmin J pmin^-1
  rightred(p) = pmin^-1 I pmin intersect J
  core(p)     = the (leftred, rightred)-coset of pmin
  y(p)        = pmax * w_J   (so the coset Demazure operator is del_{y(p)}
                restricted to R^J, landing in R^I)

p is atomic when there are s not in I and t not in J with
I + s = J + t = M finitary, pmax = w_M and w_M s = t w_M.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .coxeter import (DEFAULT_CAP, CapExceededError, CoxeterSystem, GroupElement,
                      bruhat_leq, coset_min, enumerate_double_coset,
                      enumerate_parabolic, longest_element, symmetric_group)
from .poly import Polynomial
from .realization import Realization


class DoubleCoset:
    """An (I, J)-coset with cached combinatorial data."""

    def __init__(self, system: CoxeterSystem, I: frozenset[int], J: frozenset[int],
                 pmin: GroupElement, pmax: GroupElement,
                 elements: tuple[GroupElement, ...] | None = None):
        self.system = system
        self.I = I
        self.J = J
        self.min = pmin
        self.max = pmax
        self._elements = elements
        self._leftred = None
        self._rightred = None
        self._core = None
        self._atomic = None

    def __eq__(self, other):
        return (isinstance(other, DoubleCoset) and other.system == self.system
                and other.I == self.I and other.J == self.J and other.min == self.min)

    def __hash__(self):
        return hash((self.system, self.I, self.J, self.min))

    def __repr__(self):
        names = self.system.subset_names
        return (f"Coset[{','.join(names(self.I))}|{self.min.names()}"
                f"|{','.join(names(self.J))}]")

    # -- redundancies and core -------------------------------------------------

    def leftred(self) -> frozenset[int]:
        if self._leftred is None:
            pm, pminv = self.min, self.min.inverse()
            gens = self.system.generators()
            out = set()
            for s in self.I:
                conj = pminv * gens[s] * pm
                if any(conj == gens[j] for j in self.J):
                    out.add(s)
            self._leftred = frozenset(out)
        return self._leftred

    def rightred(self) -> frozenset[int]:
        if self._rightred is None:
            pm, pminv = self.min, self.min.inverse()
            gens = self.system.generators()
            out = set()
            for t in self.J:
                conj = pm * gens[t] * pminv
                if any(conj == gens[i] for i in self.I):
                    out.add(t)
            self._rightred = frozenset(out)
        return self._rightred

    def is_core(self) -> bool:
        return self.leftred() == self.I and self.rightred() == self.J

    def core(self, cap: int = DEFAULT_CAP) -> "DoubleCoset":
        """The (leftred, rightred)-coset of pmin."""
        if self._core is None:
            self._core = coset_of(self.system, self.leftred(), self.min,
                                  self.rightred(), cap)
        return self._core

    # -- atomicity -----------------------------------------------------------------

    def atomic_data(self, cap: int = DEFAULT_CAP) -> tuple[frozenset[int], int, int] | None:
        """(M, s, t) when the coset is atomic, else None."""
        if self._atomic is None:
            self._atomic = self._compute_atomic(cap)
        return self._atomic if self._atomic != () else None

    def _compute_atomic(self, cap: int):
        system = self.system
        for s in range(system.rank):
            if s in self.I:
                continue
            M = self.I | {s}
            extra = M - self.J
            if len(extra) != 1 or not self.J <= M:
                continue
            (t,) = extra
            try:
                wM = longest_element(system, M, cap)
            except CapExceededError:
                continue
            if self.max != wM:
                continue
            if wM.mul_gen(s) == wM.gen_mul(t):
                return (M, s, t)
        return ()

    def is_atomic(self, cap: int = DEFAULT_CAP) -> bool:
        return self.atomic_data(cap) is not None

    # -- y and expressions ------------------------------------------------------------

    def w_J(self) -> GroupElement:
        return longest_element(self.system, self.J)

    def y(self) -> GroupElement:
        """y(p) = pmax * w_J; the coset Demazure operator is del_{y(p)}."""
        return self.max * self.w_J()

    def elements(self, cap: int = DEFAULT_CAP) -> tuple[GroupElement, ...]:
        if self._elements is None:
            self._elements = enumerate_double_coset(self.system, self.I, self.min,
                                                    self.J, cap)
        return self._elements


@dataclass(frozen=True)
class AtomicCoset:
    """An atomic (I, J)-coset together with (M, s, t)."""

    coset: DoubleCoset
    M: frozenset[int]
    s: int
    t: int

    @property
    def I(self) -> frozenset[int]:
        return self.coset.I

    @property
    def J(self) -> frozenset[int]:
        return self.coset.J

    @property
    def system(self) -> CoxeterSystem:
        return self.coset.system

    def __repr__(self):
        nm = self.system.names
        return f"Atom[{self.coset!r}; M={','.join(self.system.subset_names(self.M))}]"


def coset_of(system: CoxeterSystem, I: Iterable[int], w: GroupElement,
             J: Iterable[int], cap: int = DEFAULT_CAP) -> DoubleCoset:
    I, J = frozenset(I), frozenset(J)
    pmin = coset_min(system, I, w, J)
    elements = enumerate_double_coset(system, I, pmin, J, cap)
    top = max(elements, key=lambda v: v.length())
    ties = [v for v in elements if v.length() == top.length()]
    if len(ties) != 1:
        raise RuntimeError("double coset without a unique maximal element")
    return DoubleCoset(system, I, J, pmin, top, elements)


def enumerate_cosets(system: CoxeterSystem, I: Iterable[int], J: Iterable[int],
                     M: Iterable[int] | None = None,
                     cap: int = DEFAULT_CAP) -> list[DoubleCoset]:
    """All (I, J)-cosets inside W_M, sorted by decreasing Bruhat order of
    minima (maximal coset first when the order is total)."""
    I, J = frozenset(I), frozenset(J)
    M = frozenset(M) if M is not None else frozenset(range(system.rank))
    if not (I <= M and J <= M):
        raise ValueError("I and J must lie inside M")
    members = enumerate_parabolic(system, M, cap)
    assigned: set[GroupElement] = set()
    cosets = []
    for w in members:
        if w in assigned:
            continue
        c = coset_of(system, I, w, J, cap)
        assigned.update(c.elements(cap))
        cosets.append(c)
    cosets.sort(key=lambda c: (-c.min.length(), c.min.word()))
    return cosets


def bruhat_leq_cosets(q: DoubleCoset, p: DoubleCoset) -> bool:
    if (q.I, q.J) != (p.I, p.J):
        raise ValueError("cosets for different (I, J)")
    return bruhat_leq(q.min, p.min)


def atomic_coset(system: CoxeterSystem, M: Iterable[int], s: int,
                 cap: int = DEFAULT_CAP) -> AtomicCoset:
    """The atomic coset determined by finitary M and s in M."""
    M = frozenset(M)
    if s not in M:
        raise ValueError("need s in M")
    wM = longest_element(system, M, cap)
    gens = system.generators()
    conj = wM * gens[s] * wM
    t = next((t for t in M if conj == gens[t]), None)
    if t is None:
        raise RuntimeError("w_M s w_M is not a simple reflection of M")
    I = M - {s}
    J = M - {t}
    c = coset_of(system, I, wM, J, cap)
    data = c.atomic_data(cap)
    if data is None:
        raise RuntimeError("constructed coset is not atomic")
    return AtomicCoset(c, M, s, t)


def all_atomic_cosets(system: CoxeterSystem, cap: int = DEFAULT_CAP) -> list[AtomicCoset]:
    """Every atomic coset of the system (one per finitary M and s in M)."""
    out = []
    for size in range(1, system.rank + 1):
        for M in itertools.combinations(range(system.rank), size):
            Mf = frozenset(M)
            try:
                longest_element(system, Mf, cap)
            except CapExceededError:
                continue
            for s in sorted(Mf):
                out.append(atomic_coset(system, Mf, s, cap))
    return out


# -- core-factored reduced expressions ------------------------------------------------


@dataclass(frozen=True)
class CoreFactoredRex:
    """The reduced expression [[I > leftred]] . rex(core) . [[rightred < J]].

    ``subsets`` is the flattened sequence of finitary subsets; ``core_kind``
    is "atomic", "identity" or "general" (the last stores a reduced word
    for y(core) instead of a two-step core expression).
    """

    coset: DoubleCoset
    subsets: tuple[frozenset[int], ...]
    core_kind: str
    core_word: tuple[int, ...]  # reduced word of y(core) when general

    def step_lengths(self, cap: int = DEFAULT_CAP) -> list[int]:
        lens = []
        sys_ = self.coset.system
        for a, b in zip(self.subsets, self.subsets[1:]):
            la = longest_element(sys_, a, cap).length()
            lb = longest_element(sys_, b, cap).length()
            lens.append(abs(la - lb))
        return lens


def core_factored_rex(q: DoubleCoset, cap: int = DEFAULT_CAP) -> CoreFactoredRex:
    lr, rr = q.leftred(), q.rightred()
    core = q.core(cap)
    if core.min.is_identity() and lr == rr:
        return CoreFactoredRex(q, (q.I, lr, q.J), "identity", ())
    data = core.atomic_data(cap)
    if data is not None:
        M_core = data[0]
        return CoreFactoredRex(q, (q.I, lr, M_core, rr, q.J), "atomic", ())
    return CoreFactoredRex(q, (q.I, lr, rr, q.J), "general", core.y().word())


def coset_demazure(r: Realization, q: DoubleCoset, f: Polynomial,
                   method: str = "auto", cap: int = DEFAULT_CAP) -> Polynomial:
    """del_q(f) for f in R^J: del_{y(q)} restricted, landing in R^I.

    "word" applies del along a reduced word of y(q).  "factored" uses
    del^{leftred}_I . del_{core} . inclusion, with del_{core} a Frobenius
    trace when the core is atomic; both routes agree on R^J.
    """
    if not r.is_invariant(f, q.J):
        raise ValueError("coset Demazure operator needs a J-invariant input")
    if method not in ("auto", "word", "factored"):
        raise ValueError(f"unknown method {method!r}")
    if method == "word":
        return r.demazure_word(q.y(), f)
    rex = core_factored_rex(q, cap)
    if rex.core_kind == "identity":
        mid = f
    elif rex.core_kind == "atomic":
        M_core = rex.subsets[2]
        mid = r.trace_between(q.rightred(), M_core, f, cap)
    elif method == "factored":
        mid = r.demazure_word(rex.core_word, f)
    else:
        return r.demazure_word(q.y(), f)
    return r.trace_between(q.leftred(), q.I, mid, cap)


# -- the type-A Grassmannian catalog ---------------------------------------------------


@dataclass(frozen=True)
class GrassmannianEntry:
    k: int
    coset: DoubleCoset
    y: GroupElement
    rex: CoreFactoredRex


@dataclass(frozen=True)
class GrassmannianCatalog:
    """All (I, J)-cosets below the Grassmannian atom for S_{a+b}.

    J removes the generator at (1-based) position a, I removes position b;
    the k-th coset has length(y_k) = a*b - k^2 and the chain is a total
    Bruhat order q_0 > q_1 > ... > q_{min(a,b)}.
    """

    a: int
    b: int
    system: CoxeterSystem
    atom: AtomicCoset
    entries: tuple[GrassmannianEntry, ...]


def grassmannian_catalog(a: int, b: int, cap: int = DEFAULT_CAP) -> GrassmannianCatalog:
    if a < 1 or b < 1:
        raise ValueError("need a, b >= 1")
    n = a + b
    system = symmetric_group(n)
    S = frozenset(range(n - 1))
    t = a - 1  # 0-based index of s_a
    s = b - 1  # w_M s_b w_M = s_a
    I = S - {s}
    J = S - {t}
    atom = atomic_coset(system, S, s, cap)
    assert atom.t == t and atom.I == I and atom.J == J
    cosets = enumerate_cosets(system, I, J, S, cap)
    expect = min(a, b) + 1
    if len(cosets) != expect:
        raise RuntimeError(f"expected {expect} cosets, found {len(cosets)}")
    by_len = {c.y().length(): c for c in cosets}
    entries = []
    for k in range(expect):
        want = a * b - k * k
        if want not in by_len:
            raise RuntimeError(f"no coset with length(y) = {want}")
        c = by_len[want]
        entries.append(GrassmannianEntry(k, c, c.y(), core_factored_rex(c, cap)))
    return GrassmannianCatalog(a, b, system, atom, tuple(entries))
