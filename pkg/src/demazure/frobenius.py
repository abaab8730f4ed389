"""Dual bases for the Frobenius extensions R^M inside R^J, and canonical
forms on the bimodule R^I (x)_{R^M} R^J.

For finitary J inside M the trace is del^J_M = del_{w_M w_J^{-1}} restricted
to R^J.  A dual-basis pair is (c_i, d_i) with

    del^J_M(c_i * d_j) = delta_ij      (as elements of R^M),

which forces the reproducing identity f = sum_i del^J_M(f * c_i) * d_i for
all f in R^J, and makes {1 (x) d_i} a left R^I-basis of R^I (x)_{R^M} R^J.
Canonical forms of tensor expressions are coefficient vectors on that
basis.

Two construction methods:

- generic: pick a free R^M-module basis {d_i} of R^J degree by degree
  (greedy rank extension against R^M-multiples of earlier picks), then
  solve del(c * d_j) = delta exactly over the rationals, checking
  integrality when the domain is ZZ.
- grassmannian: when W_M is a symmetric-group block and J cuts it into two
  factors of sizes a and b, take c_lambda = s_lambda(first a variables)
  over partitions in the a x b box and solve for duals inside the span of
  Schur polynomials in the other b variables.  Nothing classical is
  assumed: the candidate is verified coefficient by coefficient (the
  solver refuses unverified solutions) and construction falls back to the
  generic method on any failure.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import typea
from .coxeter import DEFAULT_CAP, enumerate_parabolic, longest_element
from .linalg import ExactSolver
from .poly import Polynomial, PolyRing
from .realization import Realization, RealizationError


class SolveFailedError(Exception):
    """No dual bases / witness in the requested domain."""


@dataclass
class DualBases:
    realization: Realization
    M: frozenset[int]
    J: frozenset[int]
    cs: list[Polynomial]
    ds: list[Polynomial]
    method: str

    def __post_init__(self):
        self.size = len(self.cs)
        lwm = longest_element(self.realization.system, self.M).length()
        lwj = longest_element(self.realization.system, self.J).length()
        self.top_degree = lwm - lwj
        for c, d in zip(self.cs, self.ds):
            if max(c.degree(), 0) + max(d.degree(), 0) != self.top_degree:
                raise SolveFailedError("dual pair degrees do not add to l(w_M) - l(w_J)")

    def trace(self, f: Polynomial) -> Polynomial:
        """del^J_M(f) for f in R^J."""
        return self.realization.trace_between(self.J, self.M, f)

    def pairing(self, i: int, j: int) -> Polynomial:
        return self.trace(self.cs[i] * self.ds[j])

    def verify_delta(self) -> bool:
        ring = self.realization.ring
        for i in range(self.size):
            for j in range(self.size):
                want = ring.one() if i == j else ring.zero()
                if self.pairing(i, j) != want:
                    return False
        return True

    def reproducing_check(self, f: Polynomial) -> bool:
        """f == sum del^J_M(f * c_i) * d_i, exactly."""
        total = self.realization.ring.zero()
        for c, d in zip(self.cs, self.ds):
            total = total + self.trace(f * c) * d
        return total == f

    def expand(self, f: Polynomial) -> list[Polynomial]:
        """Coordinates of f in the free basis {d_i}: f = sum lambda_i d_i."""
        return [self.trace(f * c) for c in self.cs]


def minimal_rep_length_counts(realization: Realization, M: frozenset[int],
                              J: frozenset[int], cap: int = DEFAULT_CAP) -> dict[int, int]:
    """Number of minimal W_J-coset representatives in W_M per length."""
    counts: dict[int, int] = {}
    for w in enumerate_parabolic(realization.system, M, cap):
        if not (w.right_descents() & J):
            counts[w.length()] = counts.get(w.length(), 0) + 1
    return counts


# -- generic construction ----------------------------------------------------------


def _monomial_coords(polys: Sequence[Polynomial], monos: Sequence[tuple]) -> list[list[Fraction]]:
    index = {m: k for k, m in enumerate(monos)}
    out = []
    for p in polys:
        row = [Fraction(0)] * len(monos)
        for m, c in p.terms.items():
            row[index[m]] = Fraction(c)
        out.append(row)
    return out


def _free_module_basis(r: Realization, M: frozenset[int], J: frozenset[int],
                       cap: int) -> list[Polynomial]:
    """A free R^M-basis of R^J, chosen greedily degree by degree."""
    counts = minimal_rep_length_counts(r, M, J, cap)
    top = max(counts)
    chosen: list[Polynomial] = []
    for d in range(top + 1):
        need = counts.get(d, 0)
        if need == 0:
            continue
        monos = r.ring.monomials_of_degree(d)
        # span of R^M-multiples of lower-degree picks, reduced to echelon form
        echelon: list[list[Fraction]] = []
        pivots: list[int] = []

        def reduce_against(vec: list[Fraction]) -> list[Fraction]:
            for row, piv in zip(echelon, pivots):
                if vec[piv] != 0:
                    f = vec[piv]
                    vec = [a - f * b for a, b in zip(vec, row)]
            return vec

        def insert(vec: list[Fraction]) -> bool:
            vec = reduce_against(vec)
            piv = next((k for k, v in enumerate(vec) if v != 0), None)
            if piv is None:
                return False
            pv = vec[piv]
            echelon.append([v / pv for v in vec])
            pivots.append(piv)
            return True

        for b in chosen:
            bd = max(b.degree(), 0)
            for m in r.invariant_basis(M, d - bd):
                insert(_monomial_coords([m * b], monos)[0])
        taken = 0
        for cand in r.invariant_basis(J, d):
            if taken == need:
                break
            if insert(_monomial_coords([cand], monos)[0]):
                chosen.append(cand)
                taken += 1
        if taken != need:
            raise SolveFailedError(
                f"could not extend free module basis in degree {d} "
                f"({taken} of {need} found)")
    return chosen


def _solve_duals_generic(r: Realization, M: frozenset[int], J: frozenset[int],
                         ds: list[Polynomial], cap: int) -> list[Polynomial]:
    """Solve del^J_M(c_i * d_j) = delta_ij for the c's, degree class by class."""
    lw = longest_element(r.system, M, cap).length() - longest_element(r.system, J, cap).length()
    integral = r.ring.domain.name == "ZZ"
    cs: list[Polynomial | None] = [None] * len(ds)
    by_deg: dict[int, list[int]] = {}
    for i, d in enumerate(ds):
        by_deg.setdefault(lw - max(d.degree(), 0), []).append(i)
    for cdeg, idxs in by_deg.items():
        basis = r.invariant_basis(J, cdeg)
        if not basis and cdeg >= 0:
            raise SolveFailedError(f"no J-invariants in degree {cdeg}")
        columns = []
        for b in basis:
            col: dict = {}
            for j, dj in enumerate(ds):
                djdeg = max(dj.degree(), 0)
                if cdeg + djdeg < lw:
                    continue  # trace lands in negative degree: identically zero
                val = r.trace_between(J, M, b * dj, cap)
                for m, c in val.terms.items():
                    col[(j, m)] = Fraction(c)
            columns.append(col)
        solver = ExactSolver(columns)
        zero_mono = (0,) * r.ring.nvars
        for i in idxs:
            rhs = {(i, zero_mono): Fraction(1)}
            sol = solver.solve(rhs)
            if sol is None:
                raise SolveFailedError(f"no dual element for basis index {i}")
            terms: dict = {}
            for u, b in zip(sol, basis):
                if u == 0:
                    continue
                if integral and u.denominator != 1:
                    raise SolveFailedError(
                        f"dual element {i} is not integral (coefficient {u})")
                for m, c in b.terms.items():
                    terms[m] = terms.get(m, 0) + u * c
            if integral:
                terms = {m: int(c) for m, c in terms.items()}
            cs[i] = r.ring.poly(terms)
    return list(cs)  # type: ignore[arg-type]


# -- Grassmannian fast path ----------------------------------------------------------


def _grassmannian_shape(r: Realization, M: frozenset[int], J: frozenset[int]):
    """(X vars, Y vars) when W_M is one symmetric-group block split by J."""
    pos = r.permutation_positions
    if pos is None:
        return None
    blocks = typea.blocks_from_positions([pos[s] for s in M], r.ring.nvars)
    if len(blocks) != 1:
        return None
    diff = M - J
    if len(diff) != 1 or not J <= M:
        return None
    (t,) = diff
    block = blocks[0]
    cut = pos[t]  # t swaps variables cut, cut+1
    X = tuple(v for v in block if v <= cut)
    Y = tuple(v for v in block if v > cut)
    if not X or not Y:
        return None
    return X, Y


def _build_grassmannian(r: Realization, M: frozenset[int], J: frozenset[int],
                        cap: int) -> DualBases | None:
    shape = _grassmannian_shape(r, M, J)
    if shape is None:
        return None
    X, Y = shape
    a, b = len(X), len(Y)
    box = typea.partitions_in_box(a, b)
    ab = a * b
    integral = r.ring.domain.name == "ZZ"

    # pairing values Psi(nu, rho) = trace(s_nu(X) * s_rho(Y)), cached per rho-size
    cs = [typea.schur_in_vars(r.ring, lam, X) for lam in box]
    psi: dict[tuple, Polynomial] = {}

    def pairing(nu, rho) -> Polynomial:
        key = (nu, rho)
        if key not in psi:
            prod = typea.schur_in_vars(r.ring, nu, X) * typea.schur_in_vars(r.ring, rho, Y)
            psi[key] = r.trace_between(J, M, prod, cap)
        return psi[key]

    ds: list[Polynomial | None] = [None] * len(box)
    sizes = sorted({sum(lam) for lam in box})
    zero_mono = (0,) * r.ring.nvars
    for kappa in sizes:
        rhos = typea.partitions_of(ab - kappa, b)
        columns = []
        for rho in rhos:
            col: dict = {}
            for nu in box:
                if sum(nu) < kappa:
                    continue  # negative-degree trace vanishes
                val = pairing(nu, rho)
                for m, c in val.terms.items():
                    col[(nu, m)] = Fraction(c)
            columns.append(col)
        solver = ExactSolver(columns)
        for i, lam in enumerate(box):
            if sum(lam) != kappa:
                continue
            sol = solver.solve({(lam, zero_mono): Fraction(1)})
            if sol is None:
                return None
            terms: dict = {}
            for u, rho in zip(sol, rhos):
                if u == 0:
                    continue
                if integral and u.denominator != 1:
                    return None
                for m, c in typea.schur_in_vars(r.ring, rho, Y).terms.items():
                    terms[m] = terms.get(m, 0) + u * c
            if integral:
                terms = {m: int(c) for m, c in terms.items()}
            ds[i] = r.ring.poly(terms)
    return DualBases(r, M, J, cs, list(ds), "grassmannian")  # type: ignore[arg-type]


# -- public constructor ------------------------------------------------------------------


def dual_bases(r: Realization, M: Iterable[int], J: Iterable[int],
               method: str = "auto", cap: int = DEFAULT_CAP) -> DualBases:
    """Verified dual bases for R^M inside R^J.

    The returned pairs satisfy the delta conditions exactly (solutions are
    checked against every equation before being accepted).  ``method`` is
    "auto", "generic" or "grassmannian".
    """
    M, J = frozenset(M), frozenset(J)
    if not J <= M:
        raise ValueError("need J inside M")
    key = (M, J, method)
    cache = r._dualbases_cache
    if key in cache:
        return cache[key]
    if M == J:
        db = DualBases(r, M, J, [r.ring.one()], [r.ring.one()], "trivial")
    else:
        db = None
        if method in ("auto", "grassmannian"):
            db = _build_grassmannian(r, M, J, cap)
            if db is None and method == "grassmannian":
                raise SolveFailedError("grassmannian method does not apply")
        if db is None:
            ds = _free_module_basis(r, M, J, cap)
            cs = _solve_duals_generic(r, M, J, ds, cap)
            db = DualBases(r, M, J, cs, ds, "generic")
    expected = len(enumerate_parabolic(r.system, M, cap)) // len(
        enumerate_parabolic(r.system, J, cap))
    if db.size != expected:
        raise SolveFailedError(f"got {db.size} dual pairs, expected index {expected}")
    cache[key] = db
    return db


# -- canonical forms on R^I (x)_{R^M} R^J ---------------------------------------------------


@dataclass
class BimoduleElement:
    """An element of R^I (x)_{R^M} R^J in canonical coordinates.

    coeffs[i] is the left factor of d_i: the element is sum_i coeffs[i] (x) d_i.
    """

    db: DualBases
    I: frozenset[int]
    coeffs: tuple[Polynomial, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.db.size:
            raise ValueError("need one coefficient per basis element")

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __add__(self, other: "BimoduleElement") -> "BimoduleElement":
        self._check(other)
        return BimoduleElement(self.db, self.I,
                               tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "BimoduleElement") -> "BimoduleElement":
        self._check(other)
        return BimoduleElement(self.db, self.I,
                               tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __eq__(self, other):
        return (isinstance(other, BimoduleElement) and other.db is self.db
                and other.I == self.I and list(other.coeffs) == list(self.coeffs))

    def _check(self, other: "BimoduleElement"):
        if other.db is not self.db or other.I != self.I:
            raise ValueError("elements of different tensor contexts")

    def left_mul(self, u: Polynomial) -> "BimoduleElement":
        """Multiply by u in R^I on the left."""
        return BimoduleElement(self.db, self.I, tuple(u * c for c in self.coeffs))

    def right_action(self, g: Polynomial) -> "BimoduleElement":
        """Multiply by g in R^J on the right, re-expanded through the basis:
        d_j * g = sum_i del^J_M(d_j g c_i) d_i."""
        db = self.db
        new = [db.realization.ring.zero() for _ in range(db.size)]
        for j, cj in enumerate(self.coeffs):
            if cj.is_zero():
                continue
            for i, lam in enumerate(db.expand(db.ds[j] * g)):
                if not lam.is_zero():
                    new[i] = new[i] + cj * lam
        return BimoduleElement(db, self.I, tuple(new))


def canonical_form(db: DualBases, I: frozenset[int],
                   pairs: Sequence[tuple[Polynomial, Polynomial]],
                   check_invariance: bool = True) -> BimoduleElement:
    """Canonical form of sum_j u_j (x) v_j with u_j in R^I, v_j in R^J.

    coeffs[i] = sum_j u_j * del^J_M(v_j * c_i).
    """
    r = db.realization
    if check_invariance:
        for u, v in pairs:
            if not r.is_invariant(u, I):
                raise ValueError(f"left factor {u} is not I-invariant")
            if not r.is_invariant(v, db.J):
                raise ValueError(f"right factor {v} is not J-invariant")
    coeffs = []
    for c in db.cs:
        total = r.ring.zero()
        for u, v in pairs:
            total = total + u * db.trace(v * c)
        coeffs.append(total)
    return BimoduleElement(db, frozenset(I), tuple(coeffs))


# -- witnesses -------------------------------------------------------------------------------


def frobenius_witness(r: Realization, M: Iterable[int], cap: int = DEFAULT_CAP) -> Polynomial:
    """P with del_{w_M}(P) = 1; staircase monomial in the permutation case."""
    M = frozenset(M)
    if not M:
        return r.ring.one()
    pos = r.permutation_positions
    if pos is not None:
        blocks = typea.blocks_from_positions([pos[s] for s in M], r.ring.nvars)
        P = r.ring.monomial(typea.staircase_exponents(blocks, r.ring.nvars))
        if r.frobenius_trace(M, P) != r.ring.one():
            raise SolveFailedError("staircase witness failed verification")
        return P
    deg = longest_element(r.system, M, cap).length()
    monos = r.ring.monomials_of_degree(deg)
    columns = []
    for m in monos:
        val = r.frobenius_trace(M, r.ring.monomial(m), cap)
        columns.append({mm: Fraction(c) for mm, c in val.terms.items()})
    solver = ExactSolver(columns)
    zero_mono = (0,) * r.ring.nvars
    sol = solver.solve({zero_mono: Fraction(1)})
    if sol is None:
        raise SolveFailedError("no Demazure-surjectivity witness in this degree")
    if r.ring.domain.name == "ZZ" and any(u.denominator != 1 for u in sol):
        raise SolveFailedError("witness exists over QQ but not over ZZ")
    terms = {m: (int(u) if r.ring.domain.name == "ZZ" else u)
             for m, u in zip(monos, sol) if u != 0}
    return r.ring.poly(terms)


def _divisible(f: Polynomial, n: int) -> bool:
    return all(int(c) % n == 0 for c in f.terms.values())


def divisibility_witness(r: Realization, b: Polynomial, n: int,
                         M: Iterable[int], J: Iterable[int],
                         cap: int = DEFAULT_CAP) -> Polynomial | None:
    """g in R^J with n not dividing del_{w_M w_J^{-1}}(b * g), or None if n | b.

    Constructive: expand del_{w_M w_J^{-1}}(b * -) through the iterated
    Leibniz rule, pick a Bruhat-minimal y among the minimal coset
    representatives with n not dividing T'_y(b), and take g = del_z(P_M)
    for z = y^{-1} w_M.  The returned witness is re-verified.
    """
    from .coxeter import bruhat_leq
    from .leibniz import iterated_leibniz

    M, J = frozenset(M), frozenset(J)
    if r.ring.domain.name != "ZZ":
        raise ValueError("divisibility witnesses live over ZZ")
    if _divisible(b, n):
        return None
    wM = longest_element(r.system, M, cap)
    wJ = longest_element(r.system, J, cap)
    w = wM * wJ
    tprime = iterated_leibniz(r, w.word(), b)
    candidates = []
    for x, val in tprime.items():
        if val.is_zero() or _divisible(val, n):
            continue
        if x.right_descents() & J:
            continue  # not a minimal coset representative
        candidates.append(x)
    if not candidates:
        raise SolveFailedError("no candidate y found; contradicts n not dividing b")
    minimal = [x for x in candidates
               if not any(y != x and bruhat_leq(y, x) for y in candidates)]
    y = min(minimal, key=lambda v: (v.length(), v.word()))
    z = y.inverse() * wM
    PM = frobenius_witness(r, M, cap)
    g = r.demazure_word(z, PM)
    if not r.is_invariant(g, J):
        raise SolveFailedError("constructed witness is not J-invariant")
    value = r.demazure_word(w, b * g)
    if _divisible(value, n):
        raise SolveFailedError("constructed witness failed the divisibility check")
    return g
