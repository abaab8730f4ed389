"""Realizations: root/coroot data defining a Coxeter action on a polynomial ring.

A realization holds a Coxeter system, a polynomial ring R whose variables
are a basis of the representation space V, one degree-one root alpha_s per
generator, and one coroot (a linear functional on V, stored as a
coefficient tuple) per generator, with alpha_s^vee(alpha_s) = 2.  Each
generator acts on V by v -> v - alpha_s^vee(v) alpha_s, and the action
extends to R as ring automorphisms.

Demazure operators are quotients del_s(f) = (f - s(f)) / alpha_s, computed
by exact division (an inexact division means the realization data is
broken, and raises).  When a generator acts as a transposition of two
variables with alpha_s = x_i - x_j, del_s is computed by the telescoping
formula per monomial instead, and longest-element operators of parabolic
subgroups that act by adjacent transpositions go through the blockwise
collapse kernel in typea; both shortcuts agree with the definition and
are cross-checked in the test suite.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Sequence

from . import typea
from .coxeter import (DEFAULT_CAP, CoxeterSystem, GroupElement, affine_A,
                      enumerate_parabolic, longest_element, symmetric_group)
from .domains import ZZ, Domain, GF, QQ
from .linalg import nullspace, primitive_integer_vector
from .poly import NotDivisibleError, Polynomial, PolyRing


class RealizationError(Exception):
    pass


WordLike = object  # int generator index, iterable of ints, or GroupElement


class Realization:
    """(system, ring, roots, coroots) with cached action machinery."""

    def __init__(self, system: CoxeterSystem, ring: PolyRing,
                 roots: Sequence[Polynomial], coroots: Sequence[Sequence],
                 label: str = ""):
        if len(roots) != system.rank or len(coroots) != system.rank:
            raise RealizationError("need one root and one coroot per generator")
        dom = ring.domain
        self.system = system
        self.ring = ring
        self.roots = [ring.poly(dict(r.terms)) for r in roots]
        self.coroots = [tuple(dom.coerce(c) for c in cr) for cr in coroots]
        self.label = label or f"realization({system!r})"
        for s, (root, cr) in enumerate(zip(self.roots, self.coroots)):
            if root.is_zero() or root.degree() != 1 or not root.is_homogeneous():
                raise RealizationError(f"root of generator {s} must be homogeneous degree 1")
            if len(cr) != ring.nvars:
                raise RealizationError("coroot length must equal the variable count")
            if self.pair_coroot(s, root) != dom.coerce(2):
                raise RealizationError(f"alpha^vee(alpha) != 2 for generator {s}")
        self._images_cache: dict[GroupElement, tuple[Polynomial, ...]] = {}
        self._invbasis_cache: dict = {}
        self._gen_perm: list = [self._variable_swap(s) for s in range(system.rank)]
        self._dualbases_cache: dict = {}

    # -- basic data ---------------------------------------------------------

    def pair_coroot(self, s: int, f: Polynomial):
        """alpha_s^vee applied to the linear part of f."""
        dom = self.ring.domain
        total = dom.coerce(0)
        cr = self.coroots[s]
        for mono, c in f.terms.items():
            if sum(mono) != 1:
                continue
            i = mono.index(1)
            total = dom.normalize(total + c * cr[i])
        return total

    def _variable_swap(self, s: int):
        """(i, j) when generator s swaps x_i <-> x_j with alpha_s = x_i - x_j."""
        dom = self.ring.domain
        root = self.roots[s]
        if len(root.terms) != 2:
            return None
        (m1, c1), (m2, c2) = sorted(root.terms.items(), reverse=True)
        if sorted(m1)[-1] != 1 or sorted(m2)[-1] != 1:
            return None
        if c1 != dom.coerce(1) or c2 != dom.coerce(-1):
            return None
        i, j = m1.index(1), m2.index(1)
        cr = self.coroots[s]
        want = tuple(dom.coerce(1 if k == i else (-1 if k == j else 0))
                     for k in range(self.ring.nvars))
        if tuple(dom.normalize(v) for v in cr) != want:
            return None
        return (i, j)

    def generator_images(self, s: int) -> tuple[Polynomial, ...]:
        """Images of the variables under generator s."""
        root = self.roots[s]
        cr = self.coroots[s]
        out = []
        for j in range(self.ring.nvars):
            xj = self.ring.gen(j)
            if cr[j] == 0:
                out.append(xj)
            else:
                out.append(xj - root * cr[j])
        return tuple(out)

    @property
    def permutation_positions(self) -> dict[int, int] | None:
        """gen -> p when every generator swaps adjacent variables p, p+1."""
        pos = {}
        for s in range(self.system.rank):
            swap = self._gen_perm[s]
            if swap is None:
                return None
            i, j = sorted(swap)
            if j != i + 1:
                return None
            pos[s] = i
        if len(set(pos.values())) != len(pos):
            return None
        return pos

    # -- the W-action ----------------------------------------------------------

    def _word_of(self, w: WordLike) -> tuple[int, ...]:
        if isinstance(w, GroupElement):
            return w.word()
        if isinstance(w, int):
            return (w,)
        return tuple(w)

    def element_images(self, w: GroupElement) -> tuple[Polynomial, ...]:
        if w not in self._images_cache:
            images = tuple(self.ring.gens())
            for s in reversed(w.word()):
                gen_im = self.generator_images(s)
                # compose: x_j -> s(images[j]); images are linear
                images = tuple(im.substitute_linear(gen_im) for im in images)
            self._images_cache[w] = images
        return self._images_cache[w]

    def act_gen(self, s: int, f: Polynomial) -> Polynomial:
        swap = self._gen_perm[s]
        if swap is not None:
            i, j = swap
            out = {}
            for mono, c in f.terms.items():
                if mono[i] != mono[j]:
                    lst = list(mono)
                    lst[i], lst[j] = lst[j], lst[i]
                    out[tuple(lst)] = c
                else:
                    out[mono] = c
            return Polynomial(f.ring, out)
        return f.substitute_linear(self.generator_images(s))

    def act(self, w: WordLike, f: Polynomial) -> Polynomial:
        """w(f); for words the letters act right-to-left (leftmost last)."""
        if isinstance(w, GroupElement):
            if all(p is not None for p in self._gen_perm):
                for s in reversed(w.word()):
                    f = self.act_gen(s, f)
                return f
            return f.substitute_linear(self.element_images(w))
        word = self._word_of(w)
        for s in reversed(word):
            f = self.act_gen(s, f)
        return f

    def is_invariant(self, f: Polynomial, I: Iterable[int]) -> bool:
        return all(self.act_gen(s, f) == f for s in I)

    # -- Demazure operators ------------------------------------------------------

    def demazure(self, s: int, f: Polynomial) -> Polynomial:
        """del_s(f) = (f - s f) / alpha_s; exact by construction."""
        swap = self._gen_perm[s]
        if swap is not None:
            i, j = swap
            out: dict = {}
            for mono, c in f.terms.items():
                p, q = mono[i], mono[j]
                if p == q:
                    continue
                sign_c = c if p > q else -c
                lo, hi = (q, p) if p > q else (p, q)
                tot = p + q - 1
                lst = list(mono)
                for u in range(lo, hi):
                    lst[i] = u
                    lst[j] = tot - u
                    key = tuple(lst)
                    prev = out.get(key, 0)
                    out[key] = prev + sign_c
            return f.ring.poly(out)
        diff = f - self.act_gen(s, f)
        try:
            return diff.exact_divide(self.roots[s])
        except NotDivisibleError as exc:
            raise RealizationError(
                f"(f - s f) not divisible by alpha_{self.system.names[s]}: "
                "realization is broken") from exc

    def demazure_word(self, w: WordLike, f: Polynomial) -> Polynomial:
        """Compose del along the word (rightmost letter acts first).

        GroupElements use their lexicographically least reduced word;
        the result is reduced-word independent because the del_s satisfy
        the braid relations (a tested property, not an assumption here).
        """
        for s in reversed(self._word_of(w)):
            f = self.demazure(s, f)
        return f

    # -- traces (longest-element Demazure operators) --------------------------------

    def _blocks_for(self, I: frozenset[int]):
        pos = self.permutation_positions
        if pos is None:
            return None
        return typea.blocks_from_positions([pos[s] for s in I], self.ring.nvars)

    def frobenius_trace(self, I: Iterable[int], f: Polynomial,
                        cap: int = DEFAULT_CAP) -> Polynomial:
        """del_{w_I}(f): R -> R^I."""
        I = frozenset(I)
        if not I:
            return f
        blocks = self._blocks_for(I)
        if blocks is not None:
            return typea.block_collapse(f, blocks)
        return self.demazure_word(longest_element(self.system, I, cap), f)

    def trace_between(self, K: Iterable[int], M: Iterable[int], f: Polynomial,
                      cap: int = DEFAULT_CAP) -> Polynomial:
        """The Frobenius trace del^K_M : R^K -> R^M for K inside M.

        Requires f in R^K (not checked here); equals del_{w_M w_K^{-1}}(f).
        """
        K, M = frozenset(K), frozenset(M)
        if not K <= M:
            raise ValueError("trace_between needs K inside M")
        if K == M:
            return f
        blocks_m = self._blocks_for(M)
        if blocks_m is not None:
            blocks_k = self._blocks_for(K)
            stair = typea.staircase_exponents(blocks_k, self.ring.nvars)
            shifted = Polynomial(self.ring, {
                tuple(m[i] + stair[i] for i in range(self.ring.nvars)): c
                for m, c in f.terms.items()})
            return typea.block_collapse(shifted, blocks_m)
        w = longest_element(self.system, M, cap) * longest_element(self.system, K, cap)
        return self.demazure_word(w, f)

    # -- invariant bases --------------------------------------------------------------

    def variable_permutations(self, I: Iterable[int]) -> list[tuple[int, ...]] | None:
        """Images-of-variable permutations for the generators in I, when
        every one of them acts by permuting variables (else None)."""
        perms = []
        n = self.ring.nvars
        for s in I:
            swap = self._gen_perm[s]
            if swap is None:
                return None
            i, j = swap
            perm = list(range(n))
            perm[i], perm[j] = j, i
            perms.append(tuple(perm))
        return perms

    def invariant_basis(self, I: Iterable[int], d: int) -> list[Polynomial]:
        """Basis of the degree-d part of R^I, deterministic order.

        Permutation actions use monomial orbit sums (a basis over any
        coefficient ring); otherwise a rational nullspace computation with
        primitive-integer rescaling is used.
        """
        I = frozenset(I)
        key = (I, d)
        if key in self._invbasis_cache:
            return self._invbasis_cache[key]
        if d < 0:
            basis: list[Polynomial] = []
        elif not I:
            one = self.ring.domain.coerce(1)
            basis = [Polynomial(self.ring, {m: one}) for m in self.ring.monomials_of_degree(d)]
        else:
            perms = self.variable_permutations(I)
            if perms is not None:
                basis = self._orbit_sum_basis(perms, d)
            else:
                basis = self._nullspace_basis(I, d)
        self._invbasis_cache[key] = basis
        return basis

    def _orbit_sum_basis(self, perms: list[tuple[int, ...]], d: int) -> list[Polynomial]:
        one = self.ring.domain.coerce(1)
        monos = self.ring.monomials_of_degree(d)
        seen: set = set()
        basis = []
        for m in monos:  # decreasing grlex; first hit is the orbit rep
            if m in seen:
                continue
            orbit = {m}
            frontier = [m]
            while frontier:
                nxt = []
                for mono in frontier:
                    for perm in perms:
                        img = tuple(mono[perm[i]] for i in range(len(perm)))
                        if img not in orbit:
                            orbit.add(img)
                            nxt.append(img)
                frontier = nxt
            seen.update(orbit)
            basis.append(Polynomial(self.ring, {mm: one for mm in orbit}))
        return basis

    def _nullspace_basis(self, I: frozenset[int], d: int) -> list[Polynomial]:
        if self.ring.domain.characteristic:
            raise RealizationError(
                "invariant bases for non-permutation actions are only "
                "implemented in characteristic zero")
        monos = self.ring.monomials_of_degree(d)
        index = {m: k for k, m in enumerate(monos)}
        rows = []
        for s in I:
            cols = []
            for m in monos:
                mono_poly = Polynomial(self.ring, {m: self.ring.domain.coerce(1)})
                img = self.act_gen(s, mono_poly)
                col = [Fraction(0)] * len(monos)
                for mm, c in img.terms.items():
                    col[index[mm]] = Fraction(c)
                col[index[m]] -= 1
                cols.append(col)
            # rows of (M_s - id): transpose the columns
            for r in range(len(monos)):
                rows.append([cols[c][r] for c in range(len(monos))])
        kernel = nullspace(rows, len(monos))
        basis = []
        for vec in kernel:
            ints = primitive_integer_vector(vec)
            terms = {m: self.ring.domain.coerce(v) for m, v in zip(monos, ints) if v}
            basis.append(self.ring.poly(terms))
        return basis

    def invariant_basis_up_to(self, I: Iterable[int], dmax: int) -> list[Polynomial]:
        out = []
        for d in range(dmax + 1):
            out.extend(self.invariant_basis(I, d))
        return out

    # -- transforms ---------------------------------------------------------------

    def specialize(self, domain: Domain) -> "Realization":
        """Base change of coefficients (e.g. ZZ -> GF(p) or ZZ -> QQ)."""
        ring = PolyRing(self.ring.nvars, domain, self.ring.names)
        roots = [r.map_coefficients(domain.coerce, ring) for r in self.roots]
        coroots = [tuple(domain.coerce(c) for c in cr) for cr in self.coroots]
        return Realization(self.system, ring, roots, coroots,
                           label=f"{self.label} over {domain.name}")

    def enlarge(self, extra: int, names: Sequence[str] | None = None) -> "Realization":
        """Invariant enlargement: append variables killed by all coroots."""
        if names is None:
            names = tuple(f"d{i + 1}" for i in range(extra))
        ring = PolyRing(self.ring.nvars + extra, self.ring.domain,
                        tuple(self.ring.names) + tuple(names))
        pad = (0,) * extra
        roots = [ring.poly({m + pad: c for m, c in r.terms.items()}) for r in self.roots]
        coroots = [tuple(cr) + pad for cr in self.coroots]
        return Realization(self.system, ring, roots, coroots,
                           label=f"{self.label}+{extra} inert vars")

    def quotient(self, drop: Iterable[int]) -> "Realization":
        """Invariant quotient: remove a trivially-acted summand spanned by
        the given variable indices.  Coroots must vanish there, and each
        root's image must keep unit content (the surjectivity condition).
        """
        drop = sorted(set(drop))
        keep = [i for i in range(self.ring.nvars) if i not in drop]
        dom = self.ring.domain
        for s, cr in enumerate(self.coroots):
            if any(dom.normalize(cr[i]) != 0 for i in drop):
                raise RealizationError(
                    f"coroot of generator {s} does not kill the dropped summand")
        ring = PolyRing(len(keep), dom, tuple(self.ring.names[i] for i in keep))
        roots = []
        for s, r in enumerate(self.roots):
            terms = {}
            for m, c in r.terms.items():
                if any(m[i] for i in drop):
                    continue  # project away the X-component of the root
                terms[tuple(m[i] for i in keep)] = c
            img = ring.poly(terms)
            if img.is_zero():
                raise RealizationError(f"root of generator {s} dies in the quotient")
            if dom.name == "ZZ":
                from math import gcd
                g = 0
                for c in img.terms.values():
                    g = gcd(g, int(c))
                if g != 1:
                    raise RealizationError(
                        f"quotient root of generator {s} has content {g}; "
                        "Demazure surjectivity would fail")
            roots.append(img)
        coroots = [tuple(cr[i] for i in keep) for cr in self.coroots]
        return Realization(self.system, ring, roots, coroots,
                           label=f"{self.label} / {len(drop)} vars")

    def restrict(self, I: Iterable[int]) -> tuple["Realization", dict[int, int]]:
        """Restriction to the parabolic subsystem on I; returns the new
        realization and the map old generator index -> new index."""
        I = sorted(set(I))
        gen_map = {old: new for new, old in enumerate(I)}
        matrix = [[self.system.matrix[a][b] for b in I] for a in I]
        names = [self.system.names[a] for a in I]
        sub = CoxeterSystem(matrix, names)
        roots = [self.roots[a] for a in I]
        coroots = [self.coroots[a] for a in I]
        r = Realization(sub, self.ring, roots, coroots,
                        label=f"{self.label}|{','.join(names)}")
        return r, gen_map


# -- constructors ---------------------------------------------------------------------


def permutation_realization(n: int, domain: Domain = ZZ) -> Realization:
    """S_n permuting x_1..x_n; alpha_i = x_i - x_{i+1}."""
    system = symmetric_group(n)
    ring = PolyRing(n, domain)
    roots = [ring.gen(i) - ring.gen(i + 1) for i in range(n - 1)]
    coroots = [tuple(1 if k == i else (-1 if k == i + 1 else 0) for k in range(n))
               for i in range(n - 1)]
    return Realization(system, ring, roots, coroots, label=f"perm(S{n}) over {domain.name}")


def root_realization(system: CoxeterSystem, domain: Domain = ZZ) -> Realization:
    """V has the simple roots as basis; pairings are the Cartan integers."""
    ring = PolyRing(system.rank, domain, tuple(f"a_{nm}" for nm in system.names))
    roots = [ring.gen(s) for s in range(system.rank)]
    coroots = [tuple(system.cartan[s][t] for t in range(system.rank))
               for s in range(system.rank)]
    return Realization(system, ring, roots, coroots, label=f"root({system!r})")


def affine_permutation_realization(n: int, domain: Domain = ZZ) -> Realization:
    """Affine S_n on x_1..x_n plus delta: alpha_i = x_i - x_{i+1} + delta
    (indices mod n), coroots x_i^* - x_{i+1}^*."""
    system = affine_A(n, names=tuple(f"s{i + 1}" for i in range(n)))
    ring = PolyRing(n + 1, domain, tuple(f"x{i + 1}" for i in range(n)) + ("delta",))
    delta = ring.gen(n)
    roots = []
    coroots = []
    for i in range(n):
        j = (i + 1) % n
        roots.append(ring.gen(i) - ring.gen(j) + delta)
        coroots.append(tuple(1 if k == i else (-1 if k == j else 0) for k in range(n + 1)))
    return Realization(system, ring, roots, coroots, label=f"affine-perm(S{n})")


def realization_from_config(config: dict) -> Realization:
    """Build a realization from a plain-dict config.

    Keys: ``coxeter_matrix`` (list of lists), optional ``generator_names``,
    ``variables`` (names), ``roots`` (list of coefficient lists),
    ``coroots`` (list of coefficient lists), optional ``domain``
    ("ZZ" | "QQ" | "GF(p)").
    """
    system = CoxeterSystem(config["coxeter_matrix"], config.get("generator_names"))
    names = config["variables"]
    dom_name = config.get("domain", "ZZ")
    if dom_name == "ZZ":
        dom: Domain = ZZ
    elif dom_name == "QQ":
        dom = QQ
    elif dom_name.startswith("GF(") and dom_name.endswith(")"):
        dom = GF(int(dom_name[3:-1]))
    else:
        raise RealizationError(f"unknown domain {dom_name!r}")
    ring = PolyRing(len(names), dom, names)
    roots = [ring.linear([Fraction(c) for c in row]) for row in config["roots"]]
    coroots = [tuple(Fraction(c) for c in row) for row in config["coroots"]]
    return Realization(system, ring, roots, coroots, label=config.get("label", "config"))
