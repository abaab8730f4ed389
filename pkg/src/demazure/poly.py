"""Exact sparse multivariate polynomials.

A monomial is an exponent tuple ``(e_1, ..., e_n)``, one non-negative int
per variable of the ring.  A polynomial is a dict mapping exponent tuples
to nonzero coefficients from the ring's domain (ZZ by default):

    3*x1^2*x2 - x3   ->   {(2, 1, 0): 3, (0, 0, 1): -1}

Nothing is ever rounded; addition and multiplication stay inside the
domain, and division is exact-or-error.  Monomials are ordered by graded
lexicographic order (total degree first, then the exponent tuple with
x1 > x2 > ...); the order is used only for canonical printing, leading
terms in the division algorithm, and deterministic basis enumeration.

The canonical text form is e.g. ``3*x1^2*x2 - x3`` with terms in
decreasing grlex order; :func:`PolyRing.parse` accepts the same grammar.
"""
from __future__ import annotations

import itertools
import re
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .domains import ZZ, Domain, DomainError

Monomial = tuple  # exponent tuple, one entry per ring variable


class NotDivisibleError(Exception):
    """exact_divide was asked for a quotient that does not exist."""


class RingMismatchError(Exception):
    """Operands belong to different polynomial rings."""


def grlex_key(mono: Monomial):
    return (sum(mono), mono)


class PolyRing:
    """Ring context: variable count, coefficient domain, variable names."""

    def __init__(self, nvars: int, domain: Domain = ZZ, names: Sequence[str] | None = None):
        if names is None:
            names = tuple(f"x{i + 1}" for i in range(nvars))
        else:
            names = tuple(names)
            if len(names) != nvars:
                raise ValueError("need one name per variable")
        self.nvars = nvars
        self.domain = domain
        self.names = names
        self._zero_mono = (0,) * nvars

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and other.nvars == self.nvars
            and other.domain == self.domain
            and other.names == self.names
        )

    def __hash__(self):
        return hash((self.nvars, self.domain.name, self.names))

    def __repr__(self):
        return f"PolyRing({self.nvars} vars, {self.domain.name})"

    # -- constructors -------------------------------------------------

    def poly(self, terms: dict) -> "Polynomial":
        """Build a polynomial, normalizing coefficients and pruning zeros."""
        dom = self.domain
        clean = {}
        for mono, c in terms.items():
            c = dom.normalize(c)
            if c != 0:
                clean[mono] = c
        return Polynomial(self, clean)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.domain.coerce(c)
        return Polynomial(self, {self._zero_mono: c} if c != 0 else {})

    def gen(self, i: int) -> "Polynomial":
        """The variable x_{i+1} (0-based index i)."""
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range")
        mono = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {mono: self.domain.coerce(1)})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent tuple {exps}")
        return self.poly({exps: self.domain.coerce(coeff)})

    def linear(self, coeffs: Sequence, const=0) -> "Polynomial":
        """sum(coeffs[i] * x_{i+1}) + const."""
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                mono = tuple(1 if j == i else 0 for j in range(self.nvars))
                terms[mono] = self.domain.coerce(c)
        c = self.domain.coerce(const)
        if c != 0:
            terms[self._zero_mono] = c
        return self.poly(terms)

    # -- monomial enumeration -----------------------------------------

    def monomials_of_degree(self, d: int, variables: Iterable[int] | None = None) -> list[Monomial]:
        """All exponent tuples of total degree d supported on the given
        0-based variable indices (all variables when omitted), in
        decreasing grlex order."""
        if d < 0:
            return []
        idxs = tuple(range(self.nvars)) if variables is None else tuple(sorted(variables))
        monos = []

        def rec(pos: int, remaining: int, acc: list[int]):
            if pos == len(idxs) - 1:
                exps = [0] * self.nvars
                for j, e in zip(idxs, acc + [remaining]):
                    exps[j] = e
                monos.append(tuple(exps))
                return
            for e in range(remaining, -1, -1):
                rec(pos + 1, remaining - e, acc + [e])

        if not idxs:
            return [self._zero_mono] if d == 0 else []
        rec(0, d, [])
        monos.sort(key=grlex_key, reverse=True)
        return monos

    # -- text form -----------------------------------------------------

    _TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")

    def parse(self, text: str) -> "Polynomial":
        """Parse the canonical text grammar: ``3*x1^2*x2 - 5/2*x3 + 7``."""
        tokens = []
        pos = 0
        while pos < len(text):
            m = self._TOKEN.match(text, pos)
            if not m:
                if text[pos:].strip():
                    raise ValueError(f"cannot tokenize {text[pos:]!r}")
                break
            pos = m.end()
            tokens.append(m.group("num") or m.group("name") or m.group("op"))
        name_index = {nm: i for i, nm in enumerate(self.names)}
        result = self.zero()
        i = 0
        n = len(tokens)
        while i < n:
            sign = 1
            while i < n and tokens[i] in "+-":
                if tokens[i] == "-":
                    sign = -sign
                i += 1
            if i >= n:
                raise ValueError("dangling sign")
            coeff = Fraction(sign)
            exps = [0] * self.nvars
            saw_factor = False
            while True:
                tok = tokens[i]
                if tok.isdigit():
                    val = Fraction(int(tok))
                    i += 1
                    if i < n and tokens[i] == "/":
                        if i + 1 >= n or not tokens[i + 1].isdigit():
                            raise ValueError("bad rational coefficient")
                        val /= int(tokens[i + 1])
                        i += 2
                    coeff *= val
                elif tok in name_index:
                    vi = name_index[tok]
                    i += 1
                    power = 1
                    if i < n and tokens[i] == "^":
                        if i + 1 >= n or not tokens[i + 1].isdigit():
                            raise ValueError("bad exponent")
                        power = int(tokens[i + 1])
                        i += 2
                    exps[vi] += power
                else:
                    raise ValueError(f"unexpected token {tok!r}")
                saw_factor = True
                if i < n and tokens[i] == "*":
                    i += 1
                    if i >= n:
                        raise ValueError("dangling *")
                    continue
                break
            if not saw_factor:
                raise ValueError("empty term")
            result = result + self.monomial(exps, self.domain.coerce(coeff))
        return result


class Polynomial:
    """Immutable sparse polynomial; do not mutate ``terms`` after creation."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- basic queries --------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def coefficient(self, mono: Monomial):
        return self.terms.get(tuple(mono), 0)

    def constant_coefficient(self):
        return self.terms.get(self.ring._zero_mono, 0)

    def leading(self) -> tuple[Monomial, object]:
        """(monomial, coefficient) of the grlex-largest term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=grlex_key)
        return m, self.terms[m]

    def variables_used(self) -> set[int]:
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return used

    # -- arithmetic ------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.const(other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return self.ring.poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.ring.domain.coerce(other)
            if c == 0:
                return self.ring.zero()
            return self.ring.poly({m: cc * c for m, cc in self.terms.items()})
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        nv = self.ring.nvars
        for ma, ca in a.items():
            for mb, cb in b.items():
                key = tuple(ma[i] + mb[i] for i in range(nv))
                out[key] = out.get(key, 0) + ca * cb
        return self.ring.poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k >> 1
            if base_needed:
                base = base * base
            k = base_needed
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- graded structure -------------------------------------------------

    def graded_component(self, d: int) -> "Polynomial":
        return Polynomial(self.ring, {m: c for m, c in self.terms.items() if sum(m) == d})

    def graded_parts(self) -> dict[int, "Polynomial"]:
        parts: dict[int, dict] = {}
        for m, c in self.terms.items():
            parts.setdefault(sum(m), {})[m] = c
        return {d: Polynomial(self.ring, t) for d, t in sorted(parts.items())}

    # -- division ----------------------------------------------------------

    def exact_divide(self, g: "Polynomial") -> "Polynomial":
        """The quotient q with q*g == self, or raise NotDivisibleError.

        Single-divisor division in grlex order: when the quotient exists in
        this ring, every step's leading term is divisible, so the algorithm
        finds it; any failed step proves non-divisibility.
        """
        if not isinstance(g, Polynomial):
            raise TypeError("divisor must be a Polynomial")
        self._check(g)
        if g.is_zero():
            raise NotDivisibleError("division by zero polynomial")
        if self.is_zero():
            return self.ring.zero()
        dom = self.ring.domain
        nv = self.ring.nvars
        gm, gc = g.leading()
        rest = dict(self.terms)
        quot: dict = {}
        while rest:
            fm = max(rest, key=grlex_key)
            fc = rest[fm]
            qm = tuple(fm[i] - gm[i] for i in range(nv))
            if any(e < 0 for e in qm):
                raise NotDivisibleError(f"{self} is not divisible by {g}")
            try:
                qc = dom.divide(fc, gc)
            except DomainError as exc:
                raise NotDivisibleError(str(exc)) from exc
            quot[qm] = quot.get(qm, 0) + qc
            for m, c in g.terms.items():
                key = tuple(qm[i] + m[i] for i in range(nv))
                nc = dom.normalize(rest.get(key, 0) - qc * c)
                if nc == 0:
                    rest.pop(key, None)
                else:
                    rest[key] = nc
        return self.ring.poly(quot)

    # -- substitution -------------------------------------------------------

    def substitute_linear(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Apply the ring endomorphism x_i -> images[i] (each of degree <= 1)."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        for im in images:
            self._check(im)
            if im.degree() > 1:
                raise ValueError("substitute_linear requires linear images")
        power_cache: list[dict[int, Polynomial]] = [dict() for _ in images]

        def power(i: int, e: int) -> Polynomial:
            cache = power_cache[i]
            if e not in cache:
                if e == 0:
                    cache[e] = self.ring.one()
                else:
                    cache[e] = power(i, e - 1) * images[i]
            return cache[e]

        out = self.ring.zero()
        for m, c in self.terms.items():
            term = self.ring.const(c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def map_coefficients(self, func, new_ring: PolyRing | None = None) -> "Polynomial":
        ring = new_ring or self.ring
        return ring.poly({m: func(c) for m, c in self.terms.items()})

    def evaluate(self, point: Sequence) -> object:
        """Evaluate at a point (exact scalar arithmetic)."""
        if len(point) != self.ring.nvars:
            raise ValueError("point has wrong length")
        total = 0
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v = v * x**e
            total = total + v
        return total

    # -- printing -------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.names
        chunks = []
        for mono in sorted(self.terms, key=grlex_key, reverse=True):
            c = self.terms[mono]
            factors = []
            for i, e in enumerate(mono):
                if e == 1:
                    factors.append(names[i])
                elif e > 1:
                    factors.append(f"{names[i]}^{e}")
            neg = c < 0
            mag = -c if neg else c
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            chunks.append(("- " if neg else "+ ") + body)
        text = " ".join(chunks)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self):
        return f"<{self}>"


def poly_sum(ring: PolyRing, polys: Iterable[Polynomial]) -> Polynomial:
    out: dict = {}
    for p in polys:
        for m, c in p.terms.items():
            out[m] = out.get(m, 0) + c
    return ring.poly(out)


def monomials_up_to_degree(ring: PolyRing, dmax: int) -> Iterator[Monomial]:
    for d in range(dmax + 1):
        yield from ring.monomials_of_degree(d)


def random_polynomial(ring: PolyRing, rng, max_degree: int, n_terms: int = 6,
                      coeff_range: tuple[int, int] = (-4, 4)) -> Polynomial:
    """Random sparse polynomial for property tests (seeded rng)."""
    terms: dict = {}
    for _ in range(n_terms):
        d = rng.randint(0, max_degree)
        exps = [0] * ring.nvars
        for _ in range(d):
            exps[rng.randrange(ring.nvars)] += 1
        c = 0
        while c == 0:
            c = rng.randint(*coeff_range)
        mono = tuple(exps)
        terms[mono] = terms.get(mono, 0) + c
    return ring.poly(terms)
