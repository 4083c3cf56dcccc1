"""Buchberger's algorithm over Q and GF(p), Krull dimension, ideal membership.

Over Q the working polynomials carry integer coefficients and are kept
primitive, so no fractions appear until the final reduced basis is made
monic.  Monomials are packed into single integers: each exponent gets a
16-bit field whose top bit is a guard, multiplication is integer addition
and divisibility is a borrow test on the guard bits.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .polyring import FieldSpec, IdealPresentation, Polynomial

DEFAULT_BUDGET = 200_000

_BITS = 16
_DEG_BITS = 40


class BudgetExhausted(RuntimeError):
    """The pair-reduction budget ran out; no answer is returned."""

    def __init__(self, budget: int, done: int):
        super().__init__(f"budget exhausted after {done} pair reductions (limit {budget})")
        self.budget = budget
        self.done = done


class ExponentOverflow(OverflowError):
    pass


@dataclass(frozen=True)
class MonomialOrder:
    """Degrevlex (optionally weighted) or lex.

    ``permutation[k]`` is the ambient index of the k-th largest variable;
    ``weights`` are indexed by ambient variable.
    """

    kind: str = "degrevlex"
    permutation: tuple | None = None
    weights: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.permutation is not None:
            perm = tuple(self.permutation)
            if sorted(perm) != list(range(len(perm))):
                raise ValueError(f"not a permutation: {perm}")
            object.__setattr__(self, "permutation", perm)
        if self.weights is not None:
            if self.kind != "degrevlex" or any(int(w) != w or w < 1 for w in self.weights):
                raise ValueError("weights must be positive integers on a degrevlex order")
            object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))

    def perm_for(self, n: int) -> tuple:
        if self.permutation is None:
            return tuple(range(n))
        if len(self.permutation) != n:
            raise ValueError(f"order permutation has length {len(self.permutation)}, ring has {n} variables")
        return self.permutation

    def weights_for(self, n: int) -> tuple:
        if self.weights is None:
            return (1,) * n
        if len(self.weights) != n:
            raise ValueError(f"order weights have length {len(self.weights)}, ring has {n} variables")
        return self.weights

    def sort_key(self, n: int):
        """Key on exponent tuples; a larger key is a larger monomial."""
        perm = self.perm_for(n)
        if self.kind == "lex":
            return lambda m: tuple(m[k] for k in perm)
        w = self.weights_for(n)
        return lambda m: (sum(a * b for a, b in zip(w, m)), tuple(-m[k] for k in reversed(perm)))

    def leading_monomial(self, p: Polynomial):
        if p.is_zero():
            raise ValueError("zero polynomial has no leading monomial")
        return max(p.terms, key=self.sort_key(len(p.variables)))

    def describe(self) -> str:
        out = self.kind
        if self.weights is not None:
            out += f"(w={','.join(map(str, self.weights))})"
        if self.permutation is not None:
            out += f"[{','.join(map(str, self.permutation))}]"
        return out


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


class _Packer:
    """Exponent tuples <-> integers.

    degrevlex: M = wdeg << 16n | P, with the last variable in the most
    significant field of P; the key M - 2*P grows with the monomial.
    lex: the first variable is most significant and the key is M itself.
    """

    def __init__(self, n: int, order: MonomialOrder):
        self.n = n
        self.lex = order.kind == "lex"
        self.weights = order.weights_for(n)
        perm = order.perm_for(n)
        self.offsets = [0] * n
        for rank, amb in enumerate(perm):
            self.offsets[amb] = _BITS * ((n - 1 - rank) if self.lex else rank)
        self.low = (1 << (_BITS * n)) - 1
        guard = 0
        for i in range(n):
            guard |= 1 << (_BITS * i + _BITS - 1)
        if not self.lex:
            guard |= 1 << (_BITS * n + _DEG_BITS - 1)
        self.guard = guard
        self.limit = (1 << (_BITS - 1)) - 1
        self._lcm_cache: dict = {}

    def pack(self, mono) -> int:
        v = 0
        for e, off in zip(mono, self.offsets):
            if e > self.limit:
                raise ExponentOverflow(f"exponent {e} exceeds {self.limit}")
            v |= e << off
        if not self.lex:
            v |= sum(a * b for a, b in zip(self.weights, mono)) << (_BITS * self.n)
        return v

    def unpack(self, v: int) -> tuple:
        mask = (1 << _BITS) - 1
        return tuple((v >> off) & mask for off in self.offsets)

    def key(self, v: int) -> int:
        if self.lex:
            return v
        return v - 2 * (v & self.low)

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((b | g) - a) & g == g

    def lcm(self, a: int, b: int) -> int:
        k = (a, b) if a < b else (b, a)
        out = self._lcm_cache.get(k)
        if out is None:
            out = self.pack(tuple(max(x, y) for x, y in zip(self.unpack(a), self.unpack(b))))
            self._lcm_cache[k] = out
        return out


@dataclass
class TraceEntry:
    """How a pool polynomial was produced.

    ``start`` is ("input", k, den), ("spair", i, u1, shift1, j, u2, shift2)
    or ("copy", i).  Each step (a, b, shift, g) is h <- a*h - b*x^shift*pool[g],
    or h <- a*h when ``shift`` is None.  ``scale`` is applied last.
    """

    start: tuple
    steps: list = field(default_factory=list)
    scale: object = 1


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple
    order: MonomialOrder
    field: FieldSpec
    variables: tuple
    leading_monomials: tuple
    stats: dict = field(compare=False)
    trace: dict | None = field(default=None, compare=False, repr=False)

    @property
    def is_unit(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].is_constant()

    def __len__(self):
        return len(self.generators)


class _Engine:
    def __init__(self, n, fld: FieldSpec, order: MonomialOrder, trace: bool):
        self.p = fld.characteristic
        self.pk = _Packer(n, order)
        self.reductions = 0
        self.tracing = trace
        self.pool: list = []
        self.pool_lm: list = []
        self.records: list = []

    def lm(self, f):
        return max(f, key=self.pk.key)

    def normalize(self, f):
        """Primitive with positive leading coefficient over Q, monic over GF(p)."""
        lm = self.lm(f)
        if self.p:
            inv = pow(f[lm], -1, self.p)
            if inv == 1:
                return f, 1
            return {m: c * inv % self.p for m, c in f.items()}, inv
        g = 0
        for c in f.values():
            g = gcd(g, c)
            if g == 1:
                break
        if f[lm] < 0:
            g = -g
        if g == 1:
            return f, 1
        return {m: c // g for m, c in f.items()}, Fraction(1, g)

    def reduce(self, f, reducers, record=None):
        """Full normal form of ``f`` modulo the pool entries ``reducers``."""
        p = self.p
        key = self.pk.key
        guard = self.pk.guard
        f = dict(f)
        back = {}
        heap = []
        for m in f:
            k = -key(m)
            back[k] = m
            heap.append(k)
        heapq.heapify(heap)
        rem = {}
        red = [(self.pool_lm[i], i) for i in reducers]
        steps = 0
        while heap:
            m = back[heapq.heappop(heap)]
            c = f.get(m)
            if c is None:
                continue
            mg = m | guard
            for glm, gi in red:
                if (mg - glm) & guard == guard:
                    break
            else:
                del f[m]
                rem[m] = c
                continue
            g = self.pool[gi]
            shift = m - glm
            if p:
                a, b = 1, c
            else:
                lcg = g[glm]
                q = gcd(c, lcg)
                a, b = lcg // q, c // q
                if a < 0:
                    a, b = -a, -b
                if a != 1:
                    for mm in f:
                        f[mm] *= a
                    for mm in rem:
                        rem[mm] *= a
            for gm, gc in g.items():
                mm = gm + shift
                old = f.get(mm)
                v = (old or 0) - b * gc
                if p:
                    v %= p
                if v:
                    if old is None:
                        k = -key(mm)
                        back[k] = mm
                        heapq.heappush(heap, k)
                    f[mm] = v
                elif old is not None:
                    del f[mm]
            if record is not None:
                record.steps.append((a, b, shift, gi))
            steps += 1
            if not p and a != 1 and steps % 8 == 0:
                cont = 0
                for v in itertools.chain(f.values(), rem.values()):
                    cont = gcd(cont, v)
                    if cont == 1:
                        break
                if cont > 1:
                    for mm in f:
                        f[mm] //= cont
                    for mm in rem:
                        rem[mm] //= cont
                    if record is not None:
                        record.steps.append((Fraction(1, cont), 0, None, None))
        rem.update(f)
        return rem

    def add_to_pool(self, f, record):
        f, scale = self.normalize(f)
        guard = self.pk.guard
        for m in f:
            if m & guard:
                raise ExponentOverflow("exponent overflow during Groebner basis computation")
        if record is not None:
            record.scale = scale
            self.records.append(record)
        self.pool.append(f)
        self.pool_lm.append(self.lm(f))
        return len(self.pool) - 1

    def spoly(self, i, j):
        f, g = self.pool[i], self.pool[j]
        fl, gl = self.pool_lm[i], self.pool_lm[j]
        L = self.pk.lcm(fl, gl)
        sf, sg = L - fl, L - gl
        cf, cg = f[fl], g[gl]
        if self.p:
            u1, u2 = cg, cf
        else:
            q = gcd(cf, cg)
            u1, u2 = cg // q, cf // q
        out = {m + sf: u1 * c for m, c in f.items()}
        for m, c in g.items():
            mm = m + sg
            v = out.get(mm, 0) - u2 * c
            if self.p:
                v %= self.p
            if v:
                out[mm] = v
            else:
                out.pop(mm, None)
        if self.p:
            out = {m: c % self.p for m, c in out.items() if c % self.p}
        rec = TraceEntry(("spair", i, u1, sf, j, u2, sg)) if self.tracing else None
        return out, rec


def _update(eng: _Engine, G: list, pairs: set, h: int):
    """Gebauer-Moeller update when pool entry h joins the basis G."""
    pk = eng.pk
    lm = eng.pool_lm
    lh = lm[h]
    kept = set()
    for (i, j) in pairs:
        Lij = pk.lcm(lm[i], lm[j])
        if pk.divides(lh, Lij) and Lij != pk.lcm(lm[i], lh) and Lij != pk.lcm(lm[j], lh):
            continue
        kept.add((i, j))
    by_lcm: dict = {}
    for g in G:
        by_lcm.setdefault(pk.lcm(lm[g], lh), []).append(g)
    minimal = []
    for L in sorted(by_lcm, key=pk.key):
        # proper divisors sort first, in both orders
        if all(not pk.divides(M, L) for M in minimal):
            minimal.append(L)
    for L in minimal:
        group = by_lcm[L]
        if any(L == lm[g] + lh for g in group):  # coprime leading monomials
            continue
        kept.add((min(group), h))
    newG = [g for g in G if not pk.divides(lh, lm[g])]
    newG.append(h)
    return newG, kept


def _to_internal(poly: Polynomial, pk: _Packer, fld: FieldSpec):
    """Packed terms with integer coefficients, and the denominator that was cleared."""
    if fld.characteristic:
        return {pk.pack(m): int(c) for m, c in poly.terms.items()}, 1
    den = 1
    for c in poly.terms.values():
        d = Fraction(c).denominator
        den = den * d // gcd(den, d)
    return {pk.pack(m): int(c * den) for m, c in poly.terms.items()}, den


def _from_internal(f, pk: _Packer, variables, fld: FieldSpec, lm):
    lc = f[lm]
    if fld.characteristic:
        s = pow(lc, -1, fld.characteristic)
        terms = {pk.unpack(m): c * s % fld.characteristic for m, c in f.items()}
    else:
        terms = {pk.unpack(m): Fraction(c, lc) for m, c in f.items()}
    return Polynomial(variables, terms, fld)


def buchberger(ideal: IdealPresentation, order: MonomialOrder = DEGREVLEX,
               budget: int = DEFAULT_BUDGET, trace: bool = False) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal``.

    Pairs are chosen by the normal strategy (smallest lcm first, ties by pair
    index); the coprime and chain criteria enter through the Gebauer-Moeller
    update.  Raises ``BudgetExhausted`` rather than return a partial basis.
    """
    n = ideal.nvars
    fld = ideal.field
    eng = _Engine(n, fld, order, trace)
    pk = eng.pk
    G: list = []
    pairs: set = set()
    unit = False

    inputs = []
    for k, g in enumerate(ideal.generators):
        if g.is_zero():
            continue
        f, den = _to_internal(g, pk, fld)
        inputs.append((pk.key(eng.lm(f)), k, f, den))
    inputs.sort(key=lambda t: (t[0], t[1]))
    for _, k, f, den in inputs:
        rec = TraceEntry(("input", k, den)) if trace else None
        r = eng.reduce(f, G, rec)
        if not r:
            continue
        h = eng.add_to_pool(r, rec)
        if eng.pool_lm[h] == 0:
            G, pairs, unit = [h], set(), True
            break
        G, pairs = _update(eng, G, pairs, h)

    if order.kind == "lex":
        def ascending(L):
            return (sum(pk.unpack(L)), L)
    else:
        ascending = pk.key

    def pair_key(pr):
        return (ascending(pk.lcm(eng.pool_lm[pr[0]], eng.pool_lm[pr[1]])), pr)

    queue = [pair_key(pr) for pr in pairs]
    heapq.heapify(queue)
    queued = set(pairs)
    while pairs and not unit:
        if eng.reductions >= budget:
            raise BudgetExhausted(budget, eng.reductions)
        pr = heapq.heappop(queue)[1]
        if pr not in pairs:
            continue
        pairs.discard(pr)
        eng.reductions += 1
        s, rec = eng.spoly(*pr)
        r = eng.reduce(s, G, rec)
        if not r:
            continue
        h = eng.add_to_pool(r, rec)
        if eng.pool_lm[h] == 0:
            G, pairs = [h], set()
            break
        G, pairs = _update(eng, G, pairs, h)
        for q in pairs - queued:
            heapq.heappush(queue, pair_key(q))
            queued.add(q)

    G = sorted(G, key=lambda g: pk.key(eng.pool_lm[g]))
    minimal = []
    for g in G:
        if not any(pk.divides(eng.pool_lm[q], eng.pool_lm[g]) for q in minimal):
            minimal.append(g)
    reduced = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        rec = TraceEntry(("copy", g)) if trace else None
        # leading monomials are pairwise non-divisible, so the leading term survives
        reduced.append(eng.add_to_pool(eng.reduce(eng.pool[g], others, rec), rec))
    gens = tuple(_from_internal(eng.pool[h], pk, ideal.variables, fld, eng.pool_lm[h]) for h in reduced)
    lms = tuple(pk.unpack(eng.pool_lm[h]) for h in reduced)
    stats = {"pair_reductions": eng.reductions, "pool_size": len(eng.pool), "basis_size": len(gens)}
    tr = None
    if trace:
        tr = {"records": eng.records, "pool": eng.pool, "final": reduced, "packer": pk}
    return GroebnerBasis(gens, order, fld, ideal.variables, lms, stats, tr)


def verify_trace(ideal: IdealPresentation, gb: GroebnerBasis) -> bool:
    """Replay the recorded reductions starting from the input generators.

    True when every pool polynomial is rebuilt exactly as its recorded
    combination of inputs and earlier pool entries, which certifies that
    each basis element lies in the ideal.
    """
    if gb.trace is None:
        raise ValueError("basis was computed without trace=True")
    p = ideal.field.characteristic
    pk = gb.trace["packer"]
    pool = gb.trace["pool"]

    def norm(c):
        return c % p if p else c

    def axpy(h, a, b, shift, g):
        out = {m: norm(c * a) for m, c in h.items()}
        for m, c in g.items():
            mm = m + shift
            v = norm(out.get(mm, 0) - b * c)
            if v:
                out[mm] = v
            else:
                out.pop(mm, None)
        return {m: c for m, c in out.items() if c}

    inputs = {k: {pk.pack(m): c for m, c in g.terms.items()}
              for k, g in enumerate(ideal.generators) if not g.is_zero()}
    if len(gb.trace["records"]) != len(pool):
        return False
    for idx, rec in enumerate(gb.trace["records"]):
        kind = rec.start[0]
        if kind == "input":
            _, k, den = rec.start
            h = {m: norm(c * den) for m, c in inputs[k].items()}
        elif kind == "spair":
            _, i, u1, s1, j, u2, s2 = rec.start
            if i >= idx or j >= idx:
                return False
            h = axpy({}, 1, -u1, s1, pool[i])
            h = axpy(h, 1, u2, s2, pool[j])
        else:
            h = dict(pool[rec.start[1]])
        for a, b, shift, gi in rec.steps:
            if shift is None:
                h = {m: c * a for m, c in h.items()}
            else:
                if gi >= idx:
                    return False
                h = axpy(h, a, b, shift, pool[gi])
        h = {m: norm(c * rec.scale) for m, c in h.items()}
        h = {m: c for m, c in h.items() if c}
        if h != pool[idx]:
            return False
    return True


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Remainder of ``p`` on division by the basis.

    Written on plain exponent tuples and field arithmetic, independently of
    the packed engine, so that tests can use it as a cross-check.
    """
    if p.variables != gb.variables or p.field != gb.field:
        raise ValueError("polynomial and basis live in different rings")
    fld = gb.field
    key = gb.order.sort_key(len(gb.variables))
    basis = [(g.terms, lm) for g, lm in zip(gb.generators, gb.leading_monomials)]
    f = dict(p.terms)
    rem = {}
    while f:
        m = max(f, key=key)
        c = f.pop(m)
        for terms, glm in basis:
            if all(x <= y for x, y in zip(glm, m)):
                shift = tuple(x - y for x, y in zip(m, glm))
                for gm, gc in terms.items():
                    if gm == glm:
                        continue
                    mm = tuple(x + y for x, y in zip(gm, shift))
                    v = fld.coerce(f.get(mm, 0) - c * gc)
                    if v:
                        f[mm] = v
                    else:
                        f.pop(mm, None)
                break
        else:
            rem[m] = c
    return Polynomial(gb.variables, rem, fld)


def ideal_membership(p: Polynomial, gb: GroebnerBasis) -> bool:
    return normal_form(p, gb).is_zero()


def minimal_supports(monomials: Sequence[tuple]) -> list:
    supports = {frozenset(i for i, e in enumerate(m) if e) for m in monomials}
    out = []
    for s in sorted(supports, key=lambda s: (len(s), sorted(s))):
        if not any(t <= s for t in out):
            out.append(s)
    return out


def monomial_dimension(monomials: Sequence[tuple], nvars: int) -> int:
    """Krull dimension of k[x]/(monomials); -1 when some monomial is 1.

    nvars minus a minimum hitting set of the supports, by branch and bound.
    """
    supports = minimal_supports(monomials)
    if any(not s for s in supports):
        return -1
    if not supports:
        return nvars
    best = [len(set().union(*supports))]

    def search(chosen: frozenset, remaining: list):
        if len(chosen) >= best[0]:
            return
        open_sets = [s for s in remaining if not (s & chosen)]
        if not open_sets:
            best[0] = len(chosen)
            return
        # disjoint open supports each need their own variable
        used: set = set()
        packing = 0
        for s in sorted(open_sets, key=len):
            if not (s & used):
                used |= s
                packing += 1
        if len(chosen) + packing >= best[0]:
            return
        pivot = min(open_sets, key=lambda s: (len(s), sorted(s)))
        for v in sorted(pivot):
            search(chosen | {v}, open_sets)

    search(frozenset(), supports)
    return nvars - best[0]


def monomial_dimension_bruteforce(monomials: Sequence[tuple], nvars: int) -> int:
    """Exhaustive subset enumeration, for cross-checking on small rings."""
    supports = minimal_supports(monomials)
    if any(not s for s in supports):
        return -1
    for size in range(nvars, -1, -1):
        for subset in itertools.combinations(range(nvars), size):
            ss = set(subset)
            if not any(s <= ss for s in supports):
                return size
    return -1  # pragma: no cover


def dimension_from_basis(gb: GroebnerBasis) -> int:
    if gb.is_unit:
        return -1
    return monomial_dimension(gb.leading_monomials, len(gb.variables))


def krull_dimension(ideal: IdealPresentation, order: MonomialOrder = DEGREVLEX,
                    budget: int = DEFAULT_BUDGET) -> int:
    """Dimension of k[x]/I; -1 for the unit ideal."""
    return dimension_from_basis(buchberger(ideal, order, budget))
