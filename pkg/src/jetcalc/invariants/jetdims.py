"""Jet-scheme dimensions and the invariants read off them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

from ..groebner import (DEFAULT_BUDGET, LEX, BudgetExhausted, MonomialOrder, buchberger,
                        dimension_from_basis)
from ..jetgen import fiber_ideal, generate_jet_equations
from ..localalgebra import LocalAlgebra, box, fat_point, truncation
from ..polyring import IdealPresentation, jacobian_generators
from .report import INF, NEG_INF, InvariantReport


class SandwichViolation(AssertionError):
    """dim(X)*l <= dim J_A(X) <= N*l failed; always an internal error."""


class InvariantError(ValueError):
    pass


# every jet_dimension result passes through _sandwich; tests read these counters
SANDWICH_LOG = {"checks": 0, "violations": 0}


def _sandwich(result: int, dim_x: int, nvars: int, ell: int):
    SANDWICH_LOG["checks"] += 1
    if dim_x < 0:
        ok = result == -1
    else:
        ok = dim_x * ell <= result <= nvars * ell
    if not ok:
        SANDWICH_LOG["violations"] += 1
        raise SandwichViolation(f"jet dimension {result} outside [{dim_x}*{ell}, {nvars}*{ell}]")


@lru_cache(maxsize=256)
def _grading_cached(variables, gens_key):
    import numpy as np
    from scipy.optimize import linprog

    n = len(variables)
    rows = []
    for terms in gens_key:
        base = terms[0]
        for mono in terms[1:]:
            rows.append([a - b for a, b in zip(mono, base)])
    if not rows:
        return (1,) * n
    res = linprog(np.ones(n), A_eq=np.array(rows, dtype=float), b_eq=np.zeros(len(rows)),
                  bounds=[(1, None)] * n, method="highs")
    if res.status != 0:
        return None
    fr = [Fraction(float(v)).limit_denominator(1000) for v in res.x]
    den = 1
    for f in fr:
        den = den * f.denominator // gcd(den, f.denominator)
    w = [int(f * den) for f in fr]
    g = 0
    for v in w:
        g = gcd(g, v)
    w = tuple(v // g for v in w)
    # floating point only proposes; exact arithmetic decides
    for row in rows:
        if sum(a * b for a, b in zip(row, w)) != 0:
            return None
    if any(v < 1 for v in w):
        return None
    return w


def quasi_homogeneous_weights(ideal: IdealPresentation):
    """Positive integer weights making every generator weighted-homogeneous, or None."""
    gens_key = tuple(tuple(sorted(g.terms)) for g in ideal.generators if not g.is_zero())
    return _grading_cached(ideal.variables, gens_key)


def jet_order(ideal: IdealPresentation, algebra: LocalAlgebra) -> MonomialOrder:
    """Weighted degrevlex on the jet coordinates, base-point coordinates largest.

    Any positive weights give a valid order; weights that make the system
    homogeneous keep the computation small.  Coordinates of e_1 come first,
    then e_2, and so on (within each, ambient variable order).
    """
    n, ell = ideal.nvars, algebra.dim
    # coordinate a_{i,j} sits at position j*ell + i
    perm = tuple(j * ell + i for i in range(ell) for j in range(n))
    w = quasi_homogeneous_weights(ideal)
    weights = None if w is None else tuple(w[j] for j in range(n) for _ in range(ell))
    return MonomialOrder("degrevlex", perm, weights)


@dataclass
class JetEngine:
    """Dimension oracle: budget, order policy and an optional result cache.

    ``order`` is "auto" (weighted, base point first), "degrevlex" (plain,
    jetgen coordinate order) or "lex".
    """

    budget: int = DEFAULT_BUDGET
    order: str = "auto"
    cache: object = None
    verify: bool = False
    stats: dict = field(default_factory=lambda: {"groebner_runs": 0, "cache_hits": 0})

    def _order_for(self, ideal, algebra=None) -> MonomialOrder:
        if self.order == "lex":
            return LEX
        if self.order == "degrevlex" or algebra is None:
            return MonomialOrder("degrevlex")
        return jet_order(ideal, algebra)

    def _compute(self, ideal, order):
        self.stats["groebner_runs"] += 1
        gb = buchberger(ideal, order, self.budget)
        return {"dimension": dimension_from_basis(gb), "unit_ideal": gb.is_unit, "basis_size": len(gb)}

    def _cached(self, kind, ideal, order, extra, compute):
        if self.cache is None:
            return compute()
        key = self.cache.key(kind=kind, ideal=ideal.to_text(), extra=extra, order=order.describe(),
                             field=ideal.field.name, budget=self.budget)
        hit = self.cache.lookup(key)
        if hit is not None:
            self.stats["cache_hits"] += 1
            if self.verify:
                fresh = compute()
                if fresh != hit:
                    raise RuntimeError(f"cache entry {key[:12]} differs from recomputation: {hit} vs {fresh}")
            return hit
        out = compute()
        self.cache.store(key, out)
        return out

    def krull(self, ideal: IdealPresentation) -> dict:
        order = self._order_for(ideal)
        return self._cached("krull", ideal, order, "", lambda: self._compute(ideal, order))

    def krull_dimension(self, ideal: IdealPresentation) -> int:
        return self.krull(ideal)["dimension"]

    def jet_dimension(self, ideal: IdealPresentation, algebra: LocalAlgebra, dim_x: int | None = None) -> int:
        """dim J_A(X), with the sandwich dim(X)*l <= result <= N*l checked on every call."""
        if dim_x is None:
            dim_x = self.krull_dimension(ideal)
        order = self._order_for(ideal, algebra)

        def compute():
            return self._compute(generate_jet_equations(ideal, algebra).as_ideal(), order)

        out = self._cached("jet", ideal, order, algebra.to_text(), compute)
        _sandwich(out["dimension"], dim_x, ideal.nvars, algebra.dim)
        return out["dimension"]

    def fiber_dimension(self, ideal: IdealPresentation, algebra: LocalAlgebra, center: IdealPresentation) -> int:
        """dim of J_A(X) intersected with the preimage of V(center)."""
        order = self._order_for(ideal, algebra)

        def compute():
            return self._compute(fiber_ideal(generate_jet_equations(ideal, algebra), center), order)

        return self._cached("fiber", ideal, order, algebra.to_text() + center.to_text(), compute)["dimension"]


DEFAULT_ENGINE = JetEngine()


def _engine(engine):
    return DEFAULT_ENGINE if engine is None else engine


def jet_dimension(ideal: IdealPresentation, algebra: LocalAlgebra, dim_x: int | None = None,
                  engine: JetEngine | None = None) -> int:
    return _engine(engine).jet_dimension(ideal, algebra, dim_x)


# sequences and lct

@dataclass(frozen=True)
class DimensionSequence:
    entries: tuple  # (m, dim J_m, dim/(m+1))
    ambient_dim: int

    @classmethod
    def from_dims(cls, dims: Sequence[int], ambient_dim: int, start: int = 0):
        return cls(tuple((m, d, Fraction(d, m + 1)) for m, d in enumerate(dims, start)), ambient_dim)

    def normalized(self) -> dict:
        return {m: v for m, _, v in self.entries}

    def to_json(self) -> list:
        return [{"m": m, "dim": d, "normalized": v} for m, d, v in self.entries]


def monotonicity_check(seq: DimensionSequence) -> bool:
    """dim J_{m-1}/m <= dim J_{mp-1}/(mp) for every comparable pair present."""
    norm = seq.normalized()
    for a, b in itertools.permutations(norm, 2):
        if a < b and (b + 1) % (a + 1) == 0 and norm[a] > norm[b]:
            return False
    return True


def jet_dimension_sequence(ideal: IdealPresentation, m_max: int, engine: JetEngine | None = None):
    """dims of J_0..J_m_max; returns (sequence, failed_index or None)."""
    eng = _engine(engine)
    dim_x = eng.krull_dimension(ideal)
    dims = []
    failed = None
    for m in range(m_max + 1):
        try:
            dims.append(eng.jet_dimension(ideal, truncation(m), dim_x))
        except BudgetExhausted:
            failed = m
            break
    return DimensionSequence.from_dims(dims, ideal.nvars), failed


def certify_maximum(seq: DimensionSequence):
    """Max normalized value and a witness pair m < m' with (m+1) | (m'+1), if any."""
    norm = seq.normalized()
    top = max(norm.values())
    at = sorted(m for m, v in norm.items() if v == top)
    for a, b in itertools.combinations(at, 2):
        if (b + 1) % (a + 1) == 0:
            return top, at, (a, b)
    return top, at, None


def lct_estimate(ideal: IdealPresentation, m_max: int, engine: JetEngine | None = None) -> InvariantReport:
    """lct = n - max_m dim J_m/(m+1), from the dims for m <= m_max.

    Exact only when two indices m < m' with (m+1) | (m'+1) reach the same
    maximum; otherwise the value is an upper bound for lct.
    """
    if m_max < 0:
        raise InvariantError("m_max must be >= 0")
    eng = _engine(engine)
    n = ideal.nvars
    inputs = {"ideal": ideal.to_text(), "m_max": m_max}
    if not ideal.nonzero_generators():
        return InvariantReport("lct", Fraction(0), "exact", "closed-form", inputs,
                               {"sequence": [], "certified": True, "note": "zero ideal"})
    if eng.krull_dimension(ideal) < 0:
        return InvariantReport("lct", INF, "exact", "closed-form", inputs,
                               {"sequence": [], "certified": True, "note": "unit ideal"})
    seq, failed = jet_dimension_sequence(ideal, m_max, eng)
    details = {"sequence": seq.to_json(), "certified": False}
    if failed is not None:
        details["partial"] = True
        details["failed_at"] = failed
    if not seq.entries:
        return InvariantReport("lct", None, "upper_bound", "jet-dimension", inputs, details)
    if not monotonicity_check(seq):  # pragma: no cover - would mean a wrong dimension
        raise InvariantError("computed jet dimensions violate the divisibility monotonicity")
    top, at, witness = certify_maximum(seq)
    details["max_normalized"] = top
    details["argmax"] = at
    if witness is not None:
        details["certified"] = True
        details["witness"] = list(witness)
    return InvariantReport("lct", n - top, "exact" if witness else "upper_bound", "jet-dimension", inputs, details)


# mld

def mld_estimate(ideal: IdealPresentation, center: IdealPresentation, q, m_max: int,
                 engine: JetEngine | None = None) -> InvariantReport:
    """v_m = (m+1)(n-q) - dim(J_m(W) over Z) for m <= m_max.

    Any negative v_m certifies -inf.  Otherwise the running minimum is an
    upper bound.  An empty fiber imposes no condition and is skipped.
    """
    eng = _engine(engine)
    q = Fraction(q)
    n = ideal.nvars
    if q <= 0:
        raise InvariantError("q must be positive")
    if n < 2:
        raise InvariantError("mld needs ambient dimension >= 2")
    if eng.krull_dimension(center) < 0:
        raise InvariantError("the center Z is empty (unit ideal)")
    inputs = {"ideal": ideal.to_text(), "center": center.to_text(), "q": q, "m_max": m_max}
    values = []
    best = None
    for m in range(m_max + 1):
        try:
            fib = eng.fiber_dimension(ideal, truncation(m), center)
        except BudgetExhausted:
            return InvariantReport("mld", best, "upper_bound", "jet-dimension", inputs,
                                   {"sequence": values, "partial": True, "failed_at": m})
        if fib < 0:
            values.append({"m": m, "fiber_dim": fib, "v": None})
            continue
        v = (m + 1) * (n - q) - fib
        values.append({"m": m, "fiber_dim": fib, "v": v})
        if v < 0:
            return InvariantReport("mld", NEG_INF, "certified", "jet-dimension", inputs,
                                   {"sequence": values, "negative_at": m})
        best = v if best is None else min(best, v)
    return InvariantReport("mld", best, "upper_bound", "jet-dimension", inputs, {"sequence": values})


# alpha, beta, gamma

def alpha_pq(ideal: IdealPresentation, p: int, q: int, engine: JetEngine | None = None) -> int:
    if p < 1 or q < 1:
        raise InvariantError("p and q must be >= 1")
    return _engine(engine).jet_dimension(ideal, box(p, q))


def alpha_table(ideal: IdealPresentation, p_max: int, q_max: int, engine: JetEngine | None = None) -> dict:
    """alpha_{p,q}/(pq) for p <= p_max, q <= q_max with the running sup and the divisibility check."""
    eng = _engine(engine)
    cells = {}
    partial = False
    for p in range(1, p_max + 1):
        for q in range(1, q_max + 1):
            try:
                cells[(p, q)] = alpha_pq(ideal, p, q, eng)
            except BudgetExhausted:
                cells[(p, q)] = None
                partial = True
    done = {k: Fraction(v, k[0] * k[1]) for k, v in cells.items() if v is not None}
    violations = [[p, q, mp] for (p, q) in done for (mp, q2) in done
                  if q2 == q and mp > p and mp % p == 0 and done[(p, q)] > done[(mp, q)]]
    rows = [{"p": p, "q": q, "alpha": v, "normalized": done.get((p, q))} for (p, q), v in sorted(cells.items())]
    return {"cells": rows, "sup_lower_bound": max(done.values()) if done else None,
            "monotone": not violations, "violations": violations, "partial": partial}


def beta_m(ideal: IdealPresentation, m: int, engine: JetEngine | None = None) -> int:
    if m < 1:
        raise InvariantError("m must be >= 1")
    return _engine(engine).jet_dimension(ideal, fat_point(2, m))


def beta_table(ideal: IdealPresentation, m_max: int, engine: JetEngine | None = None) -> dict:
    eng = _engine(engine)
    rows = []
    partial = False
    for m in range(1, m_max + 1):
        try:
            b = beta_m(ideal, m, eng)
            rows.append({"m": m, "beta": b, "normalized": Fraction(b * 2, m * (m + 1))})
        except BudgetExhausted:
            rows.append({"m": m, "beta": None, "normalized": None})
            partial = True
    vals = [r["normalized"] for r in rows if r["normalized"] is not None]
    return {"rows": rows, "sup_lower_bound": max(vals) if vals else None, "partial": partial}


def gamma_estimate(ideal: IdealPresentation, algebras: Sequence[LocalAlgebra],
                   engine: JetEngine | None = None) -> InvariantReport:
    """Running max of dim J_A(X)/dim A over the given algebras; a lower bound for gamma."""
    if not algebras:
        raise InvariantError("the algebra list is empty")
    for alg in algebras:
        if alg.ngens > 2:
            raise InvariantError(f"{alg.describe()} has embedding dimension {alg.ngens} > 2")
    eng = _engine(engine)
    rows = []
    best = None
    partial = False
    for alg in algebras:
        try:
            d = eng.jet_dimension(ideal, alg)
        except BudgetExhausted:
            rows.append({"algebra": alg.describe(), "dim": None})
            partial = True
            continue
        v = Fraction(d, alg.dim)
        rows.append({"algebra": alg.describe(), "dim": d, "normalized": v})
        best = v if best is None else max(best, v)
    details = {"rows": rows}
    if partial:
        details["partial"] = True
    return InvariantReport("gamma", best, "lower_bound", "jet-dimension",
                           {"ideal": ideal.to_text(), "algebras": [a.describe() for a in algebras]}, details)


# complete intersections

def lci_jet_check(ideal: IdealPresentation, dim_x: int, algebra: LocalAlgebra,
                  engine: JetEngine | None = None) -> dict:
    """Pure-dimensionality and irreducibility of J_A(X) for a complete intersection X.

    Both verdicts are decided on dimensions alone: pure means
    dim J_A(X) = l*dim(X); irreducible means the part over the singular
    locus has dimension < l*dim(X).
    """
    eng = _engine(engine)
    gens = ideal.nonzero_generators()
    r, N = len(gens), ideal.nvars
    if r != N - dim_x:
        raise InvariantError(f"{r} generators in {N} variables do not cut out a complete intersection of dimension {dim_x}")
    actual = eng.krull_dimension(ideal)
    if actual != dim_x:
        raise InvariantError(f"declared dimension {dim_x} but the ideal has dimension {actual}")
    ell = algebra.dim
    jd = eng.jet_dimension(ideal, algebra, dim_x)
    target = ell * dim_x
    if r == 0:
        sing_dim = -1
    else:
        sing = jacobian_generators(IdealPresentation(ideal.variables, tuple(gens), ideal.field), r)
        sing_dim = eng.fiber_dimension(ideal, algebra, sing)
    return {"pure_dimensional": jd == target, "irreducible": sing_dim < target,
            "jet_dimension": jd, "expected_dimension": target, "singular_fiber_dimension": sing_dim,
            "level": "dimension"}
