"""Finite local algebras k[t_1..t_r]/I with I a cofinite monomial ideal."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .polyring import QQ, PolynomialSyntaxError, parse_polynomial


class AlgebraError(ValueError):
    pass


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _basis_key(mono):
    # degree ascending, then lexicographically descending (s before t, st before t^2)
    return (sum(mono), tuple(-e for e in mono))


@dataclass(frozen=True)
class LocalAlgebra:
    """A monomial quotient algebra with its standard-monomial basis.

    ``mult_table[(i, j)]`` is a tuple of ``(l, c)`` pairs giving
    ``e_i * e_j = sum c * e_l``; for monomial quotients it is empty or a
    single ``(l, 1)``.
    """

    generators: tuple
    relations: tuple
    basis: tuple
    mult_table: dict = field(compare=False, hash=False, repr=False)
    degrees: tuple = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def index(self, mono) -> int | None:
        try:
            return self.basis.index(tuple(mono))
        except ValueError:
            return None

    def product_index(self, i: int, j: int) -> int | None:
        """Basis index of e_i*e_j, or None when the product is zero."""
        entry = self.mult_table[(i, j)]
        if not entry:
            return None
        (l, c), = entry
        return l

    def in_ideal(self, mono) -> bool:
        return any(_divides(rel, mono) for rel in self.relations)

    def basis_names(self) -> list[str]:
        out = []
        for mono in self.basis:
            parts = []
            for g, e in zip(self.generators, mono):
                if e == 1:
                    parts.append(g)
                elif e > 1:
                    parts.append(f"{g}^{e}")
            out.append("*".join(parts) if parts else "1")
        return out

    def describe(self) -> str:
        return f"k[{','.join(self.generators)}]/({', '.join(self._relation_strings())})"

    def _relation_strings(self):
        names = []
        for rel in self.relations:
            parts = [g if e == 1 else f"{g}^{e}" for g, e in zip(self.generators, rel) if e]
            names.append("*".join(parts) if parts else "1")
        return names

    def to_text(self) -> str:
        return f"algvars: {','.join(self.generators)}\nrelations: {', '.join(self._relation_strings())}\n"

    def canonical_key(self) -> str:
        return f"{','.join(self.generators)}|{';'.join(','.join(map(str, r)) for r in self.relations)}"


def _minimalize(relations):
    rels = sorted(set(relations), key=lambda m: (sum(m), m))
    out = []
    for r in rels:
        if not any(_divides(q, r) for q in out):
            out.append(r)
    return tuple(sorted(out, key=_basis_key))


def make_local_algebra(r: int, relations: Sequence[Sequence[int]],
                       names: Sequence[str] | None = None) -> LocalAlgebra:
    """Build k[t_1..t_r]/(relations) from exponent vectors of the relation monomials."""
    if r < 1:
        raise AlgebraError("need at least one generator")
    if names is None:
        names = ("t",) if r == 1 else ("s", "t") if r == 2 else tuple(f"t{i + 1}" for i in range(r))
    names = tuple(names)
    if len(names) != r:
        raise AlgebraError(f"{len(names)} generator names for r={r}")
    rels = [tuple(int(e) for e in rel) for rel in relations]
    if not rels:
        raise AlgebraError("relations must be nonempty")
    for rel in rels:
        if len(rel) != r or any(e < 0 for e in rel):
            raise AlgebraError(f"bad relation exponent vector {rel}")
    if any(not any(rel) for rel in rels):
        raise AlgebraError("relation 1 makes the algebra zero, which is not local")
    bounds = []
    for i in range(r):
        pure = [rel[i] for rel in rels if all(e == 0 for j, e in enumerate(rel) if j != i)]
        if not pure:
            raise AlgebraError(f"ideal is not cofinite: no power of {names[i]} lies in it")
        bounds.append(min(pure))
    rels = _minimalize(rels)
    basis = [m for m in itertools.product(*(range(b) for b in bounds))
             if not any(_divides(rel, m) for rel in rels)]
    basis.sort(key=_basis_key)
    basis = tuple(basis)
    pos = {m: i for i, m in enumerate(basis)}
    table = {}
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            prod = tuple(x + y for x, y in zip(a, b))
            l = pos.get(prod)
            table[(i, j)] = ((l, 1),) if l is not None else ()
    return LocalAlgebra(names, rels, basis, table, tuple(sum(m) for m in basis))


def truncation(m: int) -> LocalAlgebra:
    """k[t]/(t^(m+1)), the algebra of m-jets."""
    if m < 0:
        raise AlgebraError("truncation order must be >= 0")
    return make_local_algebra(1, [(m + 1,)])


def box(p: int, q: int) -> LocalAlgebra:
    """k[s,t]/(s^p, t^q)."""
    if p < 1 or q < 1:
        raise AlgebraError("box parameters must be >= 1")
    return make_local_algebra(2, [(p, 0), (0, q)])


def fat_point(r: int, m: int) -> LocalAlgebra:
    """k[x_1..x_r]/(x_1..x_r)^m."""
    if r < 1 or m < 1:
        raise AlgebraError("fat point parameters must be >= 1")
    rels = [mono for mono in itertools.product(range(m + 1), repeat=r) if sum(mono) == m]
    return make_local_algebra(r, rels)


def iterated(orders: Sequence[int]) -> LocalAlgebra:
    """k[t_1..t_r]/(t_1^(m_1+1), ..., t_r^(m_r+1))."""
    r = len(orders)
    if r < 1 or any(m < 0 for m in orders):
        raise AlgebraError("orders must be a nonempty list of nonnegative integers")
    rels = [tuple(m + 1 if j == i else 0 for j in range(r)) for i, m in enumerate(orders)]
    return make_local_algebra(r, rels)


def standard_algebra(kind: str, *params: int) -> LocalAlgebra:
    builders = {"truncation": truncation, "box": box, "fat_point": fat_point}
    if kind not in builders:
        raise AlgebraError(f"unknown algebra kind {kind!r}")
    return builders[kind](*params)


def fat_point_dimension(r: int, m: int) -> int:
    return comb(m - 1 + r, r)


def is_graded(algebra: LocalAlgebra) -> tuple[bool, tuple]:
    """Monomial quotients are always graded by total degree."""
    return True, algebra.degrees


@dataclass(frozen=True)
class AlgebraSurjection:
    source: LocalAlgebra
    target: LocalAlgebra
    basis_embedding: tuple  # target index -> source index


def surjection(source: LocalAlgebra, target: LocalAlgebra) -> AlgebraSurjection:
    """The surjection induced by the identity on generators, if it exists."""
    if source.ngens != target.ngens:
        raise AlgebraError(f"generator counts differ ({source.ngens} vs {target.ngens})")
    for rel in source.relations:
        if not target.in_ideal(rel):
            raise AlgebraError(f"no surjection: source relation {rel} is not in the target ideal")
    embedding = []
    for mono in target.basis:
        idx = source.index(mono)
        if idx is None:  # pragma: no cover - excluded by the containment check
            raise AlgebraError(f"target basis monomial {mono} missing from source")
        embedding.append(idx)
    return AlgebraSurjection(source, target, tuple(embedding))


def parse_algebra_text(text: str, source: str = "<algebra>") -> LocalAlgebra:
    """Read the ``algvars:`` / ``relations:`` or ``power:`` format."""
    names = None
    relations = None
    power = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise AlgebraError(f"{source}:{lineno}: expected 'key: value'")
        key, value = key.strip(), value.strip()
        if key == "algvars":
            names = tuple(v.strip() for v in value.split(",") if v.strip())
        elif key == "relations":
            if names is None:
                raise AlgebraError(f"{source}:{lineno}: 'relations' before 'algvars'")
            relations = []
            for item in value.split(","):
                try:
                    poly = parse_polynomial(item.strip(), names, QQ)
                except PolynomialSyntaxError as exc:
                    raise AlgebraError(f"{source}:{lineno}: {exc}") from None
                if len(poly) != 1 or list(poly.terms.values()) != [1]:
                    raise AlgebraError(f"{source}:{lineno}: relation {item.strip()!r} is not a monomial")
                relations.append(next(iter(poly.terms)))
        elif key == "power":
            try:
                power = int(value)
            except ValueError:
                raise AlgebraError(f"{source}:{lineno}: power must be an integer") from None
        else:
            raise AlgebraError(f"{source}:{lineno}: unknown key {key!r}")
    if names is None:
        raise AlgebraError(f"{source}: missing 'algvars' line")
    if (relations is None) == (power is None):
        raise AlgebraError(f"{source}: give exactly one of 'relations' or 'power'")
    try:
        if power is not None:
            alg = fat_point(len(names), power)
            return make_local_algebra(len(names), alg.relations, names)
        return make_local_algebra(len(names), relations, names)
    except AlgebraError as exc:
        raise AlgebraError(f"{source}: {exc}") from None
