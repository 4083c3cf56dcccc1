"""Invariants read off user-supplied SNC log-resolution data."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .report import INF, NEG_INF, InvariantReport


class ResolutionError(ValueError):
    pass


@dataclass(frozen=True)
class Divisor:
    id: str
    a: int  # coefficient in f^{-1}(W)
    k: int  # coefficient in K_{Y/X}
    center_in_Z: bool = False


@dataclass(frozen=True)
class ResolutionData:
    divisors: tuple
    faces: tuple  # frozensets of divisor ids, downward closed, singletons included
    ambient_dim: int

    def __post_init__(self):
        ids = [d.id for d in self.divisors]
        if len(set(ids)) != len(ids):
            raise ResolutionError(f"duplicate divisor ids in {ids}")
        for d in self.divisors:
            if d.a < 0 or d.k < 0:
                raise ResolutionError(f"divisor {d.id}: a and k must be nonnegative")
        known = set(ids)
        for face in self.faces:
            if not face <= known:
                raise ResolutionError(f"face {sorted(face)} names unknown divisors {sorted(face - known)}")

    @property
    def by_id(self) -> dict:
        return {d.id: d for d in self.divisors}

    def maximal_faces(self) -> list:
        faces = sorted(self.faces, key=lambda f: (-len(f), sorted(f)))
        out = []
        for f in faces:
            if not any(f <= g for g in out):
                out.append(f)
        return out

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "divisors": [{"id": d.id, "a": d.a, "k": d.k, "center_in_Z": d.center_in_Z} for d in self.divisors],
            "faces": [sorted(f) for f in sorted(self.faces, key=lambda f: (len(f), sorted(f))) if len(f) > 1],
        }


def make_resolution(divisors: Sequence, faces: Sequence[Sequence[str]] = (), ambient_dim: int = 2) -> ResolutionData:
    """Validate and close the face list: all subsets of listed faces plus every singleton."""
    divs = []
    for d in divisors:
        if isinstance(d, Divisor):
            divs.append(d)
        elif isinstance(d, dict):
            divs.append(Divisor(str(d["id"]), int(d["a"]), int(d["k"]), bool(d.get("center_in_Z", False))))
        else:
            divs.append(Divisor(*d))
    closed = set()
    for face in faces:
        face = frozenset(face)
        for r in range(1, len(face) + 1):
            for sub in itertools.combinations(sorted(face), r):
                closed.add(frozenset(sub))
    for d in divs:
        closed.add(frozenset([d.id]))
    if ambient_dim < 1:
        raise ResolutionError("ambient_dim must be positive")
    return ResolutionData(tuple(divs), tuple(sorted(closed, key=lambda f: (len(f), sorted(f)))), ambient_dim)


def load_resolution(text: str, source: str = "<resolution>") -> ResolutionData:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ResolutionError(f"{source}:{exc.lineno}: invalid JSON: {exc.msg}") from None
    try:
        return make_resolution(raw["divisors"], raw.get("faces", []), int(raw["ambient_dim"]))
    except (KeyError, TypeError) as exc:
        raise ResolutionError(f"{source}: missing or malformed field {exc}") from None


def lct_from_resolution(data: ResolutionData) -> Fraction:
    """min over divisors with a > 0 of (k+1)/a."""
    values = [Fraction(d.k + 1, d.a) for d in data.divisors if d.a > 0]
    if not values:
        raise ResolutionError("no divisor has positive coefficient a")
    return min(values)


def _face_codim(divs, m: int):
    # unbounded covering knapsack: best[x] = cheapest cost reaching weight >= x
    items = [(d.k + 1, d.a) for d in divs if d.a > 0]
    if not items:
        return INF
    best = [0] * (m + 1)
    for x in range(1, m + 1):
        best[x] = min(c + best[max(0, x - a)] for c, a in items)
    return best[m]


def contact_codim(data: ResolutionData, m: int):
    """codim Cont^{>=m}(W): min sum (k_i+1) nu_i over faces with sum a_i nu_i >= m."""
    if m < 1:
        raise ResolutionError("m must be positive")
    by_id = data.by_id
    best = INF
    for face in data.maximal_faces():
        value = _face_codim([by_id[i] for i in sorted(face)], m)
        if value != INF and (best == INF or value < best):
            best = value
    return best


def contact_codim_bruteforce(data: ResolutionData, m: int):
    """Enumerate nu in {0..m}^r directly; for checking ``contact_codim``."""
    if m < 1:
        raise ResolutionError("m must be positive")
    if m > 60 or len(data.divisors) > 6:
        raise ResolutionError("brute force limited to m <= 60 and at most 6 divisors")
    divs = data.divisors
    faces = set(data.faces)
    best = [INF]

    def walk(idx, weight, cost, support):
        if best[0] != INF and cost >= best[0]:
            return
        if weight >= m:
            if not support or frozenset(support) in faces:
                best[0] = cost
            return
        if idx == len(divs):
            return
        d = divs[idx]
        top = m if d.a else 0  # nu > 0 on an a = 0 divisor only adds cost
        for nu in range(0, top + 1):
            sup = support + [d.id] if nu else support
            if nu and frozenset(sup) not in faces:
                break
            walk(idx + 1, weight + d.a * nu, cost + (d.k + 1) * nu, sup)
            if weight + d.a * nu >= m:
                break

    walk(0, 0, 0, [])
    return best[0]


def mld_from_resolution(data: ResolutionData, q) -> object:
    """min over divisors with center in Z of (k+1) - q*a; -inf when negative."""
    q = Fraction(q)
    if q <= 0:
        raise ResolutionError("q must be positive")
    if data.ambient_dim < 2:
        raise ResolutionError("mld needs ambient dimension >= 2")
    values = [(d.k + 1) - q * d.a for d in data.divisors if d.center_in_Z]
    if not values:
        raise ResolutionError("no divisor has its center in Z")
    mu = min(values)
    return NEG_INF if mu < 0 else mu


def lct_resolution_report(data: ResolutionData) -> InvariantReport:
    return InvariantReport("lct", lct_from_resolution(data), "exact", "resolution-formula",
                           {"resolution": data.to_json()})


def mld_resolution_report(data: ResolutionData, q) -> InvariantReport:
    return InvariantReport("mld", mld_from_resolution(data, q), "exact", "resolution-formula",
                           {"resolution": data.to_json(), "q": Fraction(q)})


# standard data sets, documented in tests and the README

def cusp_resolution() -> ResolutionData:
    """Minimal embedded resolution of x^2 + y^3 = 0 (three blow-ups)."""
    return make_resolution(
        [Divisor("E0", 1, 0), Divisor("E1", 2, 1), Divisor("E2", 3, 2), Divisor("E3", 6, 4)],
        [["E0", "E3"], ["E1", "E3"], ["E2", "E3"]],
        ambient_dim=2,
    )
