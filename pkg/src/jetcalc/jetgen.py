"""Defining equations of J_A(X) for affine X and a monomial local algebra A.

Coordinates are named ``a_<i>_<j>`` (basis index i, ambient variable j, both
1-based) and ordered j-major: all coordinates of x_1 first.  The unit basis
element is index 1, so ``a_1_j`` are the coordinates of the base point.
"""

from __future__ import annotations

from dataclasses import dataclass

from .localalgebra import AlgebraSurjection, LocalAlgebra
from .polyring import IdealPresentation, Polynomial, substitute


class JetError(ValueError):
    pass


def coordinate_name(i: int, j: int) -> str:
    return f"a_{i}_{j}"


def coordinate_names(nvars: int, dim: int) -> tuple:
    return tuple(coordinate_name(i, j) for j in range(1, nvars + 1) for i in range(1, dim + 1))


@dataclass(frozen=True)
class JetSystem:
    ideal: IdealPresentation
    algebra: LocalAlgebra
    coordinates: tuple
    equations: tuple  # P[alpha][i] flattened alpha-major, i in basis order
    weights: dict

    @property
    def nvars(self) -> int:
        return self.ideal.nvars

    @property
    def dim_algebra(self) -> int:
        return self.algebra.dim

    def equation(self, alpha: int, i: int) -> Polynomial:
        """P_alpha^(i) with 0-based indices."""
        return self.equations[alpha * self.algebra.dim + i]

    def as_ideal(self) -> IdealPresentation:
        return IdealPresentation(self.coordinates, self.equations, self.ideal.field)

    def coordinate(self, i: int, j: int) -> Polynomial:
        """The coordinate a[i][j] (0-based) as a polynomial."""
        return Polynomial.variable(coordinate_name(i + 1, j + 1), self.coordinates, self.ideal.field)


def _algebra_mul(u, v, algebra, zero):
    out = [zero] * algebra.dim
    for i, ui in enumerate(u):
        if ui.is_zero():
            continue
        for j, vj in enumerate(v):
            if vj.is_zero():
                continue
            for l, c in algebra.mult_table[(i, j)]:
                prod = ui * vj
                out[l] = out[l] + (prod if c == 1 else prod.scale(c))
    return out


def _algebra_pow(u, k, algebra, one, zero):
    result = [one] + [zero] * (algebra.dim - 1)
    base = u
    while k:
        if k & 1:
            result = _algebra_mul(result, base, algebra, zero)
        k >>= 1
        if k:
            base = _algebra_mul(base, base, algebra, zero)
    return result


def generate_jet_equations(ideal: IdealPresentation, algebra: LocalAlgebra) -> JetSystem:
    """Substitute x_j -> sum_i a[i][j] e_i into each generator and split by basis element."""
    n, m = ideal.nvars, algebra.dim
    fld = ideal.field
    coords = coordinate_names(n, m)
    zero = Polynomial.zero(coords, fld)
    one = Polynomial.constant(1, coords, fld)
    images = [[Polynomial.variable(coordinate_name(i + 1, j + 1), coords, fld) for i in range(m)]
              for j in range(n)]
    power_cache: dict = {}
    equations = []
    for f in ideal.generators:
        total = [zero] * m
        for mono, c in f.terms.items():
            term = [Polynomial.constant(c, coords, fld)] + [zero] * (m - 1)
            for j, e in enumerate(mono):
                if e:
                    key = (j, e)
                    if key not in power_cache:
                        power_cache[key] = _algebra_pow(images[j], e, algebra, one, zero)
                    term = _algebra_mul(term, power_cache[key], algebra, zero)
            total = [a + b for a, b in zip(total, term)]
        equations.extend(total)
    if len(equations) != len(ideal.generators) * m:  # pragma: no cover - structural
        raise AssertionError("equation count differs from r * dim_k(A)")
    weights = {coordinate_name(i + 1, j + 1): algebra.degrees[i] for j in range(n) for i in range(m)}
    return JetSystem(ideal, algebra, coords, tuple(equations), weights)


def jet_of_system(system: JetSystem, algebra: LocalAlgebra) -> JetSystem:
    """Jet a jet system again (iterated jets); the result lives over ``system.as_ideal()``."""
    return generate_jet_equations(system.as_ideal(), algebra)


@dataclass(frozen=True)
class CoordinateProjection:
    """The coordinate form of pi_{A'/A}: keep the coordinates of embedded basis elements."""

    surjection: AlgebraSurjection
    coordinate_map: dict  # source coordinate name -> target coordinate name
    equation_indices: tuple  # source basis indices whose equations survive

    def restrict(self, source: JetSystem, target_coordinates) -> list[Polynomial]:
        """Source equations at embedded basis indices, rewritten in target coordinates."""
        m = source.algebra.dim
        images = {}
        for name in source.coordinates:
            if name in self.coordinate_map:
                images[name] = Polynomial.variable(self.coordinate_map[name], target_coordinates,
                                                   source.ideal.field)
        out = []
        for alpha in range(len(source.ideal.generators)):
            for i in self.equation_indices:
                eq = source.equations[alpha * m + i]
                used = {source.coordinates[k] for k in eq.support()}
                stray = used - images.keys()
                if stray:
                    raise JetError(f"equation involves non-embedded coordinates {sorted(stray)}")
                out.append(substitute(eq, images) if not eq.is_zero()
                           else Polynomial.zero(target_coordinates, source.ideal.field))
        return out


def truncation_substitution(source: JetSystem, sigma: AlgebraSurjection) -> CoordinateProjection:
    if source.algebra != sigma.source:
        raise JetError("jet system was not built over the surjection's source algebra")
    n = source.nvars
    cmap = {}
    for t_idx, s_idx in enumerate(sigma.basis_embedding):
        for j in range(1, n + 1):
            cmap[coordinate_name(s_idx + 1, j)] = coordinate_name(t_idx + 1, j)
    return CoordinateProjection(sigma, cmap, tuple(sigma.basis_embedding))


def base_point_images(system: JetSystem) -> dict:
    """x_j -> a_1_j, the pullback along pi_A."""
    fld = system.ideal.field
    return {x: Polynomial.variable(coordinate_name(1, j + 1), system.coordinates, fld)
            for j, x in enumerate(system.ideal.variables)}


def fiber_ideal(system: JetSystem, center: IdealPresentation) -> IdealPresentation:
    """Jet equations plus the center's generators pulled back to the base-point coordinates."""
    if center.variables != system.ideal.variables:
        raise JetError(f"center variables {center.variables} differ from {system.ideal.variables}")
    if center.field != system.ideal.field:
        raise JetError("center is over a different field")
    images = base_point_images(system)
    pulled = []
    for g in center.generators:
        if g.is_zero():
            pulled.append(Polynomial.zero(system.coordinates, system.ideal.field))
        elif g.is_constant():
            pulled.append(Polynomial.constant(g.constant_term(), system.coordinates, system.ideal.field))
        else:
            pulled.append(substitute(g, images))
    return IdealPresentation(system.coordinates, system.equations + tuple(pulled), system.ideal.field)


def zero_section(system: JetSystem, point) -> tuple:
    """s_A(point): base coordinates from ``point``, all nilpotent coordinates zero."""
    fld = system.ideal.field
    point = [fld.coerce(v) for v in point]
    if len(point) != system.nvars:
        raise JetError(f"point has {len(point)} coordinates, expected {system.nvars}")
    for g in system.ideal.generators:
        if g.evaluate(point) != 0:
            raise JetError(f"point {tuple(point)} is not on X: {g} does not vanish")
    m = system.algebra.dim
    return tuple(point[j] if i == 0 else 0 for j in range(system.nvars) for i in range(m))


def scaling_defect(system: JetSystem) -> list:
    """Equations violating P(lambda^w a) = lambda^deg(e_i) P(a); empty when quasi-homogeneous.

    The check is symbolic: a fresh variable lambda is adjoined.
    """
    lam = "lambda_"
    while lam in system.coordinates:
        lam += "_"
    big = system.coordinates + (lam,)
    fld = system.ideal.field
    lam_poly = Polynomial.variable(lam, big, fld)
    images = {}
    for name in system.coordinates:
        images[name] = Polynomial.variable(name, big, fld) * lam_poly ** system.weights[name]
    embed = {name: Polynomial.variable(name, big, fld) for name in system.coordinates}
    bad = []
    m = system.algebra.dim
    for k, eq in enumerate(system.equations):
        i = k % m
        if eq.is_zero():
            continue
        scaled = substitute(eq, images)
        expected = substitute(eq, embed) * lam_poly ** system.algebra.degrees[i]
        if scaled != expected:
            bad.append(k)
    return bad
