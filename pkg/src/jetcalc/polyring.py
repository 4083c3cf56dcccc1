"""Exact sparse multivariate polynomials over Q and prime fields.

Polynomials are immutable.  Coefficients over Q are Python ints or
``fractions.Fraction`` (integral values are kept as ints); over GF(p) they are
ints in ``range(p)``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Monomial = tuple  # tuple[int, ...]

MAX_EXPONENT = 1 << 16


class FieldError(ValueError):
    pass


class PolynomialSyntaxError(ValueError):
    """Raised by the parser; ``position`` is a 0-based column in the input."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Characteristic 0 means Q; a prime p means GF(p)."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and (p >= 2**31 or not _is_prime(p)):
            raise FieldError(f"characteristic must be 0 or a prime < 2^31, got {p}")

    @property
    def is_prime_field(self) -> bool:
        return self.characteristic != 0

    @property
    def name(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    def __str__(self):
        return self.name

    def coerce(self, value):
        """Map an int or Fraction into canonical coefficient form."""
        p = self.characteristic
        if p:
            if isinstance(value, Fraction):
                den = value.denominator % p
                if den == 0:
                    raise FieldError(f"denominator divisible by {p}")
                return value.numerator * pow(den, -1, p) % p
            return int(value) % p
        if isinstance(value, Fraction):
            return value.numerator if value.denominator == 1 else value
        if isinstance(value, int):
            return value
        raise TypeError(f"cannot coerce {value!r} into {self.name}")

    def inverse(self, value):
        if value == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic:
            return pow(value, -1, self.characteristic)
        return self.coerce(Fraction(1) / value)

    def format(self, value) -> str:
        if isinstance(value, Fraction):
            return f"{value.numerator}/{value.denominator}"
        return str(value)


QQ = FieldSpec(0)


def degrevlex_key(mono: Monomial):
    """Sort key under degree reverse lexicographic order (x1 > x2 > ...)."""
    return (sum(mono), tuple(-e for e in reversed(mono)))


class Polynomial:
    """A sparse polynomial in a fixed, ordered list of variables."""

    __slots__ = ("variables", "field", "_terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Monomial, object] | None = None,
                 field: FieldSpec = QQ):
        self.variables = tuple(variables)
        self.field = field
        n = len(self.variables)
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != n:
                raise ValueError(f"exponent vector {mono} has length != {n}")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            clean[mono] = clean.get(mono, 0) + field.coerce(c)
        self._terms = {m: v for m, c in clean.items() if (v := field.coerce(c))}
        self._hash = None

    @classmethod
    def _raw(cls, variables, terms, field):
        # trusted constructor: terms already canonical and nonzero
        p = cls.__new__(cls)
        p.variables = variables
        p.field = field
        p._terms = terms
        p._hash = None
        return p

    # construction helpers

    @classmethod
    def zero(cls, variables, field=QQ):
        return cls._raw(tuple(variables), {}, field)

    @classmethod
    def constant(cls, value, variables, field=QQ):
        return cls(variables, {(0,) * len(variables): value}, field)

    @classmethod
    def variable(cls, name, variables, field=QQ):
        variables = tuple(variables)
        i = variables.index(name)
        mono = tuple(1 if j == i else 0 for j in range(len(variables)))
        return cls._raw(variables, {mono: 1}, field)

    @classmethod
    def monomial(cls, mono, variables, field=QQ, coeff=1):
        return cls(variables, {tuple(mono): coeff}, field)

    # basic accessors

    @property
    def terms(self) -> Mapping[Monomial, object]:
        """Terms in descending degrevlex order."""
        return {m: self._terms[m] for m in sorted(self._terms, key=degrevlex_key, reverse=True)}

    def items(self):
        return self.terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_term(self):
        return self._terms.get((0,) * len(self.variables), 0)

    def total_degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def support(self) -> set:
        """Indices of the variables that occur."""
        return {i for m in self._terms for i, e in enumerate(m) if e}

    def leading_term(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms, key=degrevlex_key)
        return m, self._terms[m]

    def coefficient(self, mono):
        return self._terms.get(tuple(mono), 0)

    # arithmetic

    def _check(self, other: "Polynomial"):
        if self.variables != other.variables:
            raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")
        if self.field != other.field:
            raise FieldError(f"field mismatch: {self.field} vs {other.field}")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.variables, self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        coerce = self.field.coerce
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = coerce(out.get(m, 0) + c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(self.variables, out, self.field)

    __radd__ = __add__

    def __neg__(self):
        coerce = self.field.coerce
        return Polynomial._raw(self.variables, {m: coerce(-c) for m, c in self._terms.items()}, self.field)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        coerce = self.field.coerce
        out = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        out = {m: v for m, v in ((m, coerce(c)) for m, c in out.items()) if v}
        return Polynomial._raw(self.variables, out, self.field)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.constant(1, self.variables, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c):
        c = self.field.coerce(c)
        if c == 0:
            return Polynomial.zero(self.variables, self.field)
        coerce = self.field.coerce
        return Polynomial._raw(self.variables, {m: coerce(v * c) for m, v in self._terms.items()}, self.field)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.variables, self.field)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.variables == other.variables and self.field == other.field
                and self._terms == other._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, self.field, frozenset(self._terms.items())))
        return self._hash

    def derivative(self, name: str) -> "Polynomial":
        i = self.variables.index(name)
        coerce = self.field.coerce
        out = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                v = coerce(c * e)
                if v:
                    out[m[:i] + (e - 1,) + m[i + 1:]] = v
        return Polynomial._raw(self.variables, out, self.field)

    def evaluate(self, point: Mapping[str, object] | Sequence):
        """Evaluate at a point given as a sequence (variable order) or a name mapping."""
        if isinstance(point, Mapping):
            values = [point[v] for v in self.variables]
        else:
            values = list(point)
            if len(values) != len(self.variables):
                raise ValueError("point has wrong length")
        values = [self.field.coerce(v) for v in values]
        total = 0
        for m, c in self._terms.items():
            t = c
            for v, e in zip(values, m):
                if e:
                    t = t * v ** e
            total += t
        return self.field.coerce(total)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({str(self)!r}, vars={list(self.variables)}, field={self.field.name})"


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for mono, c in p.terms.items():
        factors = []
        for name, e in zip(p.variables, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        neg = (not p.field.is_prime_field) and c < 0
        mag = -c if neg else c
        if factors:
            body = "*".join(factors) if mag == 1 else p.field.format(mag) + "*" + "*".join(factors)
        else:
            body = p.field.format(mag)
        if not pieces:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append((" - " if neg else " + ") + body)
    return "".join(pieces)


# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^/()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise PolynomialSyntaxError(f"unexpected character {text[bad]!r}", bad)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("num", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    # expr   := ['+'|'-'] term (('+'|'-') term)*
    # term   := factor (('*'|'/') factor)*     division only by an integer literal
    # factor := atom ('^' int)?
    # atom   := int | name | '(' expr ')' | ('+'|'-') factor

    def __init__(self, text, variables, field):
        self.tokens = _tokenize(text)
        self.i = 0
        self.variables = tuple(variables)
        self.field = field

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise PolynomialSyntaxError(f"expected {op!r}", pos)

    def parse(self):
        if self.peek()[0] == "end":
            raise PolynomialSyntaxError("empty expression", 0)
        result = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            if kind in ("name", "num") or (kind == "op" and val == "("):
                raise PolynomialSyntaxError("missing '*' between factors", pos)
            raise PolynomialSyntaxError(f"unexpected token {val!r}", pos)
        return result

    def expr(self):
        result = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                result = result + rhs if val == "+" else result - rhs
            else:
                return result

    def term(self):
        result = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.take()
                result = result * self.factor()
            elif kind == "op" and val == "/":
                self.take()
                kind2, val2, pos2 = self.take()
                if kind2 != "num":
                    raise PolynomialSyntaxError("division only by an integer literal", pos2)
                if val2 == 0 or (self.field.characteristic and val2 % self.field.characteristic == 0):
                    raise PolynomialSyntaxError("division by zero", pos2)
                result = result.scale(self.field.coerce(Fraction(1, val2)))
            else:
                return result

    def factor(self):
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind2, val2, pos2 = self.take()
            if kind2 != "num":
                raise PolynomialSyntaxError("exponent must be a nonnegative integer literal", pos2)
            if val2 > MAX_EXPONENT:
                raise PolynomialSyntaxError(f"exponent {val2} exceeds {MAX_EXPONENT}", pos2)
            base = base ** val2
            kind, val, pos = self.peek()
            if kind == "op" and val == "^":
                raise PolynomialSyntaxError("chained exponent is ambiguous; use parentheses", pos)
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return Polynomial.constant(val, self.variables, self.field)
        if kind == "name":
            if val not in self.variables:
                raise PolynomialSyntaxError(f"unknown variable {val!r}", pos)
            return Polynomial.variable(val, self.variables, self.field)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "op" and val in "+-":
            inner = self.factor()
            return inner if val == "+" else -inner
        if kind == "end":
            raise PolynomialSyntaxError("unexpected end of input", pos)
        raise PolynomialSyntaxError(f"unexpected token {val!r}", pos)


def parse_polynomial(text: str, variables: Sequence[str], field: FieldSpec = QQ) -> Polynomial:
    """Parse ``text`` into a polynomial in ``variables``.

    Accepts integer literals, variable names, ``+ - * ^`` and parentheses;
    ``/`` is allowed only with an integer literal on the right so that
    printed rational coefficients parse back.  ``**`` is accepted as ``^``.
    """
    if len(set(variables)) != len(variables):
        raise ValueError("duplicate variable names")
    return _Parser(text, variables, field).parse()


# substitution and ideals

def substitute(p: Polynomial, images: Mapping[str, Polynomial]) -> Polynomial:
    """Replace every variable of ``p`` by its image polynomial."""
    missing = [v for i, v in enumerate(p.variables) if i in p.support() and v not in images]
    if missing:
        raise KeyError(f"no image for variable(s) {missing}")
    targets = list(images.values())
    if not targets:
        raise ValueError("empty substitution")
    tvars, tfield = targets[0].variables, targets[0].field
    for img in targets:
        if img.field != p.field or img.field != tfield:
            raise FieldError("substitution images must share the polynomial's field")
        if img.variables != tvars:
            raise ValueError("substitution images must share one target variable list")
    result = Polynomial.zero(tvars, tfield)
    powers: dict = {}
    for mono, c in p._terms.items():
        term = Polynomial.constant(c, tvars, tfield)
        for name, e in zip(p.variables, mono):
            if e:
                key = (name, e)
                if key not in powers:
                    powers[key] = images[name] ** e
                term = term * powers[key]
        result = result + term
    return result


@dataclass(frozen=True)
class IdealPresentation:
    variables: tuple
    generators: tuple
    field: FieldSpec = QQ

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "generators", tuple(self.generators))
        for g in self.generators:
            if g.variables != self.variables:
                raise ValueError(f"generator {g} is not in the ambient variables {self.variables}")
            if g.field != self.field:
                raise FieldError(f"generator {g} is over {g.field}, ideal over {self.field}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def nonzero_generators(self):
        return [g for g in self.generators if not g.is_zero()]

    @classmethod
    def from_strings(cls, variables, generators: Iterable[str], field: FieldSpec = QQ):
        variables = tuple(variables)
        return cls(variables, tuple(parse_polynomial(g, variables, field) for g in generators), field)

    def to_text(self) -> str:
        lines = [f"vars: {','.join(self.variables)}", f"char: {self.field.characteristic}"]
        lines.extend(str(g) for g in self.generators)
        return "\n".join(lines) + "\n"


def _determinant(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _determinant(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return Polynomial.zero(rows[0][0].variables, rows[0][0].field)
    return total


def jacobian_generators(ideal: IdealPresentation, codim: int) -> IdealPresentation:
    """The generators together with all codim x codim Jacobian minors.

    Minors are listed by (row subset, column subset) in lexicographic order.
    """
    r, n = len(ideal.generators), ideal.nvars
    if codim < 1:
        raise ValueError("codim must be positive")
    if codim > r or codim > n:
        raise ValueError(f"codim {codim} exceeds number of generators ({r}) or variables ({n})")
    jac = [[f.derivative(x) for x in ideal.variables] for f in ideal.generators]
    minors = []
    for rows in itertools.combinations(range(r), codim):
        for cols in itertools.combinations(range(n), codim):
            minors.append(_determinant([[jac[i][j] for j in cols] for i in rows]))
    return IdealPresentation(ideal.variables, ideal.generators + tuple(minors), ideal.field)


class IdealFormatError(ValueError):
    pass


def parse_ideal_text(text: str, source: str = "<ideal>") -> IdealPresentation:
    """Read the ``vars:`` / ``char:`` / one-polynomial-per-line format."""
    variables = None
    fld = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if variables is None:
            key, sep, value = line.partition(":")
            if key.strip() != "vars" or not sep:
                raise IdealFormatError(f"{source}:{lineno}: expected 'vars: x,y,...'")
            variables = tuple(v.strip() for v in value.split(",") if v.strip())
            if len(set(variables)) != len(variables):
                raise IdealFormatError(f"{source}:{lineno}: repeated variable name")
            continue
        if fld is None:
            key, sep, value = line.partition(":")
            if key.strip() != "char" or not sep:
                raise IdealFormatError(f"{source}:{lineno}: expected 'char: 0' or 'char: <prime>'")
            try:
                fld = FieldSpec(int(value))
            except (ValueError, FieldError) as exc:
                raise IdealFormatError(f"{source}:{lineno}: {exc}") from None
            continue
        try:
            gens.append(parse_polynomial(line, variables, fld))
        except PolynomialSyntaxError as exc:
            raise IdealFormatError(f"{source}:{lineno}: {exc}") from None
    if variables is None or fld is None:
        raise IdealFormatError(f"{source}: missing 'vars' or 'char' line")
    return IdealPresentation(variables, tuple(gens), fld)
