"""Exact arithmetic for finite fields F_q and the polynomial ring F_q[x].

Field elements are integer codes in [0, q). For a prime field F_p the code
is the residue itself. For an extension field F_{p^e} = F_p[t]/(m(t)) the
code packs the power-basis coefficient vector (a_0, ..., a_{e-1}) as
sum a_j * p^j.

Polynomials are immutable coefficient tuples, constant term first, with no
trailing zeros stored. The zero polynomial has an empty tuple; its degree
is the sentinel -inf (never the integer -1), and its norm is undefined.

The canonical order used everywhere (factor lists, enumeration, witness
selection) is: by degree, then lexicographically on the coefficient vector
read from the constant term upward, comparing coefficient codes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import (
    CoefficientOutOfRangeError,
    CompositeCharacteristicError,
    DegreeZeroError,
    NonCoprimeModuliError,
    NotMonicError,
    PolyParseError,
    ReducibleModulusError,
    UnsupportedFieldSizeError,
    ZeroPolynomialError,
)

NEG_INF = float("-inf")

# Monic irreducibles over F_p defining the built-in extension fields with
# q = p^e <= 64. Coefficients constant-first. Validated on first use.
_BUILTIN_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),             # t^2 + t + 1
    (2, 3): (1, 1, 0, 1),          # t^3 + t + 1
    (2, 4): (1, 1, 0, 0, 1),       # t^4 + t + 1
    (2, 5): (1, 0, 1, 0, 0, 1),    # t^5 + t^2 + 1
    (2, 6): (1, 1, 0, 0, 0, 0, 1), # t^6 + t + 1
    (3, 2): (1, 0, 1),             # t^2 + 1
    (3, 3): (1, 2, 0, 1),          # t^3 + 2t + 1
    (5, 2): (2, 0, 1),             # t^2 + 2
    (7, 2): (1, 0, 1),             # t^2 + 1
}

# Extension-field multiplication goes through q*q lookup tables up to this
# size; beyond it every product is computed from the coefficient vectors.
_TABLE_MAX_Q = 256


def is_prime(n: int) -> bool:
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


class FieldSpec:
    """An exact description of F_q with element arithmetic on integer codes."""

    __slots__ = (
        "p",
        "e",
        "q",
        "modulus",
        "_add_table",
        "_sub_table",
        "_mul_table",
        "_inv_table",
        "_irr_cache",
    )

    def __init__(self, p: int, e: int = 1, modulus: Sequence[int] | None = None):
        if not isinstance(p, int) or not is_prime(p):
            raise CompositeCharacteristicError(f"characteristic {p!r} is not prime")
        if not isinstance(e, int) or e < 1:
            raise ValueError(f"extension degree must be a positive integer, got {e!r}")
        self.p = p
        self.e = e
        self.q = p**e
        self._add_table: list[int] | None = None
        self._sub_table: list[int] | None = None
        self._mul_table: list[int] | None = None
        self._inv_table: list[int] | None = None
        self._irr_cache: dict[int, tuple["Poly", ...]] = {}
        if e == 1:
            self.modulus = None
            return
        if modulus is None:
            try:
                modulus = _BUILTIN_MODULI[(p, e)]
            except KeyError:
                raise UnsupportedFieldSizeError(
                    f"no built-in modulus for q = {p}^{e}; supply one explicitly"
                ) from None
        mod = tuple(int(c) for c in modulus)
        if len(mod) != e + 1:
            raise ReducibleModulusError(
                f"modulus must have degree {e}, got {len(mod) - 1}"
            )
        if any(c < 0 or c >= p for c in mod):
            raise CoefficientOutOfRangeError("modulus coefficients must lie in [0, p)")
        if mod[-1] != 1:
            raise ReducibleModulusError("modulus must be monic")
        base = FieldSpec(p)
        if not is_irreducible(Poly(base, mod)):
            raise ReducibleModulusError(f"modulus {mod} is reducible over F_{p}")
        self.modulus = mod

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        if self.e == 1:
            return f"F({self.p})"
        return f"F({self.p}^{self.e})"

    # -- element arithmetic on codes --------------------------------------

    def element_coeffs(self, a: int) -> tuple[int, ...]:
        """Power-basis coefficient vector (a_0, ..., a_{e-1}) of a code."""
        p = self.p
        return tuple((a // p**j) % p for j in range(self.e))

    def element_from_coeffs(self, coeffs: Sequence[int]) -> int:
        p = self.p
        if len(coeffs) != self.e:
            raise ValueError(f"expected {self.e} coefficients, got {len(coeffs)}")
        if any(c < 0 or c >= p for c in coeffs):
            raise CoefficientOutOfRangeError("element coefficients must lie in [0, p)")
        return sum(c * p**j for j, c in enumerate(coeffs))

    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        p = self.p
        out = 0
        shift = 1
        for _ in range(self.e):
            out += ((a + b) % p) * shift
            a //= p
            b //= p
            shift *= p
        return out

    def sub(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a - b) % self.p
        p = self.p
        out = 0
        shift = 1
        for _ in range(self.e):
            out += ((a - b) % p) * shift
            a //= p
            b //= p
            shift *= p
        return out

    def neg(self, a: int) -> int:
        return self.sub(0, a)

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        if self.q <= _TABLE_MAX_Q:
            if self._mul_table is None:
                self._build_tables()
            return self._mul_table[a * self.q + b]
        return self._mul_raw(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        if self.q <= _TABLE_MAX_Q:
            if self._inv_table is None:
                self._build_tables()
            return self._inv_table[a]
        # a^(q-2) via square-and-multiply over the raw product
        out, base, k = 1, a, self.q - 2
        while k:
            if k & 1:
                out = self._mul_raw(out, base)
            base = self._mul_raw(base, base)
            k >>= 1
        return out

    def _mul_raw(self, a: int, b: int) -> int:
        # schoolbook product of power-basis vectors, reduced by the modulus
        p, e = self.p, self.e
        av = self.element_coeffs(a)
        bv = self.element_coeffs(b)
        prod = [0] * (2 * e - 1)
        for i, ai in enumerate(av):
            if ai:
                for j, bj in enumerate(bv):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        mod = self.modulus
        for k in range(2 * e - 2, e - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for j in range(e):
                    prod[k - e + j] = (prod[k - e + j] - c * mod[j]) % p
        return sum(c * p**j for j, c in enumerate(prod[:e]))

    def _build_tables(self):
        q = self.q
        mul = [0] * (q * q)
        for a in range(q):
            for b in range(a, q):
                v = self._mul_raw(a, b)
                mul[a * q + b] = v
                mul[b * q + a] = v
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a * q + b] == 1:
                    inv[a] = b
                    break
        add = [0] * (q * q)
        sub = [0] * (q * q)
        for a in range(q):
            for b in range(q):
                add[a * q + b] = self.add(a, b)
                sub[a * q + b] = self.sub(a, b)
        self._add_table = add
        self._sub_table = sub
        self._mul_table = mul
        self._inv_table = inv

    def _tables(self) -> tuple[list[int], list[int], list[int]]:
        # (add, sub, mul) flat tables for the tight polynomial loops
        if self._mul_table is None:
            if self.q > _TABLE_MAX_Q:
                raise UnsupportedFieldSizeError(
                    f"table-based arithmetic needs q <= {_TABLE_MAX_Q}"
                )
            self._build_tables()
        return self._add_table, self._sub_table, self._mul_table


class Poly:
    """An element of F_q[x] in canonical form (no trailing zero coefficients)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: Iterable[int] = (), *, _trusted: bool = False):
        c = tuple(coeffs)
        if not _trusted:
            q = field.q
            for v in c:
                if not isinstance(v, int) or v < 0 or v >= q:
                    raise CoefficientOutOfRangeError(
                        f"coefficient {v!r} is not an element code of {field!r}"
                    )
            while c and c[-1] == 0:
                c = c[:-1]
        self.field = field
        self.coeffs = c

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(field: FieldSpec) -> "Poly":
        return Poly(field, (), _trusted=True)

    @staticmethod
    def one(field: FieldSpec) -> "Poly":
        return Poly(field, (1,), _trusted=True)

    @staticmethod
    def x(field: FieldSpec) -> "Poly":
        return Poly(field, (0, 1), _trusted=True)

    @staticmethod
    def monomial(field: FieldSpec, k: int, c: int = 1) -> "Poly":
        if c == 0:
            return Poly.zero(field)
        return Poly(field, (0,) * k + (c,))

    # -- basic structure ----------------------------------------------------

    @property
    def degree(self):
        """Degree as an int, or -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def norm(self) -> int:
        """q raised to the degree; undefined (raises) for the zero polynomial."""
        if not self.coeffs:
            raise ZeroPolynomialError("the zero polynomial has no norm")
        return self.field.q ** (len(self.coeffs) - 1)

    def leading(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomialError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def monic(self) -> "Poly":
        lead = self.leading()
        if lead == 1:
            return self
        inv = self.field.inv(lead)
        mul = self.field.mul
        return Poly(self.field, tuple(mul(inv, c) for c in self.coeffs), _trusted=True)

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k."""
        if not self.coeffs or k == 0:
            return self
        return Poly(self.field, (0,) * k + self.coeffs, _trusted=True)

    def scale(self, c: int) -> "Poly":
        if c == 0:
            return Poly.zero(self.field)
        if c == 1:
            return self
        mul = self.field.mul
        return Poly(self.field, _strip(tuple(mul(c, v) for v in self.coeffs)), _trusted=True)

    def evaluate(self, a: int) -> int:
        f = self.field
        out = 0
        for c in reversed(self.coeffs):
            out = f.add(f.mul(out, a), c)
        return out

    # -- ring operations -----------------------------------------------------

    def _check_field(self, other: "Poly"):
        if self.field is not other.field and self.field != other.field:
            raise ValueError("polynomials belong to different fields")

    def __add__(self, other: "Poly") -> "Poly":
        self._check_field(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        if f.e == 1:
            p = f.p
            out = [(x + y) % p for x, y in zip(a, b)]
        elif f.q <= _TABLE_MAX_Q:
            tab, q = f._tables()[0], f.q
            out = [tab[x * q + y] for x, y in zip(a, b)]
        else:
            add = f.add
            out = [add(x, y) for x, y in zip(a, b)]
        out.extend(a[len(b):])
        return Poly(f, _strip(tuple(out)), _trusted=True)

    def __sub__(self, other: "Poly") -> "Poly":
        self._check_field(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        if f.e == 1:
            p = f.p
            out = tuple(
                ((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                for i in range(n)
            )
        elif f.q <= _TABLE_MAX_Q:
            tab, q = f._tables()[1], f.q
            out = tuple(
                tab[(a[i] if i < len(a) else 0) * q + (b[i] if i < len(b) else 0)]
                for i in range(n)
            )
        else:
            sub = f.sub
            out = tuple(
                sub(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0)
                for i in range(n)
            )
        return Poly(f, _strip(out), _trusted=True)

    def __neg__(self) -> "Poly":
        f = self.field
        return Poly(f, tuple(f.neg(c) for c in self.coeffs), _trusted=True)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check_field(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(f)
        out = [0] * (len(a) + len(b) - 1)
        if f.e == 1:
            p = f.p
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] = (out[i + j] + ai * bj) % p
        elif f.q <= _TABLE_MAX_Q:
            addt, _, mult = f._tables()
            q = f.q
            for i, ai in enumerate(a):
                if ai:
                    base = ai * q
                    for j, bj in enumerate(b):
                        out[i + j] = addt[out[i + j] * q + mult[base + bj]]
        else:
            add, mul = f.add, f.mul
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] = add(out[i + j], mul(ai, bj))
        return Poly(f, tuple(out), _trusted=True)

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check_field(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        a = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        if len(a) - 1 < db:
            return Poly.zero(f), self
        inv_lead = f.inv(b[-1])
        quot = [0] * (len(a) - db)
        if f.e == 1:
            p = f.p
            for k in range(len(a) - 1, db - 1, -1):
                c = a[k]
                if c:
                    c = (c * inv_lead) % p
                    quot[k - db] = c
                    for j in range(db + 1):
                        a[k - db + j] = (a[k - db + j] - c * b[j]) % p
        elif f.q <= _TABLE_MAX_Q:
            _, subt, mult = f._tables()
            q = f.q
            for k in range(len(a) - 1, db - 1, -1):
                c = a[k]
                if c:
                    c = mult[c * q + inv_lead]
                    base = c * q
                    quot[k - db] = c
                    for j in range(db + 1):
                        a[k - db + j] = subt[a[k - db + j] * q + mult[base + b[j]]]
        else:
            mul, sub = f.mul, f.sub
            for k in range(len(a) - 1, db - 1, -1):
                c = a[k]
                if c:
                    c = mul(c, inv_lead)
                    quot[k - db] = c
                    for j in range(db + 1):
                        a[k - db + j] = sub(a[k - db + j], mul(c, b[j]))
        return (
            Poly(f, _strip(tuple(quot)), _trusted=True),
            Poly(f, _strip(tuple(a[:db])), _trusted=True),
        )

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative polynomial powers are not defined")
        out = Poly.one(self.field)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divides(self, other: "Poly") -> bool:
        return (other % self).is_zero

    # -- equality / hashing / display ----------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs and (
            self.field is other.field or self.field == other.field
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"Poly({self.field!r}, {format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def _strip(c: tuple[int, ...]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c = c[:-1]
    return c


def canonical_key(f: Poly) -> tuple[int, tuple[int, ...]]:
    """Sort key: degree first, then coefficients from the constant term up."""
    return (len(f.coeffs) - 1, f.coeffs)


# -- text format -------------------------------------------------------------

_TERM_RE = re.compile(
    r"^(?:(?P<coeff>\d+|\((?:\s*\d+\s*,)*\s*\d+\s*\))\s*\*?\s*)?"
    r"(?P<var>x)?(?:\^(?P<exp>\d+))?$"
)


def parse_poly(text: str, field: FieldSpec, var: str = "x") -> Poly:
    """Parse polynomial text: terms joined by '+', each `c`, `x`, `x^k` or `cx^k`.

    Prime-field coefficients are decimal integers in [0, p); extension-field
    coefficients use the tuple syntax `(c_{e-1},...,c_0)` listing power-basis
    components from the highest power of t down.
    """
    s = "".join(text.split())
    if not s:
        raise PolyParseError("empty polynomial text")
    coeffs: dict[int, int] = {}
    for raw in s.split("+"):
        if not raw:
            raise PolyParseError(f"empty term in {text!r}")
        m = _TERM_RE.match(raw.replace(var, "x") if var != "x" else raw)
        if not m or (m.group("exp") and not m.group("var")):
            raise PolyParseError(f"bad term {raw!r} in {text!r}")
        coeff_text, has_var, exp_text = m.group("coeff"), m.group("var"), m.group("exp")
        if coeff_text is None and not has_var:
            raise PolyParseError(f"bad term {raw!r} in {text!r}")
        exp = int(exp_text) if exp_text else (1 if has_var else 0)
        c = _parse_coeff(coeff_text, field) if coeff_text is not None else 1
        if c:
            code = coeffs.get(exp, 0)
            coeffs[exp] = field.add(code, c)
    if not coeffs:
        return Poly.zero(field)
    deg = max(coeffs)
    return Poly(field, tuple(coeffs.get(i, 0) for i in range(deg + 1)), _trusted=True)


def _parse_coeff(text: str, field: FieldSpec) -> int:
    if text.startswith("("):
        if field.e == 1:
            raise PolyParseError("tuple coefficients are only valid for extension fields")
        parts = [p.strip() for p in text[1:-1].split(",")]
        if len(parts) != field.e:
            raise CoefficientOutOfRangeError(
                f"expected {field.e} components in {text!r}"
            )
        vals = [int(p) for p in parts]
        if any(v >= field.p or v < 0 for v in vals):
            raise CoefficientOutOfRangeError(f"component out of range in {text!r}")
        return field.element_from_coeffs(tuple(reversed(vals)))
    v = int(text)
    if field.e == 1:
        if v >= field.p:
            raise CoefficientOutOfRangeError(f"coefficient {v} is not in [0, {field.p})")
        return v
    # extension fields accept bare 0/1 as the additive/multiplicative identity
    if v in (0, 1):
        return v
    raise CoefficientOutOfRangeError(
        f"coefficient {v} needs tuple syntax over {field!r}"
    )


def format_poly(f: Poly, var: str = "x") -> str:
    """Canonical text: descending degree, zero coefficients omitted."""
    if f.is_zero:
        return "0"
    field = f.field
    parts = []
    for k in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[k]
        if c == 0:
            continue
        if field.e == 1 or c in (0, 1):
            ctext = str(c)
        else:
            ctext = "(" + ",".join(str(v) for v in reversed(field.element_coeffs(c))) + ")"
        if k == 0:
            parts.append(ctext)
        else:
            xpart = var if k == 1 else f"{var}^{k}"
            parts.append(xpart if c == 1 else f"{ctext}{xpart}")
    return "+".join(parts)


# -- gcd / lcm / crt ----------------------------------------------------------

def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor; defined unless both arguments are zero."""
    if f.is_zero and g.is_zero:
        raise ZeroPolynomialError("gcd(0, 0) is undefined")
    while not g.is_zero:
        f, g = g, f % g
    return f.monic()


def poly_xgcd(f: Poly, g: Poly) -> tuple[Poly, Poly, Poly]:
    """Monic d = gcd(f, g) together with u, v satisfying u*f + v*g = d."""
    if f.is_zero and g.is_zero:
        raise ZeroPolynomialError("gcd(0, 0) is undefined")
    field = f.field
    r0, r1 = f, g
    u0, u1 = Poly.one(field), Poly.zero(field)
    v0, v1 = Poly.zero(field), Poly.one(field)
    while not r1.is_zero:
        quot, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        u0, u1 = u1, u0 - quot * u1
        v0, v1 = v1, v0 - quot * v1
    lead = r0.leading()
    if lead != 1:
        inv = field.inv(lead)
        r0, u0, v0 = r0.scale(inv), u0.scale(inv), v0.scale(inv)
    return r0, u0, v0


def poly_lcm(f: Poly, g: Poly) -> Poly:
    if f.is_zero or g.is_zero:
        raise ZeroDivisionError("lcm with a zero polynomial")
    return ((f * g) // poly_gcd(f, g)).monic()


def crt(pairs: Sequence[tuple[Poly, Poly]]) -> tuple[Poly, Poly]:
    """Combine congruences r = r_i mod m_i into one class mod the product.

    Moduli must be monic, nonconstant, and pairwise coprime.
    """
    if not pairs:
        raise ValueError("crt needs at least one congruence")
    for _, m in pairs:
        if not m.is_monic:
            raise NotMonicError(f"modulus {m} is not monic")
        if m.degree < 1:
            raise DegreeZeroError(f"modulus {m} is constant")
    res, mod = pairs[0]
    res = res % mod
    for r_i, m_i in pairs[1:]:
        d, u, _ = poly_xgcd(mod, m_i)
        if d.degree != 0:
            raise NonCoprimeModuliError(f"moduli share the factor {d}")
        # res + mod * (u * (r_i - res) mod m_i) hits both congruences
        lift = (u * ((r_i % m_i) - (res % m_i))) % m_i
        mod_new = mod * m_i
        res = (res + mod * lift) % mod_new
        mod = mod_new
    return res, mod


# -- irreducibility, factorization, enumeration -------------------------------

def enumerate_monic(field: FieldSpec, degree: int) -> list[Poly]:
    """All monic polynomials of the given degree, in canonical order."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    out = []
    q = field.q
    # canonical order compares c_0 first, so c_0 is the slowest index
    idx = [0] * degree
    while True:
        out.append(Poly(field, (*idx, 1), _trusted=True))
        k = degree - 1
        while k >= 0 and idx[k] == q - 1:
            idx[k] = 0
            k -= 1
        if k < 0:
            break
        idx[k] += 1
    return out


def _divisible(f: Poly, g: Poly) -> bool:
    # remainder-only divisibility test; no quotient or Poly allocation
    field = f.field
    a = list(f.coeffs)
    b = g.coeffs
    db = len(b) - 1
    if len(a) - 1 < db:
        return not any(a)
    inv_lead = field.inv(b[-1])
    if field.e == 1:
        p = field.p
        for k in range(len(a) - 1, db - 1, -1):
            c = a[k]
            if c:
                c = (c * inv_lead) % p
                for j in range(db):
                    a[k - db + j] = (a[k - db + j] - c * b[j]) % p
    elif field.q <= _TABLE_MAX_Q:
        _, subt, mult = field._tables()
        q = field.q
        for k in range(len(a) - 1, db - 1, -1):
            c = a[k]
            if c:
                c = mult[c * q + inv_lead]
                base = c * q
                for j in range(db):
                    a[k - db + j] = subt[a[k - db + j] * q + mult[base + b[j]]]
    else:
        mul, sub = field.mul, field.sub
        for k in range(len(a) - 1, db - 1, -1):
            c = a[k]
            if c:
                c = mul(c, inv_lead)
                for j in range(db):
                    a[k - db + j] = sub(a[k - db + j], mul(c, b[j]))
    return not any(a[:db])


def is_irreducible(f: Poly) -> bool:
    """Trial division against all monic irreducibles of degree <= deg f / 2."""
    if not f.is_monic:
        raise NotMonicError("irreducibility is tested on monic polynomials")
    deg = f.degree
    if deg < 1:
        raise DegreeZeroError("constants are neither reducible nor irreducible")
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for p in _irreducibles(f.field, d):
            if _divisible(f, p):
                return False
    return True


def _irreducibles(field: FieldSpec, degree: int) -> tuple[Poly, ...]:
    cached = field._irr_cache.get(degree)
    if cached is not None:
        return cached
    if degree == 1:
        out = tuple(enumerate_monic(field, 1))
    else:
        found = []
        for f in enumerate_monic(field, degree):
            for d in range(1, degree // 2 + 1):
                if any(_divisible(f, p) for p in _irreducibles(field, d)):
                    break
            else:
                found.append(f)
        out = tuple(found)
    field._irr_cache[degree] = out
    return out


def enumerate_irreducibles(field: FieldSpec, degree: int) -> list[Poly]:
    """All monic irreducibles of the given degree, in canonical order."""
    if degree < 1:
        raise ValueError("degree must be positive")
    return list(_irreducibles(field, degree))


@dataclass(frozen=True)
class Factorization:
    """unit * prod(factor^exponent), factors monic irreducible and sorted."""

    unit: int
    factors: tuple[tuple[Poly, int], ...]

    def expand(self, field: FieldSpec) -> Poly:
        out = Poly(field, (self.unit,))
        for f, k in self.factors:
            out = out * f**k
        return out

    def __iter__(self) -> Iterator[tuple[Poly, int]]:
        return iter(self.factors)


def factor(f: Poly) -> Factorization:
    """Factor by trial division against enumerated irreducibles."""
    if f.is_zero:
        raise ZeroPolynomialError("cannot factor the zero polynomial")
    unit = f.leading()
    rem = f.monic()
    found: list[tuple[Poly, int]] = []
    d = 1
    while rem.degree >= 2 * d:
        for p in _irreducibles(rem.field, d):
            if rem.degree < 2 * d:
                break
            if not _divisible(rem, p):
                continue
            k = 0
            while True:
                quot, r = divmod(rem, p)
                if not r.is_zero:
                    break
                rem = quot
                k += 1
            found.append((p, k))
        d += 1
    if rem.degree >= 1:
        # whatever survives trial division up to half its degree is irreducible
        found.append((rem, 1))
    found.sort(key=lambda pk: canonical_key(pk[0]))
    return Factorization(unit=unit, factors=tuple(found))


def divisors(f: Poly) -> list[Poly]:
    """All monic divisors of a nonzero polynomial, in canonical order."""
    fac = factor(f)
    out = [Poly.one(f.field)]
    for p, k in fac.factors:
        powers = [p**i for i in range(1, k + 1)]
        out = [d * w for d in out for w in [Poly.one(f.field), *powers]]
    out.sort(key=canonical_key)
    return out


# -- residue index encoding ----------------------------------------------------

def poly_to_index(f: Poly) -> int:
    """Pack coefficients as base-q digits: index = sum c_i * q^i."""
    q = f.field.q
    out = 0
    for c in reversed(f.coeffs):
        out = out * q + c
    return out


def poly_from_index(field: FieldSpec, index: int) -> Poly:
    if index < 0:
        raise ValueError("index must be nonnegative")
    q = field.q
    coeffs = []
    while index:
        index, c = divmod(index, q)
        coeffs.append(c)
    return Poly(field, tuple(coeffs), _trusted=True)
