"""Exact field arithmetic over fields containing a prescribed root of unity.

Two interchangeable backends:

* ``CyclotomicField(L)`` -- the rational cyclotomic field Q(zeta_L),
  elements stored as coefficient vectors reduced modulo the L-th
  cyclotomic polynomial.  Reference backend, slow but characteristic 0.
* ``PrimeField(p, L)`` -- the prime field F_p with p = 1 (mod L), p > L,
  so that it contains an element of multiplicative order exactly L.
  Fast backend for large runs.

Scalars are immutable values; field handles are read-only after
construction.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


class InvalidSpec(ValueError):
    """Field specification violates its invariants."""


class NotDivisor(ValueError):
    """Requested root order does not divide the field's root order."""


class ZeroElement(ZeroDivisionError):
    """Operation undefined on the zero scalar."""


class NotTorsion(ValueError):
    """Element is not a root of unity."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _poly_trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Division of integer polynomials, assuming it is exact over Z (monic den)."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(num) - len(den), -1, -1):
        coeff = num[i + len(den) - 1]
        if coeff % lead != 0 and lead != 1:
            raise ArithmeticError("non-exact polynomial division")
        c = coeff // lead
        q[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    return q, _poly_trim(num)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(L: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_L, computed by dividing x^L - 1 by the
    cyclotomic polynomials of the proper divisors of L."""
    if L < 1:
        raise InvalidSpec("root order must be >= 1")
    num = [0] * L + [1]
    num[0] = -1
    for d in _divisors(L):
        if d == L:
            continue
        num, rem = _poly_divmod_int(num, list(cyclotomic_polynomial(d)))
        if rem:
            raise ArithmeticError("cyclotomic division left a remainder")
    return tuple(num)


class Scalar:
    """Common interface of exact field elements (see the two subclasses)."""

    __slots__ = ("field",)

    def __sub__(self, other):
        return self + (-other)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        acc = self.field.one
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_zero(self) -> bool:
        raise NotImplementedError

    def inverse(self):
        raise NotImplementedError


class FpScalar(Scalar):
    __slots__ = ("value",)

    def __init__(self, value: int, field: "PrimeField"):
        self.value = value % field.p
        self.field = field

    def __add__(self, other: "FpScalar") -> "FpScalar":
        return FpScalar(self.value + other.value, self.field)

    def __mul__(self, other: "FpScalar") -> "FpScalar":
        return FpScalar(self.value * other.value, self.field)

    def __neg__(self) -> "FpScalar":
        return FpScalar(-self.value, self.field)

    def inverse(self) -> "FpScalar":
        if self.value == 0:
            raise ZeroElement("0 has no inverse")
        return FpScalar(pow(self.value, -1, self.field.p), self.field)

    def is_zero(self) -> bool:
        return self.value == 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FpScalar)
            and self.field is other.field
            and self.value == other.value
        )

    def __hash__(self):
        return hash(("Fp", self.field.p, self.value))

    def __repr__(self):
        return f"{self.value}"


class CycScalar(Scalar):
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: tuple[Fraction, ...], field: "CyclotomicField"):
        # canonical form: tuple of Fractions of length deg(Phi_L)
        self.coeffs = coeffs
        self.field = field

    def __add__(self, other: "CycScalar") -> "CycScalar":
        return CycScalar(
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.field
        )

    def __neg__(self) -> "CycScalar":
        return CycScalar(tuple(-a for a in self.coeffs), self.field)

    def __mul__(self, other: "CycScalar") -> "CycScalar":
        return self.field._mul(self, other)

    def inverse(self) -> "CycScalar":
        return self.field._inv(self)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CycScalar)
            and self.field.L == other.field.L
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(("Cyc", self.field.L, self.coeffs))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*z" if c != 1 else "z")
            else:
                terms.append(f"{c}*z^{i}" if c != 1 else f"z^{i}")
        return " + ".join(terms) if terms else "0"


class PrimeField:
    """F_p together with a distinguished element of multiplicative order L."""

    mode = "fp"

    def __init__(self, p: int, L: int):
        if L < 1:
            raise InvalidSpec("root order must be >= 1")
        if not _is_prime(p):
            raise InvalidSpec(f"{p} is not prime")
        if p == 2:
            raise InvalidSpec("characteristic 2 is excluded")
        if (p - 1) % L != 0:
            raise InvalidSpec(f"{p} != 1 (mod {L}); F_{p} has no order-{L} element")
        if p <= L:
            raise InvalidSpec(f"require p > L, got p={p}, L={L}")
        self.p = p
        self.L = L
        self.zero = FpScalar(0, self)
        self.one = FpScalar(1, self)
        self.zeta = self._find_zeta()

    def _find_zeta(self) -> FpScalar:
        if self.L == 1:
            return self.one
        # deterministic: smallest residue of order exactly L
        for a in range(2, self.p):
            if pow(a, self.L, self.p) == 1:
                if all(
                    pow(a, self.L // q, self.p) != 1
                    for q in _prime_factors(self.L)
                ):
                    return FpScalar(a, self)
        raise InvalidSpec(f"no element of order {self.L} in F_{self.p}")

    def from_int(self, n: int) -> FpScalar:
        return FpScalar(n, self)

    def from_fraction(self, q: Fraction) -> FpScalar:
        return FpScalar(q.numerator * pow(q.denominator, -1, self.p), self)

    def root_of_unity(self, d: int) -> FpScalar:
        if d < 1 or self.L % d != 0:
            raise NotDivisor(f"{d} does not divide {self.L}")
        return self.zeta ** (self.L // d)

    def order(self, s: FpScalar) -> int:
        if s.is_zero():
            raise ZeroElement("0 has no multiplicative order")
        for d in _divisors(self.p - 1):
            if pow(s.value, d, self.p) == 1:
                return d
        raise AssertionError("unreachable: F_p* is cyclic of order p-1")

    def spec_string(self) -> str:
        return f"fp:{self.p}:{self.L}"

    def __repr__(self):
        return f"PrimeField(p={self.p}, L={self.L})"


class CyclotomicField:
    """Q[x]/(Phi_L(x)); reduction modulo Phi_L keeps equality canonical."""

    mode = "cyclotomic"
    p = None

    def __init__(self, L: int):
        if L < 1:
            raise InvalidSpec("root order must be >= 1")
        self.L = L
        phi = cyclotomic_polynomial(L)
        self.deg = len(phi) - 1
        self._phi = phi
        # x^k mod Phi_L for deg <= k <= 2*deg-2, as Fraction vectors
        red = {}
        cur = [Fraction(-c, phi[-1]) for c in phi[:-1]]
        red[self.deg] = tuple(cur)
        for k in range(self.deg + 1, 2 * self.deg - 1):
            nxt = [Fraction(0)] * self.deg
            top = cur[-1]
            for i in range(self.deg - 1):
                nxt[i + 1] = cur[i]
            if top:
                for i, r in enumerate(red[self.deg]):
                    nxt[i] += top * r
            cur = nxt
            red[k] = tuple(cur)
        self._reduction = red
        self.zero = self._make([Fraction(0)] * self.deg)
        self.one = self._make(
            [Fraction(1)] + [Fraction(0)] * (self.deg - 1)
        )
        if self.deg == 1:
            # Phi_L linear: zeta is rational (L = 1 or 2)
            self.zeta = self._make([Fraction(-phi[0], phi[1])])
        else:
            self.zeta = self._make(
                [Fraction(0), Fraction(1)] + [Fraction(0)] * (self.deg - 2)
            )

    def _make(self, coeffs) -> CycScalar:
        return CycScalar(tuple(coeffs), self)

    def from_int(self, n: int) -> CycScalar:
        return self._make([Fraction(n)] + [Fraction(0)] * (self.deg - 1))

    def from_fraction(self, q: Fraction) -> CycScalar:
        return self._make([Fraction(q)] + [Fraction(0)] * (self.deg - 1))

    def _mul(self, a: CycScalar, b: CycScalar) -> CycScalar:
        d = self.deg
        prod = [Fraction(0)] * (2 * d - 1)
        ac, bc = a.coeffs, b.coeffs
        for i, ai in enumerate(ac):
            if ai == 0:
                continue
            for j, bj in enumerate(bc):
                if bj:
                    prod[i + j] += ai * bj
        out = list(prod[:d])
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                for i, r in enumerate(self._reduction[k]):
                    if r:
                        out[i] += c * r
        return self._make(out)

    def _inv(self, a: CycScalar) -> CycScalar:
        if a.is_zero():
            raise ZeroElement("0 has no inverse")
        # extended Euclid in Q[x] against Phi_L
        r0 = [Fraction(c) for c in self._phi]
        r1 = _poly_trim(list(a.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, rem = _poly_divmod_frac(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        if not r1:
            raise ZeroElement("not invertible modulo Phi_L")
        lead = r1[0]
        inv = [c / lead for c in s1]
        inv = inv[: self.deg] + [Fraction(0)] * (self.deg - len(inv))
        return self._make(inv[: self.deg])

    def root_of_unity(self, d: int) -> CycScalar:
        if d < 1 or self.L % d != 0:
            raise NotDivisor(f"{d} does not divide {self.L}")
        return self.zeta ** (self.L // d)

    def order(self, s: CycScalar) -> int:
        if s.is_zero():
            raise ZeroElement("0 has no multiplicative order")
        # torsion units of Q(zeta_L) have order dividing lcm(2, L)
        bound = self.L if self.L % 2 == 0 else 2 * self.L
        acc = s
        for m in range(1, bound + 1):
            if acc == self.one:
                return m
            acc = acc * s
        raise NotTorsion("element is not a root of unity")

    def spec_string(self) -> str:
        return f"cyclotomic:{self.L}"

    def __repr__(self):
        return f"CyclotomicField(L={self.L})"


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _poly_divmod_frac(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    dn = len(den) - 1
    q = [Fraction(0)] * max(len(num) - dn, 1)
    lead = den[-1]
    for i in range(len(num) - dn - 1, -1, -1):
        c = num[i + dn] / lead
        q[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    return q, _poly_trim(num[:dn])


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, ai in enumerate(a):
        out[i] += ai
    for i, bi in enumerate(b):
        out[i] -= bi
    return _poly_trim(out)


def make_field(spec: str):
    """Build a field handle from a spec string: "cyclotomic:L" or "fp:p:L"."""
    parts = spec.split(":")
    try:
        if parts[0] == "cyclotomic" and len(parts) == 2:
            return CyclotomicField(int(parts[1]))
        if parts[0] == "fp" and len(parts) == 3:
            return PrimeField(int(parts[1]), int(parts[2]))
    except InvalidSpec:
        raise
    except ValueError as exc:
        raise InvalidSpec(f"malformed field spec {spec!r}") from exc
    raise InvalidSpec(f"malformed field spec {spec!r}")
