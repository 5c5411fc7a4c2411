"""The rank-2 type A2 Nichols algebra at a root of unity, exactly.

For N >= 3 the algebra R is generated by x1, x2 with the two Serre-type
relations and x1^N = x2^N = y^N = 0, where y = x1*x2 - q12*x2*x1.  The
monomials x1^a y^b x2^c with 0 <= a, b, c < N form a PBW basis and
multiplication is performed by cached rewriting:

    x2*x1 -> q12^-1 * x1*x2 - q12^-1 * y      (no y term in graded mode)
    y*x1  -> q21 * x1*y
    x2*y  -> q21 * y*x2

For N = 2 the algebra has its own 8-dimensional presentation
(x1^2 = x2^2 = 0, x1x2x1x2 + x2x1x2x1 = 0) with alternating words as the
normal-form basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .scalars import Scalar

MODE_FULL = "full"
MODE_GRADED = "graded"


class InvalidBraiding(ValueError):
    """Braiding parameters violate q12*q21*qbar = 1 or the order constraint."""


class OutOfRange(ValueError):
    """Exponent outside the allowed window."""


class NotDivisible(ValueError):
    """Right division has no solution."""


@dataclass(frozen=True)
class BraidingParams:
    N: int
    qbar: Scalar
    q12: Scalar
    q21: Scalar
    mode: str = MODE_FULL


def standard_braiding(N: int, field, q12_exp: int = 1, mode: str = MODE_FULL):
    """Braiding with qbar the canonical order-N root and q12 = zeta_L^q12_exp."""
    qbar = field.root_of_unity(N)
    q12 = field.zeta**q12_exp
    q21 = (qbar * q12).inverse()
    return BraidingParams(N=N, qbar=qbar, q12=q12, q21=q21, mode=mode)


class AlgebraElement:
    """Finite linear combination of basis monomials; immutable by convention."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms: dict):
        self.algebra = algebra
        self.terms = {k: c for k, c in terms.items() if c}

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            if k in out:
                s = out[k] + c
                if s:
                    out[k] = s
                else:
                    del out[k]
            else:
                out[k] = c
        return AlgebraElement(self.algebra, out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self.algebra.multiply(self, other)

    def scale(self, c: Scalar) -> "AlgebraElement":
        if not c:
            return self.algebra.zero
        return AlgebraElement(self.algebra, {k: c * v for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlgebraElement)
            and self.algebra is other.algebra
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return format_element(self)


class _AlgebraBase:
    """Shared machinery: vectors, right-multiplication matrices, augmentation."""

    def element(self, terms: dict) -> AlgebraElement:
        return AlgebraElement(self, terms)

    def monomial(self, key, coeff=None) -> AlgebraElement:
        return AlgebraElement(self, {key: coeff if coeff is not None else self.field.one})

    @property
    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, {})

    @property
    def one(self) -> AlgebraElement:
        return self.monomial(self.unit_key)

    def vector(self, u: AlgebraElement):
        v = [self.field.zero] * self.dim
        for k, c in u.terms.items():
            v[self.index[k]] = c
        return v

    def from_vector(self, vec) -> AlgebraElement:
        return AlgebraElement(
            self, {self.basis[i]: c for i, c in enumerate(vec) if c}
        )

    def augmentation(self, u: AlgebraElement) -> Scalar:
        return u.terms.get(self.unit_key, self.field.zero)

    def right_mult_matrix(self, m: AlgebraElement) -> linalg.KMatrix:
        """Matrix of u -> u*m in the basis (row = input monomial)."""
        rows = []
        for k in self.basis:
            rows.append(self.vector(self.monomial(k) * m))
        return linalg.KMatrix(rows, self.field, cols=self.dim)

    def right_divide(self, w: AlgebraElement, m: AlgebraElement) -> AlgebraElement:
        """Canonical X with X*m = w (free coordinates set to zero)."""
        if m.is_zero():
            raise NotDivisible("division by zero element")
        M = self.right_mult_matrix(m)
        try:
            x = linalg.solve(M.transpose(), self.vector(w))
        except linalg.NoSolution as exc:
            raise NotDivisible("no right quotient exists") from exc
        return self.from_vector(x)


class PBWAlgebra(_AlgebraBase):
    """R (mode "full") or Gr R (mode "graded") for N >= 3, dimension N^3."""

    unit_key = (0, 0, 0)

    def __init__(self, params: BraidingParams, field):
        N = params.N
        self.field = field
        self.params = params
        self.N = N
        self.mode = params.mode
        self.qbar = params.qbar
        self.q12 = params.q12
        self.q21 = params.q21
        self._q12inv = params.q12.inverse()
        self.dim = N**3
        self.basis = [
            (a, b, c) for a in range(N) for b in range(N) for c in range(N)
        ]
        self.index = {k: i for i, k in enumerate(self.basis)}
        self.x1 = self.monomial((1, 0, 0))
        self.y = self.monomial((0, 1, 0))
        self.x2 = self.monomial((0, 0, 1))
        self._gm: dict = {}
        self._mono: dict = {}
        self._q21pow = [self.field.one]
        for _ in range(2 * N):
            self._q21pow.append(self._q21pow[-1] * self.q21)
        self._rev = None

    # -- generator application -------------------------------------------

    def _gen_apply_key(self, key, gen):
        """Normal form of basis monomial * generator, as {key: scalar}."""
        memo = self._gm
        got = memo.get((key, gen))
        if got is not None:
            return got
        a, b, c = key
        N = self.N
        if gen == "x2":
            out = {} if c + 1 == N else {(a, b, c + 1): self.field.one}
        elif gen == "y":
            out = {} if b + 1 == N else {(a, b + 1, c): self._q21pow[c]}
        elif gen == "x1":
            if c == 0:
                out = {} if a + 1 == N else {(a + 1, b, c): self._q21pow[b]}
            else:
                base = (a, b, c - 1)
                part = self._gen_apply(self._gen_apply_key(base, "x1"), "x2")
                out = {k: self._q12inv * v for k, v in part.items()}
                if self.mode == MODE_FULL:
                    for k, v in self._gen_apply_key(base, "y").items():
                        dv = self._q12inv * v
                        if k in out:
                            s = out[k] - dv
                            if s:
                                out[k] = s
                            else:
                                del out[k]
                        else:
                            out[k] = -dv
        else:
            raise ValueError(f"unknown generator {gen!r}")
        memo[(key, gen)] = out
        return out

    def _gen_apply(self, terms: dict, gen) -> dict:
        out: dict = {}
        for k, c in terms.items():
            for k2, v in self._gen_apply_key(k, gen).items():
                add = c * v
                if k2 in out:
                    s = out[k2] + add
                    if s:
                        out[k2] = s
                    else:
                        del out[k2]
                else:
                    out[k2] = add
        return out

    def _mono_product(self, k1, k2) -> dict:
        got = self._mono.get((k1, k2))
        if got is not None:
            return got
        d, e, f = k2
        terms = {k1: self.field.one}
        for _ in range(d):
            terms = self._gen_apply(terms, "x1")
        for _ in range(e):
            terms = self._gen_apply(terms, "y")
        for _ in range(f):
            terms = self._gen_apply(terms, "x2")
        self._mono[(k1, k2)] = terms
        return terms

    def multiply(self, u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
        out: dict = {}
        for k2, c2 in v.terms.items():
            for k1, c1 in u.terms.items():
                coef = c1 * c2
                for k, w in self._mono_product(k1, k2).items():
                    add = coef * w
                    if k in out:
                        s = out[k] + add
                        if s:
                            out[k] = s
                        else:
                            del out[k]
                    else:
                        out[k] = add
        return AlgebraElement(self, out)

    # -- algebra-specific operations -------------------------------------

    def gen_power(self, gen: str, k: int) -> AlgebraElement:
        if not 0 <= k < self.N:
            raise OutOfRange(f"exponent {k} outside [0, {self.N})")
        key = {"x1": (k, 0, 0), "y": (0, k, 0), "x2": (0, 0, k)}[gen]
        return self.monomial(key)

    def braided_commutator(self, m: int, n: int) -> AlgebraElement:
        """[x1^m, x2^n]_c = x1^m x2^n - q12^(mn) x2^n x1^m."""
        if not (1 <= m <= self.N - 1 and 1 <= n <= self.N - 1):
            raise OutOfRange("exponents must lie in [1, N-1]")
        lead = self.monomial((m, 0, n))
        swapped = self.gen_power("x2", n) * self.gen_power("x1", m)
        return lead - swapped.scale(self.q12**(m * n))

    def _reverse_matrix(self):
        if self._rev is None:
            cols = []
            for key in self.basis:
                a, b, c = key
                el = (
                    self.gen_power("x2", c)
                    * self.gen_power("y", b)
                    * self.gen_power("x1", a)
                )
                cols.append(self.vector(el))
            M = linalg.KMatrix(cols, self.field, cols=self.dim).transpose()
            R, piv = linalg.rref(
                linalg.KMatrix(
                    [row + ident for row, ident in zip(
                        M.data,
                        linalg.KMatrix.identity(self.dim, self.field).data,
                    )],
                    self.field,
                )
            )
            if len(piv) != self.dim:
                raise InvalidBraiding("reverse monomials do not form a basis")
            inv = linalg.KMatrix(
                [row[self.dim :] for row in R.data], self.field, cols=self.dim
            )
            self._rev = (M, inv)
        return self._rev

    def reverse_basis_invertible(self) -> bool:
        try:
            self._reverse_matrix()
            return True
        except InvalidBraiding:
            return False

    def to_reverse_basis(self, u: AlgebraElement) -> dict:
        """Coefficients of u on the monomials x2^a3 y^a2 x1^a1 (key (a1,a2,a3))."""
        if self.mode != MODE_FULL:
            raise ValueError("reverse basis is defined in full mode")
        _, inv = self._reverse_matrix()
        vec = self.vector(u)
        out = {}
        for i, key in enumerate(self.basis):
            acc = self.field.zero
            for j, c in enumerate(vec):
                if c:
                    acc = acc + inv.data[i][j] * c
            if acc:
                out[key] = acc
        return out

    def from_reverse_basis(self, coeffs: dict) -> AlgebraElement:
        out = self.zero
        for (a, b, c), coef in coeffs.items():
            el = (
                self.gen_power("x2", c)
                * self.gen_power("y", b)
                * self.gen_power("x1", a)
            )
            out = out + el.scale(coef)
        return out

    def right_divide(self, w: AlgebraElement, m: AlgebraElement) -> AlgebraElement:
        if self.mode == MODE_FULL and m == self.y:
            # closed form: the quotient lives in y-degree <= N-2
            out = {}
            for (a, b, c), coef in w.terms.items():
                if b == 0:
                    raise NotDivisible("element has a nonzero y-degree-0 part")
                out[(a, b - 1, c)] = self._q21pow[c].inverse() * coef
            return AlgebraElement(self, out)
        return super().right_divide(w, m)


class N2Algebra(_AlgebraBase):
    """The N = 2 algebra: x1^2 = x2^2 = 0, x1x2x1x2 + x2x1x2x1 = 0; dim 8."""

    unit_key = ()

    def __init__(self, params: BraidingParams, field):
        self.field = field
        self.params = params
        self.N = 2
        self.mode = params.mode
        self.qbar = params.qbar
        self.q12 = params.q12
        self.q21 = params.q21
        self.dim = 8
        self.basis = [
            (),
            (1,),
            (2,),
            (1, 2),
            (2, 1),
            (1, 2, 1),
            (2, 1, 2),
            (1, 2, 1, 2),
        ]
        self.index = {k: i for i, k in enumerate(self.basis)}
        self.x1 = self.monomial((1,))
        self.x2 = self.monomial((2,))

    def _reduce_word(self, word: tuple):
        """Normal form of an alternating-letter word; None means zero."""
        for a, b in zip(word, word[1:]):
            if a == b:
                return None
        if len(word) > 4:
            return None
        if word == (2, 1, 2, 1):
            return ((1, 2, 1, 2), -self.field.one)
        return (word, self.field.one)

    def multiply(self, u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
        out: dict = {}
        for k1, c1 in u.terms.items():
            for k2, c2 in v.terms.items():
                red = self._reduce_word(k1 + k2)
                if red is None:
                    continue
                key, sign = red
                add = c1 * c2 * sign
                if key in out:
                    s = out[key] + add
                    if s:
                        out[key] = s
                    else:
                        del out[key]
                else:
                    out[key] = add
        return AlgebraElement(self, out)

    def word(self, letters) -> AlgebraElement:
        red = self._reduce_word(tuple(letters))
        if red is None:
            return self.zero
        key, sign = red
        return self.monomial(key, sign)


def make_algebra(params: BraidingParams, field):
    """Validate the braiding and build the algebra handle."""
    N = params.N
    if N < 2 or (N > 2 and N % 2 == 0):
        raise InvalidBraiding("N must be 2 or odd >= 3")
    if field.order(params.qbar) != N:
        raise InvalidBraiding(f"qbar must have multiplicative order {N}")
    if params.q12 * params.q21 * params.qbar != field.one:
        raise InvalidBraiding("q12*q21 must equal qbar^-1")
    if N == 2:
        return N2Algebra(params, field)
    if params.mode not in (MODE_FULL, MODE_GRADED):
        raise InvalidBraiding(f"unknown mode {params.mode!r}")
    return PBWAlgebra(params, field)


# ---------------------------------------------------------------------------
# textual element format (grammar documented in README)


def format_scalar(s: Scalar) -> str:
    field = s.field
    if s == field.one:
        return "1"
    if hasattr(s, "value"):
        return str(s.value)
    acc = field.zeta
    for k in range(1, field.L):
        if s == acc:
            return "z" if k == 1 else f"z^{k}"
        acc = acc * field.zeta
    coeffs = s.coeffs
    if all(c == 0 for c in coeffs[1:]):
        return str(coeffs[0])
    return "(" + repr(s) + ")"


def format_element(u: AlgebraElement) -> str:
    if u.is_zero():
        return "0"
    algebra = u.algebra
    parts = []
    for key in algebra.basis:
        if key not in u.terms:
            continue
        c = u.terms[key]
        if isinstance(algebra, PBWAlgebra):
            a, b, cc = key
            factors = []
            if a:
                factors.append("x1" if a == 1 else f"x1^{a}")
            if b:
                factors.append("y" if b == 1 else f"y^{b}")
            if cc:
                factors.append("x2" if cc == 1 else f"x2^{cc}")
            mono = " ".join(factors) if factors else "1"
        else:
            mono = " ".join(f"x{i}" for i in key) if key else "1"
        cs = format_scalar(c)
        if mono == "1":
            parts.append(cs)
        elif cs == "1":
            parts.append(mono)
        else:
            parts.append(f"{cs} * {mono}")
    return " + ".join(parts)


def parse_element(text: str, algebra) -> AlgebraElement:
    """Parse "c * x1^a y^b x2^c" sums; scalars are z^k or rational literals."""
    text = text.strip()
    if text == "0":
        return algebra.zero
    out = algebra.zero
    for chunk in _split_terms(text):
        out = out + _parse_term(chunk, algebra)
    return out


def _split_terms(text: str):
    terms = []
    depth = 0
    cur = ""
    sign = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and cur.strip():
            terms.append(sign + cur)
            sign = "" if ch == "+" else "-"
            cur = ""
        else:
            cur += ch
    if cur.strip():
        terms.append(sign + cur)
    return terms


def _parse_term(chunk: str, algebra) -> AlgebraElement:
    field = algebra.field
    neg = False
    chunk = chunk.strip()
    while chunk.startswith("-") or chunk.startswith("+"):
        if chunk[0] == "-":
            neg = not neg
        chunk = chunk[1:].strip()
    coeff = field.one
    acc = algebra.one
    factors = chunk.replace("*", " ").split()
    for f in factors:
        base, _, exp = f.partition("^")
        e = int(exp) if exp else 1
        if base in ("x1", "x2", "y"):
            if isinstance(algebra, PBWAlgebra):
                gen = {"x1": algebra.x1, "y": algebra.y, "x2": algebra.x2}[base]
            else:
                if base == "y":
                    raise ValueError("no generator y in the N=2 presentation")
                gen = {"x1": algebra.x1, "x2": algebra.x2}[base]
            for _ in range(e):
                acc = acc * gen
        elif base == "z":
            coeff = coeff * field.zeta**e
        else:
            q = Fraction(base)
            coeff = coeff * field.from_fraction(q) ** e
    out = acc.scale(coeff)
    return -out if neg else out
