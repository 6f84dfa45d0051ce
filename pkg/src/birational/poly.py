"""Sparse multivariate polynomials with exact coefficients.

Monomials are packed into a single Python ``int``: a 16-bit field holding the
total degree sits above one 16-bit field per variable, variable 0 in the most
significant slot.  With this layout

* integer comparison of packed keys *is* the graded-lexicographic order with
  variable 0 highest,
* monomial multiplication is integer addition, and
* monomial divisibility is one subtraction against a mask of guard bits.

Exponents and total degrees are limited to ``MAX_EXP`` (32767).
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import (
    DimensionMismatchError,
    FieldError,
    FieldMismatchError,
    NotHomogeneousError,
    PreconditionError,
    ZeroPolynomialError,
)
from .fields import FieldSpec

_W = 16
_MASK = (1 << _W) - 1
_GUARD = 1 << (_W - 1)
MAX_EXP = _GUARD - 1

ALIASES = ("x", "y", "z", "w")


@lru_cache(maxsize=None)
def _layout(nvars: int):
    shifts = tuple(_W * (nvars - 1 - i) for i in range(nvars))
    deg_shift = _W * nvars
    guards = sum(_GUARD << (_W * j) for j in range(nvars + 1))
    units = tuple((1 << deg_shift) | (1 << s) for s in shifts)
    return shifts, deg_shift, guards, units


def pack(exps: Sequence[int], nvars: int) -> int:
    shifts, deg_shift, _, _ = _layout(nvars)
    if len(exps) != nvars:
        raise DimensionMismatchError(f"exponent vector {tuple(exps)} has length != {nvars}")
    total = 0
    key = 0
    for e, s in zip(exps, shifts):
        if not isinstance(e, int) or e < 0:
            raise ValueError(f"bad exponent {e!r}")
        total += e
        key |= e << s
    if total > MAX_EXP:
        raise OverflowError("total degree exceeds the packed monomial range")
    return key | (total << deg_shift)


def unpack(key: int, nvars: int) -> tuple:
    shifts = _layout(nvars)[0]
    return tuple((key >> s) & _MASK for s in shifts)


def key_degree(key: int, nvars: int) -> int:
    return key >> (_W * nvars)


def key_divides(small: int, big: int, nvars: int) -> bool:
    """True iff the monomial ``small`` divides the monomial ``big``."""
    guards = _layout(nvars)[2]
    return ((big | guards) - small) & guards == guards


def var_name(i: int) -> str:
    return f"x{i}"


class Polynomial:
    """An element of k[x0, ..., x_{nvars-1}] for k = Q or F_p.

    Instances are immutable.  ``terms`` may be a mapping from exponent tuples
    to coefficients or an iterable of ``(exponents, coefficient)`` pairs;
    repeated monomials are summed and zero coefficients dropped.
    """

    __slots__ = ("field", "nvars", "_t", "_hash")

    def __init__(self, field: FieldSpec, nvars: int, terms=None):
        if not isinstance(field, FieldSpec):
            raise FieldError(f"expected a FieldSpec, got {field!r}")
        if nvars < 0:
            raise DimensionMismatchError("negative variable count")
        self.field = field
        self.nvars = nvars
        self._hash = None
        t: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for exps, c in items:
                k = pack(tuple(exps), nvars)
                t[k] = t.get(k, 0) + field.coerce(c)
            t = _clean(t, field.p)
        self._t = t

    @classmethod
    def _raw(cls, field: FieldSpec, nvars: int, t: dict) -> "Polynomial":
        obj = cls.__new__(cls)
        obj.field = field
        obj.nvars = nvars
        obj._t = t
        obj._hash = None
        return obj

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field: FieldSpec, nvars: int) -> "Polynomial":
        return cls._raw(field, nvars, {})

    @classmethod
    def constant(cls, field: FieldSpec, nvars: int, c) -> "Polynomial":
        c = field.coerce(c)
        return cls._raw(field, nvars, {0: c} if c != 0 else {})

    @classmethod
    def one(cls, field: FieldSpec, nvars: int) -> "Polynomial":
        return cls.constant(field, nvars, 1)

    @classmethod
    def var(cls, field: FieldSpec, nvars: int, i: int) -> "Polynomial":
        if not 0 <= i < nvars:
            raise DimensionMismatchError(f"variable index {i} out of range for {nvars} variables")
        return cls._raw(field, nvars, {_layout(nvars)[3][i]: field.one})

    @classmethod
    def gens(cls, field: FieldSpec, nvars: int) -> list:
        return [cls.var(field, nvars, i) for i in range(nvars)]

    @classmethod
    def monomial(cls, field: FieldSpec, exps: Sequence[int], c=1) -> "Polynomial":
        return cls(field, len(exps), {tuple(exps): c})

    @classmethod
    def linear_form(cls, field: FieldSpec, coeffs: Sequence, constant=0) -> "Polynomial":
        """``sum(coeffs[i] * x_i) + constant``."""
        n = len(coeffs)
        units = _layout(n)[3]
        t = {units[i]: field.coerce(c) for i, c in enumerate(coeffs)}
        t[0] = field.coerce(constant)
        return cls._raw(field, n, _clean(t, field.p))

    @classmethod
    def from_terms(cls, field: FieldSpec, nvars: int, pairs) -> "Polynomial":
        """Inverse of :meth:`to_terms`."""
        return cls(field, nvars, [(tuple(e), field.parse_element(c) if isinstance(c, str) else c)
                                  for e, c in pairs])

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> list:
        """``[(exponents, coefficient), ...]`` in descending grlex order."""
        n = self.nvars
        return [(unpack(k, n), self._t[k]) for k in sorted(self._t, reverse=True)]

    def to_terms(self) -> list:
        return [[list(e), str(c)] for e, c in self.terms]

    def monomials(self) -> list:
        return [e for e, _ in self.terms]

    def coefficient(self, exps: Sequence[int]):
        return self._t.get(pack(tuple(exps), self.nvars), self.field.zero)

    def __len__(self):
        return len(self._t)

    @property
    def is_zero(self) -> bool:
        return not self._t

    @property
    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    @property
    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def constant_value(self):
        return self._t.get(0, self.field.zero)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._t:
            return -1
        return key_degree(max(self._t), self.nvars)

    def min_degree(self) -> int:
        if not self._t:
            return -1
        return key_degree(min(self._t), self.nvars)

    @property
    def is_homogeneous(self) -> bool:
        """The zero polynomial counts as homogeneous."""
        if not self._t:
            return True
        n = self.nvars
        ds = {key_degree(k, n) for k in self._t}
        return len(ds) == 1

    def degree_in(self, i: int) -> int:
        if not self._t:
            return -1
        s = _layout(self.nvars)[0][i]
        return max((k >> s) & _MASK for k in self._t)

    def variables(self) -> set:
        """Indices of the variables that actually occur."""
        n = self.nvars
        shifts = _layout(n)[0]
        acc = 0
        for k in self._t:
            acc |= k
        return {i for i, s in enumerate(shifts) if (acc >> s) & _MASK}

    def leading_key(self) -> int:
        if not self._t:
            raise ZeroPolynomialError("the zero polynomial has no leading term")
        return max(self._t)

    def leading_monomial(self) -> tuple:
        return unpack(self.leading_key(), self.nvars)

    def leading_coefficient(self):
        return self._t[self.leading_key()]

    def leading_term(self) -> "Polynomial":
        k = self.leading_key()
        return Polynomial._raw(self.field, self.nvars, {k: self._t[k]})

    def min_exponents(self) -> tuple:
        """Componentwise minimum exponent vector (the monomial content)."""
        if not self._t:
            raise ZeroPolynomialError("monomial content of zero")
        n = self.nvars
        vecs = [unpack(k, n) for k in self._t]
        return tuple(min(col) for col in zip(*vecs))

    # -- coercion helpers ----------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise FieldMismatchError(f"field mismatch: {self.field} vs {other.field}")
            if other.nvars != self.nvars:
                raise DimensionMismatchError(
                    f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(self.field, self.nvars, other)
        return NotImplemented

    def _like(self, t: dict) -> "Polynomial":
        return Polynomial._raw(self.field, self.nvars, t)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._t) > len(self._t):
            a, b = other._t, self._t
        else:
            a, b = self._t, other._t
        t = dict(a)
        p = self.field.p
        for k, c in b.items():
            v = t.get(k, 0) + c
            if p:
                v %= p
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return self._like(t)

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        if p:
            return self._like({k: p - c for k, c in self._t.items()})
        return self._like({k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "Polynomial":
        c = self.field.coerce(c)
        if c == 0:
            return self._like({})
        p = self.field.p
        if p:
            return self._like({k: v * c % p for k, v in self._t.items()})
        return self._like({k: v * c for k, v in self._t.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._t, other._t
        if not a or not b:
            return self._like({})
        if self.degree + other.degree > MAX_EXP:
            raise OverflowError("product degree exceeds the packed monomial range")
        if len(a) < len(b):
            a, b = b, a
        acc: dict = {}
        get = acc.get
        bi = list(b.items())
        for k1, c1 in a.items():
            for k2, c2 in bi:
                k = k1 + k2
                acc[k] = get(k, 0) + c1 * c2
        return self._like(_clean(acc, self.field.p))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise PreconditionError("only non-negative integer powers are supported")
        result = Polynomial.one(self.field, self.nvars)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return (self.field == other.field and self.nvars == other.nvars
                    and self._t == other._t)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            try:
                return self._t == Polynomial.constant(self.field, self.nvars, other)._t
            except FieldError:
                return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.nvars, frozenset(self._t.items())))
        return self._hash

    def __bool__(self):
        return bool(self._t)

    def monic(self) -> "Polynomial":
        """Scale so the leading coefficient (canonical order) is 1."""
        if not self._t:
            return self
        return self.scale(self.field.inv(self.leading_coefficient()))

    # -- division ------------------------------------------------------------

    def divmod(self, h: "Polynomial"):
        """Multivariate division by a single polynomial in grlex order.

        Returns ``(q, r)`` with ``self == q*h + r`` where no term of ``r`` is
        divisible by the leading monomial of ``h``.  A single polynomial is a
        standard basis of the ideal it generates, so ``r == 0`` exactly when
        ``h`` divides ``self``.
        """
        h = self._coerce(h)
        if h is NotImplemented:
            raise TypeError("can only divide by a polynomial or scalar")
        if not h._t:
            raise ZeroPolynomialError("division by the zero polynomial")
        field, n = self.field, self.nvars
        P = field.p
        lm = max(h._t)
        inv_lc = field.inv(h._t[lm])
        rest = [(k, c) for k, c in h._t.items() if k != lm]
        guards = _layout(n)[2]
        work = dict(self._t)
        heap = [-k for k in work]
        heapq.heapify(heap)
        q: dict = {}
        r: dict = {}
        while heap:
            k = -heapq.heappop(heap)
            c = work.pop(k, None)
            if c is None:
                continue
            if ((k | guards) - lm) & guards != guards:
                r[k] = c
                continue
            m = k - lm
            cq = c * inv_lc
            if P:
                cq %= P
            q[m] = cq
            for kh, ch in rest:
                kk = m + kh
                old = work.get(kk)
                v = (0 if old is None else old) - cq * ch
                if P:
                    v %= P
                if v:
                    if old is None:
                        heapq.heappush(heap, -kk)
                    work[kk] = v
                elif old is not None:
                    del work[kk]
        return self._like(q), self._like(r)

    def __floordiv__(self, h):
        return self.divmod(h)[0]

    def __mod__(self, h):
        return self.divmod(h)[1]

    def divides(self, f: "Polynomial") -> bool:
        """True iff ``self`` divides ``f``."""
        return f.divmod(self)[1].is_zero

    def exact_div(self, h) -> "Polynomial":
        q, r = self.divmod(h)
        if r:
            raise PreconditionError("division is not exact")
        return q

    # -- calculus and charts -------------------------------------------------

    def derivative(self, i: int) -> "Polynomial":
        n = self.nvars
        if not 0 <= i < n:
            raise DimensionMismatchError(f"variable index {i} out of range for {n} variables")
        shifts, _, _, units = _layout(n)
        s, u = shifts[i], units[i]
        P = self.field.p
        t = {}
        for k, c in self._t.items():
            e = (k >> s) & _MASK
            if e:
                v = c * e
                if P:
                    v %= P
                if v:
                    t[k - u] = v
        return self._like(t)

    def gradient(self) -> list:
        return [self.derivative(i) for i in range(self.nvars)]

    def homogenize(self, slot: int, degree: int | None = None) -> "Polynomial":
        """Insert a new variable at index ``slot`` and pad every term with it.

        The result is homogeneous of ``degree`` (default: ``self.degree``) in
        ``nvars + 1`` variables.
        """
        n = self.nvars
        if not 0 <= slot <= n:
            raise DimensionMismatchError(f"slot {slot} out of range")
        d = self.degree if degree is None else degree
        if self._t and d < self.degree:
            raise PreconditionError("target degree is below the polynomial's degree")
        t = {}
        for k, c in self._t.items():
            e = unpack(k, n)
            t[pack(e[:slot] + (d - sum(e),) + e[slot:], n + 1)] = c
        return Polynomial._raw(self.field, n + 1, t)

    def dehomogenize(self, slot: int) -> "Polynomial":
        """Set the variable at ``slot`` to 1 and drop it."""
        n = self.nvars
        if not 0 <= slot < n:
            raise DimensionMismatchError(f"slot {slot} out of range")
        if not self.is_homogeneous:
            raise NotHomogeneousError("dehomogenize needs a homogeneous polynomial")
        return self.set_variable(slot, 1, drop=True)

    def set_variable(self, i: int, value, drop: bool = False) -> "Polynomial":
        """Substitute a field value for ``x_i``; optionally remove the variable."""
        n = self.nvars
        value = self.field.coerce(value)
        P = self.field.p
        t: dict = {}
        for k, c in self._t.items():
            e = unpack(k, n)
            if e[i]:
                v = c * (pow(value, e[i], P) if P else value ** e[i])
            else:
                v = c
            ne = e[:i] + e[i + 1:] if drop else e[:i] + (0,) + e[i + 1:]
            kk = pack(ne, n - 1 if drop else n)
            t[kk] = t.get(kk, 0) + v
        return Polynomial._raw(self.field, n - 1 if drop else n, _clean(t, P))

    def embed(self, nvars: int, positions: Sequence[int]) -> "Polynomial":
        """Rename variable ``i`` to ``positions[i]`` in a ring with ``nvars`` variables."""
        n = self.nvars
        if len(positions) != n:
            raise DimensionMismatchError("positions must list one slot per variable")
        t = {}
        for k, c in self._t.items():
            e = unpack(k, n)
            ne = [0] * nvars
            for i, ei in enumerate(e):
                ne[positions[i]] += ei
            kk = pack(ne, nvars)
            t[kk] = t.get(kk, 0) + c
        return Polynomial._raw(self.field, nvars, _clean(t, self.field.p))

    # -- evaluation and substitution ----------------------------------------

    def __call__(self, *values):
        if len(values) == 1 and isinstance(values[0], (list, tuple)):
            values = values[0]
        return self.evaluate(values)

    def evaluate(self, values: Sequence):
        """Exact value at a point given by field elements (or ints/Fractions)."""
        n = self.nvars
        if len(values) != n:
            raise DimensionMismatchError(f"expected {n} values, got {len(values)}")
        field = self.field
        vals = [field.coerce(v) for v in values]
        P = field.p
        powers = [{0: field.one, 1: v} for v in vals]
        total = field.zero
        for k, c in self._t.items():
            e = unpack(k, n)
            term = c
            for i, ei in enumerate(e):
                if ei:
                    pw = powers[i]
                    x = pw.get(ei)
                    if x is None:
                        x = pow(vals[i], ei, P) if P else vals[i] ** ei
                        pw[ei] = x
                    term = term * x
                    if P:
                        term %= P
            total += term
        return total % P if P else total

    def substitute(self, polys: Sequence["Polynomial"]) -> "Polynomial":
        """Compose: replace ``x_i`` by ``polys[i]`` (all in one common ring)."""
        n = self.nvars
        if len(polys) != n:
            raise DimensionMismatchError(f"expected {n} polynomials, got {len(polys)}")
        if n == 0:
            raise DimensionMismatchError("substitute needs a target ring; use evaluate for constants")
        ring_field, m = polys[0].field, polys[0].nvars
        for q in polys:
            if q.field != self.field or ring_field != q.field:
                raise FieldMismatchError("substitution across fields")
            if q.nvars != m:
                raise DimensionMismatchError("substituted polynomials live in different rings")
        cache = [{0: Polynomial.one(ring_field, m), 1: q} for q in polys]

        def power(i, e):
            got = cache[i].get(e)
            if got is None:
                half = power(i, e // 2)
                got = half * half
                if e % 2:
                    got = got * polys[i]
                cache[i][e] = got
            return got

        # Group terms by their exponent prefix so shared partial products are
        # computed once (a Horner-like scheme on the exponent trie).
        terms = [(unpack(k, n), c) for k, c in self._t.items()]
        acc: dict = {}
        P = ring_field.p

        def walk(group, depth, prefix):
            if depth == n:
                c = sum(cf for _, cf in group)
                if P:
                    c %= P
                if c:
                    for k2, c2 in prefix._t.items():
                        acc[k2] = acc.get(k2, 0) + c * c2
                return
            buckets: dict = {}
            for e, c in group:
                buckets.setdefault(e[depth], []).append((e, c))
            for ei, sub in buckets.items():
                nxt = prefix if ei == 0 else prefix * power(depth, ei)
                if nxt._t:
                    walk(sub, depth + 1, nxt)

        if terms:
            walk(terms, 0, Polynomial.one(ring_field, m))
        return Polynomial._raw(ring_field, m, _clean(acc, P))

    def coefficients_in(self, i: int) -> dict:
        """Split as a polynomial in ``x_i``: ``{power: coefficient}``.

        The coefficients stay in the same ring (with ``x_i`` absent).
        """
        n = self.nvars
        s = _layout(n)[0][i]
        unit = _layout(n)[3][i]
        out: dict = {}
        for k, c in self._t.items():
            e = (k >> s) & _MASK
            out.setdefault(e, {})[k - e * unit] = c
        return {e: Polynomial._raw(self.field, n, t) for e, t in out.items()}

    def homogeneous_components(self) -> dict:
        n = self.nvars
        out: dict = {}
        for k, c in self._t.items():
            out.setdefault(key_degree(k, n), {})[k] = c
        return {d: Polynomial._raw(self.field, n, t) for d, t in out.items()}

    def reduce_to(self, field: FieldSpec) -> "Polynomial":
        """Map a rational polynomial into F_p (coefficientwise)."""
        return Polynomial(field, self.nvars, [(unpack(k, self.nvars), c) for k, c in self._t.items()])

    # -- printing ------------------------------------------------------------

    def to_str(self, names: Sequence[str] | None = None) -> str:
        n = self.nvars
        names = list(names) if names is not None else [var_name(i) for i in range(n)]
        if not self._t:
            return "0"
        parts = []
        for exps, c in self.terms:
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(exps) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        out = parts[0]
        for s in parts[1:]:
            out += " - " + s[1:] if s.startswith("-") else " + " + s
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.field}, {self.nvars}, {self.to_str()!r})"


def _clean(t: dict, p: int) -> dict:
    if p:
        return {k: v % p for k, v in t.items() if v % p}
    return {k: v for k, v in t.items() if v}


def poly_ring(field: FieldSpec, nvars: int):
    """Convenience: the generators of k[x0..x_{n-1}]."""
    return Polynomial.gens(field, nvars)


def check_same_ring(polys: Iterable[Polynomial]):
    polys = list(polys)
    if not polys:
        return
    f0 = polys[0]
    for q in polys[1:]:
        if q.field != f0.field:
            raise FieldMismatchError(f"field mismatch: {f0.field} vs {q.field}")
        if q.nvars != f0.nvars:
            raise DimensionMismatchError(f"variable count mismatch: {f0.nvars} vs {q.nvars}")
