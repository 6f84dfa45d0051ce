"""Coefficient fields: the rationals and prime fields F_p with 2 < p < 2**31.

Field elements are plain Python numbers: :class:`fractions.Fraction` over Q
(always reduced, positive denominator) and ``int`` in ``[0, p)`` over F_p.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import FieldError

PRIME_BOUND = 1 << 31


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3_215_031_751."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``p == 0``) or the prime field F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p == 0:
            return
        if not isinstance(self.p, int) or not 2 < self.p < PRIME_BOUND:
            raise FieldError(f"prime field modulus must satisfy 2 < p < 2^31, got {self.p!r}")
        if not is_prime(self.p):
            raise FieldError(f"{self.p} is not prime")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Accepts ``Q``, ``QQ``, ``F7``, ``Fp 7``, ``GF(7)`` and similar."""
        t = text.strip()
        if t in ("Q", "QQ"):
            return cls(0)
        m = re.fullmatch(r"(?:F|Fp|GF|F_)\s*\(?\s*(\d+)\s*\)?", t)
        if not m:
            raise FieldError(f"unrecognised field {text!r}; expected Q or F<p>")
        return cls(int(m.group(1)))

    @property
    def is_prime_field(self) -> bool:
        return self.p != 0

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def zero(self):
        return 0 if self.p else Fraction(0)

    @property
    def one(self):
        return 1 if self.p else Fraction(1)

    def coerce(self, x):
        """Map an int, Fraction or numeric string into the field."""
        if isinstance(x, str):
            return self.parse_element(x)
        if self.p:
            if isinstance(x, Fraction):
                if x.denominator % self.p == 0:
                    raise FieldError(f"{x} is not defined in F_{self.p}")
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            if isinstance(x, bool) or not isinstance(x, int):
                raise FieldError(f"cannot coerce {x!r} into F_{self.p}")
            return x % self.p
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return Fraction(x)
        raise FieldError(f"cannot coerce {x!r} into Q")

    def parse_element(self, text: str):
        try:
            value = Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"bad field element {text!r}") from exc
        return self.coerce(value)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(x, -1, self.p)
        return 1 / x

    def neg(self, x):
        return (-x) % self.p if self.p else -x

    def reduce(self, x):
        return x % self.p if self.p else x

    def elements(self):
        if not self.p:
            raise FieldError("the rationals cannot be enumerated")
        return range(self.p)

    def random_element(self, rng, bound: int = 20):
        """Uniform over F_p; over Q a small random rational ``a/b``."""
        if self.p:
            return rng.randrange(self.p)
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    def random_nonzero(self, rng, bound: int = 20):
        while True:
            x = self.random_element(rng, bound)
            if x != 0:
                return x

    def format(self, x) -> str:
        return str(x)

    def __str__(self):
        return f"F{self.p}" if self.p else "Q"


QQ = FieldSpec(0)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)
