"""Exact integer-coefficient Laurent polynomials in one formal variable.

The representation is sparse: a map from integer exponent to nonzero
integer coefficient. The variable itself has no fixed name; rendering
takes one (``A`` for bracket values, ``δ`` for loop values).
"""

from __future__ import annotations

from typing import Iterable, Mapping


class LaurentPoly:
    """Immutable sparse Laurent polynomial with int coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        c: dict[int, int] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for exp, coeff in items:
            if coeff:
                c[exp] = c.get(exp, 0) + coeff
                if not c[exp]:
                    del c[exp]
        self._c = c

    @classmethod
    def zero(cls) -> LaurentPoly:
        return cls()

    @classmethod
    def one(cls) -> LaurentPoly:
        return cls({0: 1})

    @classmethod
    def term(cls, coeff: int, exp: int = 0) -> LaurentPoly:
        """The single term ``coeff * x^exp``."""
        return cls({exp: coeff})

    @classmethod
    def var(cls) -> LaurentPoly:
        """The formal variable itself, ``x^1``."""
        return cls({1: 1})

    def items(self) -> list[tuple[int, int]]:
        """(exponent, coefficient) pairs sorted by descending exponent."""
        return sorted(self._c.items(), reverse=True)

    def coeff(self, exp: int) -> int:
        return self._c.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __add__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        c = dict(self._c)
        for exp, coeff in other._c.items():
            c[exp] = c.get(exp, 0) + coeff
            if not c[exp]:
                del c[exp]
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = c
        return out

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {e: -k for e, k in self._c.items()}
        return out

    def __sub__(self, other: LaurentPoly | int) -> LaurentPoly:
        return self + (-other)

    def __rsub__(self, other: int) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            return LaurentPoly({e: k * other for e, k in self._c.items()})
        c: dict[int, int] = {}
        for e1, k1 in self._c.items():
            for e2, k2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + k1 * k2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            raise ValueError("negative powers are not defined for polynomials")
        acc = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def invert_variable(self) -> LaurentPoly:
        """Substitute x -> x^-1 (negate every exponent)."""
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {-e: k for e, k in self._c.items()}
        return out

    def substitute(self, value: LaurentPoly) -> LaurentPoly:
        """Evaluate at another polynomial; all exponents must be >= 0."""
        if any(e < 0 for e in self._c):
            raise ValueError("cannot substitute into negative exponents")
        acc = LaurentPoly.zero()
        for e, k in self._c.items():
            acc = acc + (value**e) * k
        return acc

    def divide_exact(self, divisor: LaurentPoly) -> LaurentPoly:
        """Exact division; raises ValueError if the quotient is not exact."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero()
        rem = dict(self._c)
        div = divisor.items()
        lead_exp, lead_coeff = div[0]
        # Exact quotients live in a fixed exponent window.
        low = min(self._c) - min(divisor._c)
        out: dict[int, int] = {}
        while rem:
            e = max(rem)
            if e - lead_exp < low:
                raise ValueError("division is not exact")
            q, r = divmod(rem[e], lead_coeff)
            if r:
                raise ValueError("division is not exact")
            out[e - lead_exp] = q
            for de, dk in div:
                ne = e - lead_exp + de
                rem[ne] = rem.get(ne, 0) - q * dk
                if not rem[ne]:
                    del rem[ne]
        return LaurentPoly(out)

    def to_str(self, var: str = "A") -> str:
        """Render as sorted terms, e.g. ``-A^2 - A^-2``."""
        if not self._c:
            return "0"
        parts: list[tuple[str, str]] = []
        for exp, coeff in self.items():
            sign = "-" if coeff < 0 else "+"
            mag = abs(coeff)
            if exp == 0:
                body = str(mag)
            else:
                head = "" if mag == 1 else f"{mag}*"
                power = var if exp == 1 else f"{var}^{exp}"
                body = head + power
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"LaurentPoly({dict(sorted(self._c.items()))!r})"


#: The bracket loop value -A^2 - A^-2, as a polynomial in A.
LOOP_VALUE = LaurentPoly({2: -1, -2: -1})
