"""Exact Laurent polynomials over the integers.

Sparse representation: a map from exponent vectors to nonzero integer
coefficients.  Internally an exponent vector is packed into a single int
(32-bit biased field per variable) so that monomial multiplication is a
single integer addition and term ordering is an integer comparison.  The
packed order is lexicographic from the last variable, which is a valid
monomial order; everything user-visible (rendering, digests, `items`)
uses plain lexicographic order on exponent tuples instead.
"""

from __future__ import annotations

import hashlib
import re
from typing import Iterable, Iterator, Mapping, Sequence

_FIELD = 32
_BIAS = 1 << (_FIELD - 1)
_MASK = (1 << _FIELD) - 1
_LIMIT = _BIAS - 1  # |exponent| bound; far beyond anything desk-scale


class InexactDivision(ArithmeticError):
    """Quotient would not be a Laurent polynomial with integer coefficients."""


def _zero_key(m: int) -> int:
    z = 0
    for i in range(m):
        z |= _BIAS << (_FIELD * i)
    return z


def _pack(exps: Sequence[int], zero: int) -> int:
    key = zero
    for i, e in enumerate(exps):
        if not -_LIMIT <= e <= _LIMIT:
            raise OverflowError(f"exponent {e} out of range")
        key += e << (_FIELD * i)
    return key


def _unpack(key: int, m: int) -> tuple[int, ...]:
    return tuple(((key >> (_FIELD * i)) & _MASK) - _BIAS for i in range(m))


class LaurentPoly:
    """Immutable Laurent polynomial in variables x1..xm with int coefficients."""

    __slots__ = ("m", "_zero", "_terms", "_items", "_digest", "_hash")

    def __init__(self, m: int, terms: Mapping[Sequence[int], int] | None = None):
        if m < 0:
            raise ValueError("need m >= 0")
        self.m = m
        self._zero = _zero_key(m)
        packed: dict[int, int] = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != m:
                    raise ValueError(f"exponent vector {exps!r} has wrong length")
                if c:
                    k = _pack(exps, self._zero)
                    nc = packed.get(k, 0) + c
                    if nc:
                        packed[k] = nc
                    else:
                        del packed[k]
        self._terms = packed
        self._items: tuple[tuple[tuple[int, ...], int], ...] | None = None
        self._digest: str | None = None
        self._hash: int | None = None

    # -- construction helpers -------------------------------------------------

    @classmethod
    def _raw(cls, m: int, packed: dict[int, int]) -> "LaurentPoly":
        p = cls.__new__(cls)
        p.m = m
        p._zero = _zero_key(m)
        p._terms = packed
        p._items = None
        p._digest = None
        p._hash = None
        return p

    @classmethod
    def zero(cls, m: int) -> "LaurentPoly":
        return cls(m)

    @classmethod
    def constant(cls, m: int, c: int) -> "LaurentPoly":
        return cls(m, {(0,) * m: c})

    @classmethod
    def one(cls, m: int) -> "LaurentPoly":
        return cls.constant(m, 1)

    @classmethod
    def gen(cls, m: int, i: int) -> "LaurentPoly":
        """The variable x_{i+1} (0-based index i)."""
        if not 0 <= i < m:
            raise ValueError(f"variable index {i} out of range")
        exps = [0] * m
        exps[i] = 1
        return cls(m, {tuple(exps): 1})

    @classmethod
    def monomial(cls, m: int, exps: Sequence[int], c: int = 1) -> "LaurentPoly":
        return cls(m, {tuple(exps): c})

    @classmethod
    def gens(cls, m: int) -> tuple["LaurentPoly", ...]:
        return tuple(cls.gen(m, i) for i in range(m))

    # -- inspection -----------------------------------------------------------

    def items(self) -> tuple[tuple[tuple[int, ...], int], ...]:
        """Terms as (exponent tuple, coefficient), lexicographically sorted."""
        if self._items is None:
            m = self.m
            self._items = tuple(
                sorted((_unpack(k, m), c) for k, c in self._terms.items())
            )
        return self._items

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {self._zero: 1}

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_unit_monomial(self) -> bool:
        if len(self._terms) != 1:
            return False
        return abs(next(iter(self._terms.values()))) == 1

    def constant_term(self) -> int:
        return self._terms.get(self._zero, 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.m == other.m and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.m, self.items()))
        return self._hash

    @property
    def digest(self) -> str:
        """Stable hex digest of the canonical term list."""
        if self._digest is None:
            h = hashlib.sha256()
            h.update(b"L%d" % self.m)
            for exps, c in self.items():
                h.update(repr(exps).encode())
                h.update(b":%d;" % c)
            self._digest = h.hexdigest()
        return self._digest

    # -- arithmetic -----------------------------------------------------------

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.m, {k: -c for k, c in self._terms.items()})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_compatible(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            nc = out.get(k, 0) + c
            if nc:
                out[k] = nc
            else:
                del out[k]
        return LaurentPoly._raw(self.m, out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_compatible(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            nc = out.get(k, 0) - c
            if nc:
                out[k] = nc
            else:
                del out[k]
        return LaurentPoly._raw(self.m, out)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_compatible(other)
        a, b = self._terms, other._terms
        if len(a) > len(b):
            a, b = b, a
        zero = self._zero
        out: dict[int, int] = {}
        get = out.get
        for k1, c1 in a.items():
            k1z = k1 - zero
            for k2, c2 in b.items():
                k = k1z + k2
                nc = get(k, 0) + c1 * c2
                if nc:
                    out[k] = nc
                else:
                    del out[k]
        return LaurentPoly._raw(self.m, out)

    def __pow__(self, e: int) -> "LaurentPoly":
        if e < 0:
            if self.is_unit_monomial():
                k = next(iter(self._terms))
                c = self._terms[k]
                inv_key = 2 * self._zero - k
                return LaurentPoly._raw(self.m, {inv_key: c}) ** (-e)
            raise ValueError("negative power of a non-unit Laurent polynomial")
        if e == 0:
            return LaurentPoly.one(self.m)
        if self.is_monomial():
            k = next(iter(self._terms))
            c = self._terms[k]
            return LaurentPoly._raw(self.m, {self._zero + (k - self._zero) * e: c**e})
        base = self
        result = None
        while True:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if not e:
                return result  # type: ignore[return-value]
            base = base * base

    def _check_compatible(self, other: "LaurentPoly") -> None:
        if self.m != other.m:
            raise ValueError(f"mixed ambient rings: {self.m} vs {other.m} variables")

    def _valuation_key(self) -> int:
        """Packed componentwise-minimum exponent vector over all terms."""
        m = self.m
        mins = [min(((k >> (_FIELD * i)) & _MASK) for k in self._terms) for i in range(m)]
        key = 0
        for i, v in enumerate(mins):
            key |= v << (_FIELD * i)
        return key

    def exact_div(self, d: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient self/d; raises InexactDivision if it does not exist.

        Both arguments are shifted by their per-variable valuations to honest
        polynomials, then divided by leading-term elimination.  A nonzero
        remainder (detected as a non-divisible leading term) is inexact.
        """
        self._check_compatible(d)
        if d.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return self
        zero = self._zero
        if len(d._terms) == 1:
            dk = next(iter(d._terms))
            dc = d._terms[dk]
            out: dict[int, int] = {}
            for k, c in self._terms.items():
                if c % dc:
                    raise InexactDivision("coefficient not divisible")
                out[k - dk + zero] = c // dc
            return LaurentPoly._raw(self.m, out)

        m = self.m
        vp = self._valuation_key()
        vd = d._valuation_key()
        # honest polynomials: all packed fields >= _BIAS
        shift_p = zero - vp
        shift_d = zero - vd
        P = {k + shift_p: c for k, c in self._terms.items()}
        D = [(k + shift_d, c) for k, c in d._terms.items()]
        lt_dk = max(k for k, _ in D)
        lt_dc = d._terms[lt_dk - shift_d]
        D = [(k, c) for k, c in D if k != lt_dk]
        Q: dict[int, int] = {}
        while P:
            k = max(P)
            c = P.pop(k)
            qk = k - lt_dk + zero
            for i in range(m):
                if ((qk >> (_FIELD * i)) & _MASK) < _BIAS:
                    raise InexactDivision("monomial not divisible")
            if c % lt_dc:
                raise InexactDivision("coefficient not divisible")
            qc = c // lt_dc
            Q[qk] = qc
            qkz = qk - zero
            for dk, dc in D:
                kk = qkz + dk
                nc = P.get(kk, 0) - qc * dc
                if nc:
                    P[kk] = nc
                else:
                    P.pop(kk, None)
        # undo valuation shifts: quotient exponents differ by v(p) - v(d)
        back = vp - vd
        return LaurentPoly._raw(m, {k + back: c for k, c in Q.items()})

    def substitute(self, images: Sequence["LaurentPoly"]) -> "LaurentPoly":
        """Apply the ring map x_i -> images[i].

        Negative exponents are handled with a common denominator, so the
        result is exact whenever the total image is a Laurent polynomial;
        otherwise InexactDivision is raised.
        """
        if len(images) != self.m:
            raise ValueError(f"need {self.m} images, got {len(images)}")
        if self.m == 0:
            return self
        mt = images[0].m
        for img in images:
            if img.m != mt:
                raise ValueError("images live in different rings")
            if img.is_zero():
                raise ValueError("cannot substitute zero for a variable")
        items = self.items()
        if not items:
            return LaurentPoly.zero(mt)
        shifts = [max(0, -min(exps[i] for exps, _ in items)) for i in range(self.m)]
        # cache image powers; exponents after shifting are all >= 0
        powers: list[dict[int, LaurentPoly]] = [{} for _ in range(self.m)]

        def img_pow(i: int, e: int) -> LaurentPoly:
            p = powers[i].get(e)
            if p is None:
                p = images[i] ** e
                powers[i][e] = p
            return p

        num = LaurentPoly.zero(mt)
        for exps, c in items:
            term = LaurentPoly.constant(mt, c)
            for i, e in enumerate(exps):
                ee = e + shifts[i]
                if ee:
                    term = term * img_pow(i, ee)
            num = num + term
        den = LaurentPoly.one(mt)
        for i, s in enumerate(shifts):
            if s:
                den = den * img_pow(i, s)
        if den.is_one():
            return num
        return num.exact_div(den)

    def evaluate(self, values: Sequence[int], mod: int | None = None) -> int:
        """Evaluate at integer point; with `mod`, in Z/mod (inverses required)."""
        if len(values) != self.m:
            raise ValueError(f"need {self.m} values, got {len(values)}")
        total = 0
        for exps, c in self.items():
            v = c
            for x, e in zip(values, exps):
                if e == 0:
                    continue
                if mod is not None:
                    v = v * pow(x, e, mod) % mod
                else:
                    if e < 0:
                        raise ValueError("negative exponent in exact evaluation")
                    v *= x**e
            total = (total + v) % mod if mod is not None else total + v
        return total

    # -- text form ------------------------------------------------------------

    def render(self) -> str:
        items = self.items()
        if not items:
            return "0"
        parts: list[str] = []
        for exps, c in items:
            factors = [
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}"
                for i, e in enumerate(exps)
                if e
            ]
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(c))] + factors)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    __str__ = render

    def __repr__(self) -> str:
        return f"LaurentPoly({self.m}, {self.render()!r})"

    _TERM_RE = re.compile(r"^(?:(\d+)\*?)?((?:x\d+(?:\^-?\d+)?(?:\*x\d+(?:\^-?\d+)?)*))?$")

    @classmethod
    def parse(cls, text: str, m: int) -> "LaurentPoly":
        """Inverse of render; accepts e.g. 'x1^-1*x2 + 2' or '-3*x1 - x2^2'."""
        s = text.strip()
        if not s:
            raise ValueError("empty Laurent polynomial text")
        # split into signed chunks; +/- separates terms unless it follows ^
        raw: list[str] = []
        buf: list[str] = []
        prev = ""
        for ch in s:
            if ch.isspace():
                continue
            if ch in "+-" and buf and prev not in "^*+-":
                raw.append("".join(buf))
                buf = [ch]
            else:
                buf.append(ch)
            prev = ch
        raw.append("".join(buf))
        terms: dict[tuple[int, ...], int] = {}
        for chunk in raw:
            sgn = 1
            body = chunk
            if body and body[0] in "+-":
                sgn = -1 if body[0] == "-" else 1
                body = body[1:]
            if not body or body[0] in "+-":
                raise ValueError(f"dangling sign in {text!r}")
            mobj = cls._TERM_RE.match(body)
            if not mobj or (mobj.group(1) is None and not mobj.group(2)):
                raise ValueError(f"bad term {body!r} in {text!r}")
            coeff = int(mobj.group(1)) if mobj.group(1) else 1
            exps = [0] * m
            if mobj.group(2):
                for factor in mobj.group(2).split("*"):
                    if "^" in factor:
                        var, _, epart = factor.partition("^")
                        e = int(epart)
                    else:
                        var, e = factor, 1
                    idx = int(var[1:]) - 1
                    if not 0 <= idx < m:
                        raise ValueError(f"variable {factor!r} out of range for m={m}")
                    exps[idx] += e
            key = tuple(exps)
            terms[key] = terms.get(key, 0) + sgn * coeff
        return cls(m, terms)


def parse(text: str, m: int) -> LaurentPoly:
    return LaurentPoly.parse(text, m)
