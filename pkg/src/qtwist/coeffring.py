"""Exact arithmetic for multivariate Laurent rings and their fraction fields.

A Context registers variables in declaration order, which fixes the
canonical term order once and for all.  Two kinds of variables exist:

  * Laurent variables, with exact rational exponents whose denominators are
    bounded per variable (declared at creation, e.g. denom=2 admits square
    roots of that variable);
  * sign variables, satisfying x**2 == 1, whose exponents live mod 2.

Coefficients are exact rationals.  Polynomials are canonical by
construction (no zero coefficients, sorted structural monomials), so
equality is structural and zero tests are decidable.

Fractions (RatExpr) are pairs of polynomials.  They are never reduced by a
multivariate gcd; equality is decided by cross multiplication.  Every
denominator produced by this package is free of sign variables, which keeps
it a regular element even when sign variables are present.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Optional, Union

Scalar = Union[int, Fraction]

LAURENT = "laurent"
SIGN = "sign"


class RingError(Exception):
    """Invalid ring operation: context mixing, bad exponent, bad image."""


class NotDivisible(RingError):
    """An exact polynomial division left a remainder."""


class Var:
    """A declared ring variable.  Identity is per-context."""

    __slots__ = ("ctx", "index", "name", "kind", "denom")

    def __init__(self, ctx, index, name, kind, denom):
        self.ctx = ctx
        self.index = index
        self.name = name
        self.kind = kind
        self.denom = denom

    def __repr__(self):
        return self.name

    def as_poly(self) -> "LaurentPoly":
        return self.ctx.monomial({self: 1})

    def inv(self) -> "LaurentPoly":
        return self.ctx.monomial({self: -1})

    def __pow__(self, e) -> "LaurentPoly":
        return self.ctx.monomial({self: e})

    def __mul__(self, other):
        return self.as_poly() * other

    __rmul__ = __mul__

    def __add__(self, other):
        return self.as_poly() + other

    __radd__ = __add__

    def __sub__(self, other):
        return self.as_poly() - other

    def __rsub__(self, other):
        return (-self.as_poly()) + other

    def __neg__(self):
        return -self.as_poly()


# A monomial is a sorted tuple of (var_index, scaled_exponent) pairs with no
# zero entries.  The scaled exponent of a Laurent variable is exponent*denom
# (an integer); sign variables store the exponent mod 2.
Mono = tuple


class Context:
    """Registry of variables; the declaration order is the canonical order."""

    def __init__(self, name: str = ""):
        self.name = name
        self.vars: list[Var] = []
        self._by_name: dict[str, Var] = {}
        self._qint_cache: dict = {}
        self._qfact_cache: dict = {}
        self.one = LaurentPoly(self, {(): Fraction(1)})
        self.zero = LaurentPoly(self, {})

    def _declare(self, name: str, kind: str, denom: int) -> Var:
        if name in self._by_name:
            raise RingError("variable %r already declared" % name)
        v = Var(self, len(self.vars), name, kind, denom)
        self.vars.append(v)
        self._by_name[name] = v
        return v

    def laurent(self, name: str, denom: int = 1) -> Var:
        if denom < 1:
            raise RingError("denominator bound must be >= 1")
        return self._declare(name, LAURENT, denom)

    def sign(self, name: str) -> Var:
        return self._declare(name, SIGN, 1)

    def __getitem__(self, name: str) -> Var:
        return self._by_name[name]

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def poly(self, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            if x.ctx is not self:
                raise RingError("value from a different ring context")
            return x
        if isinstance(x, Var):
            return x.as_poly()
        c = Fraction(x)
        if c == 0:
            return self.zero
        return LaurentPoly(self, {(): c})

    def rat(self, x) -> "RatExpr":
        if isinstance(x, RatExpr):
            if x.num.ctx is not self:
                raise RingError("value from a different ring context")
            return x
        return RatExpr(self.poly(x), self.one)

    def monomial(self, exps: Mapping[Var, Scalar], coeff: Scalar = 1) -> "LaurentPoly":
        c = Fraction(coeff)
        if c == 0:
            return self.zero
        pairs = []
        for var, e in exps.items():
            if var.ctx is not self:
                raise RingError("variable %r from a different context" % var.name)
            s = self._scale(var, e)
            if s != 0:
                pairs.append((var.index, s))
        pairs.sort()
        return LaurentPoly(self, {tuple(pairs): c})

    def _scale(self, var: Var, e) -> int:
        e = Fraction(e)
        if var.kind == SIGN:
            if e.denominator != 1:
                raise RingError("fractional exponent on sign variable %r" % var.name)
            return e.numerator % 2
        s = e * var.denom
        if s.denominator != 1:
            raise RingError(
                "exponent %s exceeds the declared denominator bound %d of %r"
                % (e, var.denom, var.name)
            )
        return s.numerator

    # -- monomial helpers (scaled-exponent tuples) --------------------------

    def mono_mul(self, a: Mono, b: Mono) -> Mono:
        if not a:
            return b
        if not b:
            return a
        acc = dict(a)
        for idx, s in b:
            cur = acc.get(idx, 0) + s
            if self.vars[idx].kind == SIGN:
                cur %= 2
            if cur == 0:
                acc.pop(idx, None)
            else:
                acc[idx] = cur
        return tuple(sorted(acc.items()))

    def mono_pow(self, m: Mono, k) -> Mono:
        k = Fraction(k)
        pairs = []
        for idx, s in m:
            var = self.vars[idx]
            if var.kind == SIGN:
                ns = s * k
                if ns.denominator != 1:
                    raise RingError("fractional power of sign variable %r" % var.name)
                ns = ns.numerator % 2
            else:
                ns = s * k
                if ns.denominator != 1:
                    raise RingError(
                        "power %s takes %r outside its declared denominator bound"
                        % (k, var.name)
                    )
                ns = ns.numerator
            if ns != 0:
                pairs.append((idx, ns))
        return tuple(pairs)

    def mono_key(self, m: Mono):
        # Dense exponent vector in declaration order; lex comparison on it is
        # the canonical term order.
        key = [0] * len(self.vars)
        for idx, s in m:
            key[idx] = s
        return tuple(key)

    def mono_str(self, m: Mono) -> str:
        if not m:
            return "1"
        parts = []
        for idx, s in m:
            var = self.vars[idx]
            e = Fraction(s, var.denom) if var.kind == LAURENT else Fraction(s)
            if e == 1:
                parts.append(var.name)
            elif e.denominator == 1:
                parts.append("%s^%d" % (var.name, e.numerator))
            else:
                parts.append("%s^(%s)" % (var.name, e))
        return "*".join(parts)


class LaurentPoly:
    """Sparse Laurent polynomial with exact rational coefficients."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: Context, terms: dict):
        self.ctx = ctx
        self.terms = terms  # Mono -> Fraction, canonical, treated immutable

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(): Fraction(1)}

    def unit_mono(self) -> Optional[tuple]:
        """Return (coeff, mono) when this is a single-term (hence invertible) poly."""
        if len(self.terms) != 1:
            return None
        ((m, c),) = self.terms.items()
        return (c, m)

    def has_sign_vars(self) -> bool:
        vs = self.ctx.vars
        return any(vs[idx].kind == SIGN for m in self.terms for idx, _ in m)

    # -- arithmetic ------------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, Var):
            other = other.as_poly()
        if isinstance(other, LaurentPoly):
            if other.ctx is not self.ctx:
                raise RingError("mixing ring contexts")
            return other
        return self.ctx.poly(other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            nc = terms.get(m, 0) + c
            if nc == 0:
                terms.pop(m, None)
            else:
                terms[m] = nc
        return LaurentPoly(self.ctx, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.ctx, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RatExpr):
            return NotImplemented
        other = self._coerce(other)
        ctx = self.ctx
        mono_mul = ctx.mono_mul
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                nc = terms.get(m, 0) + c1 * c2
                if nc == 0:
                    terms.pop(m, None)
                else:
                    terms[m] = nc
        return LaurentPoly(ctx, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if isinstance(n, Fraction) and n.denominator != 1:
            return self.unit_pow(n)
        n = int(n)
        if n < 0:
            return self.inv_unit() ** (-n)
        result = self.ctx.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def inv_unit(self) -> "LaurentPoly":
        u = self.unit_mono()
        if u is None:
            raise RingError("not an invertible monomial: %s" % self)
        c, m = u
        inv = tuple(
            (idx, s if self.ctx.vars[idx].kind == SIGN else -s) for idx, s in m
        )
        return LaurentPoly(self.ctx, {tuple(sorted(inv)): 1 / c})

    def unit_pow(self, e) -> "LaurentPoly":
        """Raise a unit monomial to an exact rational power."""
        u = self.unit_mono()
        if u is None:
            raise RingError("fractional power of a non-monomial: %s" % self)
        c, m = u
        e = Fraction(e)
        if c == 1:
            nc = Fraction(1)
        elif e.denominator == 1:
            nc = c**e.numerator
        else:
            raise RingError("fractional power of coefficient %s" % c)
        return LaurentPoly(self.ctx, {self.ctx.mono_pow(m, e): nc})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.poly(other)
        if isinstance(other, Var):
            other = other.as_poly()
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.ctx is other.ctx and self.terms == other.terms

    __hash__ = None  # mutable dict inside; not meant to be a key

    # -- structure -------------------------------------------------------------

    def sorted_terms(self):
        key = self.ctx.mono_key
        return sorted(self.terms.items(), key=lambda mc: key(mc[0]), reverse=True)

    def leading(self):
        key = self.ctx.mono_key
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def coefficient_sum(self) -> Fraction:
        """Value at the all-ones point (every variable set to 1)."""
        return sum(self.terms.values(), Fraction(0))

    def _laurent_shift(self) -> Mono:
        """Per-variable minimum exponents across all terms (Laurent vars only)."""
        mins: Optional[dict] = None
        for m in self.terms:
            seen = {idx: s for idx, s in m if self.ctx.vars[idx].kind == LAURENT}
            if mins is None:
                mins = seen
            else:
                for idx in set(mins) | set(seen):
                    mins[idx] = min(mins.get(idx, 0), seen.get(idx, 0))
        if mins is None:
            return ()
        return tuple(sorted((i, s) for i, s in mins.items() if s != 0))

    def exact_div(self, other) -> "LaurentPoly":
        """Exact division; raises NotDivisible when a remainder is left.

        The divisor is shifted to an honest polynomial and eliminated by
        leading-term reduction in the canonical lex order, which terminates
        because honest-polynomial monomials are well ordered.  Unit-monomial
        divisors are inverted directly.  Non-unit divisors containing sign
        variables are rejected: with x**2 == 1 the ring has zero divisors and
        plain reduction is not meaningful there.
        """
        other = self._coerce(other)
        ctx = self.ctx
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return ctx.zero
        u = other.unit_mono()
        if u is not None:
            return self * other.inv_unit()
        if other.has_sign_vars():
            raise RingError("exact division by a non-unit with sign variables")
        sa = self._laurent_shift()
        sb = other._laurent_shift()
        a = self * LaurentPoly(ctx, {ctx.mono_pow(sa, -1): Fraction(1)})
        b = other * LaurentPoly(ctx, {ctx.mono_pow(sb, -1): Fraction(1)})
        lt_b, lc_b = b.leading()
        lt_b = dict(lt_b)
        quot: dict = {}
        f = dict(a.terms)
        key = ctx.mono_key
        while f:
            ltf = max(f, key=key)
            t_pairs = dict(ltf)
            ok = True
            for idx, s in lt_b.items():
                ns = t_pairs.get(idx, 0) - s
                if ns < 0:
                    ok = False
                    break
                if ns == 0:
                    t_pairs.pop(idx, None)
                else:
                    t_pairs[idx] = ns
            if not ok or any(s < 0 for s in t_pairs.values()):
                raise NotDivisible("%s is not divisible by %s" % (self, other))
            t = tuple(sorted(t_pairs.items()))
            c = f[ltf] / lc_b
            quot[t] = quot.get(t, 0) + c
            for m2, c2 in b.terms.items():
                m = ctx.mono_mul(t, m2)
                nc = f.get(m, 0) - c * c2
                if nc == 0:
                    f.pop(m, None)
                else:
                    f[m] = nc
        shift = ctx.mono_mul(sa, ctx.mono_pow(sb, -1))
        q = LaurentPoly(ctx, {m: c for m, c in quot.items() if c != 0})
        return q * LaurentPoly(ctx, {shift: Fraction(1)})

    # -- substitution ------------------------------------------------------------

    def subs(self, images: Mapping[Var, "LaurentPoly"], ctx_out: Context) -> "LaurentPoly":
        """Apply a substitution sending each variable to a signed unit monomial.

        The map must be total on the variables that occur; images must be
        single-term (invertible) polynomials in the target context.
        """
        out = ctx_out.zero
        for m, c in self.terms.items():
            acc = ctx_out.poly(c)
            for idx, s in m:
                var = self.ctx.vars[idx]
                if var not in images:
                    raise RingError("unbound variable %r in substitution" % var.name)
                img = images[var]
                if img.ctx is not ctx_out:
                    raise RingError("image of %r lives in the wrong context" % var.name)
                if img.unit_mono() is None:
                    raise RingError("image of %r is not an invertible monomial" % var.name)
                e = Fraction(s, var.denom) if var.kind == LAURENT else Fraction(s)
                acc = acc * img.unit_pow(e)
            out = out + acc
        return out

    # -- display -------------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            ms = self.ctx.mono_str(m)
            if ms == "1":
                body = str(c)
            elif c == 1:
                body = ms
            elif c == -1:
                body = "-" + ms
            else:
                body = "%s*%s" % (c, ms)
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    __repr__ = __str__


class RatExpr:
    """Fraction of Laurent polynomials; equality by cross multiplication.

    Unit-monomial denominators are absorbed into the numerator on
    construction, and general denominators are normalised to have leading
    coefficient 1 and no monomial content.  No gcd reduction is attempted.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.ctx is not den.ctx:
            raise RingError("mixing ring contexts")
        ctx = num.ctx
        if num.is_zero():
            num, den = ctx.zero, ctx.one
        elif not den.is_one():
            u = den.unit_mono()
            if u is not None:
                num = num * den.inv_unit()
                den = ctx.one
            else:
                shift = den._laurent_shift()
                if shift:
                    m = LaurentPoly(ctx, {ctx.mono_pow(shift, -1): Fraction(1)})
                    num = num * m
                    den = den * m
                _, lc = den.leading()
                if lc != 1:
                    num = num * (1 / lc)
                    den = den * (1 / lc)
        self.num = num
        self.den = den

    @property
    def ctx(self) -> Context:
        return self.num.ctx

    def _coerce(self, other) -> "RatExpr":
        if isinstance(other, RatExpr):
            if other.ctx is not self.ctx:
                raise RingError("mixing ring contexts")
            return other
        return RatExpr(self.ctx.poly(other), self.ctx.one)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.is_one()

    def unit_mono(self):
        """Unit-monomial content, cancelling the denominator exactly when possible."""
        if self.den.is_one():
            return self.num.unit_mono()
        try:
            return self.num.exact_div(self.den).unit_mono()
        except (RingError, NotDivisible):
            return None

    def simplified(self) -> "RatExpr":
        """Cancel the denominator when the division happens to be exact."""
        if self.den.is_one():
            return self
        try:
            return RatExpr(self.num.exact_div(self.den), self.ctx.one)
        except (RingError, NotDivisible):
            return self

    def __add__(self, other):
        other = self._coerce(other)
        if self.den == other.den:
            return RatExpr(self.num + other.num, self.den)
        return RatExpr(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatExpr(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        return RatExpr(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inv(self) -> "RatExpr":
        if self.is_zero():
            raise ZeroDivisionError("inverting zero")
        return RatExpr(self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inv()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inv()

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            return self.inv() ** (-n)
        out = RatExpr(self.ctx.one, self.ctx.one)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly, Var)):
            other = self._coerce(other)
        if not isinstance(other, RatExpr):
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def subs(self, images, ctx_out: Context) -> "RatExpr":
        return RatExpr(self.num.subs(images, ctx_out), self.den.subs(images, ctx_out))

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return "(%s) / (%s)" % (self.num, self.den)

    __repr__ = __str__


# -- q-combinatorics -----------------------------------------------------------


def _unit_key(q: LaurentPoly):
    u = q.unit_mono()
    if u is None:
        raise RingError("q must be an invertible monomial, got %s" % q)
    return u


def qint(n: int, q: LaurentPoly) -> LaurentPoly:
    """Balanced q-integer [n] = q^(n-1) + q^(n-3) + ... + q^(1-n)."""
    if n < 0:
        raise ValueError("qint requires n >= 0")
    key = ("qint", _unit_key(q), n)
    cache = q.ctx._qint_cache
    if key not in cache:
        out = q.ctx.zero
        for k in range(n):
            out = out + q ** (n - 1 - 2 * k)
        cache[key] = out
    return cache[key]


def qint_signed(n: int, q: LaurentPoly) -> LaurentPoly:
    """q-integer extended to negative n by [-n] = -[n]."""
    if n >= 0:
        return qint(n, q)
    return -qint(-n, q)


def qfact(n: int, q: LaurentPoly) -> LaurentPoly:
    """q-factorial [n]! = [1][2]...[n]."""
    if n < 0:
        raise ValueError("qfact requires n >= 0")
    key = ("qfact", _unit_key(q), n)
    cache = q.ctx._qfact_cache
    if key not in cache:
        out = q.ctx.one
        for p in range(1, n + 1):
            out = out * qint(p, q)
        cache[key] = out
    return cache[key]


def qbinom(n: int, p: int, q: LaurentPoly) -> LaurentPoly:
    """Gaussian binomial [n]! / ([p]![n-p]!): the division is exact."""
    if not 0 <= p <= n:
        raise ValueError("qbinom requires 0 <= p <= n")
    return qfact(n, q).exact_div(qfact(p, q) * qfact(n - p, q))


def gauss_vanish(n: int, q: LaurentPoly) -> LaurentPoly:
    """Alternating Gaussian-binomial sum; identically zero for every n >= 1."""
    if n < 1:
        raise ValueError("gauss_vanish requires n >= 1")
    out = q.ctx.zero
    for l in range(n + 1):
        term = q ** (l * (1 - n)) * qbinom(n, l, q)
        out = out + term if l % 2 == 0 else out - term
    return out


def substitute(x, images: Mapping[Var, LaurentPoly], ctx_out: Context):
    """Ring homomorphism determined by variable -> signed unit monomial."""
    if isinstance(x, RatExpr):
        return x.subs(images, ctx_out)
    return x.subs(images, ctx_out)
