"""Parameter families (q_i, s_ij, t_ij) realised as unit monomials in a ring.

A ParameterSet fixes the coefficient ring and gives every generator scalar
needed by the relation builders: the deformation parameters q_i, the twist
bicharacter parameters s_ij and t_ij, and (when present) the single base
parameter v with q_i = v^{d_i}.  Specialised parameter sets use the exact
same interface, so the verification campaigns run unchanged over any of
them.
"""

from __future__ import annotations

from .coeffring import Context, LaurentPoly, RatExpr, qfact, qint_signed
from .rootdata import CartanDatum, RootDatum, Weight


class ParameterSet:
    """The ring plus the values of q_i, s_ij, t_ij (all unit monomials)."""

    def __init__(self, cartan: CartanDatum, ctx: Context, q, s, t, v=None, label: str = ""):
        self.cartan = cartan
        self.ctx = ctx
        self._q = list(q)
        self._s = [list(row) for row in s]
        self._t = [list(row) for row in t]
        self._v = v
        self.label = label

    # -- accessors -------------------------------------------------------

    def q(self, i: int) -> LaurentPoly:
        return self._q[i]

    def s(self, i: int, j: int) -> LaurentPoly:
        return self._s[i][j]

    def t(self, i: int, j: int) -> LaurentPoly:
        return self._t[i][j]

    def v(self) -> LaurentPoly:
        if self._v is None:
            raise ValueError("parameter set %r has no base parameter v" % self.label)
        return self._v

    def has_v(self) -> bool:
        return self._v is not None

    def vi(self, i: int) -> LaurentPoly:
        return self.v() ** self.cartan.d(i)

    def one(self) -> RatExpr:
        return self.ctx.rat(1)

    def rat(self, x) -> RatExpr:
        return self.ctx.rat(x)

    # -- q-combinatorics in the i-th deformation parameter ----------------

    def qint_q(self, n: int, i: int) -> LaurentPoly:
        return qint_signed(n, self.q(i))

    def qfact_q(self, n: int, i: int) -> LaurentPoly:
        return qfact(n, self.q(i))

    def qint_v(self, n: int, i: int) -> LaurentPoly:
        return qint_signed(n, self.vi(i))

    def qfact_v(self, n: int, i: int) -> LaurentPoly:
        return qfact(n, self.vi(i))

    def q_tied_to_v(self) -> bool:
        """True when q_i = v^{d_i} holds structurally for every i."""
        if self._v is None:
            return False
        return all(self.q(i) == self.vi(i) for i in self.cartan.index_set)

    # -- factories ----------------------------------------------------------

    @classmethod
    def generic(cls, cartan: CartanDatum, label: str = "generic") -> "ParameterSet":
        """All of q_i, s_ij, t_ij free; q_i admits 2 d_i-th roots."""
        ctx = Context(label)
        n = cartan.n
        q = [ctx.laurent("q%d" % (i + 1), denom=2 * cartan.d(i)).as_poly() for i in range(n)]
        s = [[None] * n for _ in range(n)]
        t = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                s[i][j] = ctx.laurent("s%d%d" % (i + 1, j + 1), denom=2).as_poly()
        for i in range(n):
            for j in range(n):
                t[i][j] = ctx.laurent("t%d%d" % (i + 1, j + 1), denom=2).as_poly()
        return cls(cartan, ctx, q, s, t, v=None, label=label)

    @classmethod
    def v_tied(cls, cartan: CartanDatum, label: str = "v-tied") -> "ParameterSet":
        """s, t free; every q_i tied to one base parameter by q_i = v^{d_i}."""
        ctx = Context(label)
        n = cartan.n
        v = ctx.laurent("v", denom=2).as_poly()
        s = [[None] * n for _ in range(n)]
        t = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                s[i][j] = ctx.laurent("s%d%d" % (i + 1, j + 1), denom=2).as_poly()
        for i in range(n):
            for j in range(n):
                t[i][j] = ctx.laurent("t%d%d" % (i + 1, j + 1), denom=2).as_poly()
        q = [v ** cartan.d(i) for i in range(n)]
        return cls(cartan, ctx, q, s, t, v=v, label=label)

    @classmethod
    def one_param(cls, cartan: CartanDatum, label: str = "one-param") -> "ParameterSet":
        """The untwisted degeneration: single v, q_i = v^{d_i}, s = t = 1."""
        ctx = Context(label)
        n = cartan.n
        v = ctx.laurent("v", denom=2).as_poly()
        one = ctx.one
        q = [v ** cartan.d(i) for i in range(n)]
        s = [[one] * n for _ in range(n)]
        t = [[one] * n for _ in range(n)]
        return cls(cartan, ctx, q, s, t, v=v, label=label)


# -- weight-indexed rescaling scalars -----------------------------------------


def twist_e(rd: RootDatum, params: ParameterSet, i: int, lam: Weight) -> LaurentPoly:
    """prod_j s_ij^{lam(j)}."""
    out = params.ctx.one
    for j in rd.index_set:
        k = rd.lambda_paren(lam, j)
        if k:
            out = out * params.s(i, j) ** k
    return out


def twist_f(rd: RootDatum, params: ParameterSet, i: int, lam: Weight) -> LaurentPoly:
    """prod_j t_ij^{lam(j)}."""
    out = params.ctx.one
    for j in rd.index_set:
        k = rd.lambda_paren(lam, j)
        if k:
            out = out * params.t(i, j) ** k
    return out


def twist_c(rd: RootDatum, params: ParameterSet, i: int, lam: Weight) -> LaurentPoly:
    """prod_j (s_ij t_ij)^{-lam(j)}; the K-eigenvalue correction."""
    out = params.ctx.one
    for j in rd.index_set:
        k = rd.lambda_paren(lam, j)
        if k:
            out = out * (params.s(i, j) * params.t(i, j)) ** (-k)
    return out
