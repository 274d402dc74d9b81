"""Noncommutative graded words, K-straightening, and twisted tensor products.

Words are tuples of generator symbols; a symbol is a (kind, index) pair with
kind one of 'E', 'F', 'K', 'Kinv', 'Kp', 'Kpinv' ('Kp' is the second family
of invertible group-like generators).  An NCExpr is a finite linear
combination of words over the fraction field of the parameter ring.

Straightening moves every invertible K-type symbol to the front of a word,
collecting the commutation scalar of each hop, cancelling inverses, and
sorting the K-prefix canonically.  No rewriting beyond that is ever done:
the verification campaigns are arranged so K-straightening plus linear
algebra over the remaining free E/F-words decides every identity.

Tensor squares and cubes carry the bicharacter-twisted multiplication: the
product of pure tensors picks up s/t factors determined by the gradings of
the slots that move past each other.
"""

from __future__ import annotations

from .coeffring import RatExpr, RingError
from .params import ParameterSet

E_KIND = "E"
F_KIND = "F"
K_KINDS = ("K", "Kinv", "Kp", "Kpinv")
_KIND_RANK = {"K": 0, "Kinv": 1, "Kp": 2, "Kpinv": 3, "E": 4, "F": 5}


def gen(kind: str, i: int) -> tuple:
    if kind not in _KIND_RANK:
        raise ValueError("unknown generator kind %r" % kind)
    return (kind, i)


def word_key(word):
    return tuple((_KIND_RANK[k], i) for k, i in word)


def grade(word, n: int) -> tuple:
    """Degree in Z[I]: E_i counts +1 in slot i, F_i counts -1, K-types 0."""
    deg = [0] * n
    for kind, i in word:
        if kind == E_KIND:
            deg[i] += 1
        elif kind == F_KIND:
            deg[i] -= 1
    return tuple(deg)


def bichar(params: ParameterSet, family: str, mu, nu):
    """Bicharacter prod_{i,j} f_ij^{mu_i nu_j} for f one of the s/t families."""
    get = params.s if family == "s" else params.t
    out = params.ctx.one
    for i, mi in enumerate(mu):
        if not mi:
            continue
        for j, nj in enumerate(nu):
            if nj:
                out = out * get(i, j) ** (mi * nj)
    return out


class NCExpr:
    """Linear combination of free words with RatExpr coefficients."""

    __slots__ = ("params", "terms")

    def __init__(self, params: ParameterSet, terms: dict):
        self.params = params
        self.terms = terms  # word -> RatExpr, no zero coefficients

    @classmethod
    def zero(cls, params):
        return cls(params, {})

    @classmethod
    def unit(cls, params):
        return cls(params, {(): params.one()})

    @classmethod
    def word(cls, params, word, coeff=1):
        c = params.rat(coeff)
        if c.is_zero():
            return cls.zero(params)
        return cls(params, {tuple(word): c})

    def is_zero(self) -> bool:
        return not self.terms

    def _merge(self, terms, word, coeff):
        if word in terms:
            nc = terms[word] + coeff
            if nc.is_zero():
                del terms[word]
            else:
                terms[word] = nc
        elif not coeff.is_zero():
            terms[word] = coeff

    def __add__(self, other):
        terms = dict(self.terms)
        for w, c in other.terms.items():
            self._merge(terms, w, c)
        return NCExpr(self.params, terms)

    def __neg__(self):
        return NCExpr(self.params, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coeff) -> "NCExpr":
        c = self.params.rat(coeff)
        if c.is_zero():
            return NCExpr.zero(self.params)
        return NCExpr(self.params, {w: cc * c for w, cc in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, NCExpr):
            return self.scale(other)
        terms: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                self._merge(terms, w1 + w2, c1 * c2)
        return NCExpr(self.params, terms)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, NCExpr):
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[w] == other.terms[w] for w in self.terms)

    __hash__ = None

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda wc: word_key(wc[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            ws = "*".join("%s%d" % (k, i + 1) for k, i in w) if w else "1"
            parts.append("(%s)%s" % (c, "*" + ws if w else ""))
        return " + ".join(parts)

    __repr__ = __str__


class StraightenRules:
    """Commutation scalars for moving K-type symbols left across E/F symbols."""

    def __init__(self, rd, params: ParameterSet):
        self.rd = rd
        self.params = params
        self._cache: dict = {}

    def hop(self, k_kind: str, i: int, ef_kind: str, j: int):
        """Scalar acquired by rewriting (EF symbol)(K symbol) -> (K symbol)(EF symbol)."""
        key = (k_kind, i, ef_kind, j)
        if key not in self._cache:
            p = self.params
            a = self.rd.cartan.a(i, j)
            st = p.s(i, j) * p.t(i, j)
            eps = 1 if k_kind in ("K", "Kinv") else -1
            sgn = 1 if k_kind in ("K", "Kp") else -1
            if ef_kind == E_KIND:
                base = st * p.q(i) ** (-eps * a)
            else:
                base = st.inv_unit() * p.q(i) ** (eps * a)
            self._cache[key] = base if sgn == 1 else base.inv_unit()
        return self._cache[key]


def straighten(x: NCExpr, rules: StraightenRules) -> NCExpr:
    """Normal form: canonical K-monomial prefix times the untouched E/F word."""
    if rules.params is not x.params:
        raise RingError("straightening rules built for a different parameter set")
    params = x.params
    out: dict = {}
    for word, coeff in x.terms.items():
        scalar = params.ctx.one
        kexp: dict = {}  # (i, family 'K'/'Kp') -> exponent
        ef = []
        for kind, i in word:
            if kind in (E_KIND, F_KIND):
                ef.append((kind, i))
            else:
                fam = "K" if kind in ("K", "Kinv") else "Kp"
                sgn = 1 if kind in ("K", "Kp") else -1
                for ef_kind, j in ef:
                    h = rules.hop(kind, i, ef_kind, j)
                    scalar = scalar * h
                cur = kexp.get((i, fam), 0) + sgn
                if cur == 0:
                    kexp.pop((i, fam), None)
                else:
                    kexp[(i, fam)] = cur
        prefix = []
        for (i, fam), e in sorted(kexp.items()):
            kind = fam if e > 0 else (fam + "inv")
            prefix.extend([(kind, i)] * abs(e))
        nf = tuple(prefix) + tuple(ef)
        c = coeff * scalar
        if nf in out:
            nc = out[nf] + c
            if nc.is_zero():
                del out[nf]
            else:
                out[nf] = nc
        elif not c.is_zero():
            out[nf] = c
    return NCExpr(params, out)


class TensorExpr:
    """Linear combination of 2- or 3-fold word tensors with the twisted product."""

    __slots__ = ("params", "arity", "terms")

    def __init__(self, params: ParameterSet, arity: int, terms: dict):
        if arity not in (2, 3):
            raise ValueError("tensor arity must be 2 or 3")
        self.params = params
        self.arity = arity
        self.terms = terms  # tuple of words -> RatExpr

    @classmethod
    def zero(cls, params, arity=2):
        return cls(params, arity, {})

    @classmethod
    def unit(cls, params, arity=2):
        return cls(params, arity, {((),) * arity: params.one()})

    @classmethod
    def of(cls, *factors: NCExpr):
        """Tensor of NC expressions (componentwise formal products)."""
        params = factors[0].params
        terms: dict = {}
        keys = [((), params.one())]
        for f in factors:
            keys = [
                (key + (w,), c * cw)
                for key, c in keys
                for w, cw in f.terms.items()
            ]
        out: dict = {}
        for key, c in keys:
            if not c.is_zero():
                out[key] = out.get(key, params.rat(0)) + c
        return cls(params, len(factors), {k: c for k, c in out.items() if not c.is_zero()})

    def _merge(self, terms, key, coeff):
        if key in terms:
            nc = terms[key] + coeff
            if nc.is_zero():
                del terms[key]
            else:
                terms[key] = nc
        elif not coeff.is_zero():
            terms[key] = coeff

    def __add__(self, other):
        if other.arity != self.arity:
            raise ValueError("tensor arity mismatch")
        terms = dict(self.terms)
        for k, c in other.terms.items():
            self._merge(terms, k, c)
        return TensorExpr(self.params, self.arity, terms)

    def __neg__(self):
        return TensorExpr(self.params, self.arity, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coeff) -> "TensorExpr":
        c = self.params.rat(coeff)
        if c.is_zero():
            return TensorExpr.zero(self.params, self.arity)
        return TensorExpr(self.params, self.arity, {k: cc * c for k, cc in self.terms.items()})

    def __rmul__(self, other):
        return self.scale(other)

    def __mul__(self, other):
        if not isinstance(other, TensorExpr):
            return self.scale(other)
        return tmul(self, other)

    def __eq__(self, other):
        if not isinstance(other, TensorExpr):
            return NotImplemented
        if self.arity != other.arity or set(self.terms) != set(other.terms):
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def straighten(self, rules: StraightenRules) -> "TensorExpr":
        """Apply the K-straightening normal form in every tensor slot."""
        out: dict = {}
        params = self.params
        for key, coeff in self.terms.items():
            scalar = coeff
            nf_key = []
            for w in key:
                nf = straighten(NCExpr.word(params, w), rules)
                ((w2, c2),) = nf.terms.items()
                nf_key.append(w2)
                scalar = scalar * c2
            self._merge(out, tuple(nf_key), scalar)
        return TensorExpr(params, self.arity, out)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kc: tuple(word_key(w) for w in kc[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, c in self.sorted_terms():
            slots = " (x) ".join(
                "*".join("%s%d" % (k, i + 1) for k, i in w) if w else "1" for w in key
            )
            parts.append("(%s) %s" % (c, slots))
        return " + ".join(parts)

    __repr__ = __str__


def tmul(a: TensorExpr, b: TensorExpr) -> TensorExpr:
    """Twisted multiplication of tensor expressions (2- or 3-fold)."""
    if a.arity != b.arity:
        raise ValueError("tensor arity mismatch")
    params = a.params
    n = params.cartan.n
    terms: dict = {}
    out = TensorExpr(params, a.arity, terms)
    for xkey, cx in a.terms.items():
        xdeg = [grade(w, n) for w in xkey]
        for ykey, cy in b.terms.items():
            ydeg = [grade(w, n) for w in ykey]
            if a.arity == 2:
                twist = bichar(params, "t", xdeg[1], ydeg[0]) * bichar(
                    params, "s", ydeg[0], xdeg[1]
                )
            else:
                x23 = tuple(p + q for p, q in zip(xdeg[1], xdeg[2]))
                twist = (
                    bichar(params, "t", x23, ydeg[0])
                    * bichar(params, "s", ydeg[0], x23)
                    * bichar(params, "t", xdeg[2], ydeg[1])
                    * bichar(params, "s", ydeg[1], xdeg[2])
                )
            key = tuple(xw + yw for xw, yw in zip(xkey, ykey))
            out._merge(terms, key, cx * cy * twist)
    return out
