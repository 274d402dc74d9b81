"""Relation families for the twisted and untwisted algebras and their
modified (idempotented) forms, plus the weight-decorated path-word model.

The modified algebras are non-unital, with orthogonal idempotents indexed by
weights and arrow generators that raise or lower a weight by a simple root.
A PathWord records the target weight and the sequence of raising/lowering
steps; products of words concatenate exactly when the inner weights match
and die otherwise, which makes the idempotent and weight-absorption
relations hold by construction.

Relation enumeration over the (infinite) weight lattice is windowed: the
caller supplies a finite set of base weights and every relation instance is
emitted per base weight.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .coeffring import qbinom
from .ncalg import NCExpr
from .params import ParameterSet, twist_c
from .rootdata import RootDatum, Weight

# re-exported here because the parameter family is part of the presentation
__all__ = [
    "ParameterSet",
    "PathWord",
    "PathExpr",
    "RelationInstance",
    "idempotent",
    "e_arrow",
    "f_arrow",
    "divided_power",
    "relations_of",
    "serre_binomial",
]


class PathWord:
    """A composable word in the modified algebra: target weight plus steps.

    Steps are listed left to right as written; an 'E' step with index i
    lowers the weight by alpha_i when read from target to source, so the
    source weight is target - sum(+alpha for E, -alpha for F).  A bare
    idempotent is the empty word at its weight.
    """

    __slots__ = ("target", "steps", "source")

    def __init__(self, rd: RootDatum, target: Weight, steps: tuple):
        self.target = tuple(target)
        self.steps = tuple(steps)
        lam = self.target
        for kind, i in self.steps:
            lam = rd.add_root(lam, i, -1 if kind == "E" else +1)
        self.source = lam

    def key(self):
        return (self.target, self.steps, self.source)

    def __eq__(self, other):
        return (
            isinstance(other, PathWord)
            and self.target == other.target
            and self.steps == other.steps
        )

    def __hash__(self):
        return hash((self.target, self.steps))

    def degree(self, n: int) -> tuple:
        deg = [0] * n
        for kind, i in self.steps:
            deg[i] += 1 if kind == "E" else -1
        return tuple(deg)

    def __str__(self):
        tgt = ",".join(map(str, self.target))
        if not self.steps:
            return "1_(%s)" % tgt
        body = "*".join("%s%d" % (k, i + 1) for k, i in self.steps)
        return "%s:(%s)<-(%s)" % (body, tgt, ",".join(map(str, self.source)))

    __repr__ = __str__


class PathExpr:
    """Linear combination of path words over the parameter fraction field."""

    __slots__ = ("rd", "params", "terms")

    def __init__(self, rd: RootDatum, params: ParameterSet, terms: dict):
        self.rd = rd
        self.params = params
        self.terms = terms  # PathWord -> RatExpr

    @classmethod
    def zero(cls, rd, params):
        return cls(rd, params, {})

    @classmethod
    def of(cls, rd, params, word: PathWord, coeff=1):
        c = params.rat(coeff)
        if c.is_zero():
            return cls.zero(rd, params)
        return cls(rd, params, {word: c})

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
        return PathExpr(self.rd, self.params, terms)

    def __neg__(self):
        return PathExpr(self.rd, self.params, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coeff) -> "PathExpr":
        c = self.params.rat(coeff)
        if c.is_zero():
            return PathExpr.zero(self.rd, self.params)
        return PathExpr(self.rd, self.params, {w: cc * c for w, cc in self.terms.items()})

    def __mul__(self, other):
        """Concatenate words with matching inner weights; kill the rest."""
        if not isinstance(other, PathExpr):
            return self.scale(other)
        terms: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                if w1.source == w2.target:
                    w = PathWord(self.rd, w1.target, w1.steps + w2.steps)
                    self._merge(terms, w, c1 * c2)
        return PathExpr(self.rd, self.params, terms)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, PathExpr):
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[w] == other.terms[w] for w in self.terms)

    __hash__ = None

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda wc: wc[0].key())

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join("(%s)*%s" % (c, w) for w, c in self.sorted_terms())

    __repr__ = __str__


def idempotent(rd, params, lam: Weight) -> PathExpr:
    return PathExpr.of(rd, params, PathWord(rd, lam, ()))


def e_arrow(rd, params, i: int, source: Weight) -> PathExpr:
    """The raising arrow into source + alpha_i."""
    return PathExpr.of(rd, params, PathWord(rd, rd.add_root(source, i, +1), (("E", i),)))


def f_arrow(rd, params, i: int, source: Weight) -> PathExpr:
    """The lowering arrow into source - alpha_i."""
    return PathExpr.of(rd, params, PathWord(rd, rd.add_root(source, i, -1), (("F", i),)))


def divided_power(
    kind: str,
    i: int,
    l: int,
    lam: Optional[Weight],
    rd: Optional[RootDatum],
    params: ParameterSet,
    base: str = "q",
) -> object:
    """l-th divided power of a raising or lowering generator.

    With a weight, returns the path form: for kind 'E' the word climbing
    from lam to lam + l*alpha_i, for kind 'F' the word descending from
    lam + l*alpha_i to lam; the coefficient is 1/[l]! in the deformation
    parameter (base 'q') or in v^{d_i} (base 'v').  Without a weight,
    returns the free-word form E_i^l/[l]! as an NCExpr.
    """
    if l < 0:
        raise ValueError("divided power needs l >= 0")
    fact = params.qfact_q(l, i) if base == "q" else params.qfact_v(l, i)
    coeff = params.rat(1) / params.rat(fact)
    if lam is None:
        word = ((kind, i),) * l
        return NCExpr.word(params, word, coeff)
    if kind == "E":
        target = lam
        for _ in range(l):
            target = rd.add_root(target, i, +1)
        word = PathWord(rd, target, (("E", i),) * l)
    elif kind == "F":
        word = PathWord(rd, lam, (("F", i),) * l)
    else:
        raise ValueError("divided power kind must be 'E' or 'F'")
    return PathExpr.of(rd, params, word, coeff)


@dataclass(frozen=True)
class RelationInstance:
    """One relation, stored literally as LHS - RHS."""

    algebra: str  # 'U', 'scrU', 'Udot', 'scrUdot'
    family: str   # 'a', 'b', 'c', 'd-E', 'd-F'
    i: Optional[int]
    j: Optional[int]
    lam: Optional[Weight]
    part: str
    expr: object  # PathExpr or NCExpr

    @property
    def id(self) -> str:
        bits = [self.family]
        if self.i is not None:
            bits.append("i%d" % (self.i + 1))
        if self.j is not None:
            bits.append("j%d" % (self.j + 1))
        if self.lam is not None:
            bits.append("lam(%s)" % ",".join(map(str, self.lam)))
        if self.part:
            bits.append(self.part)
        return ":".join(bits)

    def sort_key(self):
        return (
            self.family,
            -1 if self.i is None else self.i,
            -1 if self.j is None else self.j,
            self.lam or (),
            self.part,
        )


def _modified_relations(algebra, rd, params, window):
    """Relation instances of a modified algebra over a window of base weights."""
    twisted = algebra == "scrUdot"
    base = "q" if twisted else "v"
    out = []
    idx = list(rd.index_set)
    window = sorted(tuple(w) for w in window)
    if not window:
        raise ValueError("modified algebras need a nonempty weight window")
    one = params.rat(1)

    for lam in window:
        unit = idempotent(rd, params, lam)
        out.append(RelationInstance(algebra, "a", None, None, lam, "", unit * unit - unit))
    for i in idx:
        for lam in window:
            e_up = e_arrow(rd, params, i, lam)      # target lam + alpha_i
            e_in = PathExpr.of(rd, params, PathWord(rd, lam, (("E", i),)))
            f_dn = f_arrow(rd, params, i, lam)      # target lam - alpha_i
            f_in = PathExpr.of(rd, params, PathWord(rd, lam, (("F", i),)))
            unit = idempotent(rd, params, lam)
            out.append(RelationInstance(algebra, "b", i, None, lam, "E-right", e_up * unit - e_up))
            out.append(RelationInstance(algebra, "b", i, None, lam, "E-left", unit * e_in - e_in))
            out.append(RelationInstance(algebra, "b", i, None, lam, "F-right", f_dn * unit - f_dn))
            out.append(RelationInstance(algebra, "b", i, None, lam, "F-left", unit * f_in - f_in))

    for i in idx:
        for j in idx:
            for lam in window:
                # first word: raise by alpha_i after lowering by alpha_j ... read
                # right to left: F into lam - alpha_i + ... then E back into lam
                ef = PathExpr.of(
                    rd, params, PathWord(rd, lam, (("E", i), ("F", j)))
                )
                fe = PathExpr.of(
                    rd,
                    params,
                    PathWord(rd, lam, (("F", j), ("E", i))),
                )
                if twisted:
                    coeff = params.rat(params.s(i, j) * params.t(j, i))
                else:
                    coeff = one
                expr = ef - fe.scale(coeff)
                if i == j:
                    li = rd.lambda_i(lam, i)
                    qn = params.qint_q(li, i) if twisted else params.qint_v(li, i)
                    cc = params.rat(qn)
                    if twisted:
                        cc = cc * params.rat(twist_c(rd, params, i, lam))
                    expr = expr - idempotent(rd, params, lam).scale(cc)
                if len([w for w in expr.terms if w.steps]) != 2:
                    raise ValueError(
                        "chain-inconsistent weight decoration in mixed relation at %s" % (lam,)
                    )
                out.append(RelationInstance(algebra, "c", i, j, lam, "", expr))

    for i in idx:
        for j in idx:
            if i == j:
                continue
            r = rd.cartan.serre_exponent(i, j)
            if twisted:
                ratio_e = params.rat(params.s(j, i)) / params.rat(params.s(i, j))
                ratio_f = params.rat(params.t(j, i)) / params.rat(params.t(i, j))
            else:
                ratio_e = ratio_f = one
            for lam in window:
                acc_e = PathExpr.zero(rd, params)
                acc_f = PathExpr.zero(rd, params)
                for l in range(r + 1):
                    sign = -1 if l % 2 else 1
                    mid_base_e = lam
                    for _ in range(l):
                        mid_base_e = rd.add_root(mid_base_e, i, +1)
                    term_e = (
                        divided_power("E", i, r - l, rd.add_root(mid_base_e, j, +1), rd, params, base)
                        * e_arrow(rd, params, j, mid_base_e)
                        * divided_power("E", i, l, lam, rd, params, base)
                    )
                    acc_e = acc_e + term_e.scale(ratio_e**l * sign)
                    mid_f = lam
                    for _ in range(l):
                        mid_f = rd.add_root(mid_f, i, +1)
                    term_f = (
                        divided_power("F", i, l, lam, rd, params, base)
                        * f_arrow(rd, params, j, rd.add_root(mid_f, j, +1))
                        * divided_power("F", i, r - l, rd.add_root(mid_f, j, +1), rd, params, base)
                    )
                    acc_f = acc_f + term_f.scale(ratio_f**l * sign)
                if len(acc_e.terms) != r + 1 or len(acc_f.terms) != r + 1:
                    raise ValueError(
                        "chain-inconsistent weight decoration in Serre relation at %s" % (lam,)
                    )
                out.append(RelationInstance(algebra, "d-E", i, j, lam, "", acc_e))
                out.append(RelationInstance(algebra, "d-F", i, j, lam, "", acc_f))
    out.sort(key=lambda r: r.sort_key())
    return out


def _nc_relations(algebra, rd, params):
    """Relation instances of the unital algebras as free-word expressions."""
    twisted = algebra == "scrU"
    out = []
    idx = list(rd.index_set)
    one = params.rat(1)
    W = lambda *syms: NCExpr.word(params, tuple(syms))
    kfams = ("K", "Kp") if twisted else ("K",)

    for a_fam in kfams:
        for b_fam in kfams:
            for i in idx:
                for j in idx:
                    if a_fam == b_fam and i >= j:
                        continue
                    expr = W((a_fam, i), (b_fam, j)) - W((b_fam, j), (a_fam, i))
                    out.append(
                        RelationInstance(algebra, "a", i, j, None, "%s%s-comm" % (a_fam, b_fam), expr)
                    )
    for fam in kfams:
        for i in idx:
            inv = fam + "inv"
            out.append(
                RelationInstance(
                    algebra, "a", i, None, None, fam + "-inv",
                    W((fam, i), (inv, i)) - NCExpr.unit(params),
                )
            )
            out.append(
                RelationInstance(
                    algebra, "a", i, None, None, fam + "-inv2",
                    W((inv, i), (fam, i)) - NCExpr.unit(params),
                )
            )

    for i in idx:
        for j in idx:
            a = rd.cartan.a(i, j)
            if twisted:
                st_inv = params.rat((params.s(i, j) * params.t(i, j)).inv_unit())
                st = params.rat(params.s(i, j) * params.t(i, j))
                scalars = {
                    ("K", "E"): st_inv * params.rat(params.q(i) ** a),
                    ("Kp", "E"): st_inv * params.rat(params.q(i) ** (-a)),
                    ("K", "F"): st * params.rat(params.q(i) ** (-a)),
                    ("Kp", "F"): st * params.rat(params.q(i) ** a),
                }
            else:
                scalars = {
                    ("K", "E"): params.rat(params.vi(i) ** a),
                    ("K", "F"): params.rat(params.vi(i) ** (-a)),
                }
            for (fam, ef), c in scalars.items():
                expr = W((fam, i), (ef, j), (fam + "inv", i)) - W((ef, j)).scale(c)
                out.append(RelationInstance(algebra, "b", i, j, None, "%s-%s" % (fam, ef), expr))

    for i in idx:
        for j in idx:
            lhs = W(("E", i), ("F", j))
            if twisted:
                lhs = lhs - W(("F", j), ("E", i)).scale(params.s(i, j) * params.t(j, i))
            else:
                lhs = lhs - W(("F", j), ("E", i))
            if i == j:
                qi = params.q(i) if twisted else params.vi(i)
                denom = params.rat(qi - qi.inv_unit())
                kneg = ("Kp", i) if twisted else ("Kinv", i)
                lhs = lhs - (W(("K", i)) - W(kneg)).scale(one / denom)
            out.append(RelationInstance(algebra, "c", i, j, None, "", lhs))

    for i in idx:
        for j in idx:
            if i == j:
                continue
            r = rd.cartan.serre_exponent(i, j)
            if twisted:
                ratio_e = params.rat(params.s(j, i)) / params.rat(params.s(i, j))
                ratio_f = params.rat(params.t(j, i)) / params.rat(params.t(i, j))
            else:
                ratio_e = ratio_f = one
            base = "q" if twisted else "v"
            acc_e = NCExpr.zero(params)
            acc_f = NCExpr.zero(params)
            for l in range(r + 1):
                sign = -1 if l % 2 else 1
                dp = lambda kind, m: divided_power(kind, i, m, None, None, params, base)
                term_e = dp("E", r - l) * W(("E", j)) * dp("E", l)
                term_f = dp("F", l) * W(("F", j)) * dp("F", r - l)
                acc_e = acc_e + term_e.scale(ratio_e**l * sign)
                acc_f = acc_f + term_f.scale(ratio_f**l * sign)
            out.append(RelationInstance(algebra, "d-E", i, j, None, "", acc_e))
            out.append(RelationInstance(algebra, "d-F", i, j, None, "", acc_f))
    out.sort(key=lambda r: r.sort_key())
    return out


def relations_of(algebra: str, rd: RootDatum, params: ParameterSet, window=None):
    """Every relation instance of the named presentation.

    'U' and 'scrU' give free-word (NCExpr) instances; 'Udot' and 'scrUdot'
    give path-word (PathExpr) instances over the supplied weight window.
    Untwisted presentations require a parameter set with a base v.
    """
    if algebra in ("U", "Udot") and not params.has_v():
        raise ValueError("the untwisted presentation needs a v-based parameter set")
    if algebra in ("Udot", "scrUdot"):
        if not window:
            raise ValueError("modified algebras need a nonempty weight window")
        return _modified_relations(algebra, rd, params, window)
    if algebra in ("U", "scrU"):
        return _nc_relations(algebra, rd, params)
    raise ValueError("unknown algebra %r" % algebra)


def serre_binomial(i: int, j: int, rd: RootDatum, params: ParameterSet, kind: str = "E") -> NCExpr:
    """Denominator-free quantum Serre sum with Gaussian binomial coefficients.

    Equals [r]!_{q_i} times the divided-power Serre sum; the per-term scalar
    for the raising family is (-1)^l (s_ji/s_ij)^l, for the lowering family
    the same in t.
    """
    if i == j:
        raise ValueError("Serre relation needs i != j")
    r = rd.cartan.serre_exponent(i, j)
    fam = params.s if kind == "E" else params.t
    ratio = params.rat(fam(j, i)) / params.rat(fam(i, j))
    acc = NCExpr.zero(params)
    for l in range(r + 1):
        sign = -1 if l % 2 else 1
        coeff = params.rat(qbinom(r, l, params.q(i))) * ratio**l * sign
        if kind == "E":
            word = (("E", i),) * (r - l) + (("E", j),) + (("E", i),) * l
        else:
            word = (("F", i),) * l + (("F", j),) + (("F", i),) * (r - l)
        acc = acc + NCExpr.word(params, word, coeff)
    return acc
