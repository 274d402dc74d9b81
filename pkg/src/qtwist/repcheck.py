"""Matrix-level cross-validation: transport explicit weight modules of the
untwisted algebra to the twisted one and check every relation as an exact
matrix identity over the rational-function field.

Module scope is deliberately small: the (n+1)-dimensional string modules of
the rank-1 datum and the natural 3-dimensional module of the rank-2 type-A
datum; together they exercise the mixed E/F relation across a range of
weights and the quantum Serre relation at matrix level.

The transport convention is fixed by reading the generator rescaling at the
acting weight: a raising action into weight lam is divided by e(i, lam), a
lowering action out of weight lam is divided by f(i, lam); the K-type
actions become the corrected eigenvalues c(i,lam) q_i^{+-lam_i}.  The
report prints the convention string so direction disputes are auditable.
"""

from __future__ import annotations

import time

from .params import ParameterSet
from .presentations import relations_of
from .report import FAIL, PASS, CheckRecord, Report
from .rootdata import RootDatum
from .twistmap import TwistScalars

CONVENTION = "E_i|M_lam scaled by e(i, lam+alpha_i)^-1; F_i|M_lam scaled by f(i, lam)^-1"


class WeightModule:
    """Weight-graded module with one matrix per generator symbol."""

    def __init__(self, rd: RootDatum, params: ParameterSet, weights, mats, label=""):
        self.rd = rd
        self.params = params
        self.weights = list(weights)  # weight of each basis vector
        self.mats = mats              # (kind, i) -> dense RatExpr matrix
        self.label = label

    @property
    def dim(self) -> int:
        return len(self.weights)

    def copy(self) -> "WeightModule":
        mats = {k: [row[:] for row in m] for k, m in self.mats.items()}
        return WeightModule(self.rd, self.params, self.weights, mats, self.label)


def _zeros(params, n):
    z = params.rat(0)
    return [[z for _ in range(n)] for _ in range(n)]


def _identity(params, n):
    m = _zeros(params, n)
    one = params.rat(1)
    for k in range(n):
        m[k][k] = one
    return m


def _mat_mul(params, a, b):
    n = len(a)
    out = _zeros(params, n)
    for i in range(n):
        arow = a[i]
        orow = out[i]
        for k in range(n):
            aik = arow[k]
            if aik.is_zero():
                continue
            brow = b[k]
            for j in range(n):
                if not brow[j].is_zero():
                    orow[j] = orow[j] + aik * brow[j]
    return out


def _mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mat_scale(a, c):
    return [[x * c for x in row] for row in a]


def _first_nonzero(a):
    for i, row in enumerate(a):
        for j, x in enumerate(row):
            if not x.is_zero():
                return i, j, x
    return None


def _diag(params, entries):
    m = _zeros(params, len(entries))
    for k, e in enumerate(entries):
        m[k][k] = params.rat(e)
    return m


def sl2_string_module(n: int, rd: RootDatum, params: ParameterSet) -> WeightModule:
    """The (n+1)-dimensional irreducible string module of the rank-1 datum.

    Basis m_0..m_n with m_k of weight (n-k, k); the lowering operator sends
    m_k to [k+1] m_{k+1}, raising sends m_k to [n-k+1] m_{k-1}, and the
    group-like generator acts by v^{n-2k}.  The defining relations are
    verified as matrices before the module is returned.
    """
    if rd.n != 1 or rd.x_rank != 2:
        raise ValueError("the string module needs the rank-1 built-in datum")
    if n < 0:
        raise ValueError("n must be >= 0")
    dim = n + 1
    weights = [(n - k, k) for k in range(dim)]
    E = _zeros(params, dim)
    F = _zeros(params, dim)
    for k in range(dim - 1):
        F[k + 1][k] = params.rat(params.qint_v(k + 1, 0))
        E[k][k + 1] = params.rat(params.qint_v(n - k, 0))
    K = _diag(params, [params.vi(0) ** rd.lambda_i(w, 0) for w in weights])
    Kinv = _diag(params, [params.vi(0) ** (-rd.lambda_i(w, 0)) for w in weights])
    mod = WeightModule(
        rd, params, weights,
        {("E", 0): E, ("F", 0): F, ("K", 0): K, ("Kinv", 0): Kinv},
        label="sl2-string-n%d" % n,
    )
    rep = verify_module(mod, relations_of("U", rd, params))
    if not rep.ok:
        raise AssertionError("string module construction violates a relation: %s"
                             % rep.failures()[0].id)
    return mod


def sl3_natural_module(rd: RootDatum, params: ParameterSet) -> WeightModule:
    """The natural 3-dimensional module of the rank-2 type-A datum."""
    if rd.n != 2 or rd.x_rank != 3:
        raise ValueError("the natural module needs the rank-2 type-A built-in datum")
    weights = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    mats = {}
    for i in (0, 1):
        E = _zeros(params, 3)
        F = _zeros(params, 3)
        E[i][i + 1] = params.rat(1)
        F[i + 1][i] = params.rat(1)
        mats[("E", i)] = E
        mats[("F", i)] = F
        mats[("K", i)] = _diag(params, [params.vi(i) ** rd.lambda_i(w, i) for w in weights])
        mats[("Kinv", i)] = _diag(params, [params.vi(i) ** (-rd.lambda_i(w, i)) for w in weights])
    mod = WeightModule(rd, params, weights, mats, label="sl3-natural")
    rep = verify_module(mod, relations_of("U", rd, params))
    if not rep.ok:
        raise AssertionError("natural module construction violates a relation: %s"
                             % rep.failures()[0].id)
    return mod


def transport(mod: WeightModule, scalars: TwistScalars) -> WeightModule:
    """Pull the module across the inverse rescaling map.

    Raising actions are divided by e at the landing weight, lowering actions
    by f at the starting weight; the two K-families act by the corrected
    eigenvalues c(i,lam) q_i^{lam_i} and c(i,lam) q_i^{-lam_i}.
    """
    rd = mod.rd
    params = scalars.params
    mats = {}
    for i in rd.index_set:
        E = [row[:] for row in mod.mats[("E", i)]]
        F = [row[:] for row in mod.mats[("F", i)]]
        for b, lam in enumerate(mod.weights):
            e_scale = params.rat(scalars.e(i, rd.add_root(lam, i, +1)).inv_unit())
            f_scale = params.rat(scalars.f(i, lam).inv_unit())
            for r in range(mod.dim):
                E[r][b] = E[r][b] * e_scale
                F[r][b] = F[r][b] * f_scale
        mats[("E", i)] = E
        mats[("F", i)] = F
        kdiag = []
        kpdiag = []
        for lam in mod.weights:
            c = scalars.c(i, lam)
            li = rd.lambda_i(lam, i)
            kdiag.append(c * params.q(i) ** li)
            kpdiag.append(c * params.q(i) ** (-li))
        mats[("K", i)] = _diag(params, kdiag)
        mats[("Kinv", i)] = _diag(params, [x.inv_unit() for x in kdiag])
        mats[("Kp", i)] = _diag(params, kpdiag)
        mats[("Kpinv", i)] = _diag(params, [x.inv_unit() for x in kpdiag])
    return WeightModule(rd, params, mod.weights, mats, label=mod.label + "+twist")


def _word_matrix(mod: WeightModule, word):
    m = _identity(mod.params, mod.dim)
    for sym in word:
        m = _mat_mul(mod.params, m, mod.mats[sym])
    return m


def verify_module(mod: WeightModule, instances) -> Report:
    """Substitute the module matrices into every relation instance."""
    t0 = time.monotonic()
    rep = Report("modules", datum=mod.rd.name, case=mod.label)
    for inst in instances:
        acc = _zeros(mod.params, mod.dim)
        for word, coeff in inst.expr.terms.items():
            acc = _mat_add(acc, _mat_scale(_word_matrix(mod, word), coeff))
        rec = CheckRecord("%s:%s" % (mod.label, inst.id), inst.family, inst.i, inst.j)
        bad = _first_nonzero(acc)
        if bad is not None:
            rec.status = FAIL
            rec.witness = "entry (%d,%d) = %s" % (bad[0], bad[1], bad[2].simplified())
        rep.add(rec)
    rep.elapsed_ms = int((time.monotonic() - t0) * 1000)
    return rep.finalize()


def kkp_eigenvalue_records(mod: WeightModule, scalars: TwistScalars) -> list:
    """K_i Kp_i acts on the lam weight space by c(i,lam)^2."""
    rd, params = mod.rd, mod.params
    out = []
    for i in rd.index_set:
        prod = _mat_mul(params, mod.mats[("K", i)], mod.mats[("Kp", i)])
        ok = True
        witness = ""
        for b, lam in enumerate(mod.weights):
            want = params.rat(scalars.c(i, lam) ** 2)
            if not (prod[b][b] == want):
                ok = False
                witness = "basis %d: %s != %s" % (b, prod[b][b], want)
                break
        out.append(
            CheckRecord(
                "%s:kkp-eigen:i%d" % (mod.label, i + 1), "kkp", i, None,
                status=PASS if ok else FAIL, witness=witness,
            )
        )
    return out


def corrupt(mod: WeightModule, kind: str, i: int, factor) -> WeightModule:
    """Negative control: damage one generator matrix by a unit factor."""
    bad = mod.copy()
    c = mod.params.rat(factor)
    bad.mats[(kind, i)] = _mat_scale(bad.mats[(kind, i)], c)
    bad.label = mod.label + "+corrupt"
    return bad


def verify_transported_modules(
    params_factory, scalars_factory, case_label: str, max_n: int = 6
) -> Report:
    """Build the stock modules, transport them, and check the twisted relations.

    params_factory(rd) must return the parameter set; scalars_factory(rd,
    params) the rescaling scalars.  Used for the generic run and for each
    specialization.
    """
    t0 = time.monotonic()
    from . import rootdata as _rootdata

    rep = Report("modules", case=case_label)
    rd1 = _rootdata.builtin("a1")
    p1 = params_factory(rd1)
    rels1 = relations_of("scrU", rd1, p1)
    sc1 = scalars_factory(rd1, p1)
    for n in range(max_n + 1):
        base = sl2_string_module(n, rd1, p1)
        tmod = transport(base, sc1)
        sub = verify_module(tmod, rels1)
        rep.merge(sub)
        rep.extend(kkp_eigenvalue_records(tmod, sc1))
    rd2 = _rootdata.builtin("a2")
    p2 = params_factory(rd2)
    rels2 = relations_of("scrU", rd2, p2)
    sc2 = scalars_factory(rd2, p2)
    base = sl3_natural_module(rd2, p2)
    tmod = transport(base, sc2)
    rep.merge(verify_module(tmod, rels2))
    rep.extend(kkp_eigenvalue_records(tmod, sc2))
    rep.datum = "a1+a2"
    rep.elapsed_ms = int((time.monotonic() - t0) * 1000)
    return rep.finalize()
