"""Exact sampling oracles for checking forms.

An incidence instance is a pair Q inside P with Q on the variety; a form
must vanish at P.  Generic instances are random full rank matrices, where
a nonzero form should not vanish (Schwartz-Zippel evidence over a large
box).  All arithmetic is exact.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import combinations

from . import __version__, linalg
from .grassmann import dual_coordinates, primal_coordinates
from .polyengine import ZERO, Polynomial
from .varieties import FormResult, VarietySpec

DEFAULT_BOUND = 10**6


class NoSampler(ValueError):
    """No rational sampler is available for this variety."""


class AmbientMismatch(ValueError):
    pass


class KernelDimension(ValueError):
    """The wedge matrix of the lines has an unexpected left kernel."""


# ------------------------------------------------------------- instances


@dataclass
class IncidenceInstance:
    """A subspace P (rows of ``P_matrix``) containing Q (rows of ``witness_Q``) with Q on the variety."""

    P_matrix: list
    witness_Q: list
    spec: VarietySpec | None = None

    def __post_init__(self):
        self.P_matrix = linalg.as_matrix(self.P_matrix)
        self.witness_Q = linalg.as_matrix(self.witness_Q)
        self.check()

    def check(self):
        P, Q = self.P_matrix, self.witness_Q
        if linalg.rank(P) != len(P):
            raise ValueError("P_matrix is not of full rank")
        if linalg.rank(Q) != len(Q):
            raise ValueError("witness_Q is not of full rank")
        if linalg.rank(P + Q) != len(P):
            raise ValueError("row space of witness_Q is not contained in that of P_matrix")
        if self.spec is not None and self.spec.matrix is None:
            q = dual_coordinates(Q)
            for g in self.spec.ideal_generators():
                if g.terms and q.evaluate(g, "q"):
                    raise ValueError("witness_Q is not on the variety")


def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _draw_matrix(rows, cols, rng, bound):
    return [[linalg.rational(rng.randint(-bound, bound)) for _ in range(cols)] for _ in range(rows)]


def sample_generic(rows: int, cols: int, rng=None, bound: int = DEFAULT_BOUND, draw=None):
    """Random full rank ``rows x cols`` matrix with entries in [-bound, bound].

    ``draw(rows, cols, rng, bound)`` can replace the entry generator; rank
    deficient draws are rejected and redrawn.
    """
    rng = _rng(rng if rng is not None else 0)
    draw = draw or _draw_matrix
    while True:
        M = linalg.as_matrix(draw(rows, cols, rng, bound))
        if linalg.rank(M) == min(rows, cols):
            return M


# --------------------------------------------------------------- samplers

_SAMPLERS = {}


def register_sampler(name: str, fn=None):
    """Register ``fn(spec, rng, bound) -> Q matrix`` as a named sampler (usable as decorator)."""
    if fn is None:
        return lambda f: register_sampler(name, f)
    _SAMPLERS[name] = fn
    return fn


def samplers() -> list[str]:
    return sorted(_SAMPLERS)


def _rand(rng, bound):
    return linalg.rational(rng.randint(-bound, bound))


@register_sampler("positroid")
def _positroid_sampler(spec, rng, bound):
    # columns within a block are parallel
    cols = []
    for blk in spec.blocks():
        v = [_rand(rng, bound) for _ in range(2)]
        for _ in blk:
            c = _rand(rng, bound) or 1
            cols.append([c * x for x in v])
    return linalg.transpose(cols)


@register_sampler("schubert")
def _schubert_sampler(spec, rng, bound):
    # row s is supported on columns >= i_s
    n = spec.n
    return [[_rand(rng, bound) if j >= i else ZERO for j in range(1, n + 1)] for i in spec.schubert]


@register_sampler("linear")
def _linear_sampler(spec, rng, bound):
    """Linear sections of Gr(k,n): random first k-1 rows, last row from a linear system."""
    k, n = spec.k, spec.n
    gens = [g for g in spec.ideal_generators() if g.terms]
    if any(g.degree() != 1 for g in gens):
        raise NoSampler("the linear sampler needs linear generators")
    head = [[_rand(rng, bound) for _ in range(n)] for _ in range(k - 1)]
    # coefficient of y_j in g(head ^ y)
    A = []
    for g in gens:
        row = []
        for j in range(n):
            e = [ZERO] * n
            e[j] = linalg.rational(1)
            q = dual_coordinates(head + [e])
            row.append(q.evaluate(g, "q"))
        A.append(row)
    ker = linalg.nullspace(A) if A else [[linalg.rational(int(i == j)) for i in range(n)] for j in range(n)]
    y = linalg.combine([_rand(rng, bound) for _ in ker], ker)
    Q = head + [y]
    if linalg.rank(Q) < k:
        raise NoSampler("linear sections of this dimension have no point through a random flag; "
                        "use the conic sampler for curves")
    return Q


@register_sampler("conic")
def _conic_sampler(spec, rng, bound, search: int = 6):
    """Curves in Gr(2,4) cut by three linear forms: a plane conic.

    A rational point is found by a small search, then the conic is
    parametrized by lines through that point.
    """
    k, n = spec.k, spec.n
    if (k, n) != (2, 4):
        raise NoSampler("the conic sampler handles Gr(2,4) only")
    T = spec.table
    gens = [g for g in spec.ideal_generators() if g.terms]
    A = [[g.coefficient(tuple(int(i == j) for i in range(len(T)))) for j in range(len(T))] for g in gens]
    basis = linalg.nullspace(A)
    if len(basis) != 3:
        raise NoSampler("expected a plane section of the Pluecker quadric")

    def quad(v):
        return v[0] * v[5] - v[1] * v[4] + v[2] * v[3]

    def point(a):
        return linalg.combine(a, basis)

    base = None
    rng_search = range(-search, search + 1)
    for a in ((x, y, z) for x in rng_search for y in rng_search for z in rng_search):
        if any(a) and quad(point(a)) == 0:
            base = [linalg.rational(x) for x in a]
            break
    if base is None:
        raise NoSampler("no small rational point on the conic")
    d = [_rand(rng, bound) for _ in range(3)]
    # quad(base + t d) = t (B + t C)
    b0, d0 = point(base), point(d)
    C = quad(d0)
    B = quad(linalg.combine([1, 1], [b0, d0])) - quad(b0) - C
    if not C:
        raise NoSampler("degenerate direction")
    t = -B / C
    v = linalg.combine([1, t], [b0, d0])
    return _line_from_plucker(v)


def _line_from_plucker(v):
    """A 2 x 4 matrix whose dual coordinates (lex order) are proportional to v.

    For v = a ^ b the rows ``a_i b - b_i a`` of the skew matrix span the line.
    """
    M = [[ZERO] * 4 for _ in range(4)]
    for (i, j), x in zip(combinations(range(4), 2), v):
        M[i][j], M[j][i] = x, -x
    red, _ = linalg.rref(M)
    Q = [r for r in red if any(r)]
    if len(Q) != 2:
        raise NoSampler("point is not decomposable")
    return Q


@register_sampler("matrix")
def _matrix_sampler(spec, rng, bound):
    from .forms import _load_matrix

    M, P = _load_matrix(spec.matrix)
    vals = [_rand(rng, bound) for _ in P.names]
    return [[x.evaluate(vals) for x in row] for row in M]


def _default_sampler(spec) -> str:
    if spec.sampler:
        return spec.sampler
    if spec.kind in ("positroid", "schubert", "matrix"):
        return spec.kind
    if spec.kind == "generators":
        gens = [g for g in spec.ideal_generators() if g.terms]
        if gens and all(g.degree() == 1 for g in gens):
            lin = len(gens)
            return "linear" if lin <= spec.n - spec.k else "conic"
    raise NoSampler(f"no sampler registered for {spec.label()}")


def sample_incident(spec: VarietySpec, rng=None, bound: int = DEFAULT_BOUND, m: int | None = None) -> IncidenceInstance:
    """Exact instance Q inside P with Q on the variety and dim P = k + n - r."""
    rng = _rng(rng if rng is not None else 0)
    name = _default_sampler(spec)
    if name not in _SAMPLERS:
        raise NoSampler(f"unknown sampler {name!r}")
    k, n = spec.k, spec.n
    m = k + n - spec.r if m is None else m
    for _ in range(20):
        Q = linalg.as_matrix(_SAMPLERS[name](spec, rng, bound))
        if linalg.rank(Q) < k:
            continue
        P = Q + _draw_matrix(m - k, n, rng, bound)
        if linalg.rank(P) < m:
            continue
        # hide Q inside P by a random change of basis
        G = sample_generic(m, m, rng, bound)
        P = linalg.matmul(G, P)
        return IncidenceInstance(P, Q, spec)
    raise NoSampler("sampler kept producing degenerate instances")


# ------------------------------------------------ five lines / transversals


def sample_transversal_lines(t: int, rng=None, bound: int = DEFAULT_BOUND, s: int = 4):
    """An s x 2t matrix whose column pairs span lines all meeting one line in P^{s-1}...

    More precisely: a random 2 x s matrix T is fixed and each line
    ``(x_{2i-1}, x_{2i})`` contains a point of the row space of T when s = 4.
    For general s the pairs satisfy ``x_{2i} = alpha x_{2i-1} + k_i`` with
    ``k_i`` in the kernel of T, so that some Q in the row space has
    the required vanishing minors.  Returns ``(X, T)``.
    """
    rng = _rng(rng if rng is not None else 0)
    T = sample_generic(2, s, rng, bound)
    ker = linalg.nullspace(T)
    cols = []
    for _ in range(t):
        x = [_rand(rng, bound) for _ in range(s)]
        alpha = _rand(rng, bound)
        kk = linalg.combine([_rand(rng, bound) for _ in ker], ker)
        cols += [x, [alpha * a + b for a, b in zip(x, kk)]]
    return linalg.transpose(cols), T


def _xtilde(X):
    from .forms import pair_blocks, wedge_columns

    X = linalg.as_matrix(X)
    return wedge_columns(X, pair_blocks(len(X[0]) // 2))


def _g24_quadric(v):
    return v[0] * v[5] - v[1] * v[4] + v[2] * v[3]


def transversal_discriminant(X):
    """Discriminant of the Pluecker quadric restricted to the left kernel pencil of X~.

    X is 4 x 8; the left kernel of the 6 x 4 matrix X~ of wedges must be
    two dimensional.  Zero means the two transversal lines coincide.
    """
    X = linalg.as_matrix(X)
    if len(X) != 4 or any(len(r) != 8 for r in X):
        raise ValueError("expected a 4 x 8 matrix")
    ker = linalg.left_kernel(_xtilde(X))
    if len(ker) != 2:
        raise KernelDimension(f"left kernel of X~ has dimension {len(ker)}")
    v0, v1 = ker
    a = _g24_quadric(v0)
    c = _g24_quadric(v1)
    b = _g24_quadric([x + y for x, y in zip(v0, v1)]) - a - c
    return b * b - 4 * a * c


def sample_tangent_lines(rng=None, bound: int = 1000):
    """A 4 x 8 matrix of four lines whose two transversals coincide.

    The left kernel pencil of X~ is spanned by a point of Gr(2,4) and a
    tangent vector there, so the quadric has a double root on it.
    """
    rng = _rng(rng if rng is not None else 0)
    while True:
        T = dual_coordinates(sample_generic(2, 4, rng, bound))
        t = [T[I] for I in combinations(range(1, 5), 2)]
        # tangent space: polar form with t vanishes
        polar = [t[5], -t[4], t[3], t[2], -t[1], t[0]]
        tang = linalg.nullspace([polar])
        w = linalg.combine([_rand(rng, bound) for _ in tang], tang)
        if not _g24_quadric(w):
            continue
        cols = []
        for _ in range(4):
            x = [_rand(rng, bound) for _ in range(4)]
            # linear conditions on y: sum_I t_I (x ^ y)_I = 0 and the same for w
            rows = []
            for vec in (t, w):
                row = []
                for j in range(4):
                    e = [0] * 4
                    e[j] = 1
                    q = dual_coordinates([x, e])
                    row.append(sum(c * q[I] for c, I in zip(vec, combinations(range(1, 5), 2))))
                rows.append(row)
            ker = linalg.nullspace(rows)
            y = linalg.combine([_rand(rng, bound) for _ in ker], ker)
            cols += [x, y]
        X = linalg.transpose(cols)
        if len(linalg.left_kernel(_xtilde(X))) == 2:
            return X


# ------------------------------------------------------------- reports


def _form_of(form):
    if isinstance(form, FormResult):
        return form
    if isinstance(form, Polynomial):
        names = [v for v in form.vars.names]
        letter = names[0].split("[")[0] if names else "q"
        from .grassmann import parse_index

        size = len(parse_index(names[0])) if names else 0
        kind = "dual" if letter == "q" else "primal"
        n = max((max(parse_index(v)) for v in names), default=0)
        m = size if kind == "dual" else n - size
        return FormResult(form, (m, n), kind, form.degree() if form.terms else 0)
    raise TypeError("expected a FormResult or Polynomial")


def evaluate_form(form, P) -> object:
    """Exact value of the form at the row space of P."""
    res = _form_of(form)
    P = P.P_matrix if isinstance(P, IncidenceInstance) else linalg.as_matrix(P)
    m, n = res.ambient
    if len(P) != m or any(len(r) != n for r in P):
        raise AmbientMismatch(f"expected a {m} x {n} matrix, got {len(P)} x {len(P[0])}")
    if res.form is None:
        raise ValueError("degenerate result has no form to evaluate")
    if res.coordinate_kind == "dual":
        return dual_coordinates(P).evaluate(res.form, "q")
    return primal_coordinates(P).evaluate(res.form, "p")


def vanishing_report(form, incident, generic, seed=None, form_id: str | None = None, evaluator=None) -> dict:
    """PASS iff the form vanishes at every incident instance and at no generic one.

    ``evaluator(P)`` can replace evaluation of a polynomial form (for
    formulas evaluated directly on a matrix).
    """
    if evaluator is None:
        res = _form_of(form)
        evaluator = lambda P: evaluate_form(res, P)
        form_id = form_id or res.label or "form"
    form_id = form_id or "form"
    failures = []
    for i, inst in enumerate(incident):
        if evaluator(inst.P_matrix if isinstance(inst, IncidenceInstance) else inst) != 0:
            failures.append(i)
    zero_hits = []
    for i, P in enumerate(generic):
        if evaluator(P) == 0:
            zero_hits.append(i)
    verdict = "PASS" if not failures and not zero_hits else "FAIL"
    return {
        "form_id": form_id,
        "seed": seed,
        "version": __version__,
        "incident": {"count": len(incident), "failures": failures},
        "generic": {"count": len(generic), "zero_hits": zero_hits},
        "verdict": verdict,
    }


def verify_form(res: FormResult, spec: VarietySpec, seed: int = 0, incident: int = 20, generic: int = 20,
                bound: int = 1000) -> dict:
    """Vanishing report for ``res`` against sampled instances of ``spec``."""
    rng = random.Random(seed)
    m, n = res.ambient
    inc = [sample_incident(spec, rng, bound, m=m) for _ in range(incident)]
    gen = [sample_generic(m, n, rng, bound) for _ in range(generic)]
    return vanishing_report(res, inc, gen, seed=seed, form_id=res.label or spec.label())


def report_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)
