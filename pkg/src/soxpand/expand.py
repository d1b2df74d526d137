"""Growing self-orthogonal codes one dimension at a time.

Every expansion step follows the same plan: take a basis of the input
code C, extend it by rows of the dual to a basis of the dual, and hunt
inside the complement block (the "beta" vectors) for a vector gamma that
is isotropic for the working form; C plus gamma is then self-orthogonal
again with dimension k+1.  Which hunt succeeds is recorded as a branch:

  direct-beta     some extension-row beta_i is already isotropic
  gs-gamma2-null  after orthogonalizing beta1, beta2 the second vector
                  became isotropic
  gs-gamma3-null  same for the third vector (odd characteristic route)
  norm-solve      conjugate form: t chosen with t^(q+1) equal to the
                  ratio -<g2,g2>/<g1,g1>, gamma = t*g1 + g2
  char2-sqrt      characteristic 2: gamma = g1 + s*g2 with s the unique
                  square root of <g1,g1>/<g2,g2>
  diag-quadratic  odd characteristic: gamma = g1 + s*g2 + t*g3 with
                  (s, t) from the diagonal quadratic solver
  boundary-square even-length edge n = 2k+2, odd characteristic: gamma =
                  g1 + s*g2 exists iff -<g1,g1><g2,g2> is a square, and
                  the result is self-dual

A reproducible variant achieves variety by seed-shuffling the dual rows
before the basis extension (and picking a seeded norm-equation solution);
without a seed every choice is the smallest-encoding one.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .code import DEFAULT_DISTANCE_CAP, LinearCode, zero_code
from .errors import CapExceededError, NoExpansionError, PreconditionError
from .gf import FieldCtx
from .linalg import Form, MatF, VecF, _check_form, extend_basis, gram_schmidt, inner

DEFAULT_ORACLE_CAP = 10**6

BRANCHES = (
    "direct-beta",
    "gs-gamma2-null",
    "gs-gamma3-null",
    "norm-solve",
    "char2-sqrt",
    "diag-quadratic",
    "boundary-square",
)


@dataclass(frozen=True)
class ExpansionReport:
    """One verified expansion step: output = input + new_vector."""

    input: LinearCode
    output: LinearCode
    form: Form
    branch: str
    new_vector: VecF
    witness: tuple[int, ...]


@dataclass(frozen=True)
class BoundaryVerdict:
    """Decision for the odd-characteristic n = 2k+2 edge.

    square_class_witness is -det(Gram(beta1, beta2)); its square class
    does not depend on the basis choice and expandable holds exactly
    when the witness is a square (0 included).  On success the result is
    self-dual and the step is available as a full report.
    """

    expandable: bool
    square_class_witness: int
    result: LinearCode | None
    report: ExpansionReport | None


@dataclass(frozen=True)
class Tower:
    """A maximal chain of expansion steps from start to terminal."""

    start: LinearCode
    terminal: LinearCode
    steps: tuple[ExpansionReport, ...]
    l: int
    r_steps: int
    boundary_attempt: BoundaryVerdict | None


# ---------------------------------------------------------------------------
# shared plumbing


def _require_self_orthogonal(C: LinearCode, form: Form) -> None:
    if not C.is_self_orthogonal(form):
        raise PreconditionError(f"input code must be self-orthogonal under the {form} form")


def _require_quadratic(field: FieldCtx) -> None:
    if not field.quadratic:
        raise PreconditionError(
            f"the hermitian form needs a quadratic extension, got GF({field.q})"
        )


def _complement_basis(C: LinearCode, form: Form, rng: random.Random | None) -> list[VecF]:
    """Extend a basis of C to one of its dual; the n-2k extension rows."""
    D = C.dual(form)
    rows = list(D.gen.rows)
    if rng is not None:
        rng.shuffle(rows)
    ext = extend_basis(C.gen, MatF(C.field, tuple(rows), C.n))
    return ext.row_vecs()


def _finish(
    C: LinearCode, form: Form, branch: str, gamma: VecF, witness: tuple[int, ...]
) -> ExpansionReport:
    output = LinearCode.from_rows(C.field, C.gen.rows + (gamma.entries,), n=C.n)
    # the construction cannot fail under the preconditions; check anyway
    assert output.k == C.k + 1
    assert C.is_subcode_of(output)
    assert output.is_self_orthogonal(form)
    assert inner(gamma, gamma, form) == 0
    assert C.dual(form).contains(gamma) and not C.contains(gamma)
    return ExpansionReport(C, output, form, branch, gamma, witness)


# ---------------------------------------------------------------------------
# one-step expansion


def expand_hermitian(C: LinearCode, rng_seed: int | None = None) -> ExpansionReport:
    """One expansion step under the conjugate form; needs n > 2k+1.

    Either some extension row is already isotropic, or two of them are
    orthogonalized and the norm equation t^(base_q+1) = -<g2,g2>/<g1,g1>
    always has a solution, giving gamma = t*g1 + g2.
    """
    F = C.field
    _require_quadratic(F)
    _require_self_orthogonal(C, "hermitian")
    if C.n <= 2 * C.k + 1:
        raise PreconditionError(
            f"hermitian expansion requires n > 2k+1, got n={C.n}, k={C.k}"
            " (a self-orthogonal code cannot exceed half the length)"
        )
    rng = random.Random(rng_seed) if rng_seed is not None else None
    betas = _complement_basis(C, "hermitian", rng)
    for b in betas:
        if inner(b, b, "hermitian") == 0:
            return _finish(C, "hermitian", "direct-beta", b, ())
    g1, g2 = gram_schmidt(betas[:2], "hermitian")
    g11 = inner(g1, g1, "hermitian")
    g22 = inner(g2, g2, "hermitian")
    c = F.neg(F.div(g22, g11))
    sols = F.solve_norm(c)
    t0 = rng.choice(sols) if rng is not None else sols[0]
    gamma = g1.scale(t0) + g2
    return _finish(C, "hermitian", "norm-solve", gamma, (t0,))


def expand_euclidean(C: LinearCode, rng_seed: int | None = None) -> ExpansionReport:
    """One expansion step under the plain form.

    Needs n >= 2k+3 in odd characteristic (three extension rows) and
    n >= 2k+2 in characteristic 2 (two suffice).  The odd-characteristic
    even-length edge n = 2k+2 is deliberately not handled here; that
    case may be impossible and is decided by try_expand_boundary.
    """
    F = C.field
    _require_self_orthogonal(C, "euclidean")
    if F.p == 2:
        if C.n < 2 * C.k + 2:
            raise PreconditionError(
                f"expansion in characteristic 2 requires n >= 2k+2, got n={C.n}, k={C.k}"
            )
    else:
        if C.n == 2 * C.k + 2:
            raise PreconditionError(
                "n = 2k+2 in odd characteristic is the boundary case;"
                " use try_expand_boundary, which decides it"
            )
        if C.n < 2 * C.k + 3:
            raise PreconditionError(
                f"expansion in odd characteristic requires n >= 2k+3, got n={C.n}, k={C.k}"
            )
    rng = random.Random(rng_seed) if rng_seed is not None else None
    betas = _complement_basis(C, "euclidean", rng)
    for b in betas:
        if inner(b, b, "euclidean") == 0:
            return _finish(C, "euclidean", "direct-beta", b, ())
    g1, g2 = gram_schmidt(betas[:2], "euclidean")
    g22 = inner(g2, g2, "euclidean")
    if g22 == 0:
        return _finish(C, "euclidean", "gs-gamma2-null", g2, ())
    g11 = inner(g1, g1, "euclidean")
    if F.p == 2:
        s0 = F.sqrt(F.div(g11, g22))
        gamma = g1 + g2.scale(s0)
        return _finish(C, "euclidean", "char2-sqrt", gamma, (s0,))
    (g3,) = gram_schmidt(betas[2:3], "euclidean", start_orthogonal=[g1, g2])
    g33 = inner(g3, g3, "euclidean")
    if g33 == 0:
        return _finish(C, "euclidean", "gs-gamma3-null", g3, ())
    s0, t0 = F.solve_diag_quadratic(g11, g22, g33)
    gamma = g1 + g2.scale(s0) + g3.scale(t0)
    return _finish(C, "euclidean", "diag-quadratic", gamma, (s0, t0))


def try_expand_boundary(C: LinearCode, rng_seed: int | None = None) -> BoundaryVerdict:
    """Decide the odd-characteristic n = 2k+2 case.

    The two extension rows span a plane on which the form is
    nondegenerate modulo C; an isotropic vector exists in it exactly
    when -det(Gram(beta1, beta2)) is a square.  A successful expansion
    lands on dimension n/2, so the result is always self-dual.
    """
    F = C.field
    if F.p == 2:
        raise PreconditionError("the boundary case concerns odd characteristic only")
    _require_self_orthogonal(C, "euclidean")
    if C.n != 2 * C.k + 2:
        raise PreconditionError(
            f"boundary decision applies exactly when n = 2k+2, got n={C.n}, k={C.k}"
        )
    rng = random.Random(rng_seed) if rng_seed is not None else None
    b1, b2 = _complement_basis(C, "euclidean", rng)
    g11 = inner(b1, b1, "euclidean")
    g12 = inner(b1, b2, "euclidean")
    g22 = inner(b2, b2, "euclidean")
    witness = F.neg(F.sub(F.mul(g11, g22), F.mul(g12, g12)))
    if g11 == 0 or g22 == 0:
        report = _finish(C, "euclidean", "direct-beta", b1 if g11 == 0 else b2, ())
    else:
        g1, g2 = gram_schmidt([b1, b2], "euclidean")
        c22 = inner(g2, g2, "euclidean")
        if c22 == 0:
            report = _finish(C, "euclidean", "gs-gamma2-null", g2, ())
        else:
            c11 = inner(g1, g1, "euclidean")
            s0 = F.sqrt(F.neg(F.div(c11, c22)))
            if s0 is None:
                assert not F.is_square(witness)
                return BoundaryVerdict(False, witness, None, None)
            report = _finish(
                C, "euclidean", "boundary-square", g1 + g2.scale(s0), (s0,)
            )
    assert F.is_square(witness)
    assert report.output.is_self_dual("euclidean")
    return BoundaryVerdict(True, witness, report.output, report)


# ---------------------------------------------------------------------------
# towers


def _step_allowed(C: LinearCode, form: Form) -> bool:
    if form == "hermitian":
        return C.n > 2 * C.k + 1
    if C.field.p == 2:
        return C.n >= 2 * C.k + 2
    return C.n >= 2 * C.k + 3


def tower(
    C: LinearCode,
    form: Form,
    rng_seed: int | None = None,
    attempt_boundary: bool = False,
) -> Tower:
    """Expand until no step hypothesis holds; optionally try the boundary edge.

    Terminal dimensions are forced: (n-1)/2 for odd n under either form,
    n/2 - 1 for odd characteristic with even n (n/2 after a successful
    boundary attempt), n/2 for characteristic 2 or the conjugate form
    with even n.
    """
    _check_form(form)
    if form == "hermitian":
        _require_quadratic(C.field)
    _require_self_orthogonal(C, form)
    master = random.Random(rng_seed) if rng_seed is not None else None

    def step_seed() -> int | None:
        return master.randrange(2**32) if master is not None else None

    steps: list[ExpansionReport] = []
    cur = C
    while _step_allowed(cur, form):
        if form == "hermitian":
            rep = expand_hermitian(cur, step_seed())
        else:
            rep = expand_euclidean(cur, step_seed())
        steps.append(rep)
        cur = rep.output
    verdict = None
    if (
        attempt_boundary
        and form == "euclidean"
        and C.field.p != 2
        and cur.n == 2 * cur.k + 2
    ):
        verdict = try_expand_boundary(cur, step_seed())
        if verdict.expandable:
            steps.append(verdict.report)
            cur = verdict.report.output
    return Tower(
        start=C,
        terminal=cur,
        steps=tuple(steps),
        l=C.n - 2 * C.k,
        r_steps=len(steps),
        boundary_attempt=verdict,
    )


# ---------------------------------------------------------------------------
# exhaustive oracle


def enumerate_expansions(
    C: LinearCode, form: Form, cap: int = DEFAULT_ORACLE_CAP
) -> list[LinearCode]:
    """Every self-orthogonal [n, k+1] code containing C, no assumptions.

    Candidates are one representative per coset of C inside its dual
    (the self-inner-product is constant on each coset), so q^(n-2k)
    vectors decide everything; distinct supersets are deduplicated by
    canonical generator and returned sorted by it.
    """
    _check_form(form)
    F = C.field
    if form == "hermitian":
        _require_quadratic(F)
    _require_self_orthogonal(C, form)
    l = C.n - 2 * C.k
    if F.q**l > cap:
        raise CapExceededError(f"coset count {F.q}^{l} exceeds cap {cap}")
    betas = _complement_basis(C, form, None)
    found: dict[tuple[int, ...], LinearCode] = {}
    for combo in itertools.product(range(F.q), repeat=l):
        if not any(combo):
            continue
        v = VecF(F, (0,) * C.n)
        for c, b in zip(combo, betas):
            if c:
                v = v + b.scale(c)
        if inner(v, v, form) != 0:
            continue
        cand = LinearCode.from_rows(F, C.gen.rows + (v.entries,), n=C.n)
        found[cand.flat()] = cand
    return [found[key] for key in sorted(found)]


def best_expansion(
    C: LinearCode,
    form: Form,
    cap: int = DEFAULT_ORACLE_CAP,
    distance_cap: int = DEFAULT_DISTANCE_CAP,
    workers: int = 1,
) -> tuple[LinearCode, int]:
    """The expansion with the largest minimum distance.

    Ties break toward the smallest flattened generator encoding; raises
    NoExpansionError when no expansion exists at all.
    """
    cands = enumerate_expansions(C, form, cap)
    if not cands:
        raise NoExpansionError(f"no self-orthogonal [{C.n},{C.k + 1}] superset exists")
    best: LinearCode | None = None
    best_d = -1
    for cand in cands:  # already sorted by flat()
        d = cand.min_distance(distance_cap, workers)
        if d > best_d:
            best, best_d = cand, d
    return best, best_d


# ---------------------------------------------------------------------------
# structural extras


def selfdual_obstruction(q: int, k: int) -> bool:
    """Whether no self-dual [2k+2, k+1] code exists over GF(q) at all.

    Holds exactly when q = 3 mod 4 and k is even: a self-dual code of
    even dimension half forces -1 to be a square.  Only odd field sizes
    carry the claim; even q raises.
    """
    if q < 3:
        raise PreconditionError(f"field size {q} too small")
    p = next((d for d in range(2, q + 1) if q % d == 0), q)
    qq = q
    while qq % p == 0:
        qq //= p
    if qq != 1:
        raise PreconditionError(f"{q} is not a prime power")
    if q % 2 == 0:
        raise PreconditionError("no obstruction claim applies to even field sizes")
    if k < 0:
        raise PreconditionError("k must be nonnegative")
    return q % 4 == 3 and k % 2 == 0


def remark_quad_expand(a: VecF) -> LinearCode:
    """Close a self-orthogonal length-4 vector to a self-dual [4,2].

    For a = (a1, a2, a3, a4) with sum of squares zero and a1*a2 != 0,
    the companion row (-a3, -a4, a1, a2) is orthogonal to a and
    isotropic, giving a self-dual code.  Rejected when the companion is
    a scalar multiple of a (which happens exactly for the family
    a3 = -l*a1, a4 = -l*a2 with l^2 = -1).
    """
    F = a.field
    if len(a) != 4:
        raise PreconditionError("the vector must have length exactly 4")
    if inner(a, a, "euclidean") != 0:
        raise PreconditionError("the vector must be isotropic (sum of squares zero)")
    if a[0] == 0 or a[1] == 0:
        raise PreconditionError("the first two entries must be nonzero")
    companion = (F.neg(a[2]), F.neg(a[3]), a[0], a[1])
    C = LinearCode.from_rows(F, (a.entries, companion))
    if C.k != 2:
        raise PreconditionError(
            "degenerate quadruple: the companion row is a scalar multiple of the input"
        )
    assert C.is_self_dual("euclidean")
    return C


def random_self_orthogonal(
    field: FieldCtx, n: int, k: int, form: Form, seed: int | None = None
) -> LinearCode:
    """A reproducible self-orthogonal [n, k]: k seeded expansion steps
    from the zero code.

    Admissible shapes are those every step's hypothesis allows:
    n >= 2k for the conjugate form and characteristic 2, n >= 2k+1
    otherwise.
    """
    _check_form(form)
    if form == "hermitian":
        _require_quadratic(field)
        need = 2 * k
    elif field.p == 2:
        need = 2 * k
    else:
        need = 2 * k + 1 if k else 0
    if k < 0 or n < max(need, 1):
        raise PreconditionError(
            f"no [{n},{k}] self-orthogonal code is reachable by expansion steps"
        )
    master = random.Random(seed)
    cur = zero_code(field, n)
    for _ in range(k):
        sub = master.randrange(2**32)
        if form == "hermitian":
            cur = expand_hermitian(cur, sub).output
        else:
            cur = expand_euclidean(cur, sub).output
    return cur
