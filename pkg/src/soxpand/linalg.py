"""Vectors, matrices and elimination over a shared field context.

Entries are the integer-encoded field elements from gf; containers are
immutable and carry their FieldCtx, which is where mixed-field use gets
caught.  Both inner products live here: the symmetric bilinear one and
the sesquilinear one that conjugates the first slot.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

from .errors import GramSchmidtBreakdown, MixedFieldError, PreconditionError
from .gf import FieldCtx

Form = Literal["euclidean", "hermitian"]

FORMS = ("euclidean", "hermitian")


def _check_form(form: str) -> None:
    if form not in FORMS:
        raise PreconditionError(f"unknown form {form!r}; expected one of {FORMS}")


@dataclass(frozen=True)
class VecF:
    """Immutable vector over a field context."""

    field: FieldCtx
    entries: tuple[int, ...]

    def __post_init__(self):
        q = self.field.q
        if not all(isinstance(e, int) and 0 <= e < q for e in self.entries):
            raise PreconditionError(f"entries must be ints in [0, {q})")

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __add__(self, other: "VecF") -> "VecF":
        _same_field(self.field, other.field)
        if len(other) != len(self):
            raise PreconditionError("vector length mismatch")
        add = self.field.add
        return VecF(self.field, tuple(add(a, b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "VecF") -> "VecF":
        return self + other.scale(self.field.neg(1))

    def scale(self, c: int) -> "VecF":
        mul = self.field.mul
        return VecF(self.field, tuple(mul(c, a) for a in self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def weight(self) -> int:
        return sum(1 for e in self.entries if e)


@dataclass(frozen=True)
class MatF:
    """Immutable matrix: a tuple of row tuples plus an explicit column
    count so zero-row matrices keep their shape."""

    field: FieldCtx
    rows: tuple[tuple[int, ...], ...]
    ncols: int

    def __post_init__(self):
        q = self.field.q
        for row in self.rows:
            if len(row) != self.ncols:
                raise PreconditionError("ragged rows")
            if not all(isinstance(e, int) and 0 <= e < q for e in row):
                raise PreconditionError(f"entries must be ints in [0, {q})")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def row_vecs(self) -> list[VecF]:
        return [VecF(self.field, r) for r in self.rows]


def mat_from_vecs(field: FieldCtx, vecs: Iterable[VecF], ncols: int) -> MatF:
    rows = []
    for v in vecs:
        _same_field(field, v.field)
        rows.append(v.entries)
    return MatF(field, tuple(rows), ncols)


def _same_field(a: FieldCtx, b: FieldCtx) -> None:
    if a is not b and a != b:
        raise MixedFieldError(f"operands from different fields: {a!r} vs {b!r}")


# ---------------------------------------------------------------------------
# inner products


def inner(u: VecF, v: VecF, form: Form) -> int:
    """<u, v>: plain dot product, or with the first slot conjugated.

    The sesquilinear form needs a quadratic-extension context; it is
    linear in v and conjugate-linear in u, and swapping arguments
    conjugates the value.
    """
    _check_form(form)
    _same_field(u.field, v.field)
    if len(u) != len(v):
        raise PreconditionError("vector length mismatch")
    F = u.field
    acc = 0
    if form == "euclidean":
        for a, b in zip(u.entries, v.entries):
            acc = F.add(acc, F.mul(a, b))
        return acc
    if not F.quadratic:
        raise PreconditionError(
            f"hermitian form needs a quadratic extension, got GF({F.q}) with odd degree"
        )
    for a, b in zip(u.entries, v.entries):
        acc = F.add(acc, F.mul(F.conj(a), b))
    return acc


# ---------------------------------------------------------------------------
# elimination


def rref(M: MatF) -> tuple[MatF, int, tuple[int, ...]]:
    """Reduced row echelon form with leftmost pivots.

    Returns (R, rank, pivot columns).  R keeps zero rows at the bottom,
    so it is row-equivalent to M and canonical for the row space.
    """
    F = M.field
    rows = [list(r) for r in M.rows]
    nr, nc = len(rows), M.ncols
    pivots = []
    r = 0
    for col in range(nc):
        piv = next((i for i in range(r, nr) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        iv = F.inv(rows[r][col])
        if iv != 1:
            rows[r] = [F.mul(iv, x) for x in rows[r]]
        for i in range(nr):
            f = rows[i][col]
            if i != r and f:
                rr = rows[r]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rr)]
        pivots.append(col)
        r += 1
        if r == nr:
            break
    return MatF(F, tuple(tuple(row) for row in rows), nc), r, tuple(pivots)


def nullspace(M: MatF) -> MatF:
    """Canonical (RREF) basis of {x : M x^T = 0}, one row per basis vector."""
    F = M.field
    R, rank, pivots = rref(M)
    n = M.ncols
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(R.rows[i][f])
        basis.append(tuple(v))
    if not basis:
        return MatF(F, (), n)
    B, brank, _ = rref(MatF(F, tuple(basis), n))
    assert brank == len(basis)
    return B


def in_rowspace(M: MatF, v: VecF) -> bool:
    """Membership test against any matrix (reduces v by an RREF of M)."""
    _same_field(M.field, v.field)
    if len(v) != M.ncols:
        raise PreconditionError("vector length mismatch")
    R, rank, pivots = rref(M)
    F = M.field
    w = list(v.entries)
    for i, pc in enumerate(pivots):
        f = w[pc]
        if f:
            row = R.rows[i]
            w = [F.sub(x, F.mul(f, y)) for x, y in zip(w, row)]
    return not any(w)


def extend_basis(inner_rows: MatF, ambient_rows: MatF) -> MatF:
    """Rows of ambient_rows that greedily extend inner_rows to a basis
    of the ambient row space.

    Both inputs must have full row rank and row space of inner_rows must
    sit inside that of ambient_rows.  The returned rows are ambient rows
    verbatim, scanned in order, keeping those that raise the rank.
    """
    F = inner_rows.field
    _same_field(F, ambient_rows.field)
    if inner_rows.ncols != ambient_rows.ncols:
        raise PreconditionError("column count mismatch")
    _, r_in, _ = rref(inner_rows)
    if r_in != inner_rows.nrows:
        raise PreconditionError("inner rows are not independent")
    _, r_amb, _ = rref(ambient_rows)
    if r_amb != ambient_rows.nrows:
        raise PreconditionError("ambient rows are not independent")
    for v in inner_rows.row_vecs():
        if not in_rowspace(ambient_rows, v):
            raise PreconditionError("inner row space not contained in ambient row space")

    # incremental elimination state: rows in echelon form keyed by pivot
    acc: dict[int, tuple[int, ...]] = {}

    def try_add(row: tuple[int, ...]) -> bool:
        w = list(row)
        for pc, er in sorted(acc.items()):
            f = w[pc]
            if f:
                w = [F.sub(x, F.mul(f, y)) for x, y in zip(w, er)]
        lead = next((i for i, x in enumerate(w) if x), None)
        if lead is None:
            return False
        iv = F.inv(w[lead])
        acc[lead] = tuple(F.mul(iv, x) for x in w)
        return True

    for row in inner_rows.rows:
        assert try_add(row)
    kept = [row for row in ambient_rows.rows if try_add(row)]
    return MatF(F, tuple(kept), ambient_rows.ncols)


def gram_schmidt(
    vectors: Sequence[VecF], form: Form, start_orthogonal: Sequence[VecF] = ()
) -> list[VecF]:
    """Sequentially orthogonalize vectors under the given form.

    Directions already produced (and any start_orthogonal vectors) are
    subtracted off with coefficient <d, v>/<d, d>, taken in the first
    slot so the sesquilinear case stays consistent.  Subtracting against
    a direction with zero self-inner-product is impossible; that raises
    GramSchmidtBreakdown, which callers treat as a short-circuit signal,
    not a failure.  Already-orthogonal input comes back unchanged.
    """
    _check_form(form)
    ortho = list(start_orthogonal)
    out = []
    for v in vectors:
        w = v
        for d in ortho:
            c = inner(d, w, form)
            if c == 0:
                continue
            dd = inner(d, d, form)
            if dd == 0:
                raise GramSchmidtBreakdown(
                    "needed direction has zero self-inner-product"
                )
            w = w - d.scale(d.field.div(c, dd))
        ortho.append(w)
        out.append(w)
    return out
