"""Linear codes with canonical generator matrices.

A LinearCode is a row space: its generator matrix is stored in reduced
row echelon form with zero rows dropped, so two codes are equal exactly
when their row spaces are.  The zero code (k = 0) is a valid value and
the starting point for expansion towers.

Duals exist for both forms.  The conjugate-inner-product dual is the
nullspace of the entrywise conjugated generator matrix: x is orthogonal
to every codeword c precisely when sum(conj(c_i) * x_i) = 0 for the
generators, and swapping slots only conjugates the value, so one
membership test covers both argument orders.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from .errors import CapExceededError, DistanceUndefinedError, PreconditionError
from .gf import FieldCtx
from .linalg import Form, MatF, VecF, _check_form, _same_field, inner, nullspace, rref

DEFAULT_DISTANCE_CAP = 10**7


@dataclass(frozen=True)
class LinearCode:
    field: FieldCtx
    n: int
    k: int
    gen: MatF

    @staticmethod
    def from_rows(field: FieldCtx, rows, n: int | None = None) -> "LinearCode":
        """Build a code from generator rows (any spanning set).

        Rows are canonicalized to RREF and zero rows dropped; the
        declared dimension is whatever the rank turns out to be.  For an
        empty row collection, n must be given to fix the length.
        """
        checked = []
        for r in rows:
            if isinstance(r, VecF):
                _same_field(field, r.field)
                checked.append(r.entries)
            else:
                checked.append(tuple(r))
        rows = checked
        if rows:
            length = len(rows[0])
            if n is not None and n != length:
                raise PreconditionError("declared length disagrees with rows")
        else:
            if n is None:
                raise PreconditionError("empty generator needs an explicit length")
            length = n
        if length < 1:
            raise PreconditionError("code length must be at least 1")
        M = MatF(field, tuple(rows), length)
        R, rank, _ = rref(M)
        return LinearCode(field, length, rank, MatF(field, R.rows[:rank], length))

    # -- structure ---------------------------------------------------------

    def codeword(self, message: tuple[int, ...]) -> VecF:
        if len(message) != self.k:
            raise PreconditionError("message length must equal the dimension")
        F = self.field
        acc = [0] * self.n
        for c, row in zip(message, self.gen.rows):
            if c:
                acc = [F.add(x, F.mul(c, y)) for x, y in zip(acc, row)]
        return VecF(F, tuple(acc))

    def contains(self, v: VecF) -> bool:
        _same_field(self.field, v.field)
        if len(v) != self.n:
            raise PreconditionError("vector length mismatch")
        F = self.field
        w = list(v.entries)
        for row in self.gen.rows:
            pc = next(i for i, x in enumerate(row) if x)
            f = w[pc]
            if f:
                w = [F.sub(x, F.mul(f, y)) for x, y in zip(w, row)]
        return not any(w)

    def is_subcode_of(self, other: "LinearCode") -> bool:
        _same_field(self.field, other.field)
        if self.n != other.n:
            raise PreconditionError("length mismatch")
        return all(other.contains(v) for v in self.gen.row_vecs())

    def dual(self, form: Form) -> "LinearCode":
        """The orthogonal complement under the chosen form; [n, n-k]."""
        _check_form(form)
        F = self.field
        if form == "euclidean":
            M = self.gen
        else:
            if not F.quadratic:
                raise PreconditionError(
                    f"hermitian dual needs a quadratic extension, got GF({F.q})"
                )
            M = MatF(F, tuple(tuple(F.conj(e) for e in row) for row in self.gen.rows), self.n)
        N = nullspace(M)
        return LinearCode(F, self.n, N.nrows, N)

    def is_self_orthogonal(self, form: Form) -> bool:
        """Gram-matrix check over the generators (diagonal included)."""
        rows = self.gen.row_vecs()
        for i, u in enumerate(rows):
            for v in rows[i:]:
                if inner(u, v, form) != 0:
                    return False
        return True

    def is_self_dual(self, form: Form) -> bool:
        return 2 * self.k == self.n and self.is_self_orthogonal(form)

    # -- enumeration ---------------------------------------------------------

    def codewords(self, cap: int = DEFAULT_DISTANCE_CAP) -> Iterator[VecF]:
        """All q^k codewords in lexicographic message order."""
        self._check_cap(cap)
        F, q = self.field, self.field.q
        rows = self.gen.rows

        def walk(level: int, acc: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
            if level == len(rows):
                yield acc
                return
            row = rows[level]
            for c in range(q):
                if c == 0:
                    nxt = acc
                else:
                    nxt = tuple(F.add(x, F.mul(c, y)) for x, y in zip(acc, row))
                yield from walk(level + 1, nxt)

        for entries in walk(0, (0,) * self.n):
            yield VecF(F, entries)

    def min_distance(self, cap: int = DEFAULT_DISTANCE_CAP, workers: int = 1) -> int:
        """Exact minimum weight by enumerating all nonzero codewords.

        Undefined for the zero code.  The message space must fit under
        cap; workers > 1 splits the leading message symbol across a
        thread pool (a pure min-reduction, so the result does not depend
        on the split).
        """
        if self.k == 0:
            raise DistanceUndefinedError("the zero code has no nonzero codeword")
        self._check_cap(cap)
        F, q = self.field, self.field.q
        rows = self.gen.rows

        def scan(first_range) -> int:
            best = self.n + 1
            top = rows[0]

            def walk(level: int, acc: tuple[int, ...]) -> None:
                nonlocal best
                if level == len(rows):
                    w = sum(1 for x in acc if x)
                    if 0 < w < best:
                        best = w
                    return
                row = rows[level]
                walk(level + 1, acc)
                for c in range(1, q):
                    walk(level + 1, tuple(F.add(x, F.mul(c, y)) for x, y in zip(acc, row)))

            zero = (0,) * self.n
            for c0 in first_range:
                acc = zero if c0 == 0 else tuple(F.mul(c0, y) for y in top)
                walk(1, acc)
            return best

        if workers <= 1 or self.k == 0:
            return scan(range(q))
        chunks = [range(i, q, workers) for i in range(min(workers, q))]
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            return min(pool.map(scan, chunks))

    def weight_distribution(self, cap: int = DEFAULT_DISTANCE_CAP) -> dict[int, int]:
        """Map weight -> number of codewords of that weight."""
        self._check_cap(cap)
        out: dict[int, int] = {}
        for w in (v.weight() for v in self.codewords(cap)):
            out[w] = out.get(w, 0) + 1
        return dict(sorted(out.items()))

    def _check_cap(self, cap: int) -> None:
        if self.field.q**self.k > cap:
            raise CapExceededError(
                f"enumerating {self.field.q}^{self.k} codewords exceeds cap {cap}"
            )

    # -- misc ----------------------------------------------------------------

    def flat(self) -> tuple[int, ...]:
        """Deterministic sort/tie-break key: the flattened generator."""
        return tuple(itertools.chain.from_iterable(self.gen.rows))

    def __repr__(self) -> str:
        return f"[{self.n},{self.k}] over GF({self.field.q})"


@dataclass(frozen=True)
class CodePair:
    """A code bundled with its dual under a fixed form."""

    code: LinearCode
    dual: LinearCode
    form: Form


def dual_pair(code: LinearCode, form: Form) -> CodePair:
    return CodePair(code, code.dual(form), form)


def zero_code(field: FieldCtx, n: int) -> LinearCode:
    return LinearCode.from_rows(field, (), n=n)
