"""Dense and sparse exact matrices over the rational-function field.

``RMatrix`` is a small dense matrix for representation checks (dimensions
2..9 here); ``SparseOp`` holds truncated Fock-space operators.  Entries are
Rat (or anything ring-like); no floats.
"""

from __future__ import annotations

from fractions import Fraction

from .ratfield import Poly, Rat


def _as_entry(x):
    if isinstance(x, Rat):
        return x
    if isinstance(x, Poly):
        return Rat(x)
    return Rat.const(x)


class RMatrix:
    __slots__ = ("rows", "shape")

    def __init__(self, rows):
        self.rows = tuple(tuple(_as_entry(x) for x in r) for r in rows)
        self.shape = (len(self.rows), len(self.rows[0]) if self.rows else 0)

    @staticmethod
    def zero(n, m=None):
        m = n if m is None else m
        z = Rat.zero()
        return RMatrix([[z] * m for _ in range(n)])

    @staticmethod
    def identity(n):
        z, o = Rat.zero(), Rat.one()
        return RMatrix([[o if i == j else z for j in range(n)] for i in range(n)])

    @staticmethod
    def unit(n, i, j, value=1):
        rows = [[Rat.zero()] * n for _ in range(n)]
        rows[i][j] = _as_entry(value)
        return RMatrix(rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, RMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def is_zero(self):
        return all(x.is_zero() for r in self.rows for x in r)

    def __add__(self, other):
        return RMatrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ]
        )

    def __neg__(self):
        return RMatrix([[-a for a in r] for r in self.rows])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (Rat, Poly, int, Fraction)):
            s = _as_entry(other)
            return RMatrix([[a * s for a in r] for r in self.rows])
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = Rat.zero()
                for a, b in zip(r, c):
                    if not (a.is_zero() or b.is_zero()):
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return RMatrix(out)

    __rmul__ = __mul__

    def kron(self, other):
        out = []
        for r1 in self.rows:
            for r2 in other.rows:
                out.append([a * b for a in r1 for b in r2])
        return RMatrix(out)

    def trace(self):
        acc = Rat.zero()
        for i in range(self.shape[0]):
            acc = acc + self.rows[i][i]
        return acc

    def transpose(self):
        return RMatrix(list(zip(*self.rows)))

    def inverse(self):
        n, m = self.shape
        if n != m:
            raise ValueError("inverse of non-square matrix")
        aug = [list(r) + list(RMatrix.identity(n).rows[i]) for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = next(
                (r for r in range(col, n) if not aug[r][col].is_zero()), None
            )
            if piv is None:
                raise ValueError("singular matrix")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = Rat.one() / aug[col][col]
            aug[col] = [x * inv for x in aug[col]]
            for r in range(n):
                if r != col and not aug[r][col].is_zero():
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return RMatrix([r[n:] for r in aug])

    def subs(self, mapping):
        return RMatrix([[x.subs(mapping) for x in r] for r in self.rows])

    def eval_complex(self, env):
        import numpy as np

        return np.array(
            [[x.eval_complex(env) for x in r] for r in self.rows], dtype=complex
        )

    def commutator(self, other):
        return self * other - other * self

    def __repr__(self):
        body = "; ".join(", ".join(repr(x) for x in r) for r in self.rows)
        return f"[{body}]"


def commutator(a, b):
    return a * b - b * a


def anticommutator(a, b):
    return a * b + b * a


class SparseOp:
    """Sparse operator on an indexed basis: {(row, col): Rat}."""

    __slots__ = ("dim", "entries")

    def __init__(self, dim, entries=None):
        self.dim = dim
        self.entries = {}
        if entries:
            for k, v in entries.items():
                if not v.is_zero():
                    self.entries[k] = v

    @staticmethod
    def zero(dim):
        return SparseOp(dim)

    @staticmethod
    def identity(dim):
        o = Rat.one()
        return SparseOp(dim, {(i, i): o for i in range(dim)})

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        return self.dim == other.dim and self.entries == other.entries

    def __add__(self, other):
        out = dict(self.entries)
        for k, v in other.entries.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return SparseOp(self.dim, out)

    def __neg__(self):
        return SparseOp(self.dim, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (Rat, Poly, int, Fraction)):
            s = _as_entry(other)
            if s.is_zero():
                return SparseOp(self.dim)
            return SparseOp(self.dim, {k: v * s for k, v in self.entries.items()})
        by_row = {}
        for (i, k), v in other.entries.items():
            by_row.setdefault(i, []).append((k, v))
        out = {}
        for (i, k), v in self.entries.items():
            for (j, w) in by_row.get(k, ()):
                key = (i, j)
                p = v * w
                if key in out:
                    out[key] = out[key] + p
                else:
                    out[key] = p
        return SparseOp(self.dim, out)

    __rmul__ = __mul__

    def commutator(self, other):
        return self * other - other * self

    def anticommutator(self, other):
        return self * other + other * self

    def restrict(self, keep_rows, keep_cols=None):
        """Zero out entries outside the kept row/col index sets."""
        keep_cols = keep_rows if keep_cols is None else keep_cols
        return SparseOp(
            self.dim,
            {
                (i, j): v
                for (i, j), v in self.entries.items()
                if i in keep_rows and j in keep_cols
            },
        )

    def apply_column(self, j):
        """Column j as {row: value}."""
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def nnz(self):
        return len(self.entries)

    def __repr__(self):
        return f"<SparseOp dim={self.dim} nnz={self.nnz()}>"
