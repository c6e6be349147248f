"""Exact sparse linear algebra over the rationals.

Vectors are plain dicts ``index -> Fraction`` with no stored zeros.
Matrices keep a row-major dict of dicts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

Vector = Dict[int, Fraction]


class ComplexError(ValueError):
    """Raised when two composable maps do not compose to zero."""


class DimensionError(ValueError):
    pass


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _bits(q: Fraction) -> int:
    return q.numerator.bit_length() + q.denominator.bit_length()


class SparseMatrix:
    """Exact sparse matrix; ``rows x cols`` with entries keyed by ``(row, col)``."""

    __slots__ = ("rows", "cols", "_rows")

    def __init__(self, rows: int, cols: int, entries=None):
        self.rows = rows
        self.cols = cols
        self._rows: Dict[int, Vector] = {}
        if entries:
            items = entries.items() if isinstance(entries, dict) else entries
            for (r, c), v in items:
                self.add(r, c, v)

    def add(self, r: int, c: int, v) -> None:
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise DimensionError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
        v = _frac(v)
        if not v:
            return
        row = self._rows.setdefault(r, {})
        s = row.get(c, 0) + v
        if s:
            row[c] = s
        else:
            del row[c]
            if not row:
                del self._rows[r]

    @classmethod
    def from_dense(cls, data) -> "SparseMatrix":
        data = [list(r) for r in data]
        ncols = len(data[0]) if data else 0
        m = cls(len(data), ncols)
        for i, r in enumerate(data):
            for j, v in enumerate(r):
                m.add(i, j, v)
        return m

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @property
    def entries(self) -> Dict[Tuple[int, int], Fraction]:
        return {(r, c): v for r, row in self._rows.items() for c, v in row.items()}

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def row(self, r: int) -> Vector:
        return dict(self._rows.get(r, {}))

    def row_dicts(self) -> List[Vector]:
        return [dict(row) for _, row in sorted(self._rows.items())]

    def get(self, r: int, c: int) -> Fraction:
        return self._rows.get(r, {}).get(c, Fraction(0))

    def transpose(self) -> "SparseMatrix":
        t = SparseMatrix(self.cols, self.rows)
        for r, row in self._rows.items():
            for c, v in row.items():
                t._rows.setdefault(c, {})[r] = v
        return t

    def columns(self) -> List[Vector]:
        cols: List[Vector] = [dict() for _ in range(self.cols)]
        for r, row in self._rows.items():
            for c, v in row.items():
                cols[c][r] = v
        return cols

    def is_zero(self) -> bool:
        return not self._rows

    def to_dense(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for r, row in self._rows.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def apply(self, v: Vector) -> Vector:
        out: Vector = {}
        for r, row in self._rows.items():
            s = Fraction(0)
            for c, x in row.items():
                y = v.get(c)
                if y:
                    s += x * y
            if s:
                out[r] = s
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}")
        out = SparseMatrix(self.rows, other.cols)
        for r, row in self._rows.items():
            acc: Vector = {}
            for k, a in row.items():
                orow = other._rows.get(k)
                if not orow:
                    continue
                for c, b in orow.items():
                    acc[c] = acc.get(c, 0) + a * b
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                out._rows[r] = acc
        return out

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch")
        out = SparseMatrix(self.rows, self.cols, self.entries)
        for (r, c), v in other.entries.items():
            out.add(r, c, -v)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.entries == other.entries

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"


# ---------- elimination ----------

def _axpy(target: Vector, scale: Fraction, source: Vector) -> None:
    for c, v in source.items():
        s = target.get(c, 0) - scale * v
        if s:
            target[c] = s
        else:
            target.pop(c, None)


class Echelon:
    """Incremental row echelon form.

    Rows are kept normalized (pivot entry 1) and each new row is reduced
    against the pivots in insertion order, so later pivot rows vanish on
    earlier pivot columns. ``allowed`` restricts which columns may become
    pivots (used to keep an augmented column out of the pivot set).
    """

    def __init__(self, allowed: Optional[int] = None):
        self.order: List[int] = []
        self.pivot_rows: Dict[int, Vector] = {}
        self.allowed = allowed

    def reduce(self, vec: Vector) -> Vector:
        v = dict(vec)
        for p in self.order:
            a = v.get(p)
            if a:
                _axpy(v, a, self.pivot_rows[p])
        return v

    def add(self, vec: Vector) -> Optional[int]:
        v = self.reduce(vec)
        cands = [c for c in v if self.allowed is None or c < self.allowed]
        if not cands:
            return None
        # smallest bit-size pivot keeps the coefficients small
        p = min(cands, key=lambda c: (_bits(v[c]), c))
        inv = 1 / v[p]
        v = {c: x * inv for c, x in v.items()}
        self.order.append(p)
        self.pivot_rows[p] = v
        return p

    @property
    def rank(self) -> int:
        return len(self.order)

    def rref(self) -> Dict[int, Vector]:
        """Back-substitute so each pivot column is zero outside its own row."""
        done: List[int] = []
        for p in reversed(self.order):
            row = self.pivot_rows[p]
            for q in done:
                a = row.get(q)
                if a:
                    _axpy(row, a, self.pivot_rows[q])
            done.append(p)
        return self.pivot_rows


def rank(m: SparseMatrix) -> int:
    # eliminate along the shorter side
    rows = m.row_dicts() if m.rows <= m.cols else m.transpose().row_dicts()
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech.rank


def kernel_basis(m: SparseMatrix) -> List[Vector]:
    """Basis of the right null space, one vector per free column."""
    ech = Echelon()
    for r in m.row_dicts():
        ech.add(r)
    piv = ech.rref()
    free = [c for c in range(m.cols) if c not in piv]
    basis = []
    for f in free:
        v: Vector = {f: Fraction(1)}
        for p, row in piv.items():
            a = row.get(f)
            if a:
                v[p] = -a
        basis.append(v)
    return basis


def image_membership(m: SparseMatrix, b: Vector) -> Optional[Vector]:
    """Return ``x`` with ``m x = b`` or ``None`` when ``b`` is not in the image."""
    if any(not (0 <= i < m.rows) for i in b):
        raise DimensionError(f"vector index outside 0..{m.rows - 1}")
    aug = m.cols
    ech = Echelon(allowed=aug)
    for r in range(m.rows):
        v = m.row(r)
        if r in b:
            v[aug] = _frac(b[r])
        if not v:
            continue
        p = ech.add(v)
        if p is None and ech.reduce(v):
            return None
    piv = ech.rref()
    x = {p: row[aug] for p, row in piv.items() if row.get(aug)}
    if m.apply(x) != {k: _frac(v) for k, v in b.items() if v}:
        raise AssertionError("solver produced a non-verifying witness")
    return x


@dataclass
class SubquotientReport:
    dimension: int
    representative_vectors: List[Vector] = field(default_factory=list)
    kernel_dim: int = 0
    image_dim: int = 0

    def __post_init__(self):
        assert self.dimension == self.kernel_dim - self.image_dim >= 0


def span_echelon(vectors: Iterable[Vector]) -> Echelon:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech


def cohomology_at(d_in: SparseMatrix, d_out: SparseMatrix, label=None) -> SubquotientReport:
    """Cohomology ``ker(d_out) / im(d_in)`` of a two-map segment of a complex."""
    if d_in.rows != d_out.cols:
        raise DimensionError(f"middle dimensions differ: {d_in.rows} vs {d_out.cols}")
    if not (d_out @ d_in).is_zero():
        raise ComplexError(f"d∘d != 0 at {label!r}")
    ker = kernel_basis(d_out)
    ech = span_echelon(d_in.columns())
    img_dim = ech.rank
    reps = []
    for v in ker:
        if ech.add(v) is not None:
            reps.append(v)
    return SubquotientReport(len(ker) - img_dim, reps, len(ker), img_dim)


def zero_matrix(rows: int, cols: int) -> SparseMatrix:
    return SparseMatrix(rows, cols)
