"""Exact sparse linear algebra over the rationals and over prime fields.

Everything downstream (coalgebra validation, cobar ranks, coresolutions,
module Ext) reduces to rank / kernel / solve on sparse matrices whose entries
are exact field elements: ``fractions.Fraction`` over the rationals, Python
ints in ``[0, p)`` over GF(p).  No floats anywhere.

Rank uses destructive fraction-free elimination (integer rows with gcd
reduction over the rationals, modular arithmetic over GF(p)) with a
Markowitz-style pivot rule: pick a column with minimal active count, then the
sparsest row in that column, ties broken by (row, col) index.  Kernel bases,
solving and reduced echelon forms use straight field arithmetic; in this
package they only ever run on the smaller matrices of a pipeline.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class Field:
    """A coefficient field: the rationals or GF(p) for a prime p < 2**31."""

    __slots__ = ("kind", "p")

    def __init__(self, kind, p=None):
        self.kind = kind
        self.p = p

    @staticmethod
    def rationals():
        return _QQ

    @staticmethod
    def prime(p):
        if not isinstance(p, int) or p < 2 or p >= 2**31:
            raise ValueError("prime field characteristic must be an int in [2, 2**31)")
        d = 2
        while d * d <= p:
            if p % d == 0:
                raise ValueError("%d is not prime" % p)
            d += 1
        return Field("prime", p)

    # -- scalar arithmetic ------------------------------------------------
    @property
    def zero(self):
        return _FR0 if self.kind == "rationals" else 0

    @property
    def one(self):
        return _FR1 if self.kind == "rationals" else 1

    def add(self, a, b):
        return a + b if self.kind == "rationals" else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.kind == "rationals" else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.kind == "rationals" else (a * b) % self.p

    def neg(self, a):
        return -a if self.kind == "rationals" else (-a) % self.p

    def inv(self, a):
        if self.kind == "rationals":
            return _FR1 / a
        return pow(a, -1, self.p)

    def div(self, a, b):
        if self.kind == "rationals":
            return a / b
        return (a * pow(b, -1, self.p)) % self.p

    def from_int(self, n):
        return Fraction(n) if self.kind == "rationals" else n % self.p

    def coerce(self, v):
        """Coerce an int, Fraction or string into a field element."""
        if isinstance(v, bool):
            raise ValueError("booleans are not scalars")
        if isinstance(v, Fraction):
            if self.kind == "rationals":
                return v
            return self.div(self.from_int(v.numerator), self.from_int(v.denominator))
        if isinstance(v, int):
            return self.from_int(v)
        if isinstance(v, str):
            if self.kind == "rationals":
                return Fraction(v)
            if "/" in v:
                num, den = v.split("/", 1)
                return self.div(self.from_int(int(num)), self.from_int(int(den)))
            return self.from_int(int(v))
        raise ValueError("cannot coerce scalar %r" % (v,))

    def parse(self, token):
        return self.coerce(token)

    def format(self, x):
        """JSON-friendly form: int when possible, else "a/b"."""
        if self.kind == "rationals":
            return int(x) if x.denominator == 1 else str(x)
        return int(x)

    def characteristic(self):
        return 0 if self.kind == "rationals" else self.p

    def label(self):
        if self.kind == "rationals":
            return {"kind": "rationals"}
        return {"kind": "prime", "p": self.p}

    def __eq__(self, other):
        return isinstance(other, Field) and self.kind == other.kind and self.p == other.p

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return "QQ" if self.kind == "rationals" else "GF(%d)" % self.p


_FR0 = Fraction(0)
_FR1 = Fraction(1)
_QQ = Field("rationals")
QQ = _QQ


def GF(p):
    return Field.prime(p)


def field_from_label(label):
    kind = label.get("kind")
    if kind == "rationals":
        return QQ
    if kind == "prime":
        return GF(label["p"])
    raise ValueError("unknown field label %r" % (label,))


class Matrix:
    """Immutable sparse matrix: nonzero entries in a dict keyed by (row, col)."""

    __slots__ = ("field", "nrows", "ncols", "entries")

    def __init__(self, field, nrows, ncols, entries):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.entries = entries  # owned; callers must not mutate

    # -- constructors ------------------------------------------------------
    @staticmethod
    def zeros(field, nrows, ncols):
        return Matrix(field, nrows, ncols, {})

    @staticmethod
    def identity(field, n):
        one = field.one
        return Matrix(field, n, n, {(i, i): one for i in range(n)})

    @staticmethod
    def from_entries(field, nrows, ncols, items):
        """items: iterable of (row, col, value); repeated keys accumulate."""
        zero = field.zero
        entries = {}
        for r, c, v in items:
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise ValueError("entry (%d,%d) outside %dx%d" % (r, c, nrows, ncols))
            v = field.coerce(v)
            key = (r, c)
            if key in entries:
                v = field.add(entries[key], v)
            if v == zero:
                entries.pop(key, None)
            else:
                entries[key] = v
        return Matrix(field, nrows, ncols, entries)

    @staticmethod
    def from_rows(field, rows, ncols=None):
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        zero = field.zero
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                v = field.coerce(v)
                if v != zero:
                    entries[(i, j)] = v
        return Matrix(field, nrows, ncols, entries)

    @staticmethod
    def from_columns(field, cols, nrows=None):
        if nrows is None:
            nrows = len(cols[0]) if cols else 0
        zero = field.zero
        entries = {}
        for j, col in enumerate(cols):
            if len(col) != nrows:
                raise ValueError("ragged columns")
            for i, v in enumerate(col):
                v = field.coerce(v)
                if v != zero:
                    entries[(i, j)] = v
        return Matrix(field, nrows, len(cols), entries)

    # -- basics --------------------------------------------------------------
    def nnz(self):
        return len(self.entries)

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.entries == other.entries
        )

    def __repr__(self):
        return "Matrix(%r, %dx%d, nnz=%d)" % (self.field, self.nrows, self.ncols, len(self.entries))

    def to_rows(self):
        zero = self.field.zero
        rows = [[zero] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def transpose(self):
        return Matrix(self.field, self.ncols, self.nrows, {(j, i): v for (i, j), v in self.entries.items()})

    def __add__(self, other):
        self._check_shape(other)
        f = self.field
        entries = dict(self.entries)
        for key, v in other.entries.items():
            w = f.add(entries.get(key, f.zero), v)
            if w == f.zero:
                entries.pop(key, None)
            else:
                entries[key] = w
        return Matrix(f, self.nrows, self.ncols, entries)

    def __neg__(self):
        f = self.field
        return Matrix(f, self.nrows, self.ncols, {k: f.neg(v) for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a):
        f = self.field
        a = f.coerce(a)
        if a == f.zero:
            return Matrix.zeros(f, self.nrows, self.ncols)
        return Matrix(f, self.nrows, self.ncols, {k: f.mul(a, v) for k, v in self.entries.items()})

    def _check_shape(self, other):
        if self.field != other.field or self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("shape or field mismatch")

    def __matmul__(self, other):
        if self.field != other.field or self.ncols != other.nrows:
            raise ValueError("cannot multiply %dx%d by %dx%d" % (self.nrows, self.ncols, other.nrows, other.ncols))
        f = self.field
        rows_b = {}
        for (i, j), v in other.entries.items():
            rows_b.setdefault(i, []).append((j, v))
        acc = {}
        for (i, k), v in self.entries.items():
            rb = rows_b.get(k)
            if rb is None:
                continue
            for j, w in rb:
                key = (i, j)
                prod = f.mul(v, w)
                if key in acc:
                    acc[key] = f.add(acc[key], prod)
                else:
                    acc[key] = prod
        zero = f.zero
        return Matrix(f, self.nrows, other.ncols, {k: v for k, v in acc.items() if v != zero})

    def apply(self, vec):
        """Matrix times a column vector (tuple/list of scalars)."""
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        f = self.field
        out = [f.zero] * self.nrows
        for (i, j), v in self.entries.items():
            x = vec[j]
            if x != f.zero:
                out[i] = f.add(out[i], f.mul(v, x))
        return tuple(out)

    def column(self, j):
        f = self.field
        out = [f.zero] * self.nrows
        for (i, jj), v in self.entries.items():
            if jj == j:
                out[i] = v
        return tuple(out)

    def columns(self):
        f = self.field
        cols = [[f.zero] * self.nrows for _ in range(self.ncols)]
        for (i, j), v in self.entries.items():
            cols[j][i] = v
        return [tuple(c) for c in cols]

    def select_columns(self, cols):
        pos = {c: k for k, c in enumerate(cols)}
        entries = {(i, pos[j]): v for (i, j), v in self.entries.items() if j in pos}
        return Matrix(self.field, self.nrows, len(cols), entries)

    @staticmethod
    def hstack(blocks):
        field = blocks[0].field
        nrows = blocks[0].nrows
        entries = {}
        off = 0
        for b in blocks:
            if b.field != field or b.nrows != nrows:
                raise ValueError("hstack mismatch")
            for (i, j), v in b.entries.items():
                entries[(i, j + off)] = v
            off += b.ncols
        return Matrix(field, nrows, off, entries)

    @staticmethod
    def vstack(blocks):
        field = blocks[0].field
        ncols = blocks[0].ncols
        entries = {}
        off = 0
        for b in blocks:
            if b.field != field or b.ncols != ncols:
                raise ValueError("vstack mismatch")
            for (i, j), v in b.entries.items():
                entries[(i + off, j)] = v
            off += b.nrows
        return Matrix(field, off, ncols, entries)

    # -- kron, rank, kernel, solve --------------------------------------------
    def kron(self, other):
        if self.field != other.field:
            raise ValueError("field mismatch")
        f = self.field
        rb, cb = other.nrows, other.ncols
        entries = {}
        for (ia, ja), va in self.entries.items():
            base_r = ia * rb
            base_c = ja * cb
            for (ib, jb), vb in other.entries.items():
                entries[(base_r + ib, base_c + jb)] = f.mul(va, vb)
        return Matrix(f, self.nrows * rb, self.ncols * cb, entries)

    def rank(self):
        if not self.entries:
            return 0
        # Elimination keeps one work row per pivot; fewer rows is cheaper,
        # and rank is transpose-invariant.
        m = self if self.nrows <= self.ncols else self.transpose()
        if m.field.kind == "prime":
            return _rank_mod_p(m)
        return _rank_fraction_free(m)

    def rref(self):
        """Reduced row echelon form.

        Returns (pivot_cols, rows) where rows is a list of sparse dicts
        {col: value}, one per pivot, fully reduced, pivot value 1, ordered by
        pivot column.  Left-to-right column sweep; deterministic.
        """
        return _rref(self.field, _row_dicts(self), self.ncols)

    def kernel_basis(self):
        """Basis of the right null space, canonical w.r.t. the RREF free columns."""
        f = self.field
        pivots, rows = self.rref()
        pivot_set = set(pivots)
        free = [j for j in range(self.ncols) if j not in pivot_set]
        basis = []
        for fc in free:
            vec = [f.zero] * self.ncols
            vec[fc] = f.one
            for p, row in zip(pivots, rows):
                v = row.get(fc)
                if v is not None:
                    vec[p] = f.neg(v)
            basis.append(tuple(vec))
        return SubspaceBasis(f, self.ncols, tuple(basis))

    def solve(self, b):
        """One solution x of self @ x = b, or None if inconsistent."""
        if len(b) != self.nrows:
            raise ValueError("rhs length mismatch")
        f = self.field
        rows = _row_dicts(self)
        aug = self.ncols  # extra column holding b
        for i, v in enumerate(b):
            v = f.coerce(v)
            if v != f.zero:
                rows[i][aug] = v
        pivots, red = _rref(f, rows, self.ncols + 1)
        if aug in pivots:
            return None
        x = [f.zero] * self.ncols
        for p, row in zip(pivots, red):
            x[p] = row.get(aug, f.zero)
        return tuple(x)


def rank(m):
    return m.rank()


def kernel_basis(m):
    return m.kernel_basis()


def solve(m, b):
    return m.solve(b)


def kronecker(a, b):
    return a.kron(b)


def _row_dicts(m):
    rows = [dict() for _ in range(m.nrows)]
    for (i, j), v in m.entries.items():
        rows[i][j] = v
    return rows


def _rref(field, rows, width):
    """In-place reduced echelon on a list of sparse row dicts.

    Pivot columns are chosen left to right; within a column the row with the
    fewest nonzeros wins, ties by row index.
    """
    f = field
    zero = f.zero
    pivots = []
    pivot_rows = []
    live = list(range(len(rows)))
    for col in range(width):
        best = None
        best_idx = -1
        for idx in live:
            row = rows[idx]
            if col in row:
                key = (len(row), idx)
                if best is None or key < best:
                    best = key
                    best_idx = idx
        if best is None:
            continue
        live.remove(best_idx)
        prow = rows[best_idx]
        inv = f.inv(prow[col])
        if inv != f.one:
            prow = {c: f.mul(inv, v) for c, v in prow.items()}
        for other in pivot_rows:
            _row_axpy(f, zero, other, prow, col)
        for idx in live:
            _row_axpy(f, zero, rows[idx], prow, col)
        pivots.append(col)
        pivot_rows.append(prow)
    return pivots, pivot_rows


def _row_axpy(f, zero, row, prow, col):
    """row -= row[col] * prow, where prow has pivot value 1 at col."""
    a = row.get(col)
    if a is None:
        return
    for c, v in prow.items():
        w = f.sub(row.get(c, zero), f.mul(a, v))
        if w == zero:
            row.pop(c, None)
        else:
            row[c] = w


def _rank_elim(eliminate, rows):
    """Markowitz-style elimination skeleton shared by the two rank paths.

    ``rows`` is a list of dicts col -> value; ``eliminate(row, prow, col)``
    must clear ``col`` from ``row`` by a rank-preserving row operation.
    """
    col_rows = {}
    for i, row in enumerate(rows):
        for c in row:
            col_rows.setdefault(c, set()).add(i)
    heap = [(len(s), c) for c, s in col_rows.items()]
    heapq.heapify(heap)
    rank_ = 0
    while heap:
        cnt, col = heapq.heappop(heap)
        s = col_rows.get(col)
        if s is None:
            continue
        if not s:
            del col_rows[col]
            continue
        if len(s) != cnt:
            heapq.heappush(heap, (len(s), col))
            continue
        piv = min(s, key=lambda i: (len(rows[i]), i))
        prow = rows[piv]
        rank_ += 1
        for c in prow:
            cs = col_rows.get(c)
            if cs is not None:
                cs.discard(piv)
        others = sorted(s)
        touched = set(prow)
        for i in others:
            row = rows[i]
            for c in row:
                cs = col_rows.get(c)
                if cs is not None:
                    cs.discard(i)
            eliminate(row, prow, col)
            for c in row:
                cs = col_rows.get(c)
                if cs is None:
                    cs = col_rows[c] = set()
                cs.add(i)
            touched.update(row)
        del col_rows[col]
        touched.discard(col)
        for c in touched:
            cs = col_rows.get(c)
            if cs is not None:
                heapq.heappush(heap, (len(cs), c))
        rows[piv] = {}
    return rank_


def _rank_mod_p(m):
    p = m.field.p
    rows = _row_dicts(m)

    def eliminate(row, prow, col):
        a = row.pop(col)
        factor = (a * pow(prow[col], -1, p)) % p
        for c, v in prow.items():
            if c == col:
                continue
            w = (row.get(c, 0) - factor * v) % p
            if w:
                row[c] = w
            else:
                row.pop(c, None)

    return _rank_elim(eliminate, rows)


def _rank_fraction_free(m):
    # Scale each row to coprime integer entries; row scaling preserves rank.
    rows = []
    for row in _row_dicts(m):
        if not row:
            rows.append({})
            continue
        den = 1
        for v in row.values():
            den = den * v.denominator // gcd(den, v.denominator)
        irow = {c: int(v * den) for c, v in row.items()}
        g = 0
        for v in irow.values():
            g = gcd(g, v)
            if g == 1:
                break
        if g > 1:
            irow = {c: v // g for c, v in irow.items()}
        rows.append(irow)

    def eliminate(row, prow, col):
        a = row.pop(col)
        pv = prow[col]
        g0 = gcd(a, pv)
        a //= g0
        scale = pv // g0
        if scale != 1:
            for c in row:
                row[c] *= scale
        for c, v in prow.items():
            if c == col:
                continue
            w = row.get(c, 0) - a * v
            if w:
                row[c] = w
            else:
                row.pop(c, None)
        if row:
            g = 0
            for v in row.values():
                g = gcd(g, v)
                if g == 1:
                    return
            if g > 1:
                for c in row:
                    row[c] //= g

    return _rank_elim(eliminate, rows)


@dataclass(frozen=True)
class SubspaceBasis:
    """Spanning vectors of a subspace of field^ambient_dim.

    Vectors are stored as given; ``canonical()`` re-expresses the subspace by
    its reduced echelon basis, so subspace equality is data equality of the
    canonical forms (and ``__eq__`` compares exactly that).
    """

    field: Field
    ambient_dim: int
    vectors: tuple

    def __post_init__(self):
        for v in self.vectors:
            if len(v) != self.ambient_dim:
                raise ValueError("vector length != ambient_dim")

    @property
    def dim(self):
        if not self.vectors:
            return 0
        return Matrix.from_rows(self.field, [list(v) for v in self.vectors], self.ambient_dim).rank()

    def matrix_with_vector_columns(self):
        return Matrix.from_columns(self.field, [list(v) for v in self.vectors], self.ambient_dim)

    def canonical(self):
        if not self.vectors:
            return SubspaceBasis(self.field, self.ambient_dim, ())
        m = Matrix.from_rows(self.field, [list(v) for v in self.vectors], self.ambient_dim)
        pivots, rows = m.rref()
        zero = self.field.zero
        vecs = []
        for row in rows:
            v = [zero] * self.ambient_dim
            for c, x in row.items():
                v[c] = x
            vecs.append(tuple(v))
        return SubspaceBasis(self.field, self.ambient_dim, tuple(vecs))

    def contains(self, vec):
        if len(vec) != self.ambient_dim:
            raise ValueError("vector length != ambient_dim")
        if not self.vectors:
            return all(x == self.field.zero for x in vec)
        return self.matrix_with_vector_columns().solve(tuple(vec)) is not None

    def __eq__(self, other):
        if not isinstance(other, SubspaceBasis):
            return NotImplemented
        if self.field != other.field or self.ambient_dim != other.ambient_dim:
            return False
        return self.canonical().vectors == other.canonical().vectors


def quotient_maps(sub):
    """Projection/section pair for ambient / span(sub).

    Returns (proj, section): proj is a (q x n) matrix whose kernel is exactly
    the subspace; section is an (n x q) right inverse of proj picking the free
    coordinates of the subspace's RREF as quotient representatives.
    """
    f = sub.field
    n = sub.ambient_dim
    if not sub.vectors:
        eye = Matrix.identity(f, n)
        return eye, eye
    m = Matrix.from_rows(f, [list(v) for v in sub.vectors], n)
    pivots, rows = m.rref()
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    proj_entries = {}
    for qi, fc in enumerate(free):
        proj_entries[(qi, fc)] = f.one
        for p, row in zip(pivots, rows):
            v = row.get(fc)
            if v is not None:
                proj_entries[(qi, p)] = f.neg(v)
    proj = Matrix(f, len(free), n, proj_entries)
    section = Matrix(f, n, len(free), {(fc, qi): f.one for qi, fc in enumerate(free)})
    return proj, section


def extend_to_basis(field, ambient, base_vectors, candidates):
    """Greedily pick candidates extending span(base_vectors) within ambient.

    Returns indices (in order) of the candidates that enlarge the span.
    Deterministic.
    """
    rows = []
    for v in base_vectors:
        rows.append({j: x for j, x in enumerate(v) if x != field.zero})
    pivots, red = _rref(field, rows, ambient)
    chosen = []
    zero = field.zero
    for idx, cand in enumerate(candidates):
        row = {j: x for j, x in enumerate(cand) if x != zero}
        for p, r in zip(pivots, red):
            _row_axpy(field, zero, row, r, p)
        if not row:
            continue
        col = min(row)
        inv = field.inv(row[col])
        if inv != field.one:
            row = {c: field.mul(inv, v) for c, v in row.items()}
        for r in red:
            _row_axpy(field, zero, r, row, col)
        at = 0
        while at < len(pivots) and pivots[at] < col:
            at += 1
        pivots.insert(at, col)
        red.insert(at, row)
        chosen.append(idx)
    return chosen
