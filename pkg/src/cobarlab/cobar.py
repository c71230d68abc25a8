"""Reduced cobar complexes and Ext tables of conilpotent coalgebras.

For a finite coalgebra the complex is k -> C_+ -> C_+ (x) C_+ -> ... with
differential the alternating sum of reduced-comultiplication insertions,
slot t of an i-tensor carrying sign (-1)^(t+1); the cancellation of the
(s <= t) against the (s > t) terms is the usual simplicial one, so d^2 = 0
(asserted at build time).  H^i is Ext^i_C(k, k).

Graded coalgebras split the complex by internal degree: the (i, j) cell is
the sum of C_{j_1} (x) ... (x) C_{j_i} over compositions of j into i positive
parts, and the differential preserves j.  A finite coalgebra carrying degree
metadata (anything built by ``flatten``) is split the same way behind the
scenes, which keeps the elimination work per cell small; the published table
is still indexed by i alone.

Tensor index convention: first factor most significant, matching
Matrix.kron, so the index of a concatenation u (x) v is
idx(u) * dim(v-part) + idx(v).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

from cobarlab.coalg import Coalgebra, GradedCoalgebra
from cobarlab.exactlin import Matrix, extend_to_basis


@dataclass(frozen=True)
class ExtTable:
    """Ext dimensions: keyed by i for finite inputs, by (i, j) for graded."""

    kind: str  # "finite" | "graded"
    entries: dict
    imax: int
    jmax: int | None = None
    truncation_note: str | None = None

    def __eq__(self, other):
        if not isinstance(other, ExtTable):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.imax == other.imax
            and self.jmax == other.jmax
            and self.entries == other.entries
        )

    def dims(self):
        """Finite: the list [dim Ext^0, ..., dim Ext^imax]."""
        if self.kind != "finite":
            raise ValueError("dims() is for finite tables; use entries for bigraded ones")
        return [self.entries[i] for i in range(self.imax + 1)]

    def to_json(self):
        if self.kind == "finite":
            cells = [[i, self.entries[i]] for i in range(self.imax + 1)]
        else:
            cells = [[i, j, v] for (i, j), v in sorted(self.entries.items())]
        out = {"kind": self.kind, "imax": self.imax, "entries": cells}
        if self.jmax is not None:
            out["jmax"] = self.jmax
        if self.truncation_note:
            out["truncation_note"] = self.truncation_note
        return out


def _compositions(total, parts, dims):
    """Compositions of ``total`` into ``parts`` positive parts with dims[part] > 0."""
    top = len(dims) - 1
    if parts == 0:
        return [()] if total == 0 else []
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            if 1 <= remaining <= top and dims[remaining] > 0:
                out.append(prefix + (remaining,))
            return
        lo = max(1, remaining - top * (slots - 1))
        hi = min(top, remaining - (slots - 1))
        for a in range(lo, hi + 1):
            if dims[a] > 0:
                rec(prefix + (a,), remaining - a, slots - 1)

    rec((), total, parts)
    return out


class _GradedCells:
    """Cell bookkeeping for the internal-degree splitting of a cobar complex."""

    def __init__(self, graded):
        self.graded = graded
        self.dims = graded.dims
        self._layouts = {}

    def layout(self, i, j):
        key = (i, j)
        got = self._layouts.get(key)
        if got is not None:
            return got
        if i == 0:
            comps = [()] if j == 0 else []
        else:
            comps = _compositions(j, i, self.dims)
        offsets = {}
        total = 0
        for comp in comps:
            offsets[comp] = total
            block = 1
            for part in comp:
                block *= self.dims[part]
            total += block
        got = (total, comps, offsets)
        self._layouts[key] = got
        return got

    def dim(self, i, j):
        return self.layout(i, j)[0]

    def diff(self, i, j):
        """Matrix of d: cell (i, j) -> cell (i+1, j)."""
        f = self.graded.field
        src_dim, src_comps, src_off = self.layout(i, j)
        dst_dim, _, dst_off = self.layout(i + 1, j)
        entries = {}
        for comp in src_comps:
            col0 = src_off[comp]
            block_dims = [self.dims[part] for part in comp]
            for t in range(len(comp)):
                part = comp[t]
                before = 1
                for b in block_dims[:t]:
                    before *= b
                after = 1
                for b in block_dims[t + 1 :]:
                    after *= b
                negate = t % 2 == 1  # 0-based slot t is 1-based slot t+1, sign (-1)^t
                for p in range(1, part):
                    q = part - p
                    if self.dims[p] == 0 or self.dims[q] == 0:
                        continue
                    target = comp[:t] + (p, q) + comp[t + 1 :]
                    row0 = dst_off.get(target)
                    if row0 is None:
                        continue
                    comp_matrix = self.graded.component(part, p, q)
                    local = Matrix.kron(
                        Matrix.identity(f, before),
                        Matrix.kron(comp_matrix, Matrix.identity(f, after)),
                    )
                    for (r, c), v in local.entries.items():
                        key = (row0 + r, col0 + c)
                        w = f.neg(v) if negate else v
                        if key in entries:
                            w = f.add(entries[key], w)
                            if w == f.zero:
                                del entries[key]
                                continue
                        entries[key] = w
        return Matrix(f, dst_dim, src_dim, entries)


def _finite_to_graded(c):
    """Regroup a finite coalgebra with respected degree metadata by degree."""
    if not c.degrees_respected():
        raise ValueError("degree metadata missing or not respected")
    top = max(c.degrees)
    by_degree = {}
    for idx in range(c.dim):
        by_degree.setdefault(c.degrees[idx], []).append(idx)
    if by_degree.get(0) != [c.grouplike_index]:
        raise ValueError("degree 0 must be spanned by the grouplike alone")
    dims = [len(by_degree.get(j, [])) for j in range(top + 1)]
    local = {}
    for j, members in by_degree.items():
        for k, idx in enumerate(members):
            local[idx] = k
    f = c.field
    items = {}
    for t in range(c.dim):
        jt = c.degrees[t]
        for i, j2, v in c.comul[t]:
            p, q = c.degrees[i], c.degrees[j2]
            items.setdefault((jt, p, q), []).append((local[i] * dims[q] + local[j2], local[t], v))
    comps = {}
    for j in range(top + 1):
        for p in range(j + 1):
            q = j - p
            comps[(j, p, q)] = Matrix.from_entries(f, dims[p] * dims[q], dims[j], items.get((j, p, q), []))
    return GradedCoalgebra(f, dims, comps)


class CobarComplex:
    """A built cobar complex; holds cells, differentials and cached ranks.

    kind "finite": cells keyed (i, None); term i is (C_+)^(x i), or
    (C_+)^(x i) (x) M when built with coefficients.  kind "graded": cells
    keyed (i, j).  kind "finite-split": a finite complex computed through
    graded cells; tables collapse to the i index.
    """

    def __init__(self, base, kind, imax, jmax=None, with_coefficients=False):
        self.base = base
        self.kind = kind
        self.imax = imax
        self.jmax = jmax
        self.with_coefficients = with_coefficients
        self.field = base.field
        self._diffs = {}
        self._dims = {}
        self._ranks = {}
        self._graded_cells = None
        self._max_internal_degree = None

    # -- dimensions and differentials ---------------------------------------
    def cell_keys(self, i):
        if self.kind == "finite":
            return [(i, None)]
        if self.kind == "graded":
            return [(i, j) for j in range(self.jmax + 1)]
        top = self._max_internal_degree
        return [(i, j) for j in range(i * top + 1)]

    def cell_dim(self, i, j):
        got = self._dims.get((i, j))
        if got is None:
            got = self._graded_cells.dim(i, j)
            self._dims[(i, j)] = got
        return got

    def term_dim(self, i):
        return sum(self.cell_dim(i, j) for (i, j) in self.cell_keys(i))

    def diff(self, i, j):
        key = (i, j)
        got = self._diffs.get(key)
        if got is None:
            got = self._graded_cells.diff(i, j)
            if self.kind != "finite-split":
                self._diffs[key] = got
        return got

    def diff_rank(self, i, j):
        if i < 0:
            return 0
        key = (i, j)
        got = self._ranks.get(key)
        if got is None:
            got = self.diff(i, j).rank()
            self._ranks[key] = got
        return got

    # -- tables ---------------------------------------------------------------
    def ext_entry(self, i, j):
        return self.cell_dim(i, j) - self.diff_rank(i, j) - self.diff_rank(i - 1, j)

    def _split_column_work(self, j):
        """Ranks for one internal degree of a split complex, freeing matrices."""
        prev = None
        for i in range(self.imax + 1):
            if (i, j) in self._ranks:
                prev = None
                continue
            d = self._graded_cells.diff(i, j)
            if prev is not None and not (d @ prev).is_zero():
                raise AssertionError("cobar differential does not square to zero at (%d,%d)" % (i, j))
            self._ranks[(i, j)] = d.rank()
            prev = d

    def prepare(self, threads=1):
        """Compute all ranks the table needs; split mode can fan out by degree."""
        if self.kind == "finite-split":
            degrees = [j for (_, j) in self.cell_keys(self.imax)]
            if threads > 1:
                with ThreadPoolExecutor(max_workers=threads) as pool:
                    list(pool.map(self._split_column_work, degrees))
            else:
                for j in degrees:
                    self._split_column_work(j)
        else:
            for i in range(self.imax + 1):
                for key in self.cell_keys(i):
                    self.diff_rank(*key)


def build_cobar(c, imax, jmax=None):
    """Build the reduced cobar complex of a coalgebra through degree imax.

    Finite input: jmax must be omitted; if the coalgebra carries respected
    degree metadata the complex is split by internal degree internally.
    Graded input: jmax defaults to the truncation degree and may not exceed
    it (entries above the truncation would depend on absent components).
    """
    if imax < 0:
        raise ValueError("imax must be >= 0")
    if isinstance(c, GradedCoalgebra):
        top = c.top_degree
        if jmax is None:
            jmax = top
        if jmax > top:
            raise ValueError("jmax %d exceeds truncation degree %d" % (jmax, top))
        cx = CobarComplex(c, "graded", imax, jmax)
        cx._graded_cells = _GradedCells(c)
        _check_d_squared(cx)
        return cx
    if not isinstance(c, Coalgebra):
        raise TypeError("build_cobar expects a Coalgebra or GradedCoalgebra")
    if jmax is not None:
        raise ValueError("jmax applies to graded coalgebras only")
    if c.degrees is not None and c.degrees_respected() and c.dim > 1:
        graded = _finite_to_graded(c)
        cx = CobarComplex(c, "finite-split", imax)
        cx._graded_cells = _GradedCells(graded)
        cx._max_internal_degree = graded.top_degree
        return cx
    cx = CobarComplex(c, "finite", imax)
    cx._graded_cells = _FiniteCells(c, None)
    _check_d_squared(cx)
    return cx


def _check_d_squared(cx, size_bound=200000):
    for i in range(cx.imax):
        for (ii, j) in cx.cell_keys(i):
            d0 = cx.diff(ii, j)
            d1 = cx.diff(ii + 1, j)
            if d1.nrows * d0.ncols <= size_bound and not (d1 @ d0).is_zero():
                raise AssertionError("cobar differential does not square to zero at cell (%d,%r)" % (ii, j))


class _FiniteCells:
    """Terms (C_+)^(x i), optionally (x) M, with insertion-sum differentials."""

    def __init__(self, c, coefficients):
        self.c = c
        self.field = c.field
        self.reduced = c.reduced_comul_matrix()
        self.d = c.dim - 1
        if coefficients is None:
            self.mdim = 1
            self.nu = None
        else:
            from cobarlab.coalg import reduced_coaction_matrix

            self.mdim = coefficients.dim
            self.nu = reduced_coaction_matrix(coefficients)

    def dim(self, i, j):
        return self.d**i * self.mdim

    def diff(self, i, j):
        f = self.field
        d = self.d
        out = Matrix.zeros(f, self.dim(i + 1, None), self.dim(i, None))
        for t in range(1, i + 1):
            before = Matrix.identity(f, d ** (t - 1))
            after = Matrix.identity(f, d ** (i - t) * self.mdim)
            ins = Matrix.kron(before, Matrix.kron(self.reduced, after))
            out = out + (ins if t % 2 == 1 else -ins)
        if self.nu is not None:
            last = Matrix.kron(Matrix.identity(f, d**i), self.nu)
            out = out + (last if (i + 1) % 2 == 1 else -last)
        return out


def cobar_with_coefficients(c, m, imax):
    """Reduced cobar complex of a comodule: M -> C_+ (x) M -> ...

    The extra final summand of the differential inserts the reduced coaction
    in the last slot with sign (-1)^(i+2) on an i-tensor term; H^0 is the
    socle of M.
    """
    if not isinstance(c, Coalgebra):
        raise TypeError("coefficient complexes are built over finite coalgebras")
    if m.base != c:
        raise ValueError("comodule is not over the given coalgebra")
    cx = CobarComplex(c, "finite", imax, with_coefficients=True)
    cx._graded_cells = _FiniteCells(c, m)
    _check_d_squared(cx)
    return cx


def ext_table(cx, threads=1):
    """Ext dimensions of a built cobar complex.

    Finite complexes give {i: dim Ext^i}; graded ones give {(i, j): dim}.
    """
    cx.prepare(threads=threads)
    if cx.kind == "graded":
        entries = {}
        for i in range(cx.imax + 1):
            for j in range(cx.jmax + 1):
                entries[(i, j)] = cx.ext_entry(i, j)
        top = cx.base.top_degree
        note = "entries computed from components of degree <= %d; any truncation >= %d agrees on this window" % (
            top,
            cx.jmax,
        )
        return ExtTable("graded", entries, cx.imax, cx.jmax, note)
    entries = {}
    for i in range(cx.imax + 1):
        entries[i] = sum(cx.ext_entry(*key) for key in cx.cell_keys(i))
    note = None
    if cx.kind == "finite-split":
        note = "computed through internal-degree cells of the flattened grading"
    return ExtTable("finite", entries, cx.imax, None, note)


# ---------------------------------------------------------------------------
# cohomology classes and the concatenation product (finite complexes)


@dataclass(frozen=True)
class CobarClass:
    degree: int
    vector: tuple
    coords: tuple = dc_field(default=())


def _require_plain_finite(cx):
    if cx.kind != "finite" or cx.with_coefficients:
        raise ValueError("cohomology classes are implemented for plain finite cobar complexes")


def cohomology_basis(cx, i):
    """Deterministic representative cocycles spanning H^i."""
    _require_plain_finite(cx)
    if i > cx.imax:
        raise ValueError("degree beyond the built window")
    cache = cx.__dict__.setdefault("_cohomology_cache", {})
    if i in cache:
        return cache[i]
    f = cx.field
    ker = cx.diff(i, None).kernel_basis()
    if i == 0:
        image_cols = []
    else:
        image_cols = cx.diff(i - 1, None).columns()
    chosen = extend_to_basis(f, cx.cell_dim(i, None), image_cols, list(ker.vectors))
    reps = [CobarClass(i, ker.vectors[k]) for k in chosen]
    cache[i] = reps
    return reps


def class_coordinates(cx, cls):
    """Coordinates of a cocycle in the chosen basis of H^degree."""
    _require_plain_finite(cx)
    i = cls.degree
    vec = cls.vector
    if len(vec) != cx.cell_dim(i, None):
        raise ValueError("vector length does not match the term dimension")
    if any(x != cx.field.zero for x in cx.diff(i, None).apply(vec)):
        raise ValueError("not a cocycle")
    reps = cohomology_basis(cx, i)
    blocks = []
    if reps:
        blocks.append(Matrix.from_columns(cx.field, [list(r.vector) for r in reps], cx.cell_dim(i, None)))
    if i > 0:
        blocks.append(cx.diff(i - 1, None))
    if not blocks:
        if any(x != cx.field.zero for x in vec):
            raise ValueError("nonzero cocycle in a zero cohomology group")
        return ()
    stacked = Matrix.hstack(blocks)
    sol = stacked.solve(tuple(vec))
    if sol is None:
        raise AssertionError("cocycle failed to reduce against representatives and coboundaries")
    return tuple(sol[: len(reps)])


def product_vector(cx, a, b):
    """Concatenation of cocycle vectors: index(u (x) v) = idx(u)*dim_v + idx(v)."""
    _require_plain_finite(cx)
    out = []
    for x in a.vector:
        for y in b.vector:
            out.append(cx.field.mul(x, y))
    return tuple(out)


def ext_product(cx, a, b):
    """Product of two cobar cohomology classes, reduced to canonical form.

    The differential is a derivation for concatenation, so the product of
    cocycles is a cocycle; the result carries its coordinates in the chosen
    basis of H^(deg a + deg b).
    """
    _require_plain_finite(cx)
    i = a.degree + b.degree
    if i > cx.imax:
        raise ValueError("product degree beyond the built window")
    vec = product_vector(cx, a, b)
    coords = class_coordinates(cx, CobarClass(i, vec))
    reps = cohomology_basis(cx, i)
    f = cx.field
    canon = [f.zero] * cx.cell_dim(i, None)
    for coeff, rep in zip(coords, reps):
        if coeff != f.zero:
            for k, x in enumerate(rep.vector):
                canon[k] = f.add(canon[k], f.mul(coeff, x))
    return CobarClass(i, tuple(canon), coords)


def ext_algebra_table(cx, maxdeg):
    """Multiplication table of the Ext algebra up to total degree maxdeg.

    Returns (dims, products) with products[(ia, ib)][k][l] the coordinate
    tuple of basis class k (degree ia) times basis class l (degree ib).
    """
    _require_plain_finite(cx)
    if maxdeg > cx.imax:
        raise ValueError("window too small for the requested table")
    reps = {i: cohomology_basis(cx, i) for i in range(maxdeg + 1)}
    dims = [len(reps[i]) for i in range(maxdeg + 1)]
    products = {}
    for ia in range(1, maxdeg):
        for ib in range(1, maxdeg - ia + 1):
            table = []
            for a in reps[ia]:
                row = []
                for b in reps[ib]:
                    row.append(ext_product(cx, a, b).coords)
                table.append(row)
            products[(ia, ib)] = table
    return dims, products


def reverse_tensor_vector(d, degree, vec):
    """Reorder an i-tensor vector by reversing the tensor factors.

    Index arithmetic in base d: digit sequences reverse.  This identifies the
    cobar complex of the opposite coalgebra with the original one up to a
    per-degree sign, so it matches cohomology bases across the two.
    """
    if degree <= 1:
        return tuple(vec)
    out = list(vec)
    size = d**degree
    if len(vec) != size:
        raise ValueError("vector length is not d**degree")
    for idx in range(size):
        digits = []
        w = idx
        for _ in range(degree):
            digits.append(w % d)
            w //= d
        ridx = 0
        for dig in digits:
            ridx = ridx * d + dig
        out[ridx] = vec[idx]
    return tuple(out)
