"""Conilpotent coaugmented coalgebras and their comodules, finite or graded.

A finite coalgebra is presented by structure constants on a chosen basis: the
comultiplication sends basis vector e_t to a list of triples (i, j, v) meaning
v * e_i (x) e_j, the counit is a plain vector, and one basis index is the
grouplike image of the coaugmentation.  Graded coalgebras are presented by
per-bidegree comultiplication components Delta_{p,q}: C_j -> C_p (x) C_q for
p + q = j, with C_0 one-dimensional spanned by the grouplike.

Tensor index convention everywhere: the basis vector e_i (x) e_j of C (x) C'
has flat index i * dim(C') + j, matching Matrix.kron.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from cobarlab.exactlin import Matrix, SubspaceBasis, quotient_maps


class UnsupportedCharacteristic(ValueError):
    pass


def swap_matrix(field, a, b):
    """The factor swap X (x) Y -> Y (x) X for dim X = a, dim Y = b."""
    one = field.one
    return Matrix(field, a * b, a * b, {(y * a + x, x * b + y): one for x in range(a) for y in range(b)})


@dataclass(frozen=True)
class ValidationReport:
    flags: dict
    notes: dict = dc_field(default_factory=dict)

    REQUIRED = ("coassociative", "counital", "coaugmented", "conilpotent")

    @property
    def ok(self):
        return all(self.flags.get(name, False) for name in self.REQUIRED)

    def to_json(self):
        return {"flags": dict(sorted(self.flags.items())), "notes": dict(sorted(self.notes.items())), "ok": self.ok}


class Coalgebra:
    """Finite-dimensional coalgebra with a distinguished grouplike basis index.

    ``degrees`` is optional metadata (one nonnegative int per basis index) kept
    by ``flatten``; when present and respected by the structure constants it
    lets downstream complexes split by internal degree.
    """

    __slots__ = ("field", "dim", "grouplike_index", "counit", "comul", "degrees")

    def __init__(self, field, dim, grouplike_index, counit, comul, degrees=None):
        if dim < 1:
            raise ValueError("coalgebra dimension must be >= 1")
        if not (0 <= grouplike_index < dim):
            raise ValueError("grouplike index out of range")
        if len(counit) != dim:
            raise ValueError("counit length != dim")
        if len(comul) != dim:
            raise ValueError("comultiplication must list one entry per basis index")
        self.field = field
        self.dim = dim
        self.grouplike_index = grouplike_index
        self.counit = tuple(field.coerce(v) for v in counit)
        rows = []
        for t, triples in enumerate(comul):
            seen = {}
            for i, j, v in triples:
                if not (0 <= i < dim and 0 <= j < dim):
                    raise ValueError("comultiplication index out of range at basis %d" % t)
                v = field.coerce(v)
                key = (i, j)
                if key in seen:
                    v = field.add(seen[key], v)
                if v == field.zero:
                    seen.pop(key, None)
                else:
                    seen[key] = v
            rows.append(tuple((i, j, v) for (i, j), v in sorted(seen.items())))
        self.comul = tuple(rows)
        if degrees is not None:
            degrees = tuple(int(d) for d in degrees)
            if len(degrees) != dim:
                raise ValueError("degrees length != dim")
        self.degrees = degrees

    def comul_matrix(self):
        n = self.dim
        items = []
        for t, triples in enumerate(self.comul):
            for i, j, v in triples:
                items.append((i * n + j, t, v))
        return Matrix.from_entries(self.field, n * n, n, items)

    def counit_matrix(self):
        return Matrix.from_entries(self.field, 1, self.dim, [(0, t, v) for t, v in enumerate(self.counit)])

    def positive_indices(self):
        return [i for i in range(self.dim) if i != self.grouplike_index]

    def reduced_comul(self):
        """Structure constants of C_+ = C / span(grouplike), as triples per index."""
        g = self.grouplike_index
        keep = self.positive_indices()
        pos = {i: k for k, i in enumerate(keep)}
        out = []
        for t in keep:
            out.append(tuple((pos[i], pos[j], v) for i, j, v in self.comul[t] if i != g and j != g))
        return out

    def reduced_comul_matrix(self):
        d = self.dim - 1
        items = []
        for t, triples in enumerate(self.reduced_comul()):
            for i, j, v in triples:
                items.append((i * d + j, t, v))
        return Matrix.from_entries(self.field, d * d, d, items)

    def projection_matrix(self):
        """C -> C_+ dropping the grouplike coordinate."""
        keep = self.positive_indices()
        one = self.field.one
        return Matrix(self.field, self.dim - 1, self.dim, {(k, i): one for k, i in enumerate(keep)})

    def degrees_respected(self):
        """True when degree metadata exists and the structure constants are homogeneous."""
        if self.degrees is None:
            return False
        if self.degrees[self.grouplike_index] != 0:
            return False
        for t, triples in enumerate(self.comul):
            for i, j, _ in triples:
                if self.degrees[i] + self.degrees[j] != self.degrees[t]:
                    return False
        return True

    def digest_data(self):
        fmt = self.field.format
        return (
            "finite",
            tuple(sorted(self.field.label().items())),
            self.dim,
            self.grouplike_index,
            tuple(fmt(v) for v in self.counit),
            tuple(tuple((i, j, fmt(v)) for i, j, v in row) for row in self.comul),
        )

    def __eq__(self, other):
        return isinstance(other, Coalgebra) and self.digest_data() == other.digest_data()

    def __repr__(self):
        return "Coalgebra(%r, dim=%d)" % (self.field, self.dim)


class GradedCoalgebra:
    """Nonnegatively graded coalgebra, C_0 = k, truncated above degree D.

    ``components[(j, p, q)]`` is the matrix of Delta_{p,q}: C_j -> C_p (x) C_q
    (shape dims[p]*dims[q] x dims[j]), present for every p, q >= 0 with
    p + q = j <= D.
    """

    __slots__ = ("field", "dims", "components")

    def __init__(self, field, dims, components):
        dims = tuple(int(d) for d in dims)
        if not dims or dims[0] != 1:
            raise ValueError("graded coalgebra needs dims[0] == 1")
        if any(d < 0 for d in dims):
            raise ValueError("negative component dimension")
        self.field = field
        self.dims = dims
        comps = {}
        for j in range(len(dims)):
            for p in range(j + 1):
                q = j - p
                m = components.get((j, p, q))
                if m is None:
                    raise ValueError("missing component (%d,%d,%d)" % (j, p, q))
                if m.nrows != dims[p] * dims[q] or m.ncols != dims[j]:
                    raise ValueError("component (%d,%d,%d) has wrong shape" % (j, p, q))
                comps[(j, p, q)] = m
        self.components = comps

    @property
    def top_degree(self):
        return len(self.dims) - 1

    def component(self, j, p, q):
        return self.components[(j, p, q)]

    def digest_data(self):
        fmt = self.field.format
        comp = tuple(
            (key, tuple(sorted(((r, c), fmt(v)) for (r, c), v in m.entries.items())))
            for key, m in sorted(self.components.items())
        )
        return ("graded", tuple(sorted(self.field.label().items())), self.dims, comp)

    def __eq__(self, other):
        return isinstance(other, GradedCoalgebra) and self.digest_data() == other.digest_data()

    def __repr__(self):
        return "GradedCoalgebra(%r, dims=%s)" % (self.field, list(self.dims))


class Comodule:
    """Finite-dimensional left comodule: coaction m_t -> sum v * e_i (x) m_j."""

    __slots__ = ("base", "dim", "coaction")

    def __init__(self, base, dim, coaction):
        if dim < 0:
            raise ValueError("negative comodule dimension")
        if len(coaction) != dim:
            raise ValueError("coaction must list one entry per basis index")
        self.base = base
        self.dim = dim
        field = base.field
        rows = []
        for t, triples in enumerate(coaction):
            seen = {}
            for i, j, v in triples:
                if not (0 <= i < base.dim and 0 <= j < dim):
                    raise ValueError("coaction index out of range at basis %d" % t)
                v = field.coerce(v)
                key = (i, j)
                if key in seen:
                    v = field.add(seen[key], v)
                if v == field.zero:
                    seen.pop(key, None)
                else:
                    seen[key] = v
            rows.append(tuple((i, j, v) for (i, j), v in sorted(seen.items())))
        self.coaction = tuple(rows)

    def coaction_matrix(self):
        n = self.base.dim
        items = []
        for t, triples in enumerate(self.coaction):
            for i, j, v in triples:
                items.append((i * self.dim + j, t, v))
        return Matrix.from_entries(self.base.field, n * self.dim, self.dim, items)

    def __repr__(self):
        return "Comodule(dim=%d over %r)" % (self.dim, self.base)


def trivial_comodule(c):
    """k with coaction 1 -> grouplike (x) 1."""
    return Comodule(c, 1, [[(c.grouplike_index, 0, 1)]])


def regular_comodule(c):
    """C coacting on itself by comultiplication."""
    return Comodule(c, c.dim, [list(triples) for triples in c.comul])


def cofree_comodule(c, k):
    """C (x) k^k with coaction comul (x) id."""
    coaction = []
    for t in range(c.dim):
        for s in range(k):
            coaction.append([(i, j * k + s, v) for i, j, v in c.comul[t]])
    return Comodule(c, c.dim * k, coaction)


def direct_sum_comodules(m1, m2):
    if m1.base != m2.base:
        raise ValueError("comodules over different coalgebras")
    coaction = [list(triples) for triples in m1.coaction]
    for triples in m2.coaction:
        coaction.append([(i, j + m1.dim, v) for i, j, v in triples])
    return Comodule(m1.base, m1.dim + m2.dim, coaction)


def extension_comodule(c, primitive, scale=1):
    """Two-dimensional comodule: m_1 trivial, nu(m_2) = g (x) m_2 + w (x) m_1.

    ``primitive`` is a vector in C that must satisfy mu(w) = g (x) w + w (x) g;
    this is exactly what makes the coaction coassociative.
    """
    f = c.field
    g = c.grouplike_index
    rows = [[(g, 0, 1)]]
    second = [(g, 1, 1)]
    for i, v in enumerate(primitive):
        v = f.mul(f.coerce(v), f.coerce(scale))
        if v != f.zero:
            second.append((i, 0, v))
    rows.append(second)
    return Comodule(c, 2, rows)


# ---------------------------------------------------------------------------
# validation


def validate(c):
    """Axiom check for a finite Coalgebra; returns a ValidationReport."""
    f = c.field
    n = c.dim
    mu = c.comul_matrix()
    eye = Matrix.identity(f, n)
    flags = {}
    notes = {}

    left = Matrix.kron(mu, eye) @ mu
    right = Matrix.kron(eye, mu) @ mu
    flags["coassociative"] = left == right
    if not flags["coassociative"]:
        diff = left - right
        t = min(c for (_, c) in diff.entries)
        notes["coassociative"] = "fails first at basis index %d" % t

    eps = c.counit_matrix()
    lcu = Matrix.kron(eps, eye) @ mu
    rcu = Matrix.kron(eye, eps) @ mu
    flags["counital"] = lcu == eye and rcu == eye
    if not flags["counital"]:
        bad = (lcu - eye) if lcu != eye else (rcu - eye)
        t = min(col for (_, col) in bad.entries)
        notes["counital"] = "fails first at basis index %d" % t

    g = c.grouplike_index
    coaug = dict(((i, j), v) for i, j, v in c.comul[g]) == {(g, g): f.one} and c.counit[g] == f.one
    flags["coaugmented"] = bool(coaug)
    if not coaug:
        notes["coaugmented"] = "grouplike index %d is not grouplike" % g

    flags["cocommutative"] = swap_matrix(f, n, n) @ mu == mu

    if flags["coassociative"] and flags["counital"] and flags["coaugmented"]:
        chain = coaugmentation_filtration(c)
        flags["conilpotent"] = chain.exhaustive
        if not chain.exhaustive:
            notes["conilpotent"] = "filtration stabilizes at step %d with dim %d < %d" % (
                chain.stabilized_at,
                chain.steps[-1].dim,
                n,
            )
    else:
        flags["conilpotent"] = False
        notes.setdefault("conilpotent", "skipped: prior axiom failed")

    if c.degrees is not None:
        flags["graded_metadata"] = c.degrees_respected()

    return ValidationReport(flags, notes)


def validate_graded(g):
    """Axiom check for a GradedCoalgebra, componentwise."""
    f = g.field
    flags = {"coaugmented": True, "conilpotent": True}
    notes = {}
    coassoc = True
    counital = True
    cocomm = True
    top = g.top_degree
    for j in range(top + 1):
        dj = g.dims[j]
        if dj == 0:
            continue
        eye_j = Matrix.identity(f, dj)
        if g.component(j, 0, j) != eye_j or g.component(j, j, 0) != eye_j:
            counital = False
            notes.setdefault("counital", "unit component at degree %d is not the identity" % j)
        for p in range(j + 1):
            q = j - p
            if swap_matrix(f, g.dims[p], g.dims[q]) @ g.component(j, p, q) != g.component(j, q, p):
                cocomm = False
        for p in range(j + 1):
            for q in range(j - p + 1):
                r = j - p - q
                left = Matrix.kron(g.component(p + q, p, q), Matrix.identity(f, g.dims[r])) @ g.component(j, p + q, r)
                right = Matrix.kron(Matrix.identity(f, g.dims[p]), g.component(q + r, q, r)) @ g.component(j, p, q + r)
                if left != right:
                    coassoc = False
                    notes.setdefault("coassociative", "fails at (j,p,q,r)=(%d,%d,%d,%d)" % (j, p, q, r))
    flags["coassociative"] = coassoc
    flags["counital"] = counital
    flags["cocommutative"] = cocomm
    return ValidationReport(flags, notes)


# ---------------------------------------------------------------------------
# filtration and socle


@dataclass(frozen=True)
class FiltrationChain:
    steps: tuple  # SubspaceBasis for F_0, F_1, ... up to stabilization
    exhaustive: bool
    stabilized_at: int


def coaugmentation_filtration(c):
    """The coaugmentation filtration F_0 = span(g) <= F_1 <= ... of a finite C.

    Computed through the reduced coalgebra D = C_+: with G_1 = ker(reduced
    comul) and G_m the preimage of D (x) G_{m-1}, the chain F_m is the pullback
    of G_m along C -> D plus the grouplike line.  Stabilizes within dim C
    steps; exhaustive iff the stable term is all of C.
    """
    f = c.field
    n = c.dim
    d = n - 1
    g = c.grouplike_index
    keep = c.positive_indices()

    def lift(sub_d):
        vecs = [[f.zero] * n]
        vecs[0][g] = f.one
        for v in sub_d.vectors:
            w = [f.zero] * n
            for k, i in enumerate(keep):
                w[i] = v[k]
            vecs.append(w)
        return SubspaceBasis(f, n, tuple(tuple(v) for v in vecs)).canonical()

    steps = [lift(SubspaceBasis(f, d, ()))]
    if d == 0:
        return FiltrationChain(tuple(steps), True, 0)

    mu_d = c.reduced_comul_matrix()
    current = mu_d.kernel_basis().canonical()  # G_1
    if current.dim > 0:
        steps.append(lift(current))
    m = 1
    while 0 < current.dim < d:
        # G_{m+1} = preimage of D (x) G_m under the reduced comultiplication
        tensor_vectors = []
        for i in range(d):
            for v in current.vectors:
                w = [f.zero] * (d * d)
                for k, x in enumerate(v):
                    if x != f.zero:
                        w[i * d + k] = x
                tensor_vectors.append(tuple(w))
        wspace = SubspaceBasis(f, d * d, tuple(tensor_vectors))
        proj, _ = quotient_maps(wspace)
        nxt = (proj @ mu_d).kernel_basis().canonical()
        if nxt.dim == current.dim:
            break
        current = nxt
        steps.append(lift(current))
        m += 1
        if m > d:
            break
    return FiltrationChain(tuple(steps), current.dim == d, len(steps) - 1)


def socle(m):
    """Largest trivial subcomodule: ker(M -> C (x) M -> C_+ (x) M)."""
    c = m.base
    nu = m.coaction_matrix()
    proj = c.projection_matrix()
    reduced = Matrix.kron(proj, Matrix.identity(c.field, m.dim)) @ nu
    return reduced.kernel_basis()


def reduced_coaction_matrix(m):
    c = m.base
    return Matrix.kron(c.projection_matrix(), Matrix.identity(c.field, m.dim)) @ m.coaction_matrix()


def validate_comodule(m):
    c = m.base
    f = c.field
    nu = m.coaction_matrix()
    mu = c.comul_matrix()
    eye_m = Matrix.identity(f, m.dim)
    coassoc = Matrix.kron(mu, eye_m) @ nu == Matrix.kron(Matrix.identity(f, c.dim), nu) @ nu
    counit = Matrix.kron(c.counit_matrix(), eye_m) @ nu == eye_m
    return ValidationReport({"coassociative": coassoc, "counital": counit, "coaugmented": True, "conilpotent": True})


def comodule_hom_basis(l, m):
    """Basis of the space of comodule morphisms L -> M, as matrices.

    A linear map F: L -> M is a morphism iff (id (x) F) nu_L = nu_M F; the
    entries of F satisfy one linear equation per (input index, output
    coordinate of C (x) M).
    """
    if l.base is not m.base and l.base != m.base:
        raise ValueError("comodules over different coalgebras")
    f = l.base.field
    n = l.base.dim
    dl, dm = l.dim, m.dim
    if dl == 0 or dm == 0:
        return []
    rows = {}

    def unknown(r, cc):
        return r * dl + cc

    for t in range(dl):
        for i, j, v in l.coaction[t]:
            for r in range(dm):
                key = (t, i, r)
                rows.setdefault(key, {})
                col = unknown(r, j)
                rows[key][col] = f.add(rows[key].get(col, f.zero), v)
    for t in range(dl):
        for r in range(dm):
            for i, s, v in m.coaction[r]:
                key = (t, i, s)
                rows.setdefault(key, {})
                col = unknown(r, t)
                rows[key][col] = f.sub(rows[key].get(col, f.zero), v)
    keys = sorted(rows)
    items = []
    for ridx, key in enumerate(keys):
        for col, v in rows[key].items():
            if v != f.zero:
                items.append((ridx, col, v))
    system = Matrix.from_entries(f, len(keys), dm * dl, items)
    basis = []
    for vec in system.kernel_basis().vectors:
        basis.append(Matrix.from_entries(f, dm, dl, [(r, cc, vec[unknown(r, cc)]) for r in range(dm) for cc in range(dl)]))
    return basis


# ---------------------------------------------------------------------------
# constructors


def tensor_coalgebra(m, top, field):
    """Truncated tensor (cofree) coalgebra on m primitives, degrees 0..top.

    Degree-j basis: length-j words over {0..m-1}, index = base-m digits; the
    comultiplication components are deconcatenation, which in this indexing is
    the identity matrix.
    """
    if m < 0 or top < 0:
        raise ValueError("need m >= 0 and top >= 0")
    dims = [m**j if (m > 0 or j == 0) else 0 for j in range(top + 1)]
    comps = {}
    for j in range(top + 1):
        for p in range(j + 1):
            q = j - p
            comps[(j, p, q)] = Matrix.identity(field, dims[j])
    return GradedCoalgebra(field, dims, comps)


def _monomials(m, j):
    """Exponent vectors alpha in N^m with |alpha| = j, lexicographic order."""
    if m == 0:
        return [()] if j == 0 else []
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for a in range(remaining, -1, -1):
            rec(prefix + (a,), remaining - a, slots - 1)

    rec((), j, m)
    return sorted(out, reverse=True)


def _sub_exponents(alpha, p):
    """All beta <= alpha componentwise with |beta| = p."""
    out = []

    def rec(prefix, remaining, pos):
        if pos == len(alpha):
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for a in range(min(alpha[pos], remaining), -1, -1):
            rec(prefix + [a], remaining - a, pos + 1)

    rec([], p, 0)
    return out


def symmetric_coalgebra(m, top, field):
    """Truncated symmetric coalgebra on m primitives in the orbit-sum basis.

    Degree-j basis: exponent vectors alpha with |alpha| = j (dim binom(m+j-1,j));
    Delta_{p,q}(s_alpha) = sum over beta+gamma = alpha of s_beta (x) s_gamma,
    all structure constants 1.  Requires characteristic 0 or p > top so that
    the graded dual is literally the truncated polynomial ring.
    """
    if m < 0 or top < 0:
        raise ValueError("need m >= 0 and top >= 0")
    ch = field.characteristic()
    if ch != 0 and ch <= top:
        raise UnsupportedCharacteristic(
            "symmetric coalgebra over GF(%d) needs p > truncation degree %d" % (ch, top)
        )
    bases = [_monomials(m, j) for j in range(top + 1)]
    index = [{alpha: k for k, alpha in enumerate(b)} for b in bases]
    dims = [len(b) for b in bases]
    one = field.one
    comps = {}
    for j in range(top + 1):
        for p in range(j + 1):
            q = j - p
            items = []
            for col, alpha in enumerate(bases[j]):
                for beta in _sub_exponents(alpha, p):
                    gamma = tuple(a - b for a, b in zip(alpha, beta))
                    items.append((index[p][beta] * dims[q] + index[q][gamma], col, one))
            comps[(j, p, q)] = Matrix.from_entries(field, dims[p] * dims[q], dims[j], items)
    return GradedCoalgebra(field, dims, comps)


def symmetric_to_tensor_embedding(m, top, field):
    """Per-degree matrices of the orbit-sum embedding Sym(m) -> Ten(m).

    s_alpha maps to the sum of all words with exponent profile alpha; the
    embedding intertwines the comultiplication components of the two
    constructors degreewise.
    """
    bases = [_monomials(m, j) for j in range(top + 1)]
    out = {}
    for j in range(top + 1):
        items = []
        for col, alpha in enumerate(bases[j]):
            for widx in range(m**j if m > 0 else (1 if j == 0 else 0)):
                word = []
                w = widx
                for _ in range(j):
                    word.append(w % m)
                    w //= m
                profile = [0] * m
                for ch_ in word:
                    profile[ch_] += 1
                if tuple(profile) == alpha:
                    items.append((widx, col, field.one))
        out[j] = Matrix.from_entries(field, m**j if m > 0 else (1 if j == 0 else 0), len(bases[j]), items)
    return out


def opposite(c):
    """The co-opposite: tensor factors of every comultiplication output swap."""
    if isinstance(c, Coalgebra):
        comul = [[(j, i, v) for i, j, v in triples] for triples in c.comul]
        return Coalgebra(c.field, c.dim, c.grouplike_index, c.counit, comul, degrees=c.degrees)
    if isinstance(c, GradedCoalgebra):
        comps = {}
        for j in range(c.top_degree + 1):
            for p in range(j + 1):
                q = j - p
                comps[(j, p, q)] = swap_matrix(c.field, c.dims[q], c.dims[p]) @ c.component(j, q, p)
        return GradedCoalgebra(c.field, c.dims, comps)
    raise TypeError("opposite expects a Coalgebra or GradedCoalgebra")


def flatten(g):
    """Forget the grading of a GradedCoalgebra; keep it as degree metadata."""
    if not isinstance(g, GradedCoalgebra):
        raise TypeError("flatten expects a GradedCoalgebra")
    f = g.field
    offsets = []
    total = 0
    for d in g.dims:
        offsets.append(total)
        total += d
    comul = [[] for _ in range(total)]
    degrees = []
    for j, dj in enumerate(g.dims):
        degrees.extend([j] * dj)
        for p in range(j + 1):
            q = j - p
            comp = g.component(j, p, q)
            dq = g.dims[q]
            for (row, col), v in sorted(comp.entries.items()):
                a, b = divmod(row, dq) if dq else (0, 0)
                comul[offsets[j] + col].append((offsets[p] + a, offsets[q] + b, v))
    counit = [f.zero] * total
    counit[0] = f.one
    return Coalgebra(f, total, 0, counit, comul, degrees=tuple(degrees))
