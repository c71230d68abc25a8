"""Minimal cofree coresolutions of comodules and their vector-space duals.

Each step embeds the current comodule M into the cofree comodule C (x) V on
V = socle(M): any linear retraction phi of M onto its socle induces the
comodule morphism (id (x) phi) o nu under the cofree adjunction, and that
morphism is injective and restricts to an isomorphism of socles.  Passing to
the cokernel and repeating yields a coresolution whose socle differentials
vanish, so the cogenerator dimensions are independent of the retraction
choices; for M = k they are the Ext dimensions of the coalgebra.

Dualizing a finite coresolution termwise gives a resolution by free modules
over the dual algebra; minimality survives transposition, so the same
dimension list is read off the dual side.
"""

from __future__ import annotations

from dataclasses import dataclass

from cobarlab.coalg import (
    Comodule,
    cofree_comodule,
    socle,
    validate,
    validate_comodule,
)
from cobarlab.exactlin import Matrix, SubspaceBasis, quotient_maps


@dataclass(frozen=True)
class MinimalCoresolution:
    base: object
    target: Comodule
    cogenerator_dims: tuple
    embeddings: tuple  # step embeddings f_i: (i-th cokernel) -> C (x) V_i
    differentials: tuple  # d_i: J_{i-1} -> J_i, each f_i composed with a projection
    minimal: bool


@dataclass(frozen=True)
class ContramoduleResolution:
    cogenerator_dims: tuple
    augmentation: object  # transpose of the first embedding: P_0 -> M dual
    differentials: tuple  # transposes, arrows reversed: P_i -> P_{i-1}
    minimal: bool

    def ext_dims(self):
        """Ext dimensions against the ground field, read off minimality."""
        if not self.minimal:
            raise ValueError("ext dimensions require a minimal resolution")
        return list(self.cogenerator_dims)


def _socle_retraction(m, s, rng=None):
    """A matrix phi with phi restricted to the socle the identity in its basis.

    The deterministic choice solves against the socle columns; a generator
    adds a sparse random correction vanishing on the socle, which exercises
    the independence of the output from this choice.  Dense corrections would
    fill in every later step, so each row gets at most three entries.
    """
    f = m.base.field
    n = m.dim
    v = s.dim
    basis = Matrix.from_columns(f, [list(vec) for vec in s.vectors], n)
    x = basis.transpose()
    cols = []
    for k in range(v):
        unit = [f.zero] * v
        unit[k] = f.one
        sol = x.solve(tuple(unit))
        if sol is None:
            raise AssertionError("socle basis is not independent")
        cols.append(list(sol))
    phi = Matrix.from_columns(f, cols, n).transpose()
    if rng is not None and v < n:
        proj, _ = quotient_maps(s)
        w = n - v
        items = []
        for r in range(v):
            for c in rng.sample(range(w), rng.randrange(0, min(w, 2) + 1)):
                items.append((r, c, f.from_int(rng.choice((-1, 1)))))
        phi = phi + Matrix.from_entries(f, v, w, items) @ proj
    return phi


def _coaction_triples(matrix, dim):
    out = [[] for _ in range(dim)]
    for (r, c), val in matrix.entries.items():
        out[c].append((r // dim, r % dim, val))
    return [tuple(sorted(row)) for row in out]


def _one_step(m, rng=None, need_cokernel=True, check_bound=200000):
    """Embed m into the cofree comodule on its socle; return (v, f, cokernel).

    The morphism and cokernel rechecks are defensive and skipped above
    check_bound, where their kron products dominate the whole computation.
    """
    c = m.base
    f = c.field
    n = m.dim
    s = socle(m)
    v = s.dim
    if v == 0 and n > 0:
        raise AssertionError("nonzero comodule with zero socle contradicts conilpotence")
    phi = _socle_retraction(m, s, rng)
    nu = m.coaction_matrix()
    emb = Matrix.kron(Matrix.identity(f, c.dim), phi) @ nu
    if emb.rank() != n:
        raise AssertionError("cofree hull embedding failed to be injective")
    j = cofree_comodule(c, v)
    nu_j = j.coaction_matrix()
    if c.dim * emb.nnz() <= check_bound and not (
        nu_j @ emb == Matrix.kron(Matrix.identity(f, c.dim), emb) @ nu
    ):
        raise AssertionError("hull embedding is not a comodule morphism")
    if not need_cokernel:
        return v, emb, None, None
    image = SubspaceBasis(f, j.dim, tuple(tuple(col) for col in emb.columns()))
    proj, section = quotient_maps(image)
    q = j.dim - n
    nu_q = Matrix.kron(Matrix.identity(f, c.dim), proj) @ nu_j @ section
    quotient = Comodule(c, q, _coaction_triples(nu_q, q))
    if c.dim * nu_q.nnz() <= check_bound:
        report = validate_comodule(quotient)
        if not report.ok:
            raise AssertionError("cokernel coaction failed validation: %s" % (report.notes,))
    return v, emb, proj, quotient


def minimal_coresolution(m, length, rng=None):
    """Resolve a comodule by cofree comodules through the given length.

    The base must validate as a conilpotent coalgebra.  Passing a
    random.Random makes the retraction choices random; the cogenerator
    dimensions do not depend on them.
    """
    if length < 0:
        raise ValueError("length must be >= 0")
    report = validate(m.base)
    if not report.ok:
        raise ValueError("coresolution base failed validation: %s" % (report.notes,))
    dims = []
    embeddings = []
    differentials = []
    current = m
    prev_proj = None
    for step in range(length + 1):
        v, emb, proj, current = _one_step(current, rng, need_cokernel=step < length)
        dims.append(v)
        embeddings.append(emb)
        if prev_proj is not None:
            differentials.append(emb @ prev_proj)
        prev_proj = proj
    return MinimalCoresolution(m.base, m, tuple(dims), tuple(embeddings), tuple(differentials), True)


def betti_dims(r):
    """The cogenerator dimension list; for m = k these are Ext dimensions."""
    if not r.minimal:
        raise ValueError("betti dimensions are only defined for minimal resolutions")
    return list(r.cogenerator_dims)


def verify_coresolution(r):
    """Recheck exactness, the comodule property, and vanishing socle differentials."""
    c = r.base
    f = c.field
    terms = [cofree_comodule(c, v) for v in r.cogenerator_dims]
    maps = [r.embeddings[0]] + list(r.differentials)
    if maps[0].rank() != r.target.dim:
        return False
    for i, d in enumerate(maps):
        src_dim = r.target.dim if i == 0 else terms[i - 1].dim
        if d.nrows != terms[i].dim or d.ncols != src_dim:
            return False
    for i in range(1, len(maps)):
        if not (maps[i] @ maps[i - 1]).is_zero():
            return False
        ker_dim = maps[i - 1].nrows - maps[i].rank()
        if ker_dim != maps[i - 1].rank():
            return False
    for i in range(1, len(maps)):
        j = terms[i - 1]
        soc = socle(j)
        soc_matrix = Matrix.from_columns(f, [list(vec) for vec in soc.vectors], j.dim)
        if not (maps[i] @ soc_matrix).is_zero():
            return False
        nu_src = j.coaction_matrix()
        nu_dst = terms[i].coaction_matrix()
        if not (nu_dst @ maps[i] == Matrix.kron(Matrix.identity(f, c.dim), maps[i]) @ nu_src):
            return False
    return True


def dualize_to_contramodule_resolution(r):
    """Transpose a finite coresolution into a resolution over the dual algebra.

    Duality of finite-dimensional exact sequences preserves exactness, and
    the socle condition transposes to the radical condition, so minimality
    and the dimension list carry over unchanged.
    """
    return ContramoduleResolution(
        r.cogenerator_dims,
        r.embeddings[0].transpose(),
        tuple(d.transpose() for d in r.differentials),
        r.minimal,
    )


def verify_contramodule_resolution(cr, target_dim):
    """Exactness of the dualized complex, checked by ranks.

    The chain runs P_n -> ... -> P_1 -> P_0 -> M dual; the augmentation must
    be surjective and each kernel must match the incoming image.
    """
    chain = [cr.augmentation] + list(cr.differentials)
    if cr.augmentation.rank() != target_dim:
        return False
    for i in range(1, len(chain)):
        outgoing, incoming = chain[i - 1], chain[i]
        if not (outgoing @ incoming).is_zero():
            return False
        if outgoing.ncols - outgoing.rank() != incoming.rank():
            return False
    return True
