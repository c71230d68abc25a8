"""Finite models of two phenomena that need an infinite-dimensional coalgebra.

The base object is the coalgebra k*g (+) V with every element of V primitive
and V of countable dimension, spanned by e_0, e_1, ...  Its dual algebra
contains the subring of pairs (alpha, chi) where alpha is the value at the
grouplike and chi is an eventually constant coordinate functional on V, and
that subring is all this module ever evaluates against.

Two constructions live here, both in exact arithmetic:

* a two dimensional module over the subring whose extension data is a linear
  function f on the space of eventually constant functionals.  The module
  structure comes from a coaction exactly when f is evaluation against a
  finitely supported vector; the eventual-value function (read the tail of
  chi) is the standard witness that it need not be.

* a contraaction on Q = k (+) T, with T another countable space, whose mixing
  component applies a function phi to the V -> T part of the input.  phi kills
  every finite rank map and reads the tail off a diagonal one, so the vector
  space splitting Q -> k commutes with the induced module action but not with
  the contraaction.

Functionals are stored as a constant tail plus finitely many exceptional
values; linear maps V -> T as a scalar multiple of the identity plus a finite
block.  Both families are closed under the operations used on them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .exactlin import QQ, Field, SubspaceBasis


def _pairs(field, items):
    """Normalize a mapping or pair iterable into a sorted tuple of pairs."""
    if hasattr(items, "items"):
        items = items.items()
    seen = {}
    for key, value in items:
        v = field.coerce(value)
        if key in seen:
            raise ValueError("duplicate index %r" % (key,))
        seen[key] = v
    return tuple(sorted(seen.items()))


@dataclass(frozen=True)
class EventuallyConstant:
    """Coordinate functional on e_0, e_1, ... equal to ``tail`` almost everywhere.

    ``corrections`` lists the exceptional values; an entry replaces the tail at
    its index.  Entries equal to the tail are dropped so that equal functionals
    compare equal as data.
    """

    field: Field
    tail: object
    corrections: tuple = ()

    def __post_init__(self):
        tail = self.field.coerce(self.tail)
        fixed = tuple(
            (i, v) for i, v in _pairs(self.field, self.corrections) if v != tail
        )
        object.__setattr__(self, "tail", tail)
        object.__setattr__(self, "corrections", fixed)

    def value(self, i):
        for j, v in self.corrections:
            if j == i:
                return v
        return self.tail

    def support_bound(self):
        """First index after which every value equals the tail."""
        return 1 + max((i for i, _ in self.corrections), default=-1)

    def add(self, other):
        f = self.field
        bound = max(self.support_bound(), other.support_bound())
        items = [(i, f.add(self.value(i), other.value(i))) for i in range(bound)]
        return EventuallyConstant(f, f.add(self.tail, other.tail), items)

    def scale(self, c):
        f = self.field
        c = f.coerce(c)
        items = [(i, f.mul(c, v)) for i, v in self.corrections]
        return EventuallyConstant(f, f.mul(c, self.tail), items)

    def is_zero(self):
        return self.tail == self.field.zero and not self.corrections


def zero_functional(field=QQ):
    return EventuallyConstant(field, field.zero)


def coordinate_functional(i, field=QQ):
    """The functional reading off the coefficient of e_i."""
    return EventuallyConstant(field, field.zero, ((i, field.one),))


def constant_functional(field=QQ):
    return EventuallyConstant(field, field.one)


@dataclass(frozen=True)
class TaggedCofunctional:
    """Linear function on the space of eventually constant functionals.

    variant "vector": chi |-> sum coords[i] * chi(e_i), evaluation against the
    finitely supported vector with those coordinates.  variant "eventual":
    chi |-> tail * (eventual value of chi) + sum corrections[i] * chi(e_i).
    The eventual-value summand is not evaluation against any vector: it kills
    every coordinate functional yet is nonzero on the constant one.
    """

    field: Field
    variant: str
    coords: tuple = ()
    tail: object = None
    corrections: tuple = ()

    def __post_init__(self):
        if self.variant not in ("vector", "eventual"):
            raise ValueError("unknown cofunctional variant %r" % (self.variant,))
        f = self.field
        if self.variant == "vector":
            object.__setattr__(self, "coords", tuple(f.coerce(c) for c in self.coords))
            object.__setattr__(self, "tail", None)
            object.__setattr__(self, "corrections", ())
        else:
            tail = f.zero if self.tail is None else f.coerce(self.tail)
            object.__setattr__(self, "tail", tail)
            object.__setattr__(self, "coords", ())
            object.__setattr__(
                self,
                "corrections",
                tuple((i, v) for i, v in _pairs(f, self.corrections) if v != f.zero),
            )

    def __call__(self, chi):
        if chi.field != self.field:
            raise ValueError("field mismatch")
        f = self.field
        if self.variant == "vector":
            total = f.zero
            for i, c in enumerate(self.coords):
                total = f.add(total, f.mul(c, chi.value(i)))
            return total
        total = f.mul(self.tail, chi.tail)
        for i, c in self.corrections:
            total = f.add(total, f.mul(c, chi.value(i)))
        return total

    def describe(self):
        f = self.field
        if self.variant == "vector":
            return {"variant": "vector", "coords": [f.format(c) for c in self.coords]}
        return {
            "variant": "eventual",
            "tail": f.format(self.tail),
            "corrections": {str(i): f.format(v) for i, v in self.corrections},
        }


def from_vector(coords, field=QQ):
    return TaggedCofunctional(field, "vector", coords=tuple(coords))


def eventual_value(tail, corrections=(), field=QQ):
    return TaggedCofunctional(field, "eventual", tail=tail, corrections=corrections)


def is_rational(f: TaggedCofunctional) -> bool:
    """Whether f is evaluation against a finitely supported vector."""
    if f.variant == "vector":
        return True
    return f.tail == f.field.zero


def rationalizing_vector(f: TaggedCofunctional):
    """Coordinates of a vector realizing f, or None when no vector does."""
    if f.variant == "vector":
        return f.coords
    if f.tail != f.field.zero:
        return None
    bound = 1 + max((i for i, _ in f.corrections), default=-1)
    coords = [f.field.zero] * bound
    for i, v in f.corrections:
        coords[i] = v
    return tuple(coords)


def rationality_obstruction(f: TaggedCofunctional, probe=16):
    """Defect of the coordinatewise vector read off f.

    Candidate coordinates v_i = f(coordinate functional i) are probed out to
    ``probe`` and compared against f on the constant functional.  Any vector
    variant gives zero; an eventual variant leaves exactly its tail.
    """
    fld = f.field
    if f.variant == "eventual":
        bound = 1 + max((i for i, _ in f.corrections), default=-1)
    else:
        bound = len(f.coords)
    if probe < bound:
        raise ValueError("probe window cuts off coordinates")
    total = fld.zero
    for i in range(probe):
        total = fld.add(total, f(coordinate_functional(i, fld)))
    return fld.sub(f(constant_functional(fld)), total)


@dataclass(frozen=True)
class SubringElement:
    """Dual algebra element (value at the grouplike, functional on V)."""

    alpha: object
    chi: EventuallyConstant

    def __post_init__(self):
        object.__setattr__(self, "alpha", self.chi.field.coerce(self.alpha))

    @property
    def field(self):
        return self.chi.field

    def __mul__(self, other):
        if not isinstance(other, SubringElement):
            return NotImplemented
        f = self.field
        if other.field != f:
            raise ValueError("field mismatch")
        # every element of V is primitive, so products of functionals killing
        # the grouplike vanish on V and the functional part is bilinear
        chi = other.chi.scale(self.alpha).add(self.chi.scale(other.alpha))
        return SubringElement(f.mul(self.alpha, other.alpha), chi)


def subring_unit(field=QQ):
    return SubringElement(field.one, zero_functional(field))


def _random_functional(rng, field, span=8):
    tail = field.from_int(rng.randrange(-4, 5))
    items = {}
    for _ in range(rng.randrange(0, 4)):
        items[rng.randrange(0, span)] = field.from_int(rng.randrange(-4, 5))
    return EventuallyConstant(field, tail, tuple(items.items()))


def random_subring_element(rng, field=QQ):
    alpha = field.from_int(rng.randrange(-4, 5))
    return SubringElement(alpha, _random_functional(rng, field))


@dataclass(frozen=True)
class TwoDimModule:
    """Rank two module over the subring with extension data f.

    The action is a e_1 = alpha e_1 and a e_2 = alpha e_2 + f(chi_a) e_1.
    ``corrupt`` is a mutation hook for the axiom checker: it adds a spurious
    f(chi_a) e_2 term that breaks associativity of the action.
    """

    f: TaggedCofunctional
    corrupt: bool = False

    @property
    def field(self):
        return self.f.field

    def extension_value(self, a: SubringElement):
        return self.f(a.chi)

    def act(self, a, vec):
        fld = self.field
        if a.field != fld:
            raise ValueError("field mismatch")
        x1, x2 = (fld.coerce(vec[0]), fld.coerce(vec[1]))
        fa = self.extension_value(a)
        top = fld.add(fld.mul(a.alpha, x1), fld.mul(fa, x2))
        bottom = fld.mul(a.alpha, x2)
        if self.corrupt:
            bottom = fld.add(bottom, fld.mul(fa, x2))
        return (top, bottom)


def build_nonrational_module(f: TaggedCofunctional) -> TwoDimModule:
    return TwoDimModule(f)


def default_nonrational_cofunctional(field=QQ):
    return eventual_value(field.one, field=field)


def verify_module_axioms(m: TwoDimModule, samples=100, seed=0) -> bool:
    """Unit and associativity of the action on seeded random subring pairs."""
    fld = m.field
    rng = random.Random(seed)
    basis = ((fld.one, fld.zero), (fld.zero, fld.one))
    unit = subring_unit(fld)
    for e in basis:
        if m.act(unit, e) != e:
            return False
    for _ in range(samples):
        a = random_subring_element(rng, fld)
        b = random_subring_element(rng, fld)
        for e in basis:
            if m.act(a * b, e) != m.act(a, m.act(b, e)):
                return False
    return True


def max_rational_submodule(m: TwoDimModule) -> SubspaceBasis:
    """Largest submodule whose action comes from a coaction.

    The whole space when the extension data is evaluation against a vector,
    otherwise only the line spanned by e_1.
    """
    fld = m.field
    e1 = (fld.one, fld.zero)
    if is_rational(m.f):
        return SubspaceBasis(fld, 2, (e1, (fld.zero, fld.one)))
    return SubspaceBasis(fld, 2, (e1,))


def nonrational_report(samples=200, seed=20260816, field=QQ):
    """Build the eventual-value module and summarize every check on it."""
    f = default_nonrational_cofunctional(field)
    m = build_nonrational_module(f)
    sub = max_rational_submodule(m)
    return {
        "model": "two_dim_module",
        "cofunctional": f.describe(),
        "samples": samples,
        "seed": seed,
        "module_axioms_verified": verify_module_axioms(m, samples, seed),
        "is_rational": is_rational(f),
        "rationality_obstruction": field.format(rationality_obstruction(f)),
        "max_rational_submodule": [
            [field.format(x) for x in v] for v in sub.canonical().vectors
        ],
    }


@dataclass(frozen=True)
class TaggedLinearMap:
    """Linear map V -> T stored as tail * identity plus a finite block.

    ``block`` holds entries ((row, col), value) against the bases t_i of T and
    e_j of V.  A zero tail is exactly a finite rank map, so the tail scalar
    alone carries the tag; a diagonal tail map with any corrections stays
    infinite rank as long as the tail is nonzero.
    """

    field: Field
    tail: object
    block: tuple = ()

    def __post_init__(self):
        f = self.field
        object.__setattr__(self, "tail", f.coerce(self.tail))
        fixed = tuple((k, v) for k, v in _pairs(f, self.block) if v != f.zero)
        object.__setattr__(self, "block", fixed)

    @property
    def is_finite_rank(self):
        return self.tail == self.field.zero

    def entry(self, i, j):
        f = self.field
        v = f.one if i == j else f.zero
        v = f.mul(self.tail, v)
        for (r, c), x in self.block:
            if r == i and c == j:
                v = f.add(v, x)
        return v

    def add(self, other):
        f = self.field
        if other.field != f:
            raise ValueError("field mismatch")
        items = {}
        for (r, c), x in self.block + other.block:
            items[(r, c)] = f.add(items.get((r, c), f.zero), x)
        return TaggedLinearMap(f, f.add(self.tail, other.tail), tuple(items.items()))

    def scale(self, c):
        f = self.field
        c = f.coerce(c)
        items = tuple((k, f.mul(c, x)) for k, x in self.block)
        return TaggedLinearMap(f, f.mul(c, self.tail), items)


def finite_rank_map(entries, field=QQ):
    return TaggedLinearMap(field, field.zero, tuple(_pairs(field, entries)))


def diagonal_tail_map(tail, corrections=(), field=QQ):
    block = tuple(((i, i), v) for i, v in _pairs(field, corrections))
    return TaggedLinearMap(field, tail, block)


def phi(m: TaggedLinearMap):
    """The mixing function: zero on finite rank maps, the tail otherwise."""
    return m.tail


@dataclass(frozen=True)
class HomToQ:
    """A linear map from the base coalgebra into Q = k (+) T.

    Only the data the contraaction reads is stored: the values of both
    components at the grouplike and the V -> T block.  The V -> k block is
    dropped because no component of the contraaction looks at it.
    """

    field: Field
    k_at_group: object
    t_at_group: tuple = ()
    v_to_t: TaggedLinearMap = None

    def __post_init__(self):
        f = self.field
        object.__setattr__(self, "k_at_group", f.coerce(self.k_at_group))
        object.__setattr__(
            self,
            "t_at_group",
            tuple((i, v) for i, v in _pairs(f, self.t_at_group) if v != f.zero),
        )
        if self.v_to_t is None:
            object.__setattr__(self, "v_to_t", finite_rank_map((), f))
        elif self.v_to_t.field != f:
            raise ValueError("field mismatch")


@dataclass(frozen=True)
class QElement:
    """Element of Q = k (+) T: a scalar plus a finitely supported T-vector."""

    field: Field
    k_part: object
    t_part: tuple = ()

    def __post_init__(self):
        f = self.field
        object.__setattr__(self, "k_part", f.coerce(self.k_part))
        object.__setattr__(
            self,
            "t_part",
            tuple((i, v) for i, v in _pairs(f, self.t_part) if v != f.zero),
        )


def contraaction(h: HomToQ) -> QElement:
    """Contraaction on Q = k (+) T with mixing component phi on V -> T.

    Diagonal components evaluate the input at the grouplike; the k -> T
    component is zero; the T -> k component restricts the input to V and
    applies phi.
    """
    f = h.field
    k_part = f.add(h.k_at_group, phi(h.v_to_t))
    return QElement(f, k_part, h.t_at_group)


@dataclass(frozen=True)
class ContraWitness:
    """The contraaction bundled with its designated infinite rank witness."""

    field: Field
    witness: TaggedLinearMap

    def contraaction(self, h: HomToQ) -> QElement:
        if h.field != self.field:
            raise ValueError("field mismatch")
        return contraaction(h)

    def splitting(self, q: QElement):
        """The vector space projection Q -> k."""
        return q.k_part

    def contraaction_on_k(self, h: HomToQ):
        """The trivial contraaction on the quotient k: evaluate at the grouplike."""
        return h.k_at_group


def build_contra_witness(field=QQ) -> ContraWitness:
    return ContraWitness(field, diagonal_tail_map(field.one, field=field))


def module_action(a: SubringElement, q: QElement) -> QElement:
    """Induced subring action on Q through the contraaction.

    The input fed to the contraaction is c |-> a(c) q.  Its V -> T block has
    entries t_i * chi(e_j), an honest finite block only when chi has zero
    tail, so the action is modeled on that dense part of the subring.
    """
    f = q.field
    if a.field != f:
        raise ValueError("field mismatch")
    if a.chi.tail != f.zero:
        raise ValueError("module action needs a finitely supported functional")
    block = {}
    for i, t in q.t_part:
        for j, _ in a.chi.corrections:
            block[(i, j)] = f.mul(t, a.chi.value(j))
    h = HomToQ(
        f,
        f.mul(a.alpha, q.k_part),
        tuple((i, f.mul(a.alpha, t)) for i, t in q.t_part),
        TaggedLinearMap(f, f.zero, tuple(block.items())),
    )
    return contraaction(h)


def _random_finite_rank(rng, field, span=6):
    items = {}
    for _ in range(rng.randrange(1, 6)):
        key = (rng.randrange(0, span), rng.randrange(0, span))
        items[key] = field.from_int(rng.randrange(-4, 5))
    return TaggedLinearMap(field, field.zero, tuple(items.items()))


def verify_contra_witness(w: ContraWitness, samples=10, seed=20260816):
    """Check the three verdicts the witness exists to exhibit.

    module_trivial: the mixing component kills sampled finite rank inputs, so
    the splitting commutes with the induced module action.  contra_nontrivial:
    the designated diagonal map is mixed into the k summand.
    splitting_not_contra_linear: projecting after the contraaction differs
    from the quotient contraaction after projecting, on the designated map.
    """
    f = w.field
    rng = random.Random(seed)
    module_trivial = True
    for _ in range(samples):
        h = HomToQ(f, f.zero, (), _random_finite_rank(rng, f))
        out = w.contraaction(h)
        if out.k_part != f.zero or out.t_part != h.t_at_group:
            module_trivial = False
    contra_nontrivial = (
        phi(w.witness) != f.zero and not w.witness.is_finite_rank
    )
    probe = HomToQ(f, f.zero, (), w.witness)
    left = w.splitting(w.contraaction(probe))
    right = w.contraaction_on_k(probe)
    return {
        "model": "contraaction_on_k_plus_T",
        "samples": samples,
        "seed": seed,
        "witness_value": f.format(phi(w.witness)),
        "module_trivial": module_trivial,
        "contra_nontrivial": contra_nontrivial,
        "splitting_not_contra_linear": left != right,
    }


def contra_report(samples=10, seed=20260816, field=QQ):
    return verify_contra_witness(build_contra_witness(field), samples, seed)
