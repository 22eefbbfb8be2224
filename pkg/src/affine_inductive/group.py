"""The affine group of a finite field.

An element ``x -> a*x + b`` is stored as the pair ``(a, b)``; composition
``g*h`` means "apply h, then g", which agrees with multiplying the matrices
``[[a, b], [0, 1]]``.

For bulk work the group also has an integer encoding: the element with
``a = g^i`` and ``b`` at enumeration index ``j`` has id ``i*q + j``. Sorting by
id is the canonical group order (by log a, then by the index of b).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContextMismatch, ZeroScale
from .field import FieldContext, FieldElement, add, inv, mul, neg


@dataclass(frozen=True)
class GroupElement:
    a: FieldElement
    b: FieldElement

    def __post_init__(self):
        if self.a.is_zero():
            raise ZeroScale("affine map with zero scale factor")
        if self.a.ctx != self.b.ctx:
            raise ContextMismatch("scale and shift from different fields")

    @property
    def ctx(self) -> FieldContext:
        return self.a.ctx

    def __call__(self, x: FieldElement) -> FieldElement:
        return add(mul(self.a, x), self.b)

    def __mul__(self, other: GroupElement) -> GroupElement:
        return compose(self, other)

    def as_matrix(self) -> tuple[tuple[FieldElement, FieldElement], tuple[FieldElement, FieldElement]]:
        ctx = self.ctx
        return ((self.a, self.b), (ctx.zero, ctx.one))

    def __str__(self):
        return f"({self.a},{self.b})"


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    if g.ctx != h.ctx:
        raise ContextMismatch("group elements over different fields")
    return GroupElement(mul(g.a, h.a), add(mul(g.a, h.b), g.b))


def inverse(g: GroupElement) -> GroupElement:
    ai = inv(g.a)
    return GroupElement(ai, neg(mul(ai, g.b)))


def identity(ctx: FieldContext) -> GroupElement:
    return GroupElement(ctx.one, ctx.zero)


def translation(b: FieldElement) -> GroupElement:
    """The translation x -> x + b (the embedding of the additive group)."""
    return GroupElement(b.ctx.one, b)


def dilation(a: FieldElement) -> GroupElement:
    """The dilation x -> a*x (the splitting of the quotient map)."""
    if a.is_zero():
        raise ZeroScale("dilation by zero")
    return GroupElement(a, a.ctx.zero)


def linear_part(g: GroupElement) -> FieldElement:
    """The quotient homomorphism onto k^x."""
    return g.a


class AffineGroup:
    """The group of affine maps of ``ctx``, with enumeration and class data."""

    def __init__(self, ctx: FieldContext):
        self.field = ctx
        self.q = ctx.q
        self.order = ctx.q * (ctx.q - 1)

    def element(self, gid: int) -> GroupElement:
        i, j = divmod(int(gid), self.q)
        return GroupElement(self.field.elements[1 + i], self.field.elements[j])

    def id_of(self, g: GroupElement) -> int:
        return g.a.log * self.q + g.b.index

    def enumerate(self) -> list[GroupElement]:
        return [self.element(i) for i in range(self.order)]

    def generators(self) -> tuple[GroupElement, GroupElement]:
        """The dilation by the field generator and the translation by one."""
        return dilation(self.field.generator), translation(self.field.one)

    @property
    def identity(self) -> GroupElement:
        return identity(self.field)

    # vectorized arithmetic on ids

    def compose_ids(self, g, h):
        """Vectorized composition on id arrays (broadcasting)."""
        ctx = self.field
        d = self.q - 1
        ga, gb = np.divmod(np.asarray(g), self.q)
        ha, hb = np.divmod(np.asarray(h), self.q)
        a = (ga + ha) % d
        b = ctx.add_table[ctx.mul_table[1 + ga, hb], gb]
        return a * self.q + b

    def inverse_ids(self, g):
        ctx = self.field
        d = self.q - 1
        ga, gb = np.divmod(np.asarray(g), self.q)
        ai = (-ga) % d
        b = ctx.neg_table[ctx.mul_table[1 + ai, gb]]
        return ai * self.q + b

    def conjugacy_classes(self) -> list[list[int]]:
        """Conjugacy classes as sorted lists of ids, ordered by least member.

        Computed as orbits of the conjugation action of the generating pair,
        which is the full conjugation action since the pair generates G.
        """
        ids = np.arange(self.order)
        gens = [self.id_of(x) for x in self.generators()]
        labels = -np.ones(self.order, dtype=np.int64)
        images = []
        for s in gens:
            si = self.inverse_ids(s)
            images.append(self.compose_ids(self.compose_ids(s, ids), si))
        classes = []
        for start in range(self.order):
            if labels[start] >= 0:
                continue
            label = len(classes)
            stack = [start]
            labels[start] = label
            members = []
            while stack:
                x = stack.pop()
                members.append(x)
                for img in images:
                    y = int(img[x])
                    if labels[y] < 0:
                        labels[y] = label
                        stack.append(y)
            classes.append(sorted(members))
        return classes

    def brute_force_classes(self) -> list[list[int]]:
        """All-pairs conjugation; quadratic in |G|, meant for small q."""
        ids = np.arange(self.order)
        conj = self.compose_ids(self.compose_ids(ids[:, None], ids[None, :]), self.inverse_ids(ids)[:, None])
        seen = set()
        classes = []
        for h in range(self.order):
            if h in seen:
                continue
            cls = sorted(set(int(x) for x in conj[:, h]))
            seen.update(cls)
            classes.append(cls)
        return classes

    def closure(self, gens) -> set[int]:
        """Subgroup generated by the given ids."""
        gens = [int(x) for x in gens]
        e = self.id_of(self.identity)
        seen = {e}
        frontier = [e]
        while frontier:
            new = []
            for x in frontier:
                for s in gens:
                    y = int(self.compose_ids(x, s))
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
            frontier = new
        return seen
