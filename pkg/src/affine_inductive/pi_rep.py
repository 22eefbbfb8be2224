"""The (q-1)-dimensional irreducible representation of the affine group.

It acts on functions on k^x. Basis vector ``m`` is the delta function at
``g^m`` (g the field generator), so translations act diagonally and dilations
act by permutation matrices. Operators act on column vectors: entry
``M[x, y]`` is the coefficient of input coordinate ``y`` in output
coordinate ``x``.

For ``g = (a, b)``, i.e. translation by b after dilation by a::

    (pi(g) F)(x) = chi(x*b) * F(x*a)

where ``chi = chi_c`` is a fixed nontrivial additive character (``c = 1`` by
default).
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .characters import additive_character_table
from .field import FieldContext, FieldElement
from .group import AffineGroup, GroupElement, compose, dilation, inverse


class PiRepresentation:
    def __init__(self, ctx: FieldContext, chi_param: FieldElement | None = None):
        if chi_param is None:
            chi_param = ctx.one
        if chi_param.is_zero():
            raise ValueError("the inducing character must be nontrivial (parameter 0 given)")
        self.field = ctx
        self.chi_param = chi_param
        self.group = AffineGroup(ctx)
        self.dim = ctx.q - 1
        # chi(e) for every element e, by enumeration index
        self.chi_values = additive_character_table(ctx)[chi_param.index]

    def chi(self, x: FieldElement) -> complex:
        return complex(self.chi_values[x.index])

    def matrix(self, g: GroupElement) -> np.ndarray:
        return self.matrix_id(self.group.id_of(g))

    def matrix_id(self, gid: int) -> np.ndarray:
        ctx = self.field
        d = self.dim
        la, bi = divmod(int(gid), ctx.q)
        m = np.arange(d)
        M = np.zeros((d, d), dtype=complex)
        # row x = g^m, column y = x*a = g^(m+la), phase chi(x*b)
        M[m, (m + la) % d] = self.chi_values[ctx.mul_table[1 + m, bi]]
        return M

    @cached_property
    def all_matrices(self) -> np.ndarray:
        """pi(g) for every group id, shape (|G|, d, d)."""
        return np.stack([self.matrix_id(i) for i in range(self.group.order)])

    @cached_property
    def generator_matrices(self) -> tuple[np.ndarray, np.ndarray]:
        """pi of the dilation by the field generator, and of the translation by one."""
        return tuple(self.matrix(g) for g in self.group.generators())

    def translation_matrix(self, b: FieldElement) -> np.ndarray:
        return self.matrix_id(b.index)

    def dilation_matrix(self, a: FieldElement) -> np.ndarray:
        return self.matrix(dilation(a))

    def character(self, g: GroupElement) -> complex:
        return complex(np.trace(self.matrix(g)))

    def induced_character_value(self, g: GroupElement) -> complex:
        """Frobenius formula over the coset representatives {dilation(a)}.

        Sums chi of the shift over those a for which the conjugate
        dilation(a) * g * dilation(a)^-1 is a translation.
        """
        total = 0j
        for a in self.field.units:
            s = dilation(a)
            h = compose(compose(s, g), inverse(s))
            if h.a == self.field.one:
                total += self.chi(h.b)
        return total

    def irreducibility_residual(self) -> float:
        """|<chi_pi, chi_pi> - 1| under the 1/|G|-normalized inner product."""
        traces = np.trace(self.all_matrices, axis1=1, axis2=2)
        norm = float(np.sum(np.abs(traces) ** 2)) / self.group.order
        return abs(norm - 1.0)
