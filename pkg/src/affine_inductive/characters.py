"""Additive and multiplicative characters, and the character table of G.

All unit complex values are produced from exact rational angles: the value
``exp(2*pi*i*k/m)`` is evaluated afresh with ``k`` reduced mod ``m``, so no
phase error accumulates across products.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .field import FieldContext, FieldElement, mul, trace
from .group import AffineGroup, GroupElement, linear_part


def root_of_unity(k: int, m: int) -> complex:
    """exp(2*pi*i*k/m)."""
    k %= m
    if 4 * k % m == 0:
        # quarter turns exactly, keeps 1, i, -1, -i free of rounding noise
        return (1, 1j, -1, -1j)[4 * k // m]
    return complex(np.exp(2j * np.pi * k / m))


def additive_character(b: FieldElement, x: FieldElement) -> complex:
    """chi_b(x) = exp(2*pi*i * Tr(b*x) / p)."""
    return root_of_unity(trace(mul(b, x)), b.ctx.p)


def additive_character_table(ctx: FieldContext) -> np.ndarray:
    """Matrix ``T[i, j] = chi_{e_i}(e_j)`` over the canonical enumeration."""
    tr = ctx.trace_table[ctx.mul_table]
    roots = np.array([root_of_unity(k, ctx.p) for k in range(ctx.p)])
    return roots[tr]


def multiplicative_character(j: int, x: FieldElement) -> complex:
    """sigma_j(g^m) = exp(2*pi*i * j*m / (q-1)) on k^x."""
    return root_of_unity(j * x.log, x.ctx.q - 1)


def one_dim_rep_value(j: int, g: GroupElement) -> complex:
    """The j-th one-dimensional representation, sigma_j composed with the quotient map."""
    return multiplicative_character(j, linear_part(g))


@dataclass
class CharacterTable:
    """Rows are irreducibles (the q-1 characters, then the big one), columns are classes."""

    values: np.ndarray
    row_labels: list[str]
    class_reps: list[GroupElement]
    class_sizes: list[int]
    degrees: list[int]

    @property
    def group_order(self) -> int:
        return sum(self.class_sizes)

    def inner_products(self) -> np.ndarray:
        w = np.asarray(self.class_sizes, dtype=float) / self.group_order
        return (self.values * w) @ self.values.conj().T

    def row_orthogonality_residual(self) -> float:
        gram = self.inner_products()
        return float(np.max(np.abs(gram - np.eye(len(gram)))))

    def column_orthogonality_residual(self) -> float:
        # sum_chi chi(C) conj(chi(C')) = delta * |G| / |C|
        gram = self.values.conj().T @ self.values
        target = np.diag([self.group_order / s for s in self.class_sizes])
        return float(np.max(np.abs(gram - target)))

    def class_labels(self) -> list[str]:
        return [str(g) for g in self.class_reps]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["irreducible"] + self.class_labels())
        for label, row in zip(self.row_labels, self.values):
            w.writerow([label] + [format_complex_cell(z) for z in row])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "rows": self.row_labels,
            "classes": self.class_labels(),
            "class_sizes": list(self.class_sizes),
            "degrees": list(self.degrees),
            "values": [[complex_pair(z) for z in row] for row in self.values],
        }


def complex_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def format_complex_cell(z: complex, digits: int = 12) -> str:
    re_, im = round(float(z.real), digits) + 0.0, round(float(z.imag), digits) + 0.0
    sign = "-" if im < 0 else "+"
    return f"{re_!r}{sign}{abs(im)!r}i"


def character_table(ctx: FieldContext, chi_param: FieldElement | None = None) -> CharacterTable:
    from .pi_rep import PiRepresentation

    group = AffineGroup(ctx)
    classes = group.conjugacy_classes()
    reps = [group.element(c[0]) for c in classes]
    d = ctx.q - 1
    rows = []
    for j in range(d):
        rows.append([one_dim_rep_value(j, g) for g in reps])
    pi = PiRepresentation(ctx, chi_param)
    rows.append([pi.character(g) for g in reps])
    labels = [f"sigma_{j}" for j in range(d)] + ["pi"]
    return CharacterTable(
        values=np.array(rows, dtype=complex),
        row_labels=labels,
        class_reps=reps,
        class_sizes=[len(c) for c in classes],
        degrees=[1] * d + [d],
    )
