"""Dense complex matrices over explicitly factored wire types.

Morphisms of the linear backend are matrices between finite-dimensional
spaces whose dimension is kept as an ordered list of tensor factors, so
``[2, 3]`` and ``[3, 2]`` are distinct types and every wire crossing is
an explicit swap.  Basis order is lexicographic with the leftmost factor
most significant, which is exactly the Kronecker product convention.

``f >> g`` composes left to right ("f then g"); ``f @ g`` is the tensor
product.  Scalars are 1x1 morphisms on the empty factor list.
"""
from __future__ import annotations

import math
import string
from dataclasses import dataclass
from typing import Iterable

import numpy as np

__all__ = [
    "WireError",
    "Tolerance",
    "DEFAULT_TOL",
    "TensorType",
    "UNIT",
    "Morphism",
    "compose",
    "tensor",
    "identity",
    "swap",
    "dagger",
    "conjugate",
    "cup",
    "cap",
    "partial_trace",
    "approx_eq",
    "basis_state",
    "basis_effect",
    "scalar",
]


class WireError(ValueError):
    """Boundary types of a composite do not match."""


@dataclass(frozen=True)
class Tolerance:
    """Absolute and relative bounds used when comparing matrices.

    A comparison of f and g holds when the Frobenius norm of f - g is at
    most ``absolute + relative * max(norm(f), norm(g))``.  At least one
    bound must be positive.
    """

    absolute: float = 1e-9
    relative: float = 1e-9

    def __post_init__(self) -> None:
        if self.absolute < 0 or self.relative < 0:
            raise ValueError("tolerance bounds must be non-negative")
        if self.absolute == 0 and self.relative == 0:
            raise ValueError("at least one tolerance bound must be positive")

    def threshold(self, scale: float = 0.0) -> float:
        return self.absolute + self.relative * scale


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class TensorType:
    """Ordered list of wire dimensions; the empty list is the monoidal unit."""

    factors: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        factors = tuple(int(d) for d in self.factors)
        if any(d < 1 for d in factors):
            raise ValueError(f"factor dimensions must be >= 1, got {factors}")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def unit(cls) -> "TensorType":
        return UNIT

    @property
    def dim(self) -> int:
        return math.prod(self.factors)

    def __matmul__(self, other: "TensorType") -> "TensorType":
        return TensorType(self.factors + other.factors)

    def identity(self) -> "Morphism":
        return Morphism(self, self, np.eye(self.dim))

    def swap(self, other: "TensorType") -> "Morphism":
        return swap(self, other)

    def __str__(self) -> str:
        return "I" if not self.factors else "[" + ", ".join(map(str, self.factors)) + "]"


UNIT = TensorType(())


def _fmt_entry(z: complex) -> str:
    re, im = z.real, z.imag
    if abs(im) < 1e-12:
        return f"{re:g}" if abs(re - round(re)) > 1e-12 else f"{int(round(re))}"
    if abs(re) < 1e-12:
        return f"{im:g}j"
    return f"{z:g}"


@dataclass(frozen=True, eq=False)
class Morphism:
    """A complex matrix read as a linear map ``dom -> cod``.

    The matrix has shape ``(cod.dim, dom.dim)`` and column/row indices
    enumerate the factored basis lexicographically, leftmost factor most
    significant.
    """

    dom: TensorType
    cod: TensorType
    array: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.array, dtype=np.complex128)
        if arr.shape != (self.cod.dim, self.dom.dim):
            raise WireError(
                f"matrix shape {arr.shape} does not match map {self.dom} -> {self.cod} "
                f"(expected {(self.cod.dim, self.dom.dim)})"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError("matrix entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "array", arr)

    # diagram operators -------------------------------------------------
    def __rshift__(self, other: "Morphism") -> "Morphism":
        """``f >> g`` is "f then g"."""
        return compose(other, self)

    def __matmul__(self, other: "Morphism") -> "Morphism":
        return tensor(self, other)

    def __add__(self, other: "Morphism") -> "Morphism":
        if self.dom != other.dom or self.cod != other.cod:
            raise WireError(f"cannot add {self.dom} -> {self.cod} and {other.dom} -> {other.cod}")
        return Morphism(self.dom, self.cod, self.array + other.array)

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self + (-1.0) * other

    def __rmul__(self, z: complex) -> "Morphism":
        return Morphism(self.dom, self.cod, complex(z) * self.array)

    def dagger(self) -> "Morphism":
        return Morphism(self.cod, self.dom, self.array.conj().T)

    def conj(self) -> "Morphism":
        return Morphism(self.dom, self.cod, self.array.conj())

    def norm(self) -> float:
        return float(np.linalg.norm(self.array))

    def distance(self, other: "Morphism") -> float:
        if self.dom != other.dom or self.cod != other.cod:
            raise WireError(
                f"cannot compare {self.dom} -> {self.cod} with {other.dom} -> {other.cod}"
            )
        return float(np.linalg.norm(self.array - other.array))

    def __str__(self) -> str:
        rows = [" ".join(_fmt_entry(z).rjust(8) for z in row) for row in self.array]
        return f"{self.dom} -> {self.cod}\n" + "\n".join(rows)

    def __repr__(self) -> str:
        return f"Morphism({self.dom} -> {self.cod})"


def compose(g: Morphism, f: Morphism) -> Morphism:
    """The composite ``g after f``."""
    if f.cod != g.dom:
        raise WireError(f"cannot compose: codomain {f.cod} does not match domain {g.dom}")
    return Morphism(f.dom, g.cod, g.array @ f.array)


def tensor(f: Morphism, g: Morphism) -> Morphism:
    return Morphism(f.dom @ g.dom, f.cod @ g.cod, np.kron(f.array, g.array))


def identity(t: TensorType) -> Morphism:
    return t.identity()


def swap(a: TensorType, b: TensorType) -> Morphism:
    """The crossing ``a (x) b -> b (x) a``."""
    n = a.dim * b.dim
    m = np.zeros((n, n))
    for i in range(a.dim):
        for j in range(b.dim):
            m[j * a.dim + i, i * b.dim + j] = 1.0
    return Morphism(a @ b, b @ a, m)


def dagger(f: Morphism) -> Morphism:
    return f.dagger()


def conjugate(f: Morphism) -> Morphism:
    return f.conj()


def cup(d: int) -> Morphism:
    """The Bell state ``I -> [d, d]``, sum over i of |ii>."""
    col = np.zeros((d * d, 1))
    for i in range(d):
        col[i * d + i, 0] = 1.0
    return Morphism(UNIT, TensorType((d, d)), col)


def cap(d: int) -> Morphism:
    """The Bell effect ``[d, d] -> I``; the dagger of :func:`cup`."""
    return cup(d).dagger()


def scalar(z: complex) -> Morphism:
    return Morphism(UNIT, UNIT, np.array([[z]]))


def basis_state(d: int, i: int) -> Morphism:
    """The computational basis ket |i> as a map ``I -> [d]``."""
    col = np.zeros((d, 1))
    col[i, 0] = 1.0
    return Morphism(UNIT, TensorType((d,)), col)


def basis_effect(d: int, i: int) -> Morphism:
    return basis_state(d, i).dagger()


def partial_trace(f: Morphism, factor_indices: int | Iterable[int]) -> Morphism:
    """Trace out factor positions present (with equal dimension) in dom and cod.

    Positions are 0-based and index both factor lists simultaneously, so
    the map must keep the traced wires in place.
    """
    if isinstance(factor_indices, int):
        idxs = [factor_indices]
    else:
        idxs = sorted(set(int(i) for i in factor_indices))
    cod_f, dom_f = f.cod.factors, f.dom.factors
    for i in idxs:
        if i < 0 or i >= len(cod_f) or i >= len(dom_f):
            raise WireError(f"factor {i} not present in both {f.dom} and {f.cod}")
        if cod_f[i] != dom_f[i]:
            raise WireError(
                f"factor {i} has dimension {dom_f[i]} in the domain but {cod_f[i]} in the codomain"
            )
    if not idxs:
        return f
    letters = iter(string.ascii_lowercase)
    cod_axes = [next(letters) for _ in cod_f]
    dom_axes = [next(letters) for _ in dom_f]
    for i in idxs:
        dom_axes[i] = cod_axes[i]
    keep_cod = [k for k in range(len(cod_f)) if k not in idxs]
    keep_dom = [k for k in range(len(dom_f)) if k not in idxs]
    subscripts = (
        "".join(cod_axes + dom_axes)
        + "->"
        + "".join([cod_axes[k] for k in keep_cod] + [dom_axes[k] for k in keep_dom])
    )
    arr = f.array.reshape(cod_f + dom_f)
    out = np.einsum(subscripts, arr)
    new_cod = TensorType(tuple(cod_f[k] for k in keep_cod))
    new_dom = TensorType(tuple(dom_f[k] for k in keep_dom))
    return Morphism(new_dom, new_cod, out.reshape(new_cod.dim, new_dom.dim))


def approx_eq(f: Morphism, g: Morphism, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, float]:
    """Whether f and g agree up to ``tol``, with the Frobenius residual."""
    residual = f.distance(g)
    return residual <= tol.threshold(max(f.norm(), g.norm())), residual
