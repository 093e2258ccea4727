"""Magmas, comagmas and Frobenius algebras over either backend.

An update structure only demands a magma on the property wire (a bare
binary operation) and dually a comagma; units, counits, associativity
and the Frobenius laws are all optional extras whose presence is probed
by :func:`check_algebra`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .finsets import FinFunction, FinSet, SetType, bang, projection
from .tensors import (
    DEFAULT_TOL,
    Morphism,
    TensorType,
    Tolerance,
    cap,
    cup,
)

__all__ = [
    "AlgebraError",
    "Magma",
    "Comagma",
    "FrobeniusAlgebra",
    "ALGEBRA_LAWS",
    "check_algebra",
    "find_unit",
    "scfa_from_dimension",
    "conjugated_frobenius",
    "left_delete",
    "set_diagonal",
    "pair_of_pants",
    "pair_of_pants_frobenius",
]


class AlgebraError(ValueError):
    """A component is missing or ill-typed for the requested check."""


Carrier = TensorType | SetType
Arrow = Morphism | FinFunction


def _check_endo_types(carrier: Carrier, mult=None, unit=None, comult=None, counit=None) -> None:
    two = carrier @ carrier
    unit_t = type(carrier).unit()
    for name, arrow, dom, cod in (
        ("mult", mult, two, carrier),
        ("unit", unit, unit_t, carrier),
        ("comult", comult, carrier, two),
        ("counit", counit, carrier, unit_t),
    ):
        if arrow is None:
            continue
        if arrow.dom != dom or arrow.cod != cod:
            raise AlgebraError(
                f"{name} must be a map {dom} -> {cod}, got {arrow.dom} -> {arrow.cod}"
            )


@dataclass(frozen=True, eq=False)
class Magma:
    carrier: Carrier
    mult: Arrow
    unit: Arrow | None = None

    def __post_init__(self) -> None:
        _check_endo_types(self.carrier, mult=self.mult, unit=self.unit)


@dataclass(frozen=True, eq=False)
class Comagma:
    carrier: Carrier
    comult: Arrow
    counit: Arrow | None = None

    def __post_init__(self) -> None:
        _check_endo_types(self.carrier, comult=self.comult, counit=self.counit)


@dataclass(frozen=True, eq=False)
class FrobeniusAlgebra:
    carrier: Carrier
    mult: Arrow
    unit: Arrow
    comult: Arrow
    counit: Arrow

    def __post_init__(self) -> None:
        _check_endo_types(
            self.carrier, mult=self.mult, unit=self.unit, comult=self.comult, counit=self.counit
        )


ALGEBRA_LAWS = (
    "assoc",
    "coassoc",
    "unit",
    "counit",
    "comm",
    "cocomm",
    "special",
    "frobenius",
    "dagger_frobenius",
)


def _compare(lhs: Arrow, rhs: Arrow, tol: Tolerance) -> tuple[bool, float]:
    residual = lhs.distance(rhs)
    if isinstance(lhs, FinFunction):
        return residual == 0, residual
    return residual <= tol.threshold(max(lhs.norm(), rhs.norm())), residual


def find_unit(magma: Magma) -> tuple[str, ...] | None:
    """Exhaustively search a finite-set magma for a two-sided unit element."""
    if not isinstance(magma.mult, FinFunction):
        raise AlgebraError("unit search is only available for finite-set magmas")
    carrier = magma.carrier
    elems = carrier.elements()
    for u in elems:
        if all(
            magma.mult.table[u + x] == x and magma.mult.table[x + u] == x for x in elems
        ):
            return u
    return None


def _getattr_or_raise(alg, name: str):
    value = getattr(alg, name, None)
    if value is None:
        raise AlgebraError(f"{type(alg).__name__} has no {name}; cannot check this law")
    return value


def check_algebra(alg, law: str, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, float]:
    """Check one named law; returns ``(holds, residual)``.

    Missing components raise :class:`AlgebraError`, except that a
    finite-set magma without a stored unit gets an exhaustive unit
    search instead.
    """
    if law not in ALGEBRA_LAWS:
        raise AlgebraError(f"unknown algebra law {law!r}; expected one of {ALGEBRA_LAWS}")
    carrier = alg.carrier
    ident = carrier.identity()
    sw = carrier.swap(carrier)

    if law == "assoc":
        mult = _getattr_or_raise(alg, "mult")
        lhs = (mult @ ident) >> mult
        rhs = (ident @ mult) >> mult
        return _compare(lhs, rhs, tol)
    if law == "coassoc":
        comult = _getattr_or_raise(alg, "comult")
        lhs = comult >> (comult @ ident)
        rhs = comult >> (ident @ comult)
        return _compare(lhs, rhs, tol)
    if law == "unit":
        mult = _getattr_or_raise(alg, "mult")
        unit = getattr(alg, "unit", None)
        if unit is None:
            if isinstance(mult, FinFunction):
                return _searched_unit_check(alg)
            raise AlgebraError("algebra has no unit; cannot check the unit law")
        left = (unit @ ident) >> mult
        right = (ident @ unit) >> mult
        ok_l, r_l = _compare(left, ident, tol)
        ok_r, r_r = _compare(right, ident, tol)
        return ok_l and ok_r, max(r_l, r_r)
    if law == "counit":
        comult = _getattr_or_raise(alg, "comult")
        counit = _getattr_or_raise(alg, "counit")
        left = comult >> (counit @ ident)
        right = comult >> (ident @ counit)
        ok_l, r_l = _compare(left, ident, tol)
        ok_r, r_r = _compare(right, ident, tol)
        return ok_l and ok_r, max(r_l, r_r)
    if law == "comm":
        mult = _getattr_or_raise(alg, "mult")
        return _compare(sw >> mult, mult, tol)
    if law == "cocomm":
        comult = _getattr_or_raise(alg, "comult")
        return _compare(comult >> sw, comult, tol)
    if law == "special":
        mult = _getattr_or_raise(alg, "mult")
        comult = _getattr_or_raise(alg, "comult")
        return _compare(comult >> mult, ident, tol)
    if law == "frobenius":
        mult = _getattr_or_raise(alg, "mult")
        comult = _getattr_or_raise(alg, "comult")
        middle = mult >> comult
        left = (ident @ comult) >> (mult @ ident)
        right = (comult @ ident) >> (ident @ mult)
        ok_l, r_l = _compare(left, middle, tol)
        ok_r, r_r = _compare(right, middle, tol)
        return ok_l and ok_r, max(r_l, r_r)
    # dagger_frobenius
    mult = _getattr_or_raise(alg, "mult")
    comult = _getattr_or_raise(alg, "comult")
    if not isinstance(mult, Morphism):
        raise AlgebraError("dagger laws need the linear backend")
    ok_m, r_m = _compare(comult, mult.dagger(), tol)
    unit = getattr(alg, "unit", None)
    counit = getattr(alg, "counit", None)
    if unit is not None and counit is not None:
        ok_u, r_u = _compare(counit, unit.dagger(), tol)
        return ok_m and ok_u, max(r_m, r_u)
    return ok_m, r_m


def _searched_unit_check(alg) -> tuple[bool, float]:
    # No stored unit: search the carrier, reporting the least total violation.
    elems = alg.carrier.elements()
    best = None
    for u in elems:
        bad = sum(1 for x in elems if alg.mult.table[u + x] != x)
        bad += sum(1 for x in elems if alg.mult.table[x + u] != x)
        best = bad if best is None else min(best, bad)
    if best is None:  # empty carrier: no unit can exist
        return False, 1.0
    return best == 0, float(best)


# -- stock algebras ------------------------------------------------------


def scfa_from_dimension(d: int) -> FrobeniusAlgebra:
    """The computational-basis spider on one wire of dimension d.

    comult copies basis states, counit deletes them; mult and unit are
    their daggers.  Special, commutative and dagger-Frobenius.
    """
    t = TensorType((d,))
    comult_arr = np.zeros((d * d, d))
    for i in range(d):
        comult_arr[i * d + i, i] = 1.0
    comult = Morphism(t, t @ t, comult_arr)
    counit = Morphism(t, TensorType(()), np.ones((1, d)))
    return FrobeniusAlgebra(
        carrier=t,
        mult=comult.dagger(),
        unit=counit.dagger(),
        comult=comult,
        counit=counit,
    )


def conjugated_frobenius(alg: FrobeniusAlgebra, u: Morphism) -> FrobeniusAlgebra:
    """Transport a linear Frobenius algebra along a unitary u on its carrier."""
    if not isinstance(alg.mult, Morphism):
        raise AlgebraError("conjugation needs the linear backend")
    if u.dom != alg.carrier or u.cod != alg.carrier:
        raise AlgebraError(f"u must be an endomap of {alg.carrier}")
    ud = u.dagger()
    return FrobeniusAlgebra(
        carrier=alg.carrier,
        mult=(ud @ ud) >> alg.mult >> u,
        unit=alg.unit >> u,
        comult=ud >> alg.comult >> (u @ u),
        counit=ud >> alg.counit,
    )


def left_delete(v: FinSet) -> Magma:
    """The magma on v that discards its left argument: (a, b) -> b."""
    t = SetType((v,))
    return Magma(carrier=t, mult=projection(t @ t, 1), unit=None)


def set_diagonal(v: FinSet) -> Comagma:
    """The copy comagma on v, with the map to the point as counit."""
    t = SetType((v,))
    table = {x: x + x for x in t.elements()}
    return Comagma(carrier=t, comult=FinFunction(t, t @ t, table), counit=bang(t))


def pair_of_pants(d: int) -> tuple[Magma, Comagma]:
    """Composition of d x d matrix units as a magma, and its scaled dagger.

    The carrier is ``[d, d]`` read as matrices; mult is "first then
    second" composition, its unit the Bell state.  The comagma is the
    dagger of mult scaled by 1/d and the counit the Bell effect scaled
    by 1/d: those scalars are forced by the GetGet and GetPut laws of
    the matrix update structure built on top of this algebra.
    """
    t = TensorType((d, d))
    one = TensorType((d,)).identity()
    mult = one @ cap(d) @ one  # |j,k,l,m> -> delta_{kl} |j,m>
    comult = (1.0 / d) * mult.dagger()
    magma = Magma(carrier=t, mult=mult, unit=cup(d))
    comagma = Comagma(carrier=t, comult=comult, counit=(1.0 / d) * cap(d))
    return magma, comagma


def pair_of_pants_frobenius(d: int) -> FrobeniusAlgebra:
    magma, comagma = pair_of_pants(d)
    return FrobeniusAlgebra(
        carrier=magma.carrier,
        mult=magma.mult,
        unit=magma.unit,
        comult=comagma.comult,
        counit=comagma.counit,
    )
