"""Candidate epimorphisms from the (n, n, n) triangle group onto the census group.

A tuple (u, v, w, s0, s1, s_inf) records the generator images
x = g**u h**s0, y = g**v h**s1, z = g**w h**s_inf.  Validity amounts to
three congruences: the g exponents sum to zero mod n, the s exponents
satisfy s0*q**(v+w) + s1*q**w + s_inf = 0 mod n (equivalent to xyz = 1),
and u*s1 - v*s0 is a unit mod p (surjectivity).

The triality moves permute the three images with group arithmetic, so
the s parameters transform correctly for free; classification only ever
inspects the g exponents.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import (
    NeedsRotation,
    NotSurjective,
    OracleFailure,
    SCongruence,
    SumCongruence,
)
from .group import IDENTITY, Elt, GroupParams, linking_aut


@dataclass(frozen=True)
class EpiParams:
    """Validated generator-image tuple; construct through ``validate``."""

    u: int
    v: int
    w: int
    s0: int
    s1: int
    s_inf: int

    def images(self) -> tuple[Elt, Elt, Elt]:
        return Elt(self.u, self.s0), Elt(self.v, self.s1), Elt(self.w, self.s_inf)

    @property
    def is_normalized(self) -> bool:
        return self.s0 == 0 and self.s1 == 1


def validate(
    gp: GroupParams, u: int, v: int, w: int, s0: int, s1: int, s_inf: int
) -> EpiParams:
    """Check the three validity congruences and return the reduced tuple.

    Raises SumCongruence, SCongruence or NotSurjective naming the failed
    condition.  As a final consistency check the three images are
    multiplied out and must give the identity.
    """
    n = gp.pp.n
    p = gp.pp.p
    u, v, w = u % n, v % n, w % n
    s0, s1, s_inf = s0 % n, s1 % n, s_inf % n
    if (u + v + w) % n != 0:
        raise SumCongruence(f"u+v+w = {u}+{v}+{w} is not 0 mod {n}")
    if (s0 * gp.qp(v + w) + s1 * gp.qp(w) + s_inf) % n != 0:
        raise SCongruence(
            f"s0*q^(v+w) + s1*q^w + s_inf is not 0 mod {n} "
            f"for (s0,s1,s_inf)=({s0},{s1},{s_inf})"
        )
    if (u * s1 - v * s0) % p == 0:
        raise NotSurjective(f"u*s1 - v*s0 = {u}*{s1} - {v}*{s0} is 0 mod {p}")
    epi = EpiParams(u, v, w, s0, s1, s_inf)
    x, y, z = epi.images()
    if gp.mul(gp.mul(x, y), z) != IDENTITY:
        raise OracleFailure("validated images do not multiply to the identity")
    return epi


def normalize(gp: GroupParams, epi: EpiParams) -> EpiParams:
    """The equivalent tuple with s0 = 0, s1 = 1 and the same g exponents.

    Requires u and v coprime to p; rotate the triple first otherwise.
    The result has an unchanged kernel, which tests witness by producing
    a linking automorphism between the two image pairs.
    """
    p = gp.pp.p
    if epi.u % p == 0 or epi.v % p == 0:
        raise NeedsRotation(
            f"normalization needs p coprime u and v, got u={epi.u}, v={epi.v}"
        )
    s_inf = (-gp.qp(epi.w)) % gp.pp.n
    return validate(gp, epi.u, epi.v, epi.w, 0, 1, s_inf)


def triality_rotate(gp: GroupParams, epi: EpiParams) -> EpiParams:
    """Cyclic move: new images are (y, z, x), so g exponents shift to (v, w, u)."""
    return validate(gp, epi.v, epi.w, epi.u, epi.s1, epi.s_inf, epi.s0)


def triality_transpose(gp: GroupParams, epi: EpiParams) -> EpiParams:
    """Transposing move: new images are (y, x, x**-1 z x)."""
    x, _, z = epi.images()
    conj = gp.mul(gp.mul(gp.inv(x), z), x)
    if conj.a != epi.w:
        raise OracleFailure("conjugation changed the g exponent of the third image")
    return validate(gp, epi.v, epi.u, conj.a, epi.s1, epi.s0, conj.b)


def kernels_equal(gp: GroupParams, e1: EpiParams, e2: EpiParams) -> bool:
    """True iff some automorphism carries the images of e1 to those of e2."""
    x1, y1, _ = e1.images()
    x2, y2, _ = e2.images()
    return linking_aut(gp, x1, y1, x2, y2) is not None


def normalized_epis(gp: GroupParams) -> Iterator[EpiParams]:
    """All valid tuples with s0 = 0, s1 = 1, in (u, v) order.

    These are exactly the pairs u coprime to p, v arbitrary; w and s_inf
    are forced by the congruences.
    """
    n = gp.pp.n
    p = gp.pp.p
    for u in range(n):
        if u % p == 0:
            continue
        for v in range(n):
            w = (-u - v) % n
            yield validate(gp, u, v, w, 0, 1, (-gp.qp(w)) % n)


def power_pair_epi(gp: GroupParams, u: int, v: int) -> EpiParams:
    """The tuple with x = g**u and y = (g h)**v, used for fixed-point counts.

    Requires u and v coprime to p.  The s parameters are read off the
    actual group elements, then validated as usual.
    """
    n = gp.pp.n
    p = gp.pp.p
    if u % p == 0 or v % p == 0:
        raise NeedsRotation(f"u and v must be coprime to p, got ({u}, {v})")
    y = gp.power(Elt(1, 1), v)
    w = (-u - v) % n
    s_inf = (-(y.b * gp.qp(w))) % n
    return validate(gp, u, v, w, 0, y.b, s_inf)
