"""Curve classification: canonical triples, Galois orbits, fields, atlas.

A curve class is the sorted residue triple (u, v, w) mod m, subject to
u + v + w = 0 mod m and at least one entry coprime to p.  Scaling by a
unit k mod m realises Galois conjugation; the subgroup of units whose
scaling merely permutes the triple controls the minimal field of
definition, whose degree is phi(m) divided by the stabilizer order.

``oracle_classify`` is the independent verification path: it partitions
all normalised generator-image tuples by actual kernel equality (full
automorphism orbits of image pairs) closed under the two triality moves,
without ever reducing mod m.  Tests then assert that this partition is
exactly the fibering by canonical triple.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .arith import unit_group_order
from .epi import (
    EpiParams,
    normalized_epis,
    triality_rotate,
    triality_transpose,
    validate,
)
from .errors import AllDivisible, BoundExceeded, NoCoprimePair, NotUnit, OracleFailure
from .group import Elt, GroupParams, group_params, power_sum_table
from .hypermap import build

RATIONAL = "Rational"
MAXIMAL_REAL = "MaximalReal"
INDEX_THREE = "IndexThree"
FULL_CYCLOTOMIC = "FullCyclotomic"

_S3 = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))

DEFAULT_ORACLE_BOUND = 27


@dataclass(frozen=True, order=True)
class CurveClass:
    """Isomorphism class: the lexicographically least permutation mod m."""

    m: int
    triple: tuple[int, int, int]


@dataclass(frozen=True)
class FieldOfDefinition:
    kind: str
    degree: int
    description: str


@dataclass(frozen=True)
class AtlasEntry:
    triple: tuple[int, int, int]
    field: FieldOfDefinition
    orbit: tuple[int, int, int]
    aut_order: int
    genus: int
    equations: Optional[dict] = None


@dataclass(frozen=True)
class Atlas:
    p: int
    e: int
    f: int
    n: int
    m: int
    entries: tuple[AtlasEntry, ...]

    def orbits(self) -> dict[tuple[int, int, int], list[AtlasEntry]]:
        grouped: dict[tuple[int, int, int], list[AtlasEntry]] = {}
        for entry in self.entries:
            grouped.setdefault(entry.orbit, []).append(entry)
        return grouped

    def to_dict(self) -> dict:
        classes = []
        for entry in self.entries:
            item = {
                "triple": list(entry.triple),
                "field": {
                    "kind": entry.field.kind,
                    "degree": entry.field.degree,
                    "description": entry.field.description,
                },
                "orbit": list(entry.orbit),
                "autOrder": entry.aut_order,
                "genus": entry.genus,
            }
            if entry.equations is not None:
                item["equations"] = entry.equations
            classes.append(item)
        return {
            "schemaVersion": 1,
            "params": {"p": self.p, "e": self.e, "f": self.f, "n": self.n, "m": self.m},
            "classes": classes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def canonical_triple(gp: GroupParams, u: int, v: int, w: int) -> CurveClass:
    """Reduce mod m and sort; rejects triples with every entry divisible by p."""
    n = gp.pp.n
    p = gp.pp.p
    u, v, w = u % n, v % n, w % n
    if (u + v + w) % n != 0:
        raise ValueError(f"triple ({u},{v},{w}) does not sum to 0 mod {n}")
    if u % p == 0 and v % p == 0 and w % p == 0:
        raise AllDivisible(f"all of ({u},{v},{w}) are divisible by {p}")
    m = gp.m
    return CurveClass(m, tuple(sorted((u % m, v % m, w % m))))


def enumerate_classes(gp: GroupParams) -> list[CurveClass]:
    """One representative per permutation orbit of the valid triples mod m."""
    m = gp.m
    p = gp.pp.p
    if m == 1:
        return [CurveClass(1, (0, 0, 0))]
    seen = set()
    for u in range(m):
        for v in range(m):
            w = (-u - v) % m
            if u % p == 0 and v % p == 0 and w % p == 0:
                continue
            seen.add(tuple(sorted((u, v, w))))
    return [CurveClass(m, t) for t in sorted(seen)]


def galois_conjugate(gp: GroupParams, c: CurveClass, k: int) -> CurveClass:
    """The class of (k u, k v, k w)."""
    m = gp.m
    if m == 1:
        return c
    if k % gp.pp.p == 0:
        raise NotUnit(f"k = {k} is divisible by p = {gp.pp.p}")
    return CurveClass(m, tuple(sorted((k * t) % m for t in c.triple)))


def galois_orbit(gp: GroupParams, c: CurveClass) -> tuple[CurveClass, ...]:
    """Orbit of c under all units k mod m, sorted by triple."""
    if gp.m == 1:
        return (c,)
    orbit = {galois_conjugate(gp, c, k) for k in _units(gp)}
    return tuple(sorted(orbit))


def _units(gp: GroupParams) -> list[int]:
    return [k for k in range(1, gp.m) if k % gp.pp.p != 0]


def scalar_stabilizer(gp: GroupParams, c: CurveClass) -> list[int]:
    """Units k whose scaling permutes the triple; the order is 1, 2 or 3."""
    if gp.m == 1:
        return [1]
    m = gp.m
    stab = [
        k for k in _units(gp) if tuple(sorted((k * t) % m for t in c.triple)) == c.triple
    ]
    if len(stab) not in (1, 2, 3):
        raise OracleFailure(f"stabilizer of {c.triple} has order {len(stab)}")
    return stab


def _index_three_shape(gp: GroupParams, triple: tuple[int, int, int]) -> bool:
    """True iff the triple is (u, ku, k**2 u) for a unit k != 1 with 1+k+k**2 = 0 mod m."""
    m = gp.m
    p = gp.pp.p
    for k in range(2, m):
        if k % p == 0 or (1 + k + k * k) % m != 0:
            continue
        for u in set(triple):
            if u % p == 0:
                continue
            if tuple(sorted((u, u * k % m, u * k * k % m))) == triple:
                return True
    return False


def field_of_definition(gp: GroupParams, c: CurveClass) -> FieldOfDefinition:
    """Minimal field of definition of the class.

    The three nontrivial kinds come from the shape of the triple: a zero
    entry mod m gives the maximal real subfield, the shape (u, ku, k**2 u)
    with 1 + k + k**2 = 0 mod m gives the index three subfield, and
    everything else needs the full cyclotomic field.  The degree is
    always phi(m) over the scalar stabilizer order, which cross-checks
    the shape analysis.
    """
    m = gp.m
    if m == 1:
        return FieldOfDefinition(RATIONAL, 1, "Q")
    phi = unit_group_order(gp.pp.p, gp.pp.e - gp.f)
    stab = scalar_stabilizer(gp, c)
    degree = phi // len(stab)
    if 0 in c.triple:
        if len(stab) != 2:
            raise OracleFailure(f"zero entry but stabilizer order {len(stab)}")
        description = "Q" if degree == 1 else f"Q(cos(2*pi/{m}))"
        return FieldOfDefinition(MAXIMAL_REAL, degree, description)
    if _index_three_shape(gp, c.triple):
        if len(stab) != 3:
            raise OracleFailure(f"index-3 shape but stabilizer order {len(stab)}")
        return FieldOfDefinition(INDEX_THREE, degree, f"index-3 subfield of Q(zeta_{m})")
    if len(stab) != 1:
        raise OracleFailure(f"generic triple {c.triple} with stabilizer {stab}")
    return FieldOfDefinition(FULL_CYCLOTOMIC, degree, f"Q(zeta_{m})")


def s3_stabilizer(triple: tuple[int, int, int]) -> list[tuple[int, int, int]]:
    """Coordinate permutations leaving the ordered triple unchanged."""
    return [s for s in _S3 if tuple(triple[s[i]] for i in range(3)) == triple]


def curve_aut_order(gp: GroupParams, c: CurveClass) -> tuple[int, list[tuple[int, int, int]]]:
    """n**2 times the number of triple-preserving coordinate permutations."""
    stab = s3_stabilizer(c.triple)
    return gp.pp.n ** 2 * len(stab), stab


def representative_lift(gp: GroupParams, c: CurveClass) -> tuple[int, int, int]:
    """Deterministic lift of the class with the first two entries coprime to p.

    The first cyclic rotation of the canonical triple whose leading two
    entries are units mod p is lifted as-is; w is completed mod n.  At
    most one entry of a valid triple is divisible by p, so a rotation
    always exists.  For m = 1 the classical lift (1, 1, n-2) is used.
    """
    n = gp.pp.n
    p = gp.pp.p
    if gp.m == 1:
        return (1, 1, (n - 2) % n)
    t = c.triple
    for rot in (t, (t[1], t[2], t[0]), (t[2], t[0], t[1])):
        if rot[0] % p != 0 and rot[1] % p != 0:
            return (rot[0], rot[1], (-rot[0] - rot[1]) % n)
    raise NoCoprimePair(f"no rotation of {t} starts with two units mod {p}")


def lift_epi(gp: GroupParams, c: CurveClass) -> EpiParams:
    """Normalised epimorphism tuple representing the class."""
    u, v, w = representative_lift(gp, c)
    return validate(gp, u, v, w, 0, 1, (-gp.qp(w)) % gp.pp.n)


def _atlas_payload(args: tuple[int, int, int, tuple[int, int, int], bool]) -> dict:
    """Per-class payload; module level so worker processes can run it."""
    p, e, f, triple, with_equations = args
    gp = group_params(p, e, f)
    c = CurveClass(gp.m, triple)
    field = field_of_definition(gp, c)
    orbit = galois_orbit(gp, c)
    aut_order, _ = curve_aut_order(gp, c)
    genus = build(gp, lift_epi(gp, c)).genus()
    equations = None
    if with_equations and 2 * f >= e:
        from .equations import full_model, model_to_dict

        equations = model_to_dict(full_model(gp, c))
    return {
        "triple": triple,
        "field": (field.kind, field.degree, field.description),
        "orbit": orbit[0].triple,
        "autOrder": aut_order,
        "genus": genus,
        "equations": equations,
    }


def build_atlas(
    gp: GroupParams, with_equations: bool = False, workers: Optional[int] = None
) -> Atlas:
    """Full census for one parameter set.

    Per-class work is a pure map over the sorted class list, so the
    optional process pool cannot affect the output; results are merged
    in input order.
    """
    classes = enumerate_classes(gp)
    args = [
        (gp.pp.p, gp.pp.e, gp.f, c.triple, with_equations) for c in classes
    ]
    if workers is not None and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            payloads = list(pool.map(_atlas_payload, args))
    else:
        payloads = [_atlas_payload(a) for a in args]
    entries = tuple(
        AtlasEntry(
            triple=payload["triple"],
            field=FieldOfDefinition(*payload["field"]),
            orbit=payload["orbit"],
            aut_order=payload["autOrder"],
            genus=payload["genus"],
            equations=payload["equations"],
        )
        for payload in payloads
    )
    return Atlas(gp.pp.p, gp.pp.e, gp.f, gp.pp.n, gp.m, entries)


CSV_COLUMNS = (
    "p",
    "e",
    "f",
    "u",
    "v",
    "w",
    "fieldKind",
    "fieldDegree",
    "orbitRep",
    "autOrder",
    "genus",
)


def atlas_csv_rows(atlas: Atlas) -> list[list]:
    rows = []
    for entry in atlas.entries:
        rows.append(
            [
                atlas.p,
                atlas.e,
                atlas.f,
                entry.triple[0],
                entry.triple[1],
                entry.triple[2],
                entry.field.kind,
                entry.field.degree,
                ";".join(str(t) for t in entry.orbit),
                entry.aut_order,
                entry.genus,
            ]
        )
    return rows


def class_fibering(gp: GroupParams) -> dict[CurveClass, list[EpiParams]]:
    """Normalised tuples grouped by their canonical triple."""
    fibers: dict[CurveClass, list[EpiParams]] = {}
    for epi in normalized_epis(gp):
        fibers.setdefault(canonical_triple(gp, epi.u, epi.v, epi.w), []).append(epi)
    return fibers


def oracle_classify(
    gp: GroupParams, bound: int = DEFAULT_ORACLE_BOUND
) -> list[list[EpiParams]]:
    """Partition the normalised tuples by kernel equality plus triality moves.

    Kernel equality is decided by full automorphism orbits of image
    pairs: two epimorphisms share a kernel exactly when one image pair
    is carried to the other by an automorphism, so the orbit of a pair
    enumerates every pair with the same kernel.  Orbits are recorded in
    a dictionary; a pair produced by a triality move is then a single
    lookup.  The family acts freely on generating pairs, which the
    dictionary growth asserts; a missed lookup would also raise, so any
    gap in the automorphism family would surface loudly instead of
    silently merging or splitting blocks.
    """
    n = gp.pp.n
    if n > bound:
        raise BoundExceeded(f"n = {n} exceeds the exhaustive oracle bound {bound}")
    p, m = gp.pp.p, gp.m
    epis = list(normalized_epis(gp))
    parent = list(range(len(epis)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    sums = power_sum_table(gp)
    qpow = gp._qpow
    i_vals = [i for i in range(n) if i % m == 1 % m]
    k_vals = list(range(0, n, m))
    pair_kernel: dict[int, int] = {}
    kernel_anchor: dict[int, int] = {}
    next_kid = 0

    def pack(x: Elt, y: Elt) -> int:
        return ((x.a * n + x.b) * n + y.a) * n + y.b

    def enum_orbit(x: Elt, y: Elt, kid: int) -> None:
        xa0, xb0 = x
        ya0, yb0 = y
        for i in i_vals:
            row = sums[i % m]
            for j in range(n):
                axa = i * xa0 % n
                axb = j * row[xa0] % n
                aya = i * ya0 % n
                ayb = j * row[ya0] % n
                for k in k_vals:
                    krow = sums[k % m]
                    jk = j * k
                    hxa = k * xb0 % n
                    hya = k * yb0 % n
                    qx = qpow[hxa % m]
                    qy = qpow[hya % m]
                    sx = krow[xb0]
                    sy = krow[yb0]
                    xa = (axa + hxa) % n
                    ya = (aya + hya) % n
                    base = ((xa * n) * n + ya) * n
                    for l in range(n):
                        if (i * l - jk) % p == 0:
                            continue
                        xb = (axb * qx + l * sx) % n
                        yb = (ayb * qy + l * sy) % n
                        key = base + xb * n * n + yb
                        before = len(pair_kernel)
                        pair_kernel[key] = kid
                        if len(pair_kernel) == before:
                            raise OracleFailure(
                                "automorphism family is not acting freely on pairs"
                            )

    def kernel_of(x: Elt, y: Elt) -> int:
        nonlocal next_kid
        key = pack(x, y)
        kid = pair_kernel.get(key)
        if kid is None:
            kid = next_kid
            next_kid += 1
            enum_orbit(x, y, kid)
            if pair_kernel.get(key) != kid:
                raise OracleFailure("pair is missing from its own orbit")
        return kid

    for idx, e in enumerate(epis):
        x, y, _ = e.images()
        kid = kernel_of(x, y)
        anchor = kernel_anchor.setdefault(kid, idx)
        union(idx, anchor)
    for idx, e in enumerate(epis):
        for moved in (triality_rotate(gp, e), triality_transpose(gp, e)):
            x, y, _ = moved.images()
            kid = kernel_of(x, y)
            anchor = kernel_anchor.setdefault(kid, idx)
            union(idx, anchor)

    blocks: dict[int, list[EpiParams]] = {}
    for idx, e in enumerate(epis):
        blocks.setdefault(find(idx), []).append(e)
    ordered = [sorted(b, key=lambda e: (e.u, e.v)) for b in blocks.values()]
    ordered.sort(key=lambda b: (b[0].u, b[0].v))
    return ordered
