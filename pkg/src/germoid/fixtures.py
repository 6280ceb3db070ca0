"""Fixture generators: chains, groups, Brandt semigroups, symmetric inverse
monoids, semilattice-by-group semidirect products, products, adjoined zeros.

All generators return validated :class:`~germoid.semigroups.InvSemigroup`
objects with deterministic element ordering.
"""

from __future__ import annotations

from itertools import combinations, permutations

import numpy as np

from . import errors
from .semigroups import (
    FiniteGroup,
    InvSemigroup,
    is_e_unitary,
    validate_group,
    validate_semigroup,
)


def chain(n: int, name=None) -> InvSemigroup:
    """Chain semilattice 1 > f1 > ... > f_{n-1}; product is the lower element."""
    if n < 1:
        raise errors.InvalidParams("chain needs n >= 1")
    names = ["1"] + [f"f{i}" if n > 2 else "f" for i in range(1, n)]
    table = [[max(i, j) for j in range(n)] for i in range(n)]
    return validate_semigroup(names, table, None, name=name or f"CHAIN{n}")


def cyclic_group(n: int, name=None) -> FiniteGroup:
    if n < 1:
        raise errors.InvalidParams("cyclic group needs n >= 1")
    names = ["1"] + [f"g{'^' + str(i) if i > 1 else ''}" for i in range(1, n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return validate_group(names, table, name=name or f"Z{n}")


def group_from_table(names, table, name="G") -> FiniteGroup:
    return validate_group(names, table, name=name)


def brandt(G: FiniteGroup, n: int, name=None) -> InvSemigroup:
    """Brandt semigroup over G: elements 0 and (i, g, j), with
    (i,g,j)(k,h,l) = (i, gh, l) if j = k, else 0."""
    if n < 1:
        raise errors.InvalidParams("brandt needs n >= 1")
    elems = [None] + [(i, g, j) for i in range(n) for g in range(len(G))
                      for j in range(n)]
    index = {e: x for x, e in enumerate(elems)}
    k = len(elems)
    table = np.zeros((k, k), dtype=np.int64)
    for a in range(1, k):
        i, g, j = elems[a]
        for b in range(1, k):
            p, h, q = elems[b]
            table[a, b] = index[(i, G.mul(g, h), q)] if j == p else 0
    if len(G) == 1:
        names = ["0"] + [f"e{i + 1}{j + 1}" for i, _, j in elems[1:]]
    else:
        names = ["0"] + [f"({i + 1},{G.names[g]},{j + 1})" for i, g, j in elems[1:]]
    return validate_semigroup(names, table, zero=0,
                              name=name or f"B({G.name},{n})")


def symmetric_inverse(n: int, name=None) -> InvSemigroup:
    """The symmetric inverse monoid of all partial bijections of {1..n}."""
    if n < 0:
        raise errors.InvalidParams("need n >= 0")
    points = list(range(n))
    elems = []
    for k in range(n + 1):
        for dom in combinations(points, k):
            for img in permutations(points, k):
                elems.append(tuple(zip(dom, img)))
    elems.sort(key=lambda e: (len(e), e))
    index = {e: x for x, e in enumerate(elems)}
    m = len(elems)
    table = np.zeros((m, m), dtype=np.int64)
    for a, f in enumerate(elems):
        fd = dict(f)
        for b, g in enumerate(elems):
            gd = dict(g)
            comp = tuple(sorted((x, fd[gd[x]]) for x in gd if gd[x] in fd))
            table[a, b] = index[comp]

    def label(e):
        if not e:
            return "0"
        return "[" + ",".join(f"{x + 1}->{y + 1}" for x, y in e) + "]"

    return validate_semigroup([label(e) for e in elems], table, zero=0,
                              name=name or f"I{n}")


def semidirect(meet_table, G: FiniteGroup, action, enames=None, name=None) -> InvSemigroup:
    """Semidirect product of a semilattice E by a group acting by automorphisms.

    Elements are pairs (e, g) with (e,g)(f,h) = (e ^ g.f, gh); the result is
    always E-unitary (asserted).  ``action[g]`` is the permutation of E given
    by g.
    """
    meet = np.asarray(meet_table, dtype=np.int64)
    k = meet.shape[0]
    if enames is None:
        enames = [f"e{i}" for i in range(k)]
    act = {g: tuple(action[g]) for g in range(len(G))}
    for g, perm in act.items():
        if sorted(perm) != list(range(k)):
            raise errors.ActionNotByAutomorphisms(f"action of {g} is not a permutation")
        for e in range(k):
            for f in range(k):
                if perm[meet[e, f]] != meet[perm[e], perm[f]]:
                    raise errors.ActionNotByAutomorphisms(
                        f"action of {g} does not preserve the meet")
    for g in range(len(G)):
        for h in range(len(G)):
            gh = G.mul(g, h)
            if any(act[g][act[h][e]] != act[gh][e] for e in range(k)):
                raise errors.ActionNotByAutomorphisms("action is not a homomorphism")
    elems = [(e, g) for e in range(k) for g in range(len(G))]
    index = {p: x for x, p in enumerate(elems)}
    m = len(elems)
    table = np.zeros((m, m), dtype=np.int64)
    for a, (e, g) in enumerate(elems):
        for b, (f, h) in enumerate(elems):
            table[a, b] = index[(meet[e, act[g][f]], G.mul(g, h))]
    names = [f"({enames[e]},{G.names[g]})" for e, g in elems]
    S = validate_semigroup(names, table, None, name=name or f"E:{G.name}")
    assert is_e_unitary(S), "semidirect products must be E-unitary"
    return S


def direct_product(S: InvSemigroup, T: InvSemigroup, name=None) -> InvSemigroup:
    elems = [(s, t) for s in range(len(S)) for t in range(len(T))]
    index = {p: x for x, p in enumerate(elems)}
    m = len(elems)
    table = np.zeros((m, m), dtype=np.int64)
    for a, (s, t) in enumerate(elems):
        for b, (u, v) in enumerate(elems):
            table[a, b] = index[(S.mul(s, u), T.mul(t, v))]
    names = [f"({S.names[s]},{T.names[t]})" for s, t in elems]
    zero = None
    if S.zero is not None and T.zero is not None:
        zero = index[(S.zero, T.zero)]
    return validate_semigroup(names, table, zero,
                              name=name or f"{S.name}x{T.name}")


def adjoin_zero(S: InvSemigroup, name=None) -> InvSemigroup:
    """S with a fresh absorbing zero appended (id = len(S))."""
    n = len(S)
    table = np.zeros((n + 1, n + 1), dtype=np.int64)
    table[:n, :n] = S.table
    table[n, :] = n
    table[:, n] = n
    return validate_semigroup(list(S.names) + ["0"], table, zero=n,
                              name=name or f"{S.name}^0")


# -- named desk-scale fixtures -------------------------------------------------

def chain2() -> InvSemigroup:
    return chain(2, name="CHAIN2")


def b2() -> InvSemigroup:
    """The 5-element Brandt semigroup of 2x2 matrix units."""
    return brandt(cyclic_group(1), 2, name="B2")


def s3_monoid() -> InvSemigroup:
    """Three-element E-unitary monoid {1, f, t} with t^2 = f and t* = t."""
    names = ["1", "f", "t"]
    table = [[0, 1, 2], [1, 1, 2], [2, 2, 1]]
    return validate_semigroup(names, table, None, name="S3")


def s4_monoid() -> InvSemigroup:
    """CHAIN2 x Z2, the 4-element E-unitary monoid with group image Z2."""
    return direct_product(chain2(), cyclic_group(2), name="S4")


def v3_meet_table():
    """Semilattice with two incomparable atoms e1, e2 over a bottom b."""
    #      e1 e2 b
    return [[0, 2, 2], [2, 1, 2], [2, 2, 2]]


def sd6() -> InvSemigroup:
    """Semidirect product of the {e1, e2 > b} semilattice by Z2 swapping atoms."""
    G = cyclic_group(2)
    return semidirect(v3_meet_table(), G, {0: (0, 1, 2), 1: (1, 0, 2)},
                      enames=["e1", "e2", "b"], name="SD6")


def i2() -> InvSemigroup:
    return symmetric_inverse(2, name="I2")


PRESETS = {
    "chain2": chain2,
    "b2": b2,
    "s3": s3_monoid,
    "s4": s4_monoid,
    "sd6": sd6,
    "i2": i2,
}


def generate_fixture(kind: str, **params) -> InvSemigroup:
    """Dispatch table for the CLI's ``gen`` command."""
    kind = kind.replace("-", "_")
    if kind == "chain":
        return chain(int(params["n"]))
    if kind == "group":
        if "table" in params:
            return group_from_table(params["names"], params["table"],
                                    name=params.get("name", "G"))
        return cyclic_group(int(params["n"]))
    if kind == "brandt":
        G = params.get("group") or cyclic_group(int(params.get("group_n", 1)))
        return brandt(G, int(params["n"]))
    if kind == "symmetric_inverse":
        return symmetric_inverse(int(params["n"]))
    if kind == "semidirect":
        preset = params.get("preset")
        if preset == "sd6":
            return sd6()
        if preset is not None:
            raise errors.InvalidParams(f"unknown semidirect preset {preset!r}")
        return semidirect(params["meet_table"], params["group"],
                          params["action"], enames=params.get("enames"))
    if kind == "direct_product":
        return direct_product(params["left"], params["right"])
    if kind == "adjoin_zero":
        return adjoin_zero(params["semigroup"])
    if kind == "preset":
        key = params["name"].lower()
        if key not in PRESETS:
            raise errors.InvalidParams(f"unknown preset {key!r}")
        return PRESETS[key]()
    raise errors.InvalidParams(f"unknown fixture kind {kind!r}")


# -- randomized E-unitary corpus ------------------------------------------------

def _random_semilattice(rng, max_size=8):
    """A random meet-subsemilattice of a small boolean lattice, as subsets."""
    base = rng.randrange(2, 5)
    fam = {frozenset(range(base))}
    for _ in range(rng.randrange(1, 5)):
        fam.add(frozenset(x for x in range(base) if rng.random() < 0.5))
    closed = set(fam)
    while True:
        extra = {a & b for a in closed for b in closed} - closed
        if not extra:
            break
        closed |= extra
    elems = sorted(closed, key=lambda s: (-len(s), sorted(s)))[:max_size]
    # re-close after truncation
    while True:
        extra = {a & b for a in elems for b in elems} - set(elems)
        if not extra:
            break
        elems = sorted(set(elems) | extra, key=lambda s: (-len(s), sorted(s)))
    index = {s: i for i, s in enumerate(elems)}
    k = len(elems)
    meet = [[index[elems[i] & elems[j]] for j in range(k)] for i in range(k)]
    return meet, elems


def _semilattice_automorphisms(meet):
    k = len(meet)
    auts = []
    for perm in permutations(range(k)):
        if all(perm[meet[i][j]] == meet[perm[i]][perm[j]]
               for i in range(k) for j in range(k)):
            auts.append(perm)
    return auts


def random_eunitary_semidirect(rng, max_order=64) -> InvSemigroup:
    """A random semidirect-product E-unitary inverse semigroup, |S| <= max_order."""
    while True:
        meet, _ = _random_semilattice(rng)
        k = len(meet)
        if k * 2 > max_order:
            continue
        auts = _semilattice_automorphisms(meet)
        perm = auts[rng.randrange(len(auts))]
        order = 1
        p = perm
        ident = tuple(range(k))
        while p != ident:
            p = tuple(perm[i] for i in p)
            order += 1
        mult = order * rng.randrange(1, max(2, max_order // (k * order) + 1))
        if k * mult > max_order:
            mult = order
        if k * mult > max_order:
            continue
        G = cyclic_group(mult)
        action = {0: ident}
        for g in range(1, mult):
            action[g] = tuple(perm[i] for i in action[g - 1])
        return semidirect(meet, G, action, name=f"RSD{k}x{mult}")
