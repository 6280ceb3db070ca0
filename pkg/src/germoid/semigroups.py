"""Finite inverse semigroups as validated multiplication tables.

Elements are canonical integer ids 0..n-1; ``table[i][j]`` is the id of the
product ``i*j``.  Validation is eager: every constructor either returns a
fully validated object or raises a structured error.  All objects are
immutable after construction and every operation here is a pure function.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

import numpy as np

from . import errors

DEFAULT_SIZE_LIMIT = 4096


def size_limit() -> int:
    return int(os.environ.get("GERMOID_SIZE_LIMIT", DEFAULT_SIZE_LIMIT))


def check_size(n: int) -> None:
    limit = size_limit()
    if n > limit:
        raise errors.SizeLimitExceeded(n, limit)


class InvSemigroup:
    """A finite inverse semigroup: names, table, optional zero, computed star.

    Use :func:`validate_semigroup` to construct; the raw constructor trusts
    its input.
    """

    def __init__(self, names, table, zero, star, name="S"):
        self.names = tuple(names)
        self.table = table
        self.table.setflags(write=False)
        self.zero = zero
        self.star = star
        self.star.setflags(write=False)
        self.name = name
        self._idempotents = tuple(
            int(e) for e in range(len(names)) if table[e, e] == e)
        self._leq = None
        self._sigma = None
        self._e_unitary = None

    def __len__(self):
        return len(self.names)

    def __repr__(self):
        z = "" if self.zero is None else f", zero={self.names[self.zero]}"
        return f"InvSemigroup({self.name}, n={len(self)}{z})"

    def mul(self, s: int, t: int) -> int:
        return int(self.table[s, t])

    def mul_all(self, *elems: int) -> int:
        acc = elems[0]
        for t in elems[1:]:
            acc = int(self.table[acc, t])
        return acc

    def inv(self, s: int) -> int:
        return int(self.star[s])

    @property
    def idempotents(self):
        return self._idempotents

    def is_idempotent(self, s: int) -> bool:
        return self.table[s, s] == s

    def leq_matrix(self) -> np.ndarray:
        """Boolean matrix of the natural partial order, leq[s, t] = (s <= t)."""
        if self._leq is None:
            n = len(self)
            m = np.zeros((n, n), dtype=bool)
            for s in range(n):
                ss = self.mul(self.star[s], s)
                for t in range(n):
                    m[s, t] = self.mul(t, ss) == s
            m.setflags(write=False)
            self._leq = m
        return self._leq

    def to_json(self) -> str:
        data = {
            "elements": list(self.names),
            "table": self.table.tolist(),
            "zero": self.zero,
        }
        return json.dumps(data, sort_keys=True)


class FiniteGroup(InvSemigroup):
    """An inverse semigroup whose only idempotent is the identity."""

    def __init__(self, names, table, star, identity, name="G"):
        super().__init__(names, table, None, star, name=name)
        self.identity = identity


@dataclass(frozen=True)
class SigmaMap:
    """The maximal group homomorphism sigma: S -> G(S) as a class map."""

    source: InvSemigroup
    group: FiniteGroup
    classmap: tuple

    def __call__(self, s: int) -> int:
        return self.classmap[s]


@dataclass(frozen=True)
class SemigroupHom:
    """A validated homomorphism of inverse semigroups."""

    source: InvSemigroup
    target: InvSemigroup
    map: tuple

    def __call__(self, s: int) -> int:
        return self.map[s]


@dataclass(frozen=True)
class PartialGroupHom:
    """A partial homomorphism S\\{0} -> G: phi(st) = phi(s)phi(t) when st != 0."""

    source: InvSemigroup
    target: FiniteGroup
    map: tuple  # entry at the zero id is None

    def __call__(self, s: int) -> int:
        v = self.map[s]
        if v is None:
            raise errors.UnknownElement(f"partial hom undefined at zero ({s})")
        return v


def validate_semigroup(names, table, zero=None, name="S") -> InvSemigroup:
    """Validate a multiplication table as a finite inverse semigroup.

    Checks associativity, existence of a unique inverse for every element,
    commuting idempotents, and (when declared) that the zero is absorbing.
    """
    n = len(names)
    check_size(n)
    table = np.asarray(table, dtype=np.int64)
    if table.shape != (n, n):
        raise errors.InvalidParams(f"table must be {n}x{n}")
    if n == 0:
        raise errors.InvalidParams("empty semigroup")
    if table.min() < 0 or table.max() >= n:
        raise errors.InvalidParams("table entries out of range")

    # associativity, chunked so memory stays bounded per slab
    chunk = max(1, (1 << 22) // (n * n))
    for lo in range(0, n, chunk):
        hi = min(n, lo + chunk)
        lhs = table[table[lo:hi, :], :]         # lhs[i,j,k] = (ij)k
        rhs = table[lo:hi, table]               # rhs[i,j,k] = i(jk)
        if not np.array_equal(lhs, rhs):
            bad = np.argwhere(lhs != rhs)[0]
            raise errors.NotAssociative(int(bad[0]) + lo, int(bad[1]), int(bad[2]))

    # unique inverse: t inverts s iff sts = s and tst = t
    sts = table[table, np.arange(n)[:, None]]   # sts[s,t] = (st)s
    tst = np.empty_like(table)                  # tst[s,t] = (ts)t
    for t in range(n):
        tst[:, t] = table[table[t, :], t]
    star = np.full(n, -1, dtype=np.int64)
    for s in range(n):
        cands = np.flatnonzero((sts[s, :] == s) & (tst[s, :] == np.arange(n)))
        if len(cands) != 1:
            raise errors.NoUniqueInverse(s, len(cands))
        star[s] = cands[0]
    # star is automatically an involution once inverses are unique

    idem = [e for e in range(n) if table[e, e] == e]
    for e in idem:
        for f in idem:
            if table[e, f] != table[f, e]:
                raise errors.IdempotentsDontCommute(e, f)

    if zero is not None:
        if not 0 <= zero < n:
            raise errors.InvalidParams("zero id out of range")
        for s in range(n):
            if table[zero, s] != zero or table[s, zero] != zero:
                raise errors.ZeroNotAbsorbing(s)

    return InvSemigroup(names, table, zero, star, name=name)


def semigroup_from_json(text: str, name="S") -> InvSemigroup:
    data = json.loads(text)
    return validate_semigroup(
        data["elements"], data["table"], data.get("zero"), name=name)


def validate_group(names, table, name="G") -> FiniteGroup:
    """Validate a table as a group (single idempotent, all invertible)."""
    S = validate_semigroup(names, table, None, name=name)
    if len(S.idempotents) != 1:
        raise errors.NotAGroup(f"{len(S.idempotents)} idempotents, expected 1")
    e = S.idempotents[0]
    for s in range(len(S)):
        if S.mul(s, e) != s or S.mul(e, s) != s:
            raise errors.NotAGroup(f"{e} is not a two-sided identity")
        if S.mul(s, S.inv(s)) != e:
            raise errors.NotAGroup(f"element {s} has no inverse")
    return FiniteGroup(names, S.table, S.star, e, name=name)


def as_group(S: InvSemigroup) -> FiniteGroup:
    if isinstance(S, FiniteGroup):
        return S
    return validate_group(S.names, np.array(S.table), name=S.name)


def natural_leq(S: InvSemigroup, s: int, t: int) -> bool:
    """s <= t in the natural partial order, via s = t s* s."""
    return S.mul_all(t, S.inv(s), s) == s


def max_group_image(S: InvSemigroup) -> SigmaMap:
    """Quotient by the congruence s ~ t iff se = te for some idempotent e.

    Classes are re-indexed by their least representative; the quotient table
    is validated as a group.  The result is memoized on the semigroup.
    """
    if S._sigma is not None:
        return S._sigma
    n = len(S)
    related = np.zeros((n, n), dtype=bool)
    for e in S.idempotents:
        col = S.table[:, e]
        related |= col[:, None] == col[None, :]
    # the relation is a congruence, hence already transitive; partition by row
    class_of = [-1] * n
    reps = []
    for s in range(n):
        if class_of[s] >= 0:
            continue
        reps.append(s)
        for t in np.flatnonzero(related[s]):
            class_of[int(t)] = len(reps) - 1
    k = len(reps)
    gtable = np.zeros((k, k), dtype=np.int64)
    for a, ra in enumerate(reps):
        for b, rb in enumerate(reps):
            gtable[a, b] = class_of[S.mul(ra, rb)]
    gnames = [f"[{S.names[r]}]" for r in reps]
    G = validate_group(gnames, gtable, name=f"G({S.name})")
    S._sigma = SigmaMap(S, G, tuple(class_of))
    return S._sigma


def is_e_unitary(S: InvSemigroup) -> bool:
    """sigma^{-1}(1) = E(S)."""
    if S._e_unitary is None:
        sigma = max_group_image(S)
        one = sigma.group.identity
        fiber = {s for s in range(len(S)) if sigma(s) == one}
        S._e_unitary = fiber == set(S.idempotents)
    return S._e_unitary


def is_zero_e_unitary(S: InvSemigroup) -> bool:
    """s >= e != 0 with e idempotent implies s is idempotent."""
    if S.zero is None:
        raise errors.NoZero(f"{S.name} has no zero")
    for s in range(len(S)):
        if S.is_idempotent(s):
            continue
        for e in S.idempotents:
            if e != S.zero and natural_leq(S, e, s):
                return False
    return True


def meet_sigma(S: InvSemigroup, s: int, t: int, sigma: SigmaMap | None = None) -> int:
    """The meet of sigma-equivalent s, t in an E-unitary semigroup: t s* s."""
    if sigma is None:
        sigma = max_group_image(S)
    if not is_e_unitary(S):
        raise errors.NotEUnitary(S.name)
    if sigma(s) != sigma(t):
        raise errors.SigmaMismatch(s, t)
    u = S.mul_all(t, S.inv(s), s)
    assert u == S.mul_all(s, S.inv(t), t)
    return u


def is_ideal(S: InvSemigroup, I) -> bool:
    I = set(I)
    if not I:
        return False
    return all(S.mul(s, i) in I and S.mul(i, s) in I
               for s in range(len(S)) for i in I)


def enumerate_proper_ideals(S: InvSemigroup):
    """All non-empty proper ideals, as sorted tuples (exhaustive, small S only).

    Every ideal is a union of principal ideals, so it suffices to close the
    set of principal ideals under union.
    """
    n = len(S)
    principal = set()
    for s in range(n):
        J = {s}
        J |= {S.mul(x, s) for x in range(n)}
        J |= {S.mul(s, x) for x in range(n)}
        J |= {S.mul_all(x, s, y) for x in range(n) for y in range(n)}
        principal.add(frozenset(J))
    ideals = set(principal)
    frontier = set(principal)
    while frontier:
        new = set()
        for I in frontier:
            for J in principal:
                u = I | J
                if u not in ideals:
                    new.add(u)
        ideals |= new
        frontier = new
    full = frozenset(range(n))
    return sorted(tuple(sorted(I)) for I in ideals if I != full)


def rees_quotient(S: InvSemigroup, I):
    """Collapse a proper ideal to a single zero element.

    Returns the quotient (with zero set) and the quotient map as a
    :class:`SemigroupHom`.  Classes are re-indexed by least representative.
    """
    I = sorted(set(I))
    if not is_ideal(S, I):
        raise errors.NotAnIdeal(f"{I} is not a non-empty ideal of {S.name}")
    if len(I) == len(S):
        raise errors.ImproperIdeal("cannot collapse the whole semigroup")
    iset = set(I)
    survivors = [s for s in range(len(S)) if s not in iset]
    reps = sorted(survivors + [I[0]])
    new_id = {}
    for idx, r in enumerate(reps):
        new_id[r] = idx
    zero_new = new_id[I[0]]
    qmap = [new_id[s] if s not in iset else zero_new for s in range(len(S))]
    k = len(reps)
    qtable = np.zeros((k, k), dtype=np.int64)
    for a, ra in enumerate(reps):
        for b, rb in enumerate(reps):
            qtable[a, b] = qmap[S.mul(ra, rb)]
    qnames = ["0" if idx == zero_new else S.names[r]
              for idx, r in enumerate(reps)]
    Q = validate_semigroup(qnames, qtable, zero=zero_new, name=f"{S.name}/I")
    return Q, SemigroupHom(S, Q, tuple(qmap))


def semigroup_hom(S: InvSemigroup, T: InvSemigroup, mapping) -> SemigroupHom:
    """Validate a map on element ids as a semigroup homomorphism."""
    mapping = tuple(int(x) for x in mapping)
    if len(mapping) != len(S):
        raise errors.NotAHomomorphism("map must be defined on all of S")
    if any(not 0 <= x < len(T) for x in mapping):
        raise errors.NotAHomomorphism("map image out of range")
    for s in range(len(S)):
        for t in range(len(S)):
            if mapping[S.mul(s, t)] != T.mul(mapping[s], mapping[t]):
                raise errors.NotAHomomorphism(
                    f"phi({s}{t}) != phi({s})phi({t})")
    return SemigroupHom(S, T, mapping)


def hom_from_sigma(sigma: SigmaMap) -> SemigroupHom:
    return SemigroupHom(sigma.source, sigma.group, tuple(sigma.classmap))


def partial_group_hom(S: InvSemigroup, G: FiniteGroup, mapping) -> PartialGroupHom:
    """Validate a map S\\{0} -> G as a partial homomorphism."""
    if S.zero is None:
        raise errors.NoZero("partial homomorphisms need a source with zero")
    mapping = list(mapping)
    if len(mapping) != len(S) or mapping[S.zero] is not None:
        raise errors.NotAHomomorphism(
            "map must carry None exactly at the zero id")
    for s in range(len(S)):
        if s != S.zero and mapping[s] is None:
            raise errors.NotAHomomorphism(f"undefined at non-zero element {s}")
    for s in range(len(S)):
        for t in range(len(S)):
            if s == S.zero or t == S.zero:
                continue
            st = S.mul(s, t)
            if st != S.zero and mapping[st] != G.mul(mapping[s], mapping[t]):
                raise errors.NotAHomomorphism(
                    f"phi({s}{t}) != phi({s})phi({t})")
    for e in S.idempotents:
        if e != S.zero and mapping[e] != G.identity:
            raise errors.NotAHomomorphism(
                f"non-zero idempotent {e} does not map to the identity")
    return PartialGroupHom(S, G, tuple(mapping))


def is_idempotent_pure_partial_hom(theta: PartialGroupHom) -> bool:
    """theta^{-1}(1) equals the non-zero idempotents."""
    S, G = theta.source, theta.target
    fiber = {s for s in range(len(S))
             if s != S.zero and theta(s) == G.identity}
    return fiber == {e for e in S.idempotents if e != S.zero}


def is_idempotent_pure_hom(phi: SemigroupHom) -> bool:
    """phi(s) idempotent implies s idempotent."""
    return all(phi.source.is_idempotent(s)
               for s in range(len(phi.source))
               if phi.target.is_idempotent(phi(s)))


def is_locally_idempotent_pure(phi: SemigroupHom) -> bool:
    """phi restricted to each local monoid eSe is idempotent pure."""
    S, T = phi.source, phi.target
    for e in S.idempotents:
        local = {S.mul_all(e, s, e) for s in range(len(S))}
        for x in local:
            if T.is_idempotent(phi(x)) and not S.is_idempotent(x):
                return False
    return True


def is_f_morphism(phi: SemigroupHom) -> bool:
    """Every non-empty fiber of phi has a maximum in the natural order."""
    S = phi.source
    fibers = {}
    for s in range(len(S)):
        fibers.setdefault(phi(s), []).append(s)
    for fib in fibers.values():
        if not any(all(natural_leq(S, s, u) for s in fib) for u in fib):
            return False
    return True


def subgroup_generated(G: FiniteGroup, gens):
    """Element set of the subgroup generated by ``gens`` (closure)."""
    seen = {G.identity}
    frontier = set(gens) | {G.identity}
    seen |= frontier
    while frontier:
        new = set()
        for a in frontier:
            for b in seen:
                for c in (G.mul(a, b), G.mul(b, a)):
                    if c not in seen:
                        new.add(c)
        seen |= new
        frontier = new
    return sorted(seen)


def eunitary_cover(S: InvSemigroup, theta: PartialGroupHom):
    """The E-unitary cover T = {(s, theta(s))} u ({0} x G0) of S.

    G0 is the subgroup generated by the image of theta.  Returns
    ``(T, I, iso)`` where I is the kernel ideal {0} x G0 (as ids of T) and
    iso maps the Rees quotient T/I back onto S elementwise.
    """
    if not is_idempotent_pure_partial_hom(theta):
        bad = next(s for s in range(len(theta.source))
                   if s != theta.source.zero
                   and not theta.source.is_idempotent(s)
                   and theta(s) == theta.target.identity)
        raise errors.NotIdempotentPure(bad)
    G = theta.target
    g0 = subgroup_generated(G, [theta(s) for s in range(len(S)) if s != S.zero])
    pairs = [(s, theta(s)) for s in range(len(S)) if s != S.zero]
    pairs += [(S.zero, g) for g in g0]
    pairs.sort()
    index = {p: i for i, p in enumerate(pairs)}
    k = len(pairs)
    table = np.zeros((k, k), dtype=np.int64)
    for a, (s, g) in enumerate(pairs):
        for b, (t, h) in enumerate(pairs):
            st = S.mul(s, t)
            gh = G.mul(g, h)
            table[a, b] = index[(st, gh) if st != S.zero else (S.zero, gh)]
    names = [f"({S.names[s]},{G.names[g]})" for s, g in pairs]
    T = validate_semigroup(names, table, None, name=f"cov({S.name})")
    if not is_e_unitary(T):
        raise AssertionError("cover construction must be E-unitary")
    ideal = tuple(index[(S.zero, g)] for g in g0)
    Q, qmap = rees_quotient(T, ideal)
    # identify Q with S elementwise: the class of (s, theta(s)) goes to s
    iso = [None] * len(Q)
    iso[Q.zero] = S.zero
    for (s, g), tid in index.items():
        if s != S.zero:
            iso[qmap(tid)] = s
    iso_hom = semigroup_hom(Q, S, iso)
    if sorted(iso) != list(range(len(S))):
        raise AssertionError("quotient of the cover must be isomorphic to S")
    return T, ideal, iso_hom
