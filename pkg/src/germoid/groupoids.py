"""Finite groupoids, functors between them, reductions, semidirect products
with space actions, and the enveloping action of a faithful functor.

All topological qualifiers of the source material (open, closed, embedding)
are interpreted set-theoretically: finite spaces are discrete, so every map
is continuous, open and closed.  What remains testable is the combinatorics,
and that is checked exhaustively.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import errors
from .semigroups import check_size


class FiniteGroupoid:
    """Arrows over a finite unit set with partial composition and inversion.

    Composition ``compose(a, b)`` is defined iff ``dom(a) == ran(b)`` and
    then ``dom(ab) = dom(b)``, ``ran(ab) = ran(a)``.
    """

    def __init__(self, unit_labels, dom, ran, comp, inv, identity,
                 arrow_labels=None, name="G"):
        self.unit_labels = tuple(unit_labels)
        self.dom = np.asarray(dom, dtype=np.int64)
        self.ran = np.asarray(ran, dtype=np.int64)
        self.comp = dict(comp)
        self.inv = np.asarray(inv, dtype=np.int64)
        self.identity = np.asarray(identity, dtype=np.int64)
        self.arrow_labels = tuple(arrow_labels) if arrow_labels else tuple(
            f"a{i}" for i in range(len(self.dom)))
        self.name = name
        for arr in (self.dom, self.ran, self.inv, self.identity):
            arr.setflags(write=False)

    @property
    def n_units(self):
        return len(self.unit_labels)

    @property
    def n_arrows(self):
        return len(self.dom)

    def __repr__(self):
        return (f"FiniteGroupoid({self.name}, units={self.n_units}, "
                f"arrows={self.n_arrows})")

    def compose(self, a: int, b: int):
        """ab if dom(a) = ran(b), else None."""
        return self.comp.get((a, b))

    def arrows_from(self, u: int):
        return [a for a in range(self.n_arrows) if self.dom[a] == u]

    def isotropy_orders(self):
        """Multiset (sorted tuple) of isotropy group orders, one per unit."""
        counts = []
        for u in range(self.n_units):
            counts.append(sum(1 for a in range(self.n_arrows)
                              if self.dom[a] == u and self.ran[a] == u))
        return tuple(sorted(counts))

    def orbit_of(self, u: int):
        seen = {u}
        frontier = [u]
        while frontier:
            x = frontier.pop()
            for a in range(self.n_arrows):
                if self.dom[a] == x and self.ran[a] not in seen:
                    seen.add(int(self.ran[a]))
                    frontier.append(int(self.ran[a]))
                if self.ran[a] == x and self.dom[a] not in seen:
                    seen.add(int(self.dom[a]))
                    frontier.append(int(self.dom[a]))
        return frozenset(seen)

    def to_json_dict(self) -> dict:
        return {
            "units": list(self.unit_labels),
            "arrows": [{"id": a, "dom": int(self.dom[a]), "ran": int(self.ran[a]),
                        "label": self.arrow_labels[a]}
                       for a in range(self.n_arrows)],
            "comp": sorted([a, b, c] for (a, b), c in self.comp.items()),
            "inv": [[a, int(self.inv[a])] for a in range(self.n_arrows)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    def to_dot(self) -> str:
        lines = [f'digraph "{self.name}" {{']
        for u, lab in enumerate(self.unit_labels):
            lines.append(f'  u{u} [label="{lab}", shape=circle];')
        for a in range(self.n_arrows):
            style = ', style=dotted' if self.dom[a] == self.ran[a] and \
                self.identity[self.dom[a]] == a else ''
            lines.append(
                f'  u{self.dom[a]} -> u{self.ran[a]} '
                f'[label="{self.arrow_labels[a]}"{style}];')
        lines.append("}")
        return "\n".join(lines)


def validate_groupoid(g: FiniteGroupoid) -> FiniteGroupoid:
    """Exhaustive check of the groupoid axioms; raises on any failure."""
    n = g.n_arrows
    check_size(n)
    for a in range(n):
        for b in range(n):
            c = g.compose(a, b)
            if (g.dom[a] == g.ran[b]) != (c is not None):
                raise errors.DomainMismatch(
                    f"composition of {a}, {b} defined on the wrong domain")
            if c is not None and (g.dom[c] != g.dom[b] or g.ran[c] != g.ran[a]):
                raise errors.DomainMismatch(
                    f"composite {a}{b} has the wrong endpoints")
    for u in range(g.n_units):
        i = int(g.identity[u])
        if not (0 <= i < n) or g.dom[i] != u or g.ran[i] != u:
            raise errors.MissingIdentity(u)
        for a in range(n):
            if g.dom[a] == u and g.compose(a, i) != a:
                raise errors.MissingIdentity(u)
            if g.ran[a] == u and g.compose(i, a) != a:
                raise errors.MissingIdentity(u)
    for a in range(n):
        ai = int(g.inv[a])
        if g.dom[ai] != g.ran[a] or g.ran[ai] != g.dom[a] or \
                g.compose(ai, a) != g.identity[g.dom[a]] or \
                g.compose(a, ai) != g.identity[g.ran[a]]:
            raise errors.MissingInverse(a)
    for a in range(n):
        for b in range(n):
            ab = g.compose(a, b)
            if ab is None:
                continue
            for c in range(n):
                bc = g.compose(b, c)
                if bc is None:
                    continue
                if g.compose(ab, c) != g.compose(a, bc):
                    raise errors.CompositionNotAssociative(a, b, c)
    return g


def groupoid_from_group(G, name=None) -> FiniteGroupoid:
    """A group as a one-unit groupoid."""
    n = len(G)
    comp = {(a, b): G.mul(a, b) for a in range(n) for b in range(n)}
    g = FiniteGroupoid(["pt"], [0] * n, [0] * n, comp,
                       [G.inv(a) for a in range(n)],
                       [G.identity], arrow_labels=G.names,
                       name=name or G.name)
    return validate_groupoid(g)


def pair_groupoid(n: int, name=None) -> FiniteGroupoid:
    """The pair groupoid on n units: one arrow (i <- j) per ordered pair."""
    arrows = [(i, j) for i in range(n) for j in range(n)]
    index = {p: a for a, p in enumerate(arrows)}
    dom = [j for _, j in arrows]
    ran = [i for i, _ in arrows]
    comp = {}
    for a, (i, j) in enumerate(arrows):
        for b, (k, l) in enumerate(arrows):
            if j == k:
                comp[(a, b)] = index[(i, l)]
    inv = [index[(j, i)] for i, j in arrows]
    identity = [index[(u, u)] for u in range(n)]
    g = FiniteGroupoid([f"x{u}" for u in range(n)], dom, ran, comp, inv,
                       identity, arrow_labels=[f"({i}<-{j})" for i, j in arrows],
                       name=name or f"Pair{n}")
    return validate_groupoid(g)


def groupoid_from_json(text: str, name="G") -> FiniteGroupoid:
    data = json.loads(text)
    units = data["units"]
    arrows = sorted(data["arrows"], key=lambda a: a["id"])
    dom = [a["dom"] for a in arrows]
    ran = [a["ran"] for a in arrows]
    comp = {(a, b): c for a, b, c in data["comp"]}
    inv = [0] * len(arrows)
    for a, ai in data["inv"]:
        inv[a] = ai
    identity = [-1] * len(units)
    for a in range(len(arrows)):
        if dom[a] == ran[a] and comp.get((a, a)) == a:
            identity[dom[a]] = a
    labels = [a.get("label", f"a{a['id']}") for a in arrows]
    g = FiniteGroupoid(units, dom, ran, comp, inv, identity,
                       arrow_labels=labels, name=name)
    return validate_groupoid(g)


def reduction(g: FiniteGroupoid, unit_subset, name=None) -> FiniteGroupoid:
    """Full subgroupoid on a unit subset: arrows with both endpoints inside."""
    units = sorted(set(int(u) for u in unit_subset))
    for u in units:
        if not 0 <= u < g.n_units:
            raise errors.UnknownUnit(f"unit {u} out of range")
    uset = set(units)
    unew = {u: i for i, u in enumerate(units)}
    arrows = [a for a in range(g.n_arrows)
              if g.dom[a] in uset and g.ran[a] in uset]
    anew = {a: i for i, a in enumerate(arrows)}
    comp = {(anew[a], anew[b]): anew[c]
            for (a, b), c in g.comp.items() if a in anew and b in anew}
    red = FiniteGroupoid(
        [g.unit_labels[u] for u in units],
        [unew[int(g.dom[a])] for a in arrows],
        [unew[int(g.ran[a])] for a in arrows],
        comp,
        [anew[int(g.inv[a])] for a in arrows],
        [anew[int(g.identity[u])] for u in units],
        arrow_labels=[g.arrow_labels[a] for a in arrows],
        name=name or f"{g.name}|")
    red.parent_units = tuple(units)
    red.parent_arrows = tuple(arrows)
    return red


@dataclass(frozen=True)
class GroupoidFunctor:
    """A functor between finite groupoids, as unit and arrow maps."""

    source: FiniteGroupoid
    target: FiniteGroupoid
    unit_map: tuple
    arrow_map: tuple

    def on_unit(self, u: int) -> int:
        return self.unit_map[u]

    def __call__(self, a: int) -> int:
        return self.arrow_map[a]


def groupoid_functor(src: FiniteGroupoid, tgt: FiniteGroupoid,
                     unit_map, arrow_map) -> GroupoidFunctor:
    """Validate dom/ran/composition/identity preservation."""
    unit_map = tuple(int(x) for x in unit_map)
    arrow_map = tuple(int(x) for x in arrow_map)
    if len(unit_map) != src.n_units or len(arrow_map) != src.n_arrows:
        raise errors.NotAFunctor("maps must cover all units and arrows")
    for a in range(src.n_arrows):
        fa = arrow_map[a]
        if not 0 <= fa < tgt.n_arrows:
            raise errors.NotAFunctor(f"arrow image {fa} out of range")
        if tgt.dom[fa] != unit_map[src.dom[a]] or \
                tgt.ran[fa] != unit_map[src.ran[a]]:
            raise errors.NotAFunctor(f"endpoints of arrow {a} not preserved")
    for u in range(src.n_units):
        if arrow_map[src.identity[u]] != tgt.identity[unit_map[u]]:
            raise errors.NotAFunctor(f"identity at unit {u} not preserved")
    for (a, b), c in src.comp.items():
        if tgt.compose(arrow_map[a], arrow_map[b]) != arrow_map[c]:
            raise errors.NotAFunctor(f"composition {a}{b} not preserved")
    return GroupoidFunctor(src, tgt, unit_map, arrow_map)


def compose_functors(F: GroupoidFunctor, G: GroupoidFunctor) -> GroupoidFunctor:
    """F after G (first G, then F)."""
    if G.target is not F.source and (
            G.target.n_arrows != F.source.n_arrows):
        raise errors.NotAFunctor("functors are not composable")
    return groupoid_functor(
        G.source, F.target,
        [F.unit_map[G.unit_map[u]] for u in range(G.source.n_units)],
        [F.arrow_map[G.arrow_map[a]] for a in range(G.source.n_arrows)])


def identity_functor(g: FiniteGroupoid) -> GroupoidFunctor:
    return groupoid_functor(g, g, range(g.n_units), range(g.n_arrows))


def invert_functor(F: GroupoidFunctor) -> GroupoidFunctor:
    """The inverse of a bijective functor."""
    if not verify_isomorphism(F):
        raise errors.NotBijective("only bijective functors invert")
    umap = [0] * F.target.n_units
    for u, v in enumerate(F.unit_map):
        umap[v] = u
    amap = [0] * F.target.n_arrows
    for a, b in enumerate(F.arrow_map):
        amap[b] = a
    return groupoid_functor(F.target, F.source, umap, amap)


def inclusion_of_reduction(red: FiniteGroupoid, g: FiniteGroupoid) -> GroupoidFunctor:
    return groupoid_functor(red, g, red.parent_units, red.parent_arrows)


def cocycle_faithfulness_map(F: GroupoidFunctor):
    """Materialize psi(g) = (ran g, dom g, F(g)) and report injectivity."""
    src = F.source
    triples = [(int(src.ran[a]), int(src.dom[a]), F(a))
               for a in range(src.n_arrows)]
    return triples, len(set(triples)) == src.n_arrows


def functor_report(F: GroupoidFunctor) -> dict:
    """Faithful / full / fully faithful / essentially surjective / weak equivalence.

    Faithful and full are read off the comparison map into the pullback
    ``{(x, y, h) : h an arrow F(y) -> F(x)}``; essential surjectivity asks
    every target unit to be connected by an arrow to an image unit.
    """
    src, tgt = F.source, F.target
    triples, faithful = cocycle_faithfulness_map(F)
    pullback = {(x, y, h)
                for x in range(src.n_units) for y in range(src.n_units)
                for h in range(tgt.n_arrows)
                if tgt.dom[h] == F.unit_map[y] and tgt.ran[h] == F.unit_map[x]}
    full = set(triples) >= pullback
    image_units = set(F.unit_map)
    ess = all(any((tgt.dom[h] == u and int(tgt.ran[h]) in image_units)
                  for h in range(tgt.n_arrows))
              for u in range(tgt.n_units))
    ff = faithful and full
    return {
        "faithful": faithful,
        "full": full,
        "fully_faithful": ff,
        "essentially_surjective": ess,
        "weak_equivalence": ff and ess,
    }


def verify_isomorphism(F: GroupoidFunctor, G_back: GroupoidFunctor | None = None) -> bool:
    """True iff F is bijective on units and arrows (and G_back inverts it)."""
    bij = (sorted(F.unit_map) == list(range(F.target.n_units))
           and sorted(F.arrow_map) == list(range(F.target.n_arrows)))
    if not bij:
        return False
    if G_back is not None:
        if any(G_back.arrow_map[F.arrow_map[a]] != a
               for a in range(F.source.n_arrows)):
            return False
        if any(F.arrow_map[G_back.arrow_map[a]] != a
               for a in range(G_back.source.n_arrows)):
            return False
    return True


def find_isomorphism(g: FiniteGroupoid, h: FiniteGroupoid,
                     arrow_limit: int = 64):
    """Brute-force isomorphism search (oracle for small groupoids).

    Returns a GroupoidFunctor or None.  Pre-checks cheap invariants (unit and
    arrow counts, isotropy multiset) before backtracking over unit bijections
    and hom-set assignments.
    """
    if g.n_arrows > arrow_limit or h.n_arrows > arrow_limit:
        raise errors.SizeLimitExceeded(max(g.n_arrows, h.n_arrows), arrow_limit)
    if g.n_units != h.n_units or g.n_arrows != h.n_arrows:
        return None
    if g.isotropy_orders() != h.isotropy_orders():
        return None

    def unit_sig(k, u):
        iso = sum(1 for a in range(k.n_arrows)
                  if k.dom[a] == u and k.ran[a] == u)
        out = sum(1 for a in range(k.n_arrows) if k.dom[a] == u)
        return (iso, out, len(k.orbit_of(u)))

    gsig = [unit_sig(g, u) for u in range(g.n_units)]
    hsig = [unit_sig(h, u) for u in range(h.n_units)]
    if sorted(gsig) != sorted(hsig):
        return None

    def hom_set(k, u, v):
        return [a for a in range(k.n_arrows)
                if k.dom[a] == u and k.ran[a] == v]

    def try_units(unit_map):
        amap = [-1] * g.n_arrows
        used = [False] * h.n_arrows
        order = sorted(range(g.n_arrows),
                       key=lambda a: (g.dom[a], g.ran[a], a))

        def consistent(a, b):
            # every composition constraint touching a: a as a factor, and a
            # as the composite of two arrows mapped earlier
            mapped = [x for x in range(g.n_arrows) if amap[x] >= 0]
            for x in mapped:
                c = g.compose(a, x)
                if c is not None and amap[c] >= 0:
                    if h.compose(b, amap[x]) != amap[c]:
                        return False
                c = g.compose(x, a)
                if c is not None and amap[c] >= 0:
                    if h.compose(amap[x], b) != amap[c]:
                        return False
            c = g.compose(a, a)
            if c is not None and amap[c] >= 0 and h.compose(b, b) != amap[c]:
                return False
            for x in mapped:
                for y in mapped:
                    if g.compose(x, y) == a and \
                            h.compose(amap[x], amap[y]) != b:
                        return False
            return True

        def backtrack(i):
            if i == len(order):
                return True
            a = order[i]
            if amap[a] >= 0:
                return backtrack(i + 1)
            du, ru = unit_map[g.dom[a]], unit_map[g.ran[a]]
            for b in hom_set(h, du, ru):
                if used[b]:
                    continue
                ai, bi = int(g.inv[a]), int(h.inv[b])
                if amap[ai] >= 0 and amap[ai] != bi:
                    continue
                if used[bi] and amap[ai] != bi:
                    continue
                amap[a] = b
                used[b] = True
                set_inv = amap[ai] < 0
                if set_inv:
                    amap[ai] = bi
                    used[bi] = True
                if consistent(a, b) and (not set_inv or consistent(ai, bi)) \
                        and backtrack(i + 1):
                    return True
                amap[a] = -1
                used[b] = False
                if set_inv:
                    amap[ai] = -1
                    used[bi] = False
            return False

        if backtrack(0):
            return amap
        return None

    def unit_backtrack(i, unit_map, taken):
        if i == g.n_units:
            amap = try_units(unit_map)
            if amap is not None:
                return groupoid_functor(g, h, unit_map, amap)
            return None
        for v in range(h.n_units):
            if taken[v] or hsig[v] != gsig[i]:
                continue
            unit_map[i] = v
            taken[v] = True
            res = unit_backtrack(i + 1, unit_map, taken)
            if res is not None:
                return res
            taken[v] = False
        return None

    return unit_backtrack(0, [-1] * g.n_units, [False] * h.n_units)


# -- groupoid actions on spaces and semidirect products --------------------------

class GroupoidSpaceAction:
    """An action of a groupoid H on a finite set X along an anchor p: X -> H0.

    ``act[h, x]`` is hx when dom(h) = p(x), else -1.
    """

    def __init__(self, groupoid: FiniteGroupoid, point_labels, anchor, act):
        self.groupoid = groupoid
        self.point_labels = tuple(point_labels)
        self.anchor = tuple(int(p) for p in anchor)
        self.act = np.asarray(act, dtype=np.int64)
        self.act.setflags(write=False)

    @property
    def n_points(self):
        return len(self.point_labels)

    def __call__(self, h: int, x: int):
        y = int(self.act[h, x])
        return y if y >= 0 else None


def validate_space_action(action: GroupoidSpaceAction) -> GroupoidSpaceAction:
    h = action.groupoid
    for x in range(action.n_points):
        if not 0 <= action.anchor[x] < h.n_units:
            raise errors.InvalidAction(f"anchor of point {x} out of range")
        if action(int(h.identity[action.anchor[x]]), x) != x:
            raise errors.InvalidAction(f"identity does not fix point {x}")
    for a in range(h.n_arrows):
        for x in range(action.n_points):
            defined = h.dom[a] == action.anchor[x]
            y = action(a, x)
            if defined != (y is not None):
                raise errors.InvalidAction(
                    f"arrow {a} defined on the wrong points")
            if y is not None and action.anchor[y] != h.ran[a]:
                raise errors.InvalidAction(
                    f"anchor not equivariant at arrow {a}, point {x}")
    for a in range(h.n_arrows):
        for b in range(h.n_arrows):
            ab = h.compose(a, b)
            if ab is None:
                continue
            for x in range(action.n_points):
                bx = action(b, x)
                if bx is None:
                    continue
                if action(a, bx) != action(ab, x):
                    raise errors.InvalidAction(
                        f"action not functorial at ({a},{b},{x})")
    return action


def semidirect_product(action: GroupoidSpaceAction, name=None) -> FiniteGroupoid:
    """H x X with d(h, x) = x, r(h, x) = hx and (g, hy)(h, y) = (gh, y)."""
    validate_space_action(action)
    h = action.groupoid
    arrows = [(a, x) for a in range(h.n_arrows)
              for x in range(action.n_points)
              if h.dom[a] == action.anchor[x]]
    index = {p: i for i, p in enumerate(arrows)}
    dom = [x for _, x in arrows]
    ran = [action(a, x) for a, x in arrows]
    comp = {}
    for i, (a, x) in enumerate(arrows):
        for j, (b, y) in enumerate(arrows):
            if action(b, y) == x:
                ab = h.compose(a, b)
                comp[(i, j)] = index[(ab, y)]
    inv = [index[(int(h.inv[a]), action(a, x))] for a, x in arrows]
    identity = [index[(int(h.identity[action.anchor[x]]), x)]
                for x in range(action.n_points)]
    labels = [f"({h.arrow_labels[a]},{action.point_labels[x]})"
              for a, x in arrows]
    g = FiniteGroupoid(action.point_labels, dom, ran, comp, inv, identity,
                       arrow_labels=labels,
                       name=name or f"{h.name}|X")
    g.arrow_pairs = tuple(arrows)
    g.pair_index = index
    return validate_groupoid(g)


def semidirect_projection(sd: FiniteGroupoid, h: FiniteGroupoid) -> GroupoidFunctor:
    """The projection H x X -> H onto the first coordinate."""
    unit_map = []
    for x in range(sd.n_units):
        a, _ = sd.arrow_pairs[sd.identity[x]]
        unit_map.append(int(h.dom[a]))
    arrow_map = [a for a, _ in sd.arrow_pairs]
    return groupoid_functor(sd, h, unit_map, arrow_map)


def enveloping_action_of_functor(F: GroupoidFunctor):
    """The enveloping H-space of a faithful functor F: G -> H.

    Builds X = (H x_{H0} G0)/~ with (h, e) ~ (k, f) iff some g: e -> f has
    F(g) = k^{-1} h, the H-action h'[k, e] = [h'k, e], and the canonical
    factorization functor alpha(g) = (F(g), [F(dom g), dom g]), which is a
    weak equivalence.  Returns (action, alpha, semidirect, classes).
    """
    g, h = F.source, F.target
    _, injective = cocycle_faithfulness_map(F)
    if not injective:
        raise errors.NotFaithful(
            "enveloping action needs a faithful functor")
    pairs = [(a, e) for a in range(h.n_arrows) for e in range(g.n_units)
             if h.dom[a] == F.unit_map[e]]
    # union-find over the equivalence generated by arrows of g
    parent = {p: p for p in pairs}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    def union(p, q):
        rp, rq = find(p), find(q)
        if rp != rq:
            parent[max(rp, rq)] = min(rp, rq)

    for (a, e) in pairs:
        for arr in range(g.n_arrows):
            if g.dom[arr] != e:
                continue
            f = int(g.ran[arr])
            # (a, e) ~ (k, f) when F(arr) = k^{-1} a, i.e. k = a F(arr)^{-1}
            k = h.compose(a, int(h.inv[F(arr)]))
            if k is not None:
                union((a, e), (k, f))
    classes = {}
    for p in pairs:
        classes.setdefault(find(p), []).append(p)
    reps = sorted(classes)
    class_index = {p: reps.index(find(p)) for p in pairs}
    labels = [f"[{h.arrow_labels[a]},{g.unit_labels[e]}]" for a, e in reps]
    anchor = [int(h.ran[a]) for a, e in reps]
    act = np.full((h.n_arrows, len(reps)), -1, dtype=np.int64)
    for b in range(h.n_arrows):
        for i, (a, e) in enumerate(reps):
            if h.dom[b] == h.ran[a]:
                act[b, i] = class_index[(h.compose(b, a), e)]
    action = validate_space_action(
        GroupoidSpaceAction(h, labels, anchor, act))
    sd = semidirect_product(action, name=f"{h.name}|env")
    unit_map = [class_index[(int(h.identity[F.unit_map[e]]), e)]
                for e in range(g.n_units)]
    arrow_map = []
    for arr in range(g.n_arrows):
        x = unit_map[g.dom[arr]]
        arrow_map.append(sd.pair_index[(F(arr), x)])
    alpha = groupoid_functor(g, sd, unit_map, arrow_map)
    return action, alpha, sd, {reps.index(r): cls for r, cls in classes.items()}
