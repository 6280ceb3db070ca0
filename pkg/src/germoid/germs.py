"""Inverse semigroup actions on finite sets and their germ groupoids.

Covers the canonical action on the filter space, the universal, contracted
and tight groupoids, ideal perps and the reduction isomorphism, the
correspondence between S-spaces and actions of the universal groupoid,
and functors induced by semigroup homomorphisms.

Finite sets carry the discrete topology, so every action here is special
(all domains clopen); this is asserted once and not re-checked per call.
"""

from __future__ import annotations

import numpy as np

from . import errors
from .groupoids import (
    FiniteGroupoid,
    GroupoidFunctor,
    GroupoidSpaceAction,
    groupoid_functor,
    reduction,
    semidirect_product,
    validate_groupoid,
    validate_space_action,
)
from .semigroups import InvSemigroup, SemigroupHom, is_ideal
from .spectra import (
    enumerate_filters,
    hat_map,
    restrict_to_idempotents,
    tight_spectrum,
)


class SAction:
    """An action of an inverse semigroup on a finite set.

    ``maps[s, x]`` is theta_s(x), or -1 outside the domain of theta_s.
    """

    def __init__(self, semigroup: InvSemigroup, point_labels, maps):
        self.semigroup = semigroup
        self.point_labels = tuple(point_labels)
        self.maps = np.asarray(maps, dtype=np.int64)
        self.maps.setflags(write=False)

    @property
    def n_points(self):
        return len(self.point_labels)

    def __call__(self, s: int, x: int):
        y = int(self.maps[s, x])
        return y if y >= 0 else None

    def domain(self, s: int) -> frozenset:
        return frozenset(int(x) for x in np.flatnonzero(self.maps[s] >= 0))

    def to_json_dict(self, semigroup_ref=None) -> dict:
        return {
            "semigroup": semigroup_ref or self.semigroup.name,
            "points": list(self.point_labels),
            "maps": {str(s): [[int(x), int(y)]
                              for x, y in enumerate(self.maps[s]) if y >= 0]
                     for s in range(len(self.semigroup))},
        }

    def restrict(self, subset, check_invariant=True) -> "SAction":
        """Restriction to an invariant point subset (re-indexed)."""
        subset = sorted(set(int(x) for x in subset))
        pos = {x: i for i, x in enumerate(subset)}
        S = self.semigroup
        if check_invariant:
            for s in range(len(S)):
                for x in subset:
                    y = self(s, x)
                    if y is not None and y not in pos:
                        raise errors.NotInvariant(s, x)
        sub = np.full((len(S), len(subset)), -1, dtype=np.int64)
        for s in range(len(S)):
            for x in subset:
                y = self(s, x)
                if y is not None and y in pos:
                    sub[s, pos[x]] = pos[y]
        act = SAction(S, [self.point_labels[x] for x in subset], sub)
        act.parent_points = tuple(subset)
        return act


def _compose_partial(outer: np.ndarray, inner: np.ndarray) -> np.ndarray:
    """Partial-map composition of -1-padded index vectors: outer after inner."""
    out = np.full_like(inner, -1)
    defined = inner >= 0
    out[defined] = outer[inner[defined]]
    return out


def validate_saction(S: InvSemigroup, point_labels, maps) -> SAction:
    """Validate a family of partial maps as an inverse semigroup action."""
    action = SAction(S, point_labels, np.asarray(maps))
    n, m = len(S), action.n_points
    if action.maps.shape != (n, m):
        raise errors.InvalidParams("need one partial map per semigroup element")
    idx = np.arange(m)
    for s in range(n):
        row = action.maps[s]
        if row.max(initial=-1) >= m:
            raise errors.InvalidParams("map image out of range")
        vals = row[row >= 0]
        if len(vals) != len(set(vals.tolist())):
            raise errors.NotBijective(f"theta_{s} is not injective")
        si = S.inv(s)
        back = _compose_partial(action.maps[si], row)
        if not np.array_equal(back >= 0, row >= 0) or \
                not np.array_equal(back[back >= 0], idx[back >= 0]):
            raise errors.NotBijective(f"theta_{si} does not invert theta_{s}")
        if (action.maps[si] >= 0).sum() != len(vals):
            raise errors.NotBijective(f"theta_{si} overshoots theta_{s}")
    for s in range(n):
        for t in range(n):
            comp = _compose_partial(action.maps[s], action.maps[t])
            if not np.array_equal(comp, action.maps[S.mul(s, t)]):
                raise errors.NotAHomomorphism(
                    f"theta_{s} theta_{t} != theta_{{s t}}")
    covered = np.zeros(m, dtype=bool)
    for e in S.idempotents:
        covered |= action.maps[e] >= 0
    if not covered.all():
        raise errors.DomainsDontCover(int(np.flatnonzero(~covered)[0]))
    return action


def beta_action(S: InvSemigroup, contracted=False) -> SAction:
    """The canonical action on the filter space: beta_s(x^) = (s x s*)^ on D(s*s).

    Pointwise this is phi |-> phi(s* _ s); on principal filters the two
    agree, which the tests check against the semi-character oracle.
    """
    space = enumerate_filters(S, contracted=contracted)
    n = len(S)
    maps = np.full((n, len(space)), -1, dtype=np.int64)
    for s in range(n):
        ss = S.mul(S.inv(s), s)
        for i, m in enumerate(space.mins):
            if S.mul(m, ss) == m:  # m <= s*s
                img = S.mul_all(s, m, S.inv(s))
                maps[s, i] = space.index_of(img)
    action = validate_saction(S, [space.label(i) for i in range(len(space))],
                              maps)
    action.space = space
    return action


class GermGroupoid(FiniteGroupoid):
    """A groupoid of germs: each arrow carries its germ class of (s, x) pairs."""

    def __init__(self, action: SAction, reps, classes, **kw):
        self.action = action
        self.germ_reps = tuple(reps)
        self.germ_classes = tuple(frozenset(c) for c in classes)
        self.germ_of = {}
        for i, cls in enumerate(self.germ_classes):
            for p in cls:
                self.germ_of[p] = i
        super().__init__(**kw)

    def germ(self, s: int, x: int) -> int:
        """Arrow id of the germ [s, x]; raises if x is outside dom theta_s."""
        if (s, x) not in self.germ_of:
            raise errors.UnknownElement(f"({s},{x}) is not in the germ set")
        return self.germ_of[(s, x)]

    def to_json_dict(self) -> dict:
        data = super().to_json_dict()
        for arrow in data["arrows"]:
            s, x = self.germ_reps[arrow["id"]]
            arrow["germ"] = [int(s), int(x)]
        return data


def germ_groupoid(action: SAction, name=None) -> GermGroupoid:
    """The groupoid of germs of an action, with exhaustive class computation.

    (s, x) ~ (t, x) iff some u <= s, t has x in the domain of theta_{u*u};
    composition is [s, theta_t(y)][t, y] = [st, y] and the inverse of [s, x]
    is [s*, theta_s(x)].
    """
    S = action.semigroup
    n, m = len(S), action.n_points
    leq = S.leq_matrix()
    omega = [(s, x) for s in range(n) for x in range(m)
             if action(S.mul(S.inv(s), s), x) is not None]
    pair_class = {}
    classes = []
    dom_e = np.zeros((n, m), dtype=bool)   # x in domain of theta_{u*u}
    for u in range(n):
        uu = S.mul(S.inv(u), u)
        dom_e[u] = action.maps[uu] >= 0
    # eq[s][t, x]: some u <= s, t has x in dom theta_{u*u} (one matmul per s)
    below = leq.T.astype(np.int32)         # below[s, u] = (u <= s)
    dom8 = dom_e.astype(np.int32)
    by_point = {}
    for s, x in omega:
        by_point.setdefault(x, []).append(s)
    eq_of = {}
    for s in range(n):
        eq_of[s] = ((below * below[s]) @ dom8) > 0
    for x, ss in by_point.items():
        local = []
        for s in ss:
            placed = False
            for cls in local:
                if eq_of[s][cls[0], x]:
                    cls.append(s)
                    placed = True
                    break
            if not placed:
                local.append([s])
        for cls in local:
            idx = len(classes)
            classes.append([(s, x) for s in cls])
            for s in cls:
                pair_class[(s, x)] = idx
    # order arrows by their least representative for determinism
    order = sorted(range(len(classes)), key=lambda i: min(classes[i]))
    renum = {old: new for new, old in enumerate(order)}
    classes = [classes[i] for i in order]
    pair_class = {p: renum[i] for p, i in pair_class.items()}
    reps = [min(c) for c in classes]
    dom = [x for _, x in reps]
    ran = [action(s, x) for s, x in reps]
    comp = {}
    for i, (s, x) in enumerate(reps):
        for j, (t, y) in enumerate(reps):
            if action(t, y) == x:
                comp[(i, j)] = pair_class[(S.mul(s, t), y)]
    inv = [pair_class[(S.inv(s), action(s, x))] for s, x in reps]
    identity = []
    for x in range(m):
        e = next(e for e in S.idempotents if action(e, x) is not None)
        identity.append(pair_class[(e, x)])
    labels = [f"[{S.names[s]},{action.point_labels[x]}]" for s, x in reps]
    g = GermGroupoid(
        action, reps, classes,
        unit_labels=action.point_labels, dom=dom, ran=ran, comp=comp,
        inv=inv, identity=identity, arrow_labels=labels,
        name=name or f"{S.name}|germs")
    return validate_groupoid(g)


def universal_groupoid(S: InvSemigroup, contracted=False) -> GermGroupoid:
    """Germ groupoid of the canonical action on the (contracted) filter space."""
    if contracted and S.zero is None:
        raise errors.ContractedWithoutZero(S.name)
    tag = "c" if contracted else "u"
    return germ_groupoid(beta_action(S, contracted=contracted),
                         name=f"G({S.name},{tag})")


def tight_groupoid(S: InvSemigroup) -> GermGroupoid:
    """Germ groupoid of the action restricted to the tight spectrum.

    Agrees arrow-for-arrow with the reduction of the contracted universal
    groupoid to the tight units (asserted).
    """
    if S.zero is None:
        raise errors.NoZero(S.name)
    action = beta_action(S, contracted=True)
    tight = tight_spectrum(action.space)
    g = germ_groupoid(action.restrict(tight), name=f"Gt({S.name})")
    red = reduction(universal_groupoid(S, contracted=True), tight)
    assert g.n_arrows == red.n_arrows and \
        [tuple(p) for p in zip(g.dom, g.ran)] == \
        [tuple(p) for p in zip(red.dom, red.ran)], \
        "tight groupoid must match the reduction to tight units"
    return g


def ideal_perp(S: InvSemigroup, I, contracted=None):
    """Unit subset I-perp = {filters avoiding E n I} of the filter space.

    For principal filters these are exactly the x^ with x an idempotent not
    in I.  Returns ``(filter indices, space)``; the flag defaults to
    'contracted iff S has a zero', matching how the universal groupoid of a
    semigroup with zero is taken.
    """
    I = set(I)
    if not is_ideal(S, I):
        raise errors.NotAnIdeal(f"{sorted(I)} is not an ideal")
    if len(I) == len(S):
        raise errors.ImproperIdeal("I-perp of the whole semigroup")
    if contracted is None:
        contracted = S.zero is not None
    space = enumerate_filters(S, contracted=contracted)
    perp = tuple(i for i, m in enumerate(space.mins) if m not in I)
    return perp, space


def verify_reduction_iso(S: InvSemigroup, I):
    """Explicit isomorphism of the quotient groupoid with the perp reduction.

    Constructs the universal groupoid of the Rees quotient (contracted) and
    the reduction of the universal groupoid of S to I-perp, and verifies the
    functor [s, F] -> [q(s), F] is an isomorphism.  Returns (ok, functor).
    """
    from .semigroups import rees_quotient

    Q, qmap = rees_quotient(S, I)
    quot = universal_groupoid(Q, contracted=True)
    contracted = S.zero is not None
    big = universal_groupoid(S, contracted=contracted)
    perp, space = ideal_perp(S, I, contracted=contracted)
    red = reduction(big, perp)

    # unit of red = filter m^ of S with m not in I; in Q it is qmap(m)^
    unit_map = []
    for u in range(red.n_units):
        m = space.mins[red.parent_units[u]]
        unit_map.append(quot.action.space.index_of(qmap(m)))
    arrow_map = []
    for a in range(red.n_arrows):
        s, x = big.germ_reps[red.parent_arrows[a]]
        m = space.mins[x]
        arrow_map.append(quot.germ(qmap(s), quot.action.space.index_of(qmap(m))))
    functor = groupoid_functor(red, quot, unit_map, arrow_map)
    from .groupoids import verify_isomorphism
    return verify_isomorphism(functor), functor


# -- the correspondence between S-spaces and universal-groupoid spaces -----------

def gspace_from_saction(action: SAction, contracted=None):
    """Equip the point set of an S-action with its universal-groupoid action.

    The anchor sends x to the (principal) filter {e : x in X_e}; the arrow
    [s, p(x)] acts as theta_s.  Returns ``(GroupoidSpaceAction, GermGroupoid)``.
    """
    S = action.semigroup
    if contracted is None:
        contracted = S.zero is not None and not action.domain(S.zero)
    g = universal_groupoid(S, contracted=contracted)
    space = g.action.space
    anchor = []
    for x in range(action.n_points):
        containing = [e for e in S.idempotents if action(e, x) is not None]
        m = containing[0]
        for e in containing[1:]:
            m = S.mul(m, e)
        if action(m, x) is None:
            raise errors.NotAFilter(f"{{e : x{x} in X_e}} is not a filter")
        anchor.append(space.index_of(m))
    act = np.full((g.n_arrows, action.n_points), -1, dtype=np.int64)
    for a, (s, xf) in enumerate(g.germ_reps):
        for x in range(action.n_points):
            if anchor[x] == xf:
                # germ representatives through p(x) act alike; use s
                y = action(s, x)
                if y is None:
                    raise errors.WrongGroupoid(
                        "anchored point outside the domain of a representative")
                act[a, x] = y
    ga = validate_space_action(
        GroupoidSpaceAction(g, action.point_labels, anchor, act))
    return ga, g


def saction_from_gspace(gaction: GroupoidSpaceAction) -> SAction:
    """The S-action rho_s(x) = [s, p(x)] x underlying a universal-groupoid space."""
    g = gaction.groupoid
    if not isinstance(g, GermGroupoid):
        raise errors.WrongGroupoid("expected a groupoid of germs")
    S = g.action.semigroup
    space = getattr(g.action, "space", None)
    if space is None:
        raise errors.WrongGroupoid("expected the universal groupoid's action")
    maps = np.full((len(S), gaction.n_points), -1, dtype=np.int64)
    for s in range(len(S)):
        ss = S.mul(S.inv(s), s)
        for x in range(gaction.n_points):
            m = space.mins[gaction.anchor[x]]
            if S.mul(m, ss) == m:  # p(x) in D(s*s)
                maps[s, x] = gaction(g.germ(s, gaction.anchor[x]), x)
    return validate_saction(S, gaction.point_labels, maps)


def verify_equiv_roundtrip(action: SAction):
    """Check the S-space / groupoid-space correspondence on one action.

    Both composites must be identities, and the germ groupoid of the action
    must be isomorphic to the semidirect product of the universal groupoid
    with the point set, via [s, x] -> ([s, p(x)], x).  Returns (ok, functor).
    """
    from .groupoids import verify_isomorphism

    ga, g = gspace_from_saction(action)
    back = saction_from_gspace(ga)
    if not np.array_equal(back.maps, action.maps):
        return False, None
    germ = germ_groupoid(action)
    sd = semidirect_product(ga)
    unit_map = list(range(action.n_points))
    arrow_map = []
    for s, x in germ.germ_reps:
        arrow = g.germ(s, ga.anchor[x])
        arrow_map.append(sd.pair_index[(arrow, x)])
    functor = groupoid_functor(germ, sd, unit_map, arrow_map)
    ok = verify_isomorphism(functor)
    # and back again: a groupoid space action regenerates itself
    ga2, _ = gspace_from_saction(back)
    ok = ok and np.array_equal(ga2.act, ga.act) and ga2.anchor == ga.anchor
    return ok, functor


def induced_functor(phi: SemigroupHom) -> GroupoidFunctor:
    """The functor of universal groupoids [s, F] -> [phi(s), phi^(F)].

    Local coherence of the idempotent restriction is automatic here; the
    compatibility phi^(sF) = phi(s) phi^(F) is what the functor validation
    exercises.
    """
    gs = universal_groupoid(phi.source, contracted=False)
    gt = universal_groupoid(phi.target, contracted=False)
    ehom = restrict_to_idempotents(phi)
    _, _, umap = hat_map(ehom, gs.action.space, gt.action.space)
    arrow_map = []
    for s, x in gs.germ_reps:
        arrow_map.append(gt.germ(phi(s), umap[x]))
    return groupoid_functor(gs, gt, umap, arrow_map)
