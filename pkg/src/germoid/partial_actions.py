"""Partial group actions, partial transformation groupoids, the partial
action of the maximal group image on the filter space, the isomorphism of
the universal groupoid with the partial transformation groupoid, enveloping
(global) actions, and the Khoshkam-Skandalis Morita pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import errors
from .groupoids import (
    FiniteGroupoid,
    GroupoidFunctor,
    cocycle_faithfulness_map,
    enveloping_action_of_functor,
    functor_report,
    groupoid_functor,
    reduction,
    semidirect_projection,
    validate_groupoid,
    verify_isomorphism,
)
from .germs import (
    GermGroupoid,
    germ_groupoid,
    induced_functor,
    saction_from_gspace,
    universal_groupoid,
)
from .semigroups import (
    FiniteGroup,
    InvSemigroup,
    SemigroupHom,
    SigmaMap,
    is_e_unitary,
    is_locally_idempotent_pure,
    max_group_image,
)
from .spectra import check_ks_condition, enumerate_filters


class PartialGroupAction:
    """A partial action of a finite group on a finite set.

    ``maps[g, x]`` is theta(g)(x) or -1; the domain of theta(g) is X_{g^{-1}}.
    """

    def __init__(self, group: FiniteGroup, point_labels, maps):
        self.group = group
        self.point_labels = tuple(point_labels)
        self.maps = np.asarray(maps, dtype=np.int64)
        self.maps.setflags(write=False)

    @property
    def n_points(self):
        return len(self.point_labels)

    def __call__(self, g: int, x: int):
        y = int(self.maps[g, x])
        return y if y >= 0 else None

    def domain(self, g: int) -> frozenset:
        """X_{g^{-1}}, the domain of theta(g)."""
        return frozenset(int(x) for x in np.flatnonzero(self.maps[g] >= 0))

    def is_global(self) -> bool:
        return bool((self.maps >= 0).all())


def validate_partial_action(G: FiniteGroup, point_labels, maps) -> PartialGroupAction:
    """Check theta(1) total, theta(g^{-1}) = theta(g)^{-1}, and the dual
    prehomomorphism law theta(g) theta(h) <= theta(gh)."""
    theta = PartialGroupAction(G, point_labels, np.asarray(maps))
    m = theta.n_points
    if any(theta(G.identity, x) != x for x in range(m)):
        raise errors.IdentityNotTotal("theta(1) must be the identity of X")
    for g in range(len(G)):
        vals = [y for y in theta.maps[g] if y >= 0]
        if len(vals) != len(set(vals)):
            raise errors.NotBijective(f"theta({g}) is not injective")
        gi = G.inv(g)
        for x in range(m):
            y = theta(g, x)
            if y is not None and theta(gi, y) != x:
                raise errors.InverseMismatch(g)
        if sorted(vals) != sorted(
                x for x in range(m) if theta(gi, x) is not None):
            raise errors.InverseMismatch(g)
    for g in range(len(G)):
        for h in range(len(G)):
            gh = G.mul(g, h)
            for x in range(m):
                hx = theta(h, x)
                if hx is None:
                    continue
                y = theta(g, hx)
                if y is not None and theta(gh, x) != y:
                    raise errors.NotDualPrehom(g, h)
    return theta


def partial_trans_groupoid(theta: PartialGroupAction, name=None) -> FiniteGroupoid:
    """G x X with arrows (g, x) for x in X_{g^{-1}}, (g, x)(h, y) = (gh, y)."""
    G = theta.group
    arrows = [(g, x) for g in range(len(G)) for x in range(theta.n_points)
              if theta(g, x) is not None]
    index = {p: i for i, p in enumerate(arrows)}
    dom = [x for _, x in arrows]
    ran = [theta(g, x) for g, x in arrows]
    comp = {}
    for i, (g, x) in enumerate(arrows):
        for j, (h, y) in enumerate(arrows):
            if theta(h, y) == x:
                comp[(i, j)] = index[(G.mul(g, h), y)]
    inv = [index[(G.inv(g), theta(g, x))] for g, x in arrows]
    identity = [index[(G.identity, x)] for x in range(theta.n_points)]
    labels = [f"({G.names[g]},{theta.point_labels[x]})" for g, x in arrows]
    gpd = FiniteGroupoid(theta.point_labels, dom, ran, comp, inv, identity,
                         arrow_labels=labels,
                         name=name or f"{G.name}|X")
    gpd.arrow_pairs = tuple(arrows)
    gpd.pair_index = index
    return validate_groupoid(gpd)


def theta_from_sigma(S: InvSemigroup, sigma: SigmaMap | None = None,
                     _space=None) -> PartialGroupAction:
    """The partial action of the maximal group image on the filter space.

    theta(g) is the union of beta_s over the sigma-fiber of g; overlapping
    members of a fiber agree on the intersection of their domains (this is
    where E-unitarity enters), which is verified during assembly.
    """
    if not is_e_unitary(S):
        raise errors.NotEUnitary(S.name)
    if sigma is None:
        sigma = max_group_image(S)
    G = sigma.group
    space = _space or enumerate_filters(S, contracted=False)
    maps = np.full((len(G), len(space)), -1, dtype=np.int64)
    for s in range(len(S)):
        g = sigma(s)
        ss = S.mul(S.inv(s), s)
        for i, m in enumerate(space.mins):
            if S.mul(m, ss) != m:
                continue
            img = space.index_of(S.mul_all(s, m, S.inv(s)))
            if maps[g, i] >= 0 and maps[g, i] != img:
                raise AssertionError(
                    "sigma-fiber members disagree on a shared domain")
            maps[g, i] = img
    theta = validate_partial_action(
        G, [space.label(i) for i in range(len(space))], maps)
    theta.space = space
    theta.sigma = sigma
    return theta


def verify_main1(S: InvSemigroup):
    """Mutually inverse functors between the universal groupoid and the
    partial transformation groupoid of the filter-space partial action.

    Phi sends [s, phi] to (sigma(s), phi); Psi sends (g, phi) to [s, phi]
    for any fiber member defined at phi.  Returns (ok, Phi, Psi).
    """
    if not is_e_unitary(S):
        raise errors.NotEUnitary(S.name)
    sigma = max_group_image(S)
    univ = universal_groupoid(S, contracted=False)
    theta = theta_from_sigma(S, sigma, _space=univ.action.space)
    trans = partial_trans_groupoid(theta, name=f"G({S.name})xE^")

    unit_map = list(range(univ.n_units))
    phi_arrows = [trans.pair_index[(sigma(s), x)]
                  for s, x in univ.germ_reps]
    Phi = groupoid_functor(univ, trans, unit_map, phi_arrows)

    psi_arrows = []
    for g, x in trans.arrow_pairs:
        m = univ.action.space.mins[x]
        s = next(s for s in range(len(S))
                 if sigma(s) == g and
                 S.mul(m, S.mul(S.inv(s), s)) == m)
        psi_arrows.append(univ.germ(s, x))
    Psi = groupoid_functor(trans, univ, unit_map, psi_arrows)

    ok = verify_isomorphism(Phi, Psi) and verify_isomorphism(Psi, Phi)
    return ok, Phi, Psi


def restrict_partial_action(theta: PartialGroupAction, subset,
                            check_invariant=True) -> PartialGroupAction:
    """Restriction of a partial action to an invariant point subset.

    Invariance (theta(g)(Y n X_{g^{-1}}) within Y) is checked unless
    disabled; the restricted groupoid is the reduction of the unrestricted
    one, which callers can assert arrow-for-arrow.
    """
    subset = sorted(set(int(x) for x in subset))
    pos = {x: i for i, x in enumerate(subset)}
    G = theta.group
    if check_invariant:
        for g in range(len(G)):
            for x in subset:
                y = theta(g, x)
                if y is not None and y not in pos:
                    raise errors.NotInvariant(g, x)
    sub = np.full((len(G), len(subset)), -1, dtype=np.int64)
    for g in range(len(G)):
        for x in subset:
            y = theta(g, x)
            if y is not None:
                sub[g, pos[x]] = pos[y]
    restricted = validate_partial_action(
        G, [theta.point_labels[x] for x in subset], sub)
    restricted.parent_points = tuple(subset)
    return restricted


@dataclass
class EnvelopeResult:
    """Globalization of a partial action: quotient space, global action,
    embedding of the original points, and the inclusion functor."""

    theta: PartialGroupAction
    global_action: PartialGroupAction
    embedding: tuple              # point x -> class of (1, x)
    classes: tuple                # class id -> tuple of (g, x) pairs
    inclusion: GroupoidFunctor    # G x X -> G x X~
    report: dict                  # functor_report of the inclusion


def enveloping_group_action(theta: PartialGroupAction) -> EnvelopeResult:
    """The enveloping (global) action on X~ = (G x X)/~.

    (g, x) ~ (h, y) iff x lies in X_{g^{-1}h} and h^{-1}g x = y; the global
    action is g'[g, x] = [g'g, x].  The embedding x -> [1, x] restricts the
    global action back to theta, and the inclusion of transformation
    groupoids is a weak equivalence (checked, returned in the report).
    """
    G = theta.group
    pairs = [(g, x) for g in range(len(G)) for x in range(theta.n_points)]
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

    for g, x in pairs:
        for h in range(len(G)):
            # (g, x) ~ (h, y) iff theta(h^{-1} g) is defined at x
            y = theta(G.mul(G.inv(h), g), x)
            if y is not None:
                union((g, x), (h, y))
    classes = {}
    for p in pairs:
        classes.setdefault(find(p), []).append(p)
    reps = sorted(classes)
    cidx = {p: reps.index(find(p)) for p in pairs}
    k = len(reps)
    glob = np.zeros((len(G), k), dtype=np.int64)
    for g in range(len(G)):
        for i, (h, x) in enumerate(reps):
            glob[g, i] = cidx[(G.mul(g, h), x)]
    labels = [f"[{G.names[g]},{theta.point_labels[x]}]" for g, x in reps]
    global_action = validate_partial_action(G, labels, glob)
    embedding = tuple(cidx[(G.identity, x)] for x in range(theta.n_points))
    if len(set(embedding)) != theta.n_points:
        raise AssertionError("embedding of X into its globalization must be injective")
    # restriction of the global action to the image recovers theta
    emb = set(embedding)
    for g in range(len(G)):
        for x in range(theta.n_points):
            y = theta(g, x)
            gx = int(glob[g, embedding[x]])
            if y is not None:
                assert gx == embedding[y], "globalization must extend theta"
            else:
                assert gx not in emb, "globalization must not enlarge theta inside X"
    small = partial_trans_groupoid(theta)
    big = partial_trans_groupoid(global_action, name=f"{G.name}|env")
    unit_map = embedding
    arrow_map = [big.pair_index[(g, embedding[x])]
                 for g, x in small.arrow_pairs]
    inclusion = groupoid_functor(small, big, unit_map, arrow_map)
    report = functor_report(inclusion)
    return EnvelopeResult(theta, global_action, embedding,
                          tuple(tuple(sorted(classes[r])) for r in reps),
                          inclusion, report)


@dataclass
class KSPipelineResult:
    """Everything the Morita pipeline produces, for reporting and testing."""

    phi: SemigroupHom
    source: FiniteGroupoid        # (possibly reduced) universal groupoid of S
    induced: GroupoidFunctor      # source -> G(T)
    ks_certificates: dict
    space_labels: tuple           # points of the enveloping T-space X
    taction: "object"             # SAction of T on X
    target: GermGroupoid          # germ groupoid T x X
    alpha: GroupoidFunctor        # source -> target, a weak equivalence
    report: dict                  # functor_report of alpha
    sizes: dict

    @property
    def ok(self):
        return self.report["weak_equivalence"]

    def to_json(self) -> str:
        import json

        certs = {f"{e},{f},{t}": list(map(int, c.generators))
                 for (e, f, t), c in sorted(self.ks_certificates.items())}
        return json.dumps({
            "sizes": self.sizes,
            "conditions": self.report,
            "certificates": certs,
            "pass": self.ok,
        }, sort_keys=True)


def ks_pipeline(phi: SemigroupHom, contract_to=None) -> KSPipelineResult:
    """Morita equivalence of the universal groupoid of S with a germ groupoid
    of a T-action, out of a locally idempotent pure homomorphism phi: S -> T.

    Chains the induced functor of universal groupoids, its faithfulness, the
    enveloping action of that functor, and the translation of the resulting
    groupoid space into an inverse semigroup action.  ``contract_to`` may
    name an invariant unit subset of the source groupoid (ideal perp or
    tight units) to reproduce the contracted variants.
    """
    if not is_locally_idempotent_pure(phi):
        raise errors.NotLocallyIdempotentPure(
            "the pipeline needs a locally idempotent pure homomorphism")
    _, certs = check_ks_condition(phi)

    F = induced_functor(phi)
    source = F.source
    if contract_to is not None:
        red = reduction(source, contract_to)
        F = groupoid_functor(
            red, F.target,
            [F.unit_map[u] for u in red.parent_units],
            [F.arrow_map[a] for a in red.parent_arrows])
        source = red

    _, injective = cocycle_faithfulness_map(F)
    if not injective:
        raise errors.FaithfulnessFailed(
            "induced cocycle of a locally idempotent pure morphism must be faithful")

    gaction, alpha0, sd, _classes = enveloping_action_of_functor(F)
    taction = saction_from_gspace(gaction)
    target = germ_groupoid(taction, name=f"{phi.target.name}|envX")
    # identify T x X (germs) with G(T) x X (semidirect): [t, x] -> ([t, p(x)], x)
    gt = F.target
    amap = []
    for t, x in target.germ_reps:
        arrow = gt.germ(t, gaction.anchor[x])
        amap.append(sd.pair_index[(arrow, x)])
    ident = groupoid_functor(target, sd, range(target.n_units), amap)
    if not verify_isomorphism(ident):
        raise AssertionError("germ groupoid must match the semidirect product")
    back = {b: a for a, b in enumerate(amap)}
    alpha = groupoid_functor(
        source, target,
        list(alpha0.unit_map),
        [back[a] for a in alpha0.arrow_map])
    report = functor_report(alpha)
    # the projection relation pi . alpha = F
    proj = semidirect_projection(sd, gt)
    for a in range(source.n_arrows):
        assert proj(alpha0(a)) == F(a), "projection must recover the cocycle"
    sizes = {
        "source_units": source.n_units,
        "source_arrows": source.n_arrows,
        "space_points": len(gaction.point_labels),
        "target_units": target.n_units,
        "target_arrows": target.n_arrows,
    }
    return KSPipelineResult(phi, source, F, certs, gaction.point_labels,
                            taction, target, alpha, report, sizes)
