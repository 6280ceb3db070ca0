"""Finite-dimensional complex-linear shadows of the operator-algebra layer:
regular representations, the basis intertwiner, covariant representations,
groupoid convolution algebras, and the center in the role of a desk-scale
Morita invariant.

Representation matrices are exact 0/1 integer arrays and all comparisons on
them are exact; floating point appears only in the commutant solve, where
singular values below 1e-10 count as zero.
"""

from __future__ import annotations

import json

import numpy as np

from . import errors
from .groupoids import FiniteGroupoid, GroupoidFunctor
from .partial_actions import PartialGroupAction, theta_from_sigma
from .semigroups import InvSemigroup, SigmaMap, is_e_unitary, max_group_image
from .spectra import d_set, enumerate_filters

SV_TOLERANCE = 1e-10


def left_regular_rep(S: InvSemigroup) -> dict:
    """The 0/1 matrices L_s with L_s e_t = e_{st} iff s*s t = t."""
    n = len(S)
    out = {}
    for s in range(n):
        ss = S.mul(S.inv(s), s)
        mat = np.zeros((n, n), dtype=np.int64)
        for t in range(n):
            if S.mul(ss, t) == t:
                mat[S.mul(s, t), t] = 1
        mat.setflags(write=False)
        out[s] = mat
    return out


def pair_basis(S: InvSemigroup, sigma: SigmaMap):
    """Ordered basis (e, g) of E x G with labels; index = e_pos * |G| + g."""
    E = S.idempotents
    G = sigma.group
    labels = [f"({S.names[e]},{G.names[g]})" for e in E for g in range(len(G))]
    index = {(e, g): i for i, (e, g) in
             enumerate((e, g) for e in E for g in range(len(G)))}
    return index, labels


def intertwiner_u(S: InvSemigroup, sigma: SigmaMap | None = None) -> np.ndarray:
    """The |E||G| x |S| matrix of e_s -> e_{s*s} (x) e_{sigma(s)}.

    Columns are distinct basis vectors exactly because S is E-unitary, so
    U*U = I on l2(S).
    """
    if not is_e_unitary(S):
        raise errors.NotEUnitary(S.name)
    if sigma is None:
        sigma = max_group_image(S)
    index, _ = pair_basis(S, sigma)
    U = np.zeros((len(index), len(S)), dtype=np.int64)
    for s in range(len(S)):
        U[index[(S.mul(S.inv(s), s), sigma(s))], s] = 1
    U.setflags(write=False)
    return U


def covariant_rep(S: InvSemigroup, sigma: SigmaMap | None = None,
                  theta: PartialGroupAction | None = None) -> dict:
    """The operators A_s on l2(E) (x) l2(G) of the covariant representation.

    A_s (e_e (x) e_g) = m * (e_e (x) e_{sigma(s) g}) with m = 1 iff the
    filter-space partial action is defined on e^ at sigma(s) g and lands in
    D(ss*): the translated-projection coefficient evaluated at e^.
    """
    if not is_e_unitary(S):
        raise errors.NotEUnitary(S.name)
    if sigma is None:
        sigma = max_group_image(S)
    if theta is None:
        theta = theta_from_sigma(S, sigma)
    G = sigma.group
    space = theta.space
    index, _ = pair_basis(S, sigma)
    dim = len(index)
    out = {}
    for s in range(len(S)):
        ssi = S.mul(s, S.inv(s))
        dss = d_set(space, ssi)
        mat = np.zeros((dim, dim), dtype=np.int64)
        for (e, g), col in index.items():
            h = G.mul(sigma(s), g)
            fe = space.index_of(e)
            img = theta(h, fe)
            if img is not None and img in dss:
                mat[index[(e, h)], col] = 1
        mat.setflags(write=False)
        out[s] = mat
    return out


def check_rep_conditions(S: InvSemigroup) -> bool:
    """The three order conditions behind the intertwining identity agree:
    s*s t = t, t*t = t*s*s t, and t*t <= t*s*s t, for every pair."""
    for s in range(len(S)):
        for t in range(len(S)):
            tt = S.mul(S.inv(t), t)
            w = S.mul_all(S.inv(t), S.inv(s), s, t)
            c1 = S.mul_all(S.inv(s), s, t) == t
            c2 = tt == w
            c3 = tt == S.mul(tt, w)  # t*t <= w, both idempotent
            if not (c1 == c2 == c3):
                return False
    return True


def check_intertwining(U, lambdas: dict, covs: dict) -> bool:
    """Exact matrix check that U is a 0/1 isometry and U L_s = A_s U for all s."""
    U = np.asarray(U)
    if not set(np.unique(U)) <= {0, 1}:
        return False
    if not np.array_equal(U.T @ U, np.eye(U.shape[1], dtype=U.dtype)):
        return False
    for s, lam in lambdas.items():
        if not np.array_equal(U @ lam, covs[s] @ U):
            return False
    return True


def verify_intertwining(S: InvSemigroup) -> bool:
    """U L_s = A_s U exactly for every s, plus the symbolic condition check."""
    sigma = max_group_image(S)
    U = intertwiner_u(S, sigma)
    lams = left_regular_rep(S)
    covs = covariant_rep(S, sigma)
    return check_intertwining(U, lams, covs) and check_rep_conditions(S)


# -- convolution algebras ---------------------------------------------------------

class ConvolutionAlgebra:
    """The arrow-basis algebra of a finite groupoid.

    The product of basis elements is e_a e_b = e_{ab} when composable and 0
    otherwise; the involution sends e_a to e_{a^{-1}}.
    """

    def __init__(self, groupoid: FiniteGroupoid):
        self.groupoid = groupoid
        self.dim = groupoid.n_arrows
        self.mult = dict(groupoid.comp)
        self.inv = tuple(int(x) for x in groupoid.inv)
        self.labels = groupoid.arrow_labels

    def product_matrix(self, a: int) -> np.ndarray:
        """Left multiplication by basis element a, as a dim x dim matrix."""
        mat = np.zeros((self.dim, self.dim), dtype=np.int64)
        for b in range(self.dim):
            c = self.mult.get((a, b))
            if c is not None:
                mat[c, b] = 1
        return mat

    def multiply(self, f: np.ndarray, g: np.ndarray) -> np.ndarray:
        out = np.zeros(self.dim, dtype=f.dtype)
        for (a, b), c in self.mult.items():
            out[c] += f[a] * g[b]
        return out

    def involution(self, f: np.ndarray) -> np.ndarray:
        out = np.zeros(self.dim, dtype=f.dtype)
        for a in range(self.dim):
            out[self.inv[a]] = np.conj(f[a])
        return out

    def to_json(self) -> str:
        return json.dumps({
            "dim": self.dim,
            "basis": list(self.labels),
            "mult": sorted([a, b, c] for (a, b), c in self.mult.items()),
            "inv": list(self.inv),
        }, sort_keys=True)


def convolution_algebra(g: FiniteGroupoid) -> ConvolutionAlgebra:
    """Structure constants from arrow composition; associativity and the
    involution law are rechecked exactly on the basis."""
    alg = ConvolutionAlgebra(g)
    for (a, b), c in alg.mult.items():
        if alg.mult.get((alg.inv[b], alg.inv[a])) != alg.inv[c]:
            raise errors.InvalidParams("involution is not antimultiplicative")
        for d in range(alg.dim):
            bd = alg.mult.get((b, d))
            cd = alg.mult.get((c, d))
            if (bd is None) != (cd is None):
                raise errors.CompositionNotAssociative(a, b, d)
            if bd is not None and alg.mult.get((a, bd)) != cd:
                raise errors.CompositionNotAssociative(a, b, d)
    return alg


def center_dimension(alg: ConvolutionAlgebra, tol: float = SV_TOLERANCE) -> int:
    """dim{z : za = az for all a}, from the nullity of the commutant system."""
    if alg.dim == 0:
        return 0
    rows = []
    for a in range(alg.dim):
        la = alg.product_matrix(a)
        ra = np.zeros((alg.dim, alg.dim), dtype=np.int64)
        for b in range(alg.dim):
            c = alg.mult.get((b, a))
            if c is not None:
                ra[c, b] = 1
        rows.append(la - ra)
    system = np.vstack(rows).astype(np.float64)
    sv = np.linalg.svd(system, compute_uv=False)
    rank = int((sv > tol).sum())
    return alg.dim - rank


def algebra_map_from_functor(F: GroupoidFunctor):
    """The basis relabeling of a bijective functor, checked to be an algebra
    isomorphism (structure constants and involution transported)."""
    src, tgt = F.source, F.target
    if sorted(F.arrow_map) != list(range(tgt.n_arrows)) or \
            sorted(F.unit_map) != list(range(tgt.n_units)):
        raise errors.NotBijective("functor must be bijective on units and arrows")
    for a in range(src.n_arrows):
        for b in range(src.n_arrows):
            c = src.compose(a, b)
            fc = tgt.compose(F(a), F(b))
            if (c is None) != (fc is None) or (c is not None and F(c) != fc):
                raise errors.NotAFunctor("structure constants not transported")
        if F(int(src.inv[a])) != int(tgt.inv[F(a)]):
            raise errors.NotAFunctor("involution not preserved")
    mat = np.zeros((tgt.n_arrows, src.n_arrows), dtype=np.int64)
    for a in range(src.n_arrows):
        mat[F(a), a] = 1
    return mat


def gelfand_check(S: InvSemigroup) -> bool:
    """The finite Gelfand picture for the idempotent semilattice.

    e -> indicator of D(e) must be multiplicative and of full rank |E|, and
    the regular representation of the semilattice must be simultaneously
    diagonal with diagonal entries matching those indicators under the
    principal-filter bijection.
    """
    E = S.idempotents
    space = enumerate_filters(S, contracted=False)
    k = len(E)
    if len(space) != k:
        return False
    ind = np.zeros((k, k), dtype=np.int64)
    dsets = {}
    for i, e in enumerate(E):
        dsets[e] = d_set(space, e)
        for f in dsets[e]:
            ind[i, f] = 1
    for i, e in enumerate(E):
        for j, f in enumerate(E):
            if set(dsets[e] & dsets[f]) != set(d_set(space, S.mul(e, f))):
                return False
            prod = ind[i] * ind[j]
            ef = S.mul(e, f)
            target = np.zeros(k, dtype=np.int64)
            for x in d_set(space, ef):
                target[x] = 1
            if not np.array_equal(prod, target):
                return False
    if np.linalg.matrix_rank(ind.astype(np.float64)) != k:
        return False
    # the semilattice regular representation, conjugated by the bijection
    # t -> t^, is diagonal with the indicator entries
    pos = {e: i for i, e in enumerate(E)}
    for e in E:
        mat = np.zeros((k, k), dtype=np.int64)
        for f in E:
            if S.mul(e, f) == f:
                mat[pos[f], pos[f]] = 1
        diag = np.zeros((k, k), dtype=np.int64)
        for j, f in enumerate(E):
            diag[j, j] = ind[pos[e], space.index_of(f)]
        if not np.array_equal(mat, diag):
            return False
    return True


def matrix_to_json(mat: np.ndarray, row_labels, col_labels) -> str:
    return json.dumps({
        "rows": list(row_labels),
        "cols": list(col_labels),
        "entries": np.asarray(mat).tolist(),
    }, sort_keys=True)
