"""Independent brute-force oracles used to freeze expected values.

Everything here chases definitions with plain python loops and stays
deliberately independent of the library's computation paths.
"""

from itertools import product


def is_inverse_semigroup_table(table, zero=None):
    """Definition check: associative, unique inverses, commuting idempotents,
    absorbing zero when declared.  Returns (ok, reason)."""
    n = len(table)
    for i in range(n):
        if len(table[i]) != n or any(not 0 <= x < n for x in table[i]):
            return False, "shape"
    for i, j, k in product(range(n), repeat=3):
        if table[table[i][j]][k] != table[i][table[j][k]]:
            return False, "associativity"
    for s in range(n):
        cands = [t for t in range(n)
                 if table[table[s][t]][s] == s and table[table[t][s]][t] == t]
        if len(cands) != 1:
            return False, "inverses"
    idem = [e for e in range(n) if table[e][e] == e]
    for e in idem:
        for f in idem:
            if table[e][f] != table[f][e]:
                return False, "idempotents"
    if zero is not None:
        for s in range(n):
            if table[zero][s] != zero or table[s][zero] != zero:
                return False, "zero"
    return True, ""


def inverse_of(table, s):
    n = len(table)
    return next(t for t in range(n)
                if table[table[s][t]][s] == s and table[table[t][s]][t] == t)


def leq(table, s, t):
    """s <= t iff s = te for some idempotent e."""
    n = len(table)
    idem = [e for e in range(n) if table[e][e] == e]
    return any(table[t][e] == s for e in idem)


def max_lower_bound(table, s, t):
    """The greatest common lower bound, or None (brute force over elements)."""
    n = len(table)
    lower = [u for u in range(n) if leq(table, u, s) and leq(table, u, t)]
    for u in lower:
        if all(leq(table, v, u) for v in lower):
            return u
    return None


def sigma_classes(table):
    """Classes of s ~ t iff se = te for some idempotent e."""
    n = len(table)
    idem = [e for e in range(n) if table[e][e] == e]
    classes = []
    for s in range(n):
        cls = frozenset(t for t in range(n)
                        if any(table[s][e] == table[t][e] for e in idem))
        if cls not in classes:
            classes.append(cls)
    return classes


def e_unitary_by_cancellation(S):
    """Second formulation: s*s = t*t and sigma(s) = sigma(t) imply s = t."""
    from germoid.semigroups import max_group_image

    sigma = max_group_image(S)
    for s in range(len(S)):
        for t in range(len(S)):
            if S.mul(S.inv(s), s) == S.mul(S.inv(t), t) and \
                    sigma(s) == sigma(t) and s != t:
                return False
    return True


def all_filters(elements, meet):
    """Every non-empty, up-closed, meet-closed subset, as frozensets."""
    elements = list(elements)
    out = []
    for bits in range(1, 1 << len(elements)):
        F = frozenset(e for i, e in enumerate(elements) if bits >> i & 1)
        up = all(g in F
                 for f in F for g in elements if meet(f, g) == f)
        closed = all(meet(f, g) in F for f in F for g in F)
        if up and closed:
            out.append(F)
    return out


def upclosure(elements, meet, subset):
    return frozenset(e for e in elements
                     if any(meet(b, e) == b for b in subset))


def germ_classes_at_point(S, action, x):
    """Partition of {s : x in dom theta_{s*s}} by the germ relation at x."""
    n = len(S)
    cands = [s for s in range(n)
             if action(S.mul(S.inv(s), s), x) is not None]

    def related(s, t):
        for u in range(n):
            if leq_semigroup(S, u, s) and leq_semigroup(S, u, t) and \
                    action(S.mul(S.inv(u), u), x) is not None:
                return True
        return False

    classes = []
    for s in cands:
        for cls in classes:
            if related(s, cls[0]):
                cls.append(s)
                break
        else:
            classes.append([s])
    return [frozenset(c) for c in classes]


def leq_semigroup(S, s, t):
    return any(S.mul(t, e) == s for e in S.idempotents)


def find_table_isomorphism(table_a, table_b, zero_a=None, zero_b=None):
    """Brute-force bijection search between multiplication tables."""
    from itertools import permutations as perms

    n = len(table_a)
    if len(table_b) != n:
        return None
    for p in perms(range(n)):
        if zero_a is not None and p[zero_a] != zero_b:
            continue
        if all(p[table_a[i][j]] == table_b[p[i]][p[j]]
               for i in range(n) for j in range(n)):
            return p
    return None


def semicharacter_beta(S, phi_upset, s):
    """Pointwise beta: (s phi)(e) = phi(s* e s), on semicharacters as upsets.

    ``phi_upset`` is the set of idempotents where phi is 1.  Returns the
    transported upset, or None when phi(s*s) = 0 (outside the domain).
    """
    ss = S.mul(S.inv(s), s)
    if ss not in phi_upset:
        return None
    return frozenset(e for e in S.idempotents
                     if S.mul_all(S.inv(s), e, s) in phi_upset)
