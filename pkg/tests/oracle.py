"""
Independent reference computations for the tests.

Everything here works element by element from the raw structure tables
(mult grid, coproduct term lists, counit, antipode and star columns) with
plain dicts keyed by index tuples, never through the library's matrix forms.
"""

from hopfstar.scalar import ONE, ZERO


def _acc(out, v, c=ONE):
    for k, x in v.items():
        out[k] = out.get(k, ZERO) + c * x
    return out


def clean(v):
    return {k: x for k, x in v.items() if not x.is_zero()}


def elem(i):
    return {(i,): ONE}


def unit_elem(H):
    return clean({(k,): c for k, c in enumerate(H.unit)})


def mul(H, a, b):
    """Product in H (x) ... (x) H of dicts keyed by equal-length index tuples."""
    out = {}
    for ka, x in a.items():
        for kb, y in b.items():
            partial = {(): x * y}
            for p, q in zip(ka, kb):
                nxt = {}
                for key, c in partial.items():
                    for k, z in enumerate(H.mult[p][q]):
                        if not z.is_zero():
                            nxt[key + (k,)] = nxt.get(key + (k,), ZERO) + c * z
                partial = nxt
            _acc(out, partial)
    return clean(out)


def delta(H, i):
    out = {}
    for c, j, k in H.coprod[i]:
        out[(j, k)] = out.get((j, k), ZERO) + c
    return clean(out)


def delta_of(H, v):
    out = {}
    for (i,), c in v.items():
        _acc(out, delta(H, i), c)
    return clean(out)


def antipode_of(H, v):
    out = {}
    for (i,), c in v.items():
        for k in range(H.dim):
            s = H.antipode[k, i]
            if not s.is_zero():
                out[(k,)] = out.get((k,), ZERO) + c * s
    return clean(out)


def star(H, t):
    """Antilinear star applied on every leg of a dict element."""
    out = {}
    for key, c in t.items():
        part = {(): c.conj()}
        for i in key:
            nxt = {}
            for pk, pc in part.items():
                for k in range(H.dim):
                    p = H.star[k, i]
                    if not p.is_zero():
                        nxt[pk + (k,)] = nxt.get(pk + (k,), ZERO) + pc * p
            part = nxt
        _acc(out, part)
    return clean(out)


def counit_of(H, v):
    s = ZERO
    for (i,), c in v.items():
        s = s + c * H.counit[i]
    return s


def hopf_failures(H):
    """Set of failing axiom names, each evaluated directly on basis elements."""
    d = H.dim
    E = [elem(i) for i in range(d)]
    one = unit_elem(H)
    fails = set()
    for a in E:
        for b in E:
            ab = mul(H, a, b)
            for c in E:
                if mul(H, ab, c) != mul(H, a, mul(H, b, c)):
                    fails.add("assoc")
    for a in E:
        if mul(H, one, a) != a or mul(H, a, one) != a:
            fails.add("unit")
    for i in range(d):
        D = delta(H, i)
        left, right = {}, {}
        for (j, k), c in D.items():
            _acc(left, {(p, q, k): e for (p, q), e in delta(H, j).items()}, c)
            _acc(right, {(j, p, q): e for (p, q), e in delta(H, k).items()}, c)
        if clean(left) != clean(right):
            fails.add("coassoc")
        c1, c2 = {}, {}
        for (j, k), c in D.items():
            _acc(c1, {(k,): c * H.counit[j]})
            _acc(c2, {(j,): c * H.counit[k]})
        if clean(c1) != E[i] or clean(c2) != E[i]:
            fails.add("counit")
    for a in E:
        for b in E:
            ab = mul(H, a, b)
            if delta_of(H, ab) != mul(H, delta_of(H, a), delta_of(H, b)):
                fails.add("bialgebra")
            if counit_of(H, ab) != counit_of(H, a) * counit_of(H, b):
                fails.add("bialgebra")
    oneone = clean({(k, l): x * y for (k,), x in one.items() for (l,), y in one.items()})
    if delta_of(H, one) != oneone or counit_of(H, one) != ONE:
        fails.add("bialgebra")
    for i in range(d):
        target = clean({k: c * H.counit[i] for k, c in one.items()})
        left, right = {}, {}
        for (j, k), c in delta(H, i).items():
            _acc(left, mul(H, antipode_of(H, E[j]), E[k]), c)
            _acc(right, mul(H, E[j], antipode_of(H, E[k])), c)
        if clean(left) != target or clean(right) != target:
            fails.add("antipode")
    for i in range(d):
        a = E[i]
        if star(H, star(H, a)) != a:
            fails.add("star-involution")
        for b in E:
            if star(H, mul(H, a, b)) != mul(H, star(H, b), star(H, a)):
                fails.add("star-antimult")
        if delta_of(H, star(H, a)) != star(H, delta(H, i)):
            fails.add("star-coprod")
        if counit_of(H, star(H, a)) != H.counit[i].conj():
            fails.add("counit-star")
        x = star(H, antipode_of(H, star(H, antipode_of(H, a))))
        if x != a:
            fails.add("star-antipode-involution")
    return fails


def module_action(V, v):
    """Matrix of the action of an algebra element {(i,): c} on V."""
    from hopfstar.linalg import Matrix

    out = Matrix.zeros(V.dim, V.dim)
    for (i,), c in v.items():
        out = out + V.action[i].scale(c)
    return out


def conjugate_action(V, i):
    """conj(rho(S(e_i)*)) evaluated from the defining equation."""
    H = V.algebra
    a = star(H, antipode_of(H, elem(i)))
    return module_action(V, a).conj()


def tensor_action(V, W, i):
    """sum over Delta(e_i) of rho_V (x) rho_W, entry by entry."""
    from hopfstar.linalg import Matrix

    n, m = V.dim, W.dim
    rows = [[ZERO] * (n * m) for _ in range(n * m)]
    for (j, k), c in delta(V.algebra, i).items():
        A, B = V.action[j], W.action[k]
        for p in range(n):
            for q in range(m):
                for r in range(n):
                    for s in range(m):
                        rows[p * m + q][r * m + s] = rows[p * m + q][r * m + s] + c * A[p, r] * B[q, s]
    return Matrix(rows)
