"""Pure-Python hot kernels for monomial arithmetic.

A monomial ``s_alpha p_A s_beta^*`` is the tuple ``(alpha, A, beta)`` with
``alpha``/``beta`` tuples of edge indices and ``A`` a vertex bitmask.  Terms
are dicts monomial -> nonzero coefficient.  ``src[e]`` is the source vertex of
edge ``e``, ``rng[e]`` its range mask, ``out[v]`` the edges leaving ``v``.

The compiled twin ``_kernels.pyx`` implements the same functions.
"""


def mono_mul(a1, A, b1, a2, B, b2, src):
    """Product of two monomials, or None when it vanishes."""
    lb = len(b1)
    lg = len(a2)
    if lb == lg:
        if b1 != a2:
            return None
        C = A & B
        if not C:
            return None
        return (a1, C, b2)
    if lg > lb:
        if a2[:lb] != b1:
            return None
        w = a2[lb:]
        if not (A >> src[w[0]]) & 1:
            return None
        return (a1 + w, B, b2)
    if b1[:lg] != a2:
        return None
    w = b1[lg:]
    if not (B >> src[w[0]]) & 1:
        return None
    return (a1, A, b2 + w)


def mul_terms(t1, t2, src):
    out = {}
    for (a1, A, b1), c1 in t1.items():
        for (a2, B, b2), c2 in t2.items():
            m = mono_mul(a1, A, b1, a2, B, b2, src)
            if m is None:
                continue
            c = c1 * c2
            if m in out:
                out[m] = out[m] + c
            else:
                out[m] = c
    return {m: c for m, c in out.items() if c}


def split_singletons(terms):
    out = {}
    for (a, A, b), c in terms.items():
        i = 0
        while A:
            if A & 1:
                m = (a, 1 << i, b)
                if m in out:
                    out[m] = out[m] + c
                else:
                    out[m] = c
            A >>= 1
            i += 1
    return out


def _depth(a, b):
    la = len(a)
    lb = len(b)
    return la if la < lb else lb


def expand_to(terms, targets, rng, out):
    """Expand singleton-middled terms via the Cuntz-Krieger relation until each
    monomial of degree d has depth ``targets[d]`` or a sink middle."""
    result = {}
    stack = list(terms.items())
    while stack:
        (a, A, b), c = stack.pop()
        v = A.bit_length() - 1
        edges = out[v]
        if edges and _depth(a, b) < targets[len(a) - len(b)]:
            for e in edges:
                R = rng[e]
                i = 0
                while R:
                    if R & 1:
                        stack.append(((a + (e,), 1 << i, b + (e,)), c))
                    R >>= 1
                    i += 1
        else:
            m = (a, A, b)
            if m in result:
                result[m] = result[m] + c
            else:
                result[m] = c
    return {m: c for m, c in result.items() if c}


def max_depths(terms):
    depth = {}
    for a, _, b in terms:
        d = len(a) - len(b)
        k = _depth(a, b)
        if depth.get(d, -1) < k:
            depth[d] = k
    return depth


def contract(terms, src, rng, out):
    """Undo complete Cuntz-Krieger expansions, one depth level at a time, per degree."""
    by_degree = {}
    for m, c in terms.items():
        by_degree.setdefault(len(m[0]) - len(m[2]), {})[m] = c
    result = {}
    for d, cls in by_degree.items():
        while True:
            M = max(_depth(a, b) for a, _, b in cls)
            if M == 0:
                break
            groups = {}
            ok = True
            for (a, A, b), c in cls.items():
                if _depth(a, b) != M:
                    continue
                if a[-1] != b[-1]:
                    ok = False
                    break
                e = a[-1]
                key = (a[:-1], b[:-1], src[e])
                groups.setdefault(key, []).append(((a, A, b), c))
            if not ok:
                break
            for (a0, b0, v), members in groups.items():
                c0 = members[0][1]
                need = 0
                for e in out[v]:
                    R = rng[e]
                    while R:
                        R &= R - 1
                        need += 1
                if len(members) != need:
                    ok = False
                    break
                for (a, A, b), c in members:
                    if c != c0:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
            new = {m: c for m, c in cls.items() if _depth(m[0], m[2]) != M}
            for (a0, b0, v), members in groups.items():
                new[(a0, 1 << v, b0)] = members[0][1]
            cls = new
        result.update(cls)
    return result


def normalize_terms(terms, src, rng, out, reduce=True):
    """Canonical form: singleton middles, uniform depth per degree (sink middles
    terminal), then maximal contraction when ``reduce`` is set."""
    t = split_singletons(terms)
    t = {m: c for m, c in t.items() if c}
    if not t:
        return {}
    t = expand_to(t, max_depths(t), rng, out)
    if reduce and t:
        t = contract(t, src, rng, out)
    return t
