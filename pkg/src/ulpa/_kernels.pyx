# cython: language_level=3, boundscheck=False
"""Compiled hot kernels for monomial arithmetic.

Same contracts as ``_kernels_py``; see that module for the data layout.
"""


cpdef object mono_mul(tuple a1, object A, tuple b1, tuple a2, object B, tuple b2, tuple src):
    cdef Py_ssize_t lb = len(b1)
    cdef Py_ssize_t lg = len(a2)
    cdef tuple w
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


cpdef dict mul_terms(dict t1, dict t2, tuple src):
    cdef dict out = {}
    cdef list items1 = list(t1.items())
    cdef list items2 = list(t2.items())
    cdef object k1, k2
    cdef object m, c
    for k1, c1 in items1:
        for k2, c2 in items2:
            m = mono_mul(<tuple>k1[0], k1[1], <tuple>k1[2], <tuple>k2[0], k2[1], <tuple>k2[2], src)
            if m is None:
                continue
            c = c1 * c2
            if m in out:
                out[m] = out[m] + c
            else:
                out[m] = c
    return {m: c for m, c in out.items() if c}


cpdef dict split_singletons(dict terms):
    cdef dict out = {}
    cdef int i
    cdef object key
    for key, c in terms.items():
        a, A, b = key
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


cdef inline Py_ssize_t _depth(tuple a, tuple b):
    cdef Py_ssize_t la = len(a)
    cdef Py_ssize_t lb = len(b)
    return la if la < lb else lb


cpdef dict expand_to(dict terms, dict targets, tuple rng, tuple out):
    cdef dict result = {}
    cdef list stack = list(terms.items())
    cdef object key
    cdef tuple a, b, edges
    cdef Py_ssize_t v, i
    while stack:
        key, c = stack.pop()
        a = <tuple>key[0]
        A = key[1]
        b = <tuple>key[2]
        v = A.bit_length() - 1
        edges = <tuple>out[v]
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
            if key in result:
                result[key] = result[key] + c
            else:
                result[key] = c
    return {m: c for m, c in result.items() if c}


cpdef dict max_depths(dict terms):
    cdef dict depth = {}
    cdef object key
    cdef Py_ssize_t d, k
    for key in terms:
        d = len(<tuple>key[0]) - len(<tuple>key[2])
        k = _depth(<tuple>key[0], <tuple>key[2])
        if depth.get(d, -1) < k:
            depth[d] = k
    return depth


cpdef dict contract(dict terms, tuple src, tuple rng, tuple out):
    cdef dict by_degree = {}
    cdef dict result = {}
    cdef dict cls, groups, new
    cdef Py_ssize_t M, need
    cdef bint ok
    cdef object key
    cdef tuple a, b
    for key, c in terms.items():
        by_degree.setdefault(len(<tuple>key[0]) - len(<tuple>key[2]), {})[key] = c
    for d, cls in by_degree.items():
        while True:
            M = max([_depth(<tuple>k[0], <tuple>k[2]) for k in cls])
            if M == 0:
                break
            groups = {}
            ok = True
            for key, c in cls.items():
                a = <tuple>key[0]
                b = <tuple>key[2]
                if _depth(a, b) != M:
                    continue
                if a[-1] != b[-1]:
                    ok = False
                    break
                groups.setdefault((a[:-1], b[:-1], src[a[-1]]), []).append((key, c))
            if not ok:
                break
            for gkey, members in groups.items():
                c0 = members[0][1]
                need = 0
                for e in out[gkey[2]]:
                    R = rng[e]
                    while R:
                        R &= R - 1
                        need += 1
                if len(members) != need:
                    ok = False
                    break
                for _, c in members:
                    if c != c0:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
            new = {k: c for k, c in cls.items() if _depth(<tuple>k[0], <tuple>k[2]) != M}
            for gkey, members in groups.items():
                new[(gkey[0], 1 << gkey[2], gkey[1])] = members[0][1]
            cls = new
        result.update(cls)
    return result


cpdef dict normalize_terms(dict terms, tuple src, tuple rng, tuple out, bint reduce=True):
    cdef dict t = split_singletons(terms)
    t = {m: c for m, c in t.items() if c}
    if not t:
        return {}
    t = expand_to(t, max_depths(t), rng, out)
    if reduce and t:
        t = contract(t, src, rng, out)
    return t
