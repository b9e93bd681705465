# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; semantics identical to ``_kernels_py``."""

from libc.stdint cimport int64_t, uint64_t

DEF FRAC_BITS = 40
DEF MAX_LEVEL = 40

cdef int64_t ONE = (<int64_t>1) << FRAC_BITS
cdef int64_t FRAC_MASK = ONE - 1
cdef uint64_t TAG_EDGE = 0x5EED0000E06E0001ULL
cdef uint64_t TAG_ARC = 0x5EED0000A4C00002ULL
cdef uint64_t TAG_PART = 0x5EED00009A470003ULL


cdef inline uint64_t _mix64(uint64_t x) nogil:
    x = x + 0x9E3779B97F4A7C15ULL
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL
    return x ^ (x >> 31)


cdef inline uint64_t _hash3(uint64_t seed, int64_t a, int64_t b) nogil:
    return _mix64(seed ^ _mix64((<uint64_t>a) ^ _mix64(<uint64_t>b)))


cdef inline int _bitlen(uint64_t x) nogil:
    cdef int n = 0
    while x:
        x >>= 1
        n += 1
    return n


cdef inline int64_t _bitrev(int64_t r, int width) nogil:
    cdef int64_t out = 0
    cdef int k
    for k in range(width):
        out = (out << 1) | (r & 1)
        r >>= 1
    return out


cdef inline int64_t _psi_key(int64_t odd, int level) nogil:
    cdef int64_t half, wnum, key
    cdef int n, neg
    if level == 1:
        return 0
    half = (<int64_t>1) << (level - 1)
    neg = odd < half
    if neg:
        odd = ((<int64_t>1) << level) - odd
    wnum = ((<int64_t>1) << level) - odd
    if wnum == 1:
        n = level
    else:
        n = level - _bitlen(<uint64_t>wnum)
    key = (n + 1) * ONE - (wnum << (n + 1 - level + FRAC_BITS))
    return -key if neg else key


cdef inline int64_t _key_of(int64_t i) nogil:
    cdef int64_t s = i & 1
    cdef int64_t j = (i >> 1) + 1
    cdef int level = _bitlen(<uint64_t>j)
    cdef int64_t r = j - ((<int64_t>1) << (level - 1))
    cdef int64_t odd = 2 * _bitrev(r, level - 1) + 1
    cdef int64_t x = _psi_key(odd, level)
    cdef int64_t y = 2 * (x >> FRAC_BITS) * ONE + (x & FRAC_MASK)
    return y + s * ONE


cdef inline int _s2_part(uint64_t seed, int64_t key) nogil:
    return <int>(((key >> FRAC_BITS) + <int64_t>(_hash3(seed ^ TAG_PART, key & FRAC_MASK, 0) & 1)) & 1)


cdef inline int _rel_bit(int fam, uint64_t seed, int64_t x, int64_t c) nogil:
    cdef int64_t lo, hi, f1, f2
    cdef int up
    if fam == 2:
        if x < c:
            lo = x
            hi = c
        else:
            lo = c
            hi = x
        f1 = lo & FRAC_MASK
        f2 = (-hi) & FRAC_MASK
        if f2 < f1:
            f1 = f2
        return <int>(_hash3(seed ^ TAG_EDGE, f1, hi - lo) & 1)
    if fam == 3:
        if x < c:
            lo = x
            hi = c
        else:
            lo = c
            hi = x
        up = <int>(_hash3(seed ^ TAG_ARC, lo & FRAC_MASK, hi - lo) & 1)
        return 1 if (x == lo) == (up == 1) else 0
    if fam == 4:
        return 1 if (x > c) == (_s2_part(seed, x) == _s2_part(seed, c)) else 0
    return 0


def key_of(int64_t i):
    if i < 0 or ((i >> 1) + 1) >= ((<int64_t>1) << MAX_LEVEL):
        raise OverflowError("vertex index beyond carrier precision")
    return _key_of(i)


def s2_part(seed, int64_t key):
    return _s2_part(<uint64_t>(seed & 0xFFFFFFFFFFFFFFFF), key)


def rel_bit(int fam, seed, int64_t x, int64_t c):
    return _rel_bit(fam, <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF), x, c)


def scan(int fam, seed, int64_t start, int64_t stop, ckeys, masks, wants, int part_want):
    cdef uint64_t useed = <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF)
    cdef int nc = len(ckeys)
    cdef int64_t[64] ck
    cdef int[64] mk
    cdef int[64] wt
    cdef int64_t i, x, c
    cdef int t, code
    cdef int64_t found = -1
    if nc > 64:
        raise ValueError("at most 64 constraints per scan")
    if stop > ((<int64_t>1) << (MAX_LEVEL + 1)) - 2:
        stop = ((<int64_t>1) << (MAX_LEVEL + 1)) - 2
    for t in range(nc):
        ck[t] = ckeys[t]
        mk[t] = masks[t]
        wt[t] = wants[t]
    with nogil:
        i = start
        while i < stop:
            x = _key_of(i)
            if part_want >= 0 and _s2_part(useed, x) != part_want:
                i += 1
                continue
            t = 0
            while t < nc:
                c = ck[t]
                if x == c:
                    break
                code = (1 if x < c else 0) | (_rel_bit(fam, useed, x, c) << 1)
                if (code & mk[t]) != wt[t]:
                    break
                t += 1
            if t == nc:
                found = i
                break
            i += 1
    return found


def embeddings(int na, acodes, aunary, int nb, bcodes, bunary, limit, bijective):
    # backtracking is cheap relative to the Python-level bookkeeping; keep it
    # in C-typed locals but produce Python tuples
    cdef list out = []
    cdef int k, w, p, v
    cdef bint ok
    cdef long lim = limit
    if bijective and na != nb:
        return out
    if na == 0:
        return [()]
    cdef list A = list(acodes)
    cdef list B = list(bcodes)
    cdef list AU = list(aunary)
    cdef list BU = list(bunary)
    cdef list aprof = None
    cdef list bprof = None
    if bijective:
        aprof = [sorted(A[i * na:(i + 1) * na] + A[i::na]) for i in range(na)]
        bprof = [sorted(B[i * nb:(i + 1) * nb] + B[i::nb]) for i in range(nb)]
    cdef list img = [0] * na
    cdef list nxt = [0] * na
    cdef list used = [False] * nb
    k = 0
    nxt[0] = 0
    while k >= 0:
        w = nxt[k]
        placed = False
        while w < nb:
            if not used[w] and AU[k] == BU[w] and (not bijective or aprof[k] == bprof[w]):
                ok = True
                for p in range(k):
                    v = img[p]
                    if A[k * na + p] != B[w * nb + v] or A[p * na + k] != B[v * nb + w]:
                        ok = False
                        break
                if ok:
                    placed = True
                    break
            w += 1
        if not placed:
            k -= 1
            if k >= 0:
                used[img[k]] = False
                nxt[k] = img[k] + 1
            continue
        img[k] = w
        used[w] = True
        if k == na - 1:
            out.append(tuple(img))
            if lim >= 0 and len(out) >= lim:
                return out
            used[w] = False
            nxt[k] = w + 1
        else:
            nxt[k] = w + 1
            k += 1
            nxt[k] = 0
    return out
