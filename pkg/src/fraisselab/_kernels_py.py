"""Pure-Python kernels.

Mirrors ``_kernels.pyx`` function for function; the compiled module is
preferred at import time by :mod:`fraisselab.kernels`.

Carrier
-------
Every limit lives on the dyadic rationals.  A coordinate is stored as an
exact scaled integer ``key = q * 2**FRAC_BITS``.  Vertex ``i`` is mapped to a
key by a fixed bijection built so that

* ``key(2m + 1) == key(2m) + ONE`` (consecutive vertices differ by 1),
* the first ``N`` vertices are spread over the line with positive density in
  every interval, so order-slot searches terminate quickly.
"""

MASK = (1 << 64) - 1
FRAC_BITS = 40
ONE = 1 << FRAC_BITS
FRAC_MASK = ONE - 1
MAX_LEVEL = 40

FAM_PURE = 0
FAM_RATIONALS = 1
FAM_GRAPH = 2
FAM_TOURNAMENT = 3
FAM_S2 = 4

TAG_EDGE = 0x5EED0000E06E0001
TAG_ARC = 0x5EED0000A4C00002
TAG_PART = 0x5EED00009A470003


def mix64(x):
    x = (x + 0x9E3779B97F4A7C15) & MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK
    return x ^ (x >> 31)


def hash3(seed, a, b):
    return mix64((seed & MASK) ^ mix64((a & MASK) ^ mix64(b & MASK)))


def _bitrev(r, width):
    out = 0
    for _ in range(width):
        out = (out << 1) | (r & 1)
        r >>= 1
    return out


def _psi_key(odd, level):
    # order isomorphism of dyadics in (0,1) onto all dyadics, scaled by ONE
    if level == 1:
        return 0
    half = 1 << (level - 1)
    neg = odd < half
    if neg:
        odd = (1 << level) - odd
    wnum = (1 << level) - odd
    n = level if wnum == 1 else level - wnum.bit_length()
    key = (n + 1) * ONE - (wnum << (n + 1 - level + FRAC_BITS))
    return -key if neg else key


def _psi_inv(key):
    if key == 0:
        return 1, 1
    neg = key < 0
    if neg:
        key = -key
    n = (key >> FRAC_BITS) + 1
    wn = (n + 1) * ONE - key
    tz = (wn & -wn).bit_length() - 1
    wnum = wn >> tz
    level = FRAC_BITS + n + 1 - tz
    odd = (1 << level) - wnum
    if neg:
        odd = (1 << level) - odd
    return odd, level


def key_of(i):
    """Scaled dyadic coordinate of vertex ``i``."""
    s = i & 1
    j = (i >> 1) + 1
    level = j.bit_length()
    if level > MAX_LEVEL:
        raise OverflowError("vertex index beyond carrier precision")
    r = j - (1 << (level - 1))
    odd = 2 * _bitrev(r, level - 1) + 1
    x = _psi_key(odd, level)
    y = 2 * (x >> FRAC_BITS) * ONE + (x & FRAC_MASK)
    return y + s * ONE


def index_of(key):
    """Inverse of :func:`key_of`."""
    s = (key >> FRAC_BITS) & 1
    y = key - s * ONE
    x = ((y >> FRAC_BITS) >> 1) * ONE + (y & FRAC_MASK)
    odd, level = _psi_inv(x)
    if level > MAX_LEVEL:
        raise OverflowError("coordinate beyond carrier precision")
    r = _bitrev((odd - 1) >> 1, level - 1)
    j = (1 << (level - 1)) + r
    return 2 * (j - 1) + s


def s2_part(seed, key):
    return ((key >> FRAC_BITS) + (hash3(seed ^ TAG_PART, key & FRAC_MASK, 0) & 1)) & 1


def rel_bit(fam, seed, x, c):
    """Family relation bit between keys ``x`` and ``c``: edge, or arc x->c."""
    if fam == FAM_GRAPH:
        if x < c:
            lo, hi = x, c
        else:
            lo, hi = c, x
        d = hi - lo
        f = min(lo & FRAC_MASK, (-hi) & FRAC_MASK)
        return hash3(seed ^ TAG_EDGE, f, d) & 1
    if fam == FAM_TOURNAMENT:
        if x < c:
            lo, hi = x, c
        else:
            lo, hi = c, x
        up = hash3(seed ^ TAG_ARC, lo & FRAC_MASK, hi - lo) & 1
        return 1 if (x == lo) == (up == 1) else 0
    if fam == FAM_S2:
        same = s2_part(seed, x) == s2_part(seed, c)
        return 1 if (x > c) == same else 0
    return 0


def pair_code(fam, seed, x, c):
    return (1 if x < c else 0) | (rel_bit(fam, seed, x, c) << 1)


def scan(fam, seed, start, stop, ckeys, masks, wants, part_want):
    """First vertex index in ``[start, stop)`` meeting every constraint.

    Constraint ``t`` holds for candidate key ``x`` when
    ``pair_code(x, ckeys[t]) & masks[t] == wants[t]``.  ``part_want`` of -1
    disables the S(2) part filter.  Returns -1 when nothing qualifies.
    """
    nc = len(ckeys)
    for i in range(start, stop):
        x = key_of(i)
        if part_want >= 0 and s2_part(seed, x) != part_want:
            continue
        t = 0
        while t < nc:
            c = ckeys[t]
            if x == c:
                break
            code = (1 if x < c else 0) | (rel_bit(fam, seed, x, c) << 1)
            if code & masks[t] != wants[t]:
                break
            t += 1
        if t == nc:
            return i
    return -1


def embeddings(na, acodes, aunary, nb, bcodes, bunary, limit, bijective):
    """All injective maps A -> B preserving and reflecting pair codes.

    ``acodes``/``bcodes`` are flat ``n*n`` lists of ordered-pair codes,
    ``aunary``/``bunary`` per-vertex unary codes.  Output is in lexicographic
    order of the image tuple, truncated at ``limit`` (negative: unlimited).
    """
    out = []
    if bijective and na != nb:
        return out
    if na == 0:
        return [()]
    if bijective:
        aprof = [sorted(acodes[i * na:(i + 1) * na] + acodes[i::na]) for i in range(na)]
        bprof = [sorted(bcodes[i * nb:(i + 1) * nb] + bcodes[i::nb]) for i in range(nb)]
    img = [0] * na
    used = [False] * nb

    def ok(k, w):
        if aunary[k] != bunary[w]:
            return False
        if bijective and aprof[k] != bprof[w]:
            return False
        for p in range(k):
            v = img[p]
            if acodes[k * na + p] != bcodes[w * nb + v]:
                return False
            if acodes[p * na + k] != bcodes[v * nb + w]:
                return False
        return True

    def rec(k):
        if k == na:
            out.append(tuple(img))
            return limit >= 0 and len(out) >= limit
        for w in range(nb):
            if not used[w] and ok(k, w):
                used[w] = True
                img[k] = w
                if rec(k + 1):
                    return True
                used[w] = False
        return False

    rec(0)
    return out
