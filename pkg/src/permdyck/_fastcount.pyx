# cython: language_level=3
# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled occurrence-counting kernels (hot loop of the exhaustive census).

Same contract as ``permdyck._purecount``; see that module for the counting
identity.  Permutations of the suffix are enumerated in place with the
lexicographic successor algorithm, so the whole sweep runs without Python
objects.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc
from libc.string cimport memset

cdef enum:
    MAXN = 20


cdef inline void _count_pair_c(const int* p, int n, long long* out312, long long* out321) noexcept nogil:
    cdef int k, i, vk, bigger, acc
    cdef long long c312 = 0, c321 = 0
    for k in range(1, n):
        vk = p[k]
        bigger = 0
        acc = 0
        for i in range(k):
            if p[i] > vk:
                bigger += 1
            elif p[i] < vk:
                acc += bigger
        c312 += acc
        c321 += <long long>bigger * (vk - 1 - (k - bigger))
    out312[0] = c312
    out321[0] = c321


cdef inline bint _next_permutation(int* a, int lo, int hi) noexcept nogil:
    """Advance a[lo:hi] to its lexicographic successor; False when done."""
    cdef int i = hi - 2, j, tmp, left, right
    while i >= lo and a[i] >= a[i + 1]:
        i -= 1
    if i < lo:
        return False
    j = hi - 1
    while a[j] <= a[i]:
        j -= 1
    tmp = a[i]; a[i] = a[j]; a[j] = tmp
    left = i + 1; right = hi - 1
    while left < right:
        tmp = a[left]; a[left] = a[right]; a[right] = tmp
        left += 1; right -= 1
    return True


def count_pair(values):
    """(number of (3,1,2)-occurrences, number of (3,2,1)-occurrences)."""
    cdef int p[MAXN]
    cdef int n = len(values)
    if n > MAXN:
        raise ValueError(f"kernel supports n <= {MAXN}")
    cdef int i
    for i in range(n):
        p[i] = values[i]
    cdef long long c312 = 0, c321 = 0
    _count_pair_c(p, n, &c312, &c321)
    return c312, c321


def histogram_pair(int n, tuple prefix=()):
    """Occurrence-count histograms over permutations of 1..n extending
    ``prefix``: (histogram for (3,1,2), histogram for (3,2,1))."""
    if n < 0 or n > MAXN:
        raise ValueError(f"kernel supports 0 <= n <= {MAXN}")
    cdef int q = len(prefix)
    cdef int p[MAXN]
    cdef bint used[MAXN + 1]
    memset(used, 0, sizeof(used))
    cdef int i, v
    for i in range(q):
        v = prefix[i]
        if v < 1 or v > n or used[v]:
            raise ValueError(f"bad prefix {prefix!r} for n={n}")
        used[v] = True
        p[i] = v
    cdef int j = q
    for v in range(1, n + 1):
        if not used[v]:
            p[j] = v
            j += 1

    cdef int size = n * (n - 1) * (n - 2) // 6 + 1 if n >= 3 else 1
    cdef long long* h312 = <long long*> PyMem_Malloc(size * sizeof(long long))
    cdef long long* h321 = <long long*> PyMem_Malloc(size * sizeof(long long))
    if h312 == NULL or h321 == NULL:
        PyMem_Free(h312); PyMem_Free(h321)
        raise MemoryError()
    memset(h312, 0, size * sizeof(long long))
    memset(h321, 0, size * sizeof(long long))

    cdef long long c312 = 0, c321 = 0
    try:
        with nogil:
            while True:
                _count_pair_c(p, n, &c312, &c321)
                h312[c312] += 1
                h321[c321] += 1
                if not _next_permutation(p, q, n):
                    break
        return [h312[i] for i in range(size)], [h321[i] for i in range(size)]
    finally:
        PyMem_Free(h312)
        PyMem_Free(h321)
