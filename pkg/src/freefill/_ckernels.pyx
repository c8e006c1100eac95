# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contracts as ``_pykernels``."""

from libc.stdlib cimport malloc, free

IMPLEMENTATION = "cython"


cdef inline int _key(long a) nogil:
    if a < 0:
        return 2 * (-a - 1) + 1
    return 2 * (a - 1)


cdef inline long _letter(int k) nogil:
    cdef long g = (k >> 1) + 1
    return -g if k & 1 else g


cdef long *_load(object seq, Py_ssize_t *n_out) except NULL:
    cdef tuple t = seq if type(seq) is tuple else tuple(seq)
    cdef Py_ssize_t n = len(t), i
    cdef long *buf = <long *> malloc((n + 1) * sizeof(long))
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        buf[i] = t[i]
    n_out[0] = n
    return buf


cdef tuple _dump(long *buf, Py_ssize_t n):
    cdef list out = [None] * n
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = buf[i]
    return tuple(out)


def letter_key(long letter):
    return _key(letter)


def key_letter(int key):
    return _letter(key)


def free_reduce(seq):
    cdef Py_ssize_t n, i, top = 0
    cdef long *buf = _load(seq, &n)
    try:
        for i in range(n):
            if top and buf[top - 1] == -buf[i]:
                top -= 1
            else:
                buf[top] = buf[i]
                top += 1
        return _dump(buf, top)
    finally:
        free(buf)


def cyclic_peel(w):
    cdef Py_ssize_t n
    cdef long *buf = _load(w, &n)
    cdef Py_ssize_t i = 0, j = n - 1
    while i < j and buf[i] == -buf[j]:
        i += 1
        j -= 1
    free(buf)
    return i


def least_rotation(w):
    cdef Py_ssize_t n
    cdef long *buf = _load(w, &n)
    if n == 0:
        free(buf)
        return 0
    cdef int *s = <int *> malloc(2 * n * sizeof(int))
    cdef Py_ssize_t *f = <Py_ssize_t *> malloc(2 * n * sizeof(Py_ssize_t))
    cdef Py_ssize_t j, i, k = 0
    cdef int sj
    try:
        if s == NULL or f == NULL:
            raise MemoryError()
        for j in range(n):
            s[j] = _key(buf[j])
            s[j + n] = s[j]
        for j in range(2 * n):
            f[j] = -1
        for j in range(1, 2 * n):
            sj = s[j]
            i = f[j - k - 1]
            while i != -1 and sj != s[k + i + 1]:
                if sj < s[k + i + 1]:
                    k = j - i - 1
                i = f[i]
            if sj != s[k + i + 1]:
                if sj < s[k]:
                    k = j
                f[j - k] = -1
            else:
                f[j - k] = i + 1
        return k
    finally:
        free(buf)
        free(s)
        free(f)


def smallest_period(w):
    cdef Py_ssize_t n
    cdef long *buf = _load(w, &n)
    if n == 0:
        free(buf)
        return 0
    cdef Py_ssize_t *fail = <Py_ssize_t *> malloc(n * sizeof(Py_ssize_t))
    cdef Py_ssize_t i, k = 0, p
    try:
        if fail == NULL:
            raise MemoryError()
        fail[0] = 0
        for i in range(1, n):
            while k and buf[i] != buf[k]:
                k = fail[k - 1]
            if buf[i] == buf[k]:
                k += 1
            fail[i] = k
        p = n - fail[n - 1]
        return p if n % p == 0 else n
    finally:
        free(buf)
        free(fail)


def cyclic_counts(w, int rank):
    cdef int m = 2 * rank
    cdef Py_ssize_t n, i
    cdef long *buf = _load(w, &n)
    cdef long *singles = <long *> malloc(m * sizeof(long))
    cdef long *digrams = <long *> malloc(m * m * sizeof(long))
    cdef int prev, k
    try:
        if singles == NULL or digrams == NULL:
            raise MemoryError()
        for i in range(m):
            singles[i] = 0
        for i in range(m * m):
            digrams[i] = 0
        if n:
            prev = _key(buf[n - 1])
            for i in range(n):
                k = _key(buf[i])
                if k >= m:
                    raise ValueError("letter outside rank")
                singles[k] += 1
                digrams[prev * m + k] += 1
                prev = k
        return [singles[i] for i in range(m)], [digrams[i] for i in range(m * m)]
    finally:
        free(buf)
        free(singles)
        free(digrams)


def walk_draws(int first, draws, int rank):
    cdef Py_ssize_t n
    cdef long *d = _load(draws, &n)
    cdef long *out = <long *> malloc((n + 1) * sizeof(long))
    cdef int prev = first, inv, k
    cdef Py_ssize_t i
    try:
        if out == NULL:
            raise MemoryError()
        out[0] = _letter(first)
        for i in range(n):
            inv = prev ^ 1
            k = <int> d[i]
            if k >= inv:
                k += 1
            out[i + 1] = _letter(k)
            prev = k
        return _dump(out, n + 1)
    finally:
        free(d)
        free(out)


def is_rotation(u, v):
    cdef Py_ssize_t n, nv, i, k = 0
    cdef long *a = _load(u, &n)
    cdef long *b = _load(v, &nv)
    cdef Py_ssize_t *fail = NULL
    cdef long c
    try:
        if n != nv:
            return False
        if n == 0:
            return True
        fail = <Py_ssize_t *> malloc(n * sizeof(Py_ssize_t))
        if fail == NULL:
            raise MemoryError()
        fail[0] = 0
        for i in range(1, n):
            while k and b[i] != b[k]:
                k = fail[k - 1]
            if b[i] == b[k]:
                k += 1
            fail[i] = k
        k = 0
        for i in range(2 * n - 1):
            c = a[i % n]
            while k and c != b[k]:
                k = fail[k - 1]
            if c == b[k]:
                k += 1
                if k == n:
                    return True
        return False
    finally:
        free(a)
        free(b)
        free(fail)
