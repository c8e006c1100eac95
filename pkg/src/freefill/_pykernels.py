"""Pure-Python reference kernels.

Letters are nonzero ints: ``i`` is the i-th generator and ``-i`` its inverse.
Every function here has a twin with the same signature in ``_ckernels``.
"""

from __future__ import annotations

from typing import Sequence

IMPLEMENTATION = "python"


def letter_key(letter: int) -> int:
    # x1 < X1 < x2 < X2 < ...
    return 2 * (abs(letter) - 1) + (letter < 0)


def key_letter(key: int) -> int:
    g = (key >> 1) + 1
    return -g if key & 1 else g


def free_reduce(seq: Sequence[int]) -> tuple:
    out: list[int] = []
    for a in seq:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def cyclic_peel(w: Sequence[int]) -> int:
    """Number of letters to strip from each end of reduced ``w`` to make it cyclically reduced."""
    i = 0
    j = len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return i


def least_rotation(w: Sequence[int]) -> int:
    """Booth's algorithm: start index of the least rotation under the letter order."""
    n = len(w)
    if n == 0:
        return 0
    s = [letter_key(a) for a in w]
    s = s + s
    f = [-1] * (2 * n)
    k = 0
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


def smallest_period(w: Sequence[int]) -> int:
    """Length of the shortest root z with w = z^e, via the KMP failure function."""
    n = len(w)
    if n == 0:
        return 0
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and w[i] != w[k]:
            k = fail[k - 1]
        if w[i] == w[k]:
            k += 1
        fail[i] = k
    p = n - fail[n - 1]
    return p if n % p == 0 else n


def cyclic_counts(w: Sequence[int], rank: int) -> tuple[list[int], list[int]]:
    """Letter counts and cyclic digram counts, indexed by letter key.

    Digram ``xy`` lives at ``key(x) * 2N + key(y)``; the wrap-around digram is included.
    """
    m = 2 * rank
    singles = [0] * m
    digrams = [0] * (m * m)
    n = len(w)
    if n == 0:
        return singles, digrams
    keys = [letter_key(a) for a in w]
    if max(keys) >= m:
        raise ValueError("letter outside rank")
    prev = keys[-1]
    for k in keys:
        singles[k] += 1
        digrams[prev * m + k] += 1
        prev = k
    return singles, digrams


def walk_draws(first: int, draws: Sequence[int], rank: int) -> tuple:
    """Turn uniform draws into a reduced word.

    ``first`` is a key in [0, 2N); each draw is in [0, 2N-1) and picks among
    the letters that do not cancel the previous one.
    """
    out = [key_letter(first)]
    prev = first
    for c in draws:
        inv = prev ^ 1
        k = c if c < inv else c + 1
        out.append(key_letter(k))
        prev = k
    return tuple(out)


def is_rotation(u: Sequence[int], v: Sequence[int]) -> bool:
    """True iff ``v`` is a cyclic rotation of ``u`` (KMP search of v in uu)."""
    n = len(u)
    if n != len(v):
        return False
    if n == 0:
        return True
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and v[i] != v[k]:
            k = fail[k - 1]
        if v[i] == v[k]:
            k += 1
        fail[i] = k
    k = 0
    for i in range(2 * n - 1):
        a = u[i % n]
        while k and a != v[k]:
            k = fail[k - 1]
        if a == v[k]:
            k += 1
            if k == n:
                return True
    return False
