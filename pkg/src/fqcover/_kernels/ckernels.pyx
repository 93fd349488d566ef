# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled residue-enumeration kernels; semantics match pykernels.py."""

from libc.stdlib cimport free, malloc

ctypedef unsigned long long u64


cdef inline u64 _padd(u64 a, u64 b, u64 q, const unsigned char[::1] tab) nogil:
    cdef u64 out = 0
    cdef u64 shift = 1
    if q == 2:
        return a ^ b
    while a or b:
        out += <u64> tab[(a % q) * q + (b % q)] * shift
        a //= q
        b //= q
        shift *= q
    return out


def mark_progression(unsigned char[::1] flags, unsigned long long q, int n_digits,
                     unsigned long long start, unsigned long long[:, ::1] mults,
                     const unsigned char[::1] add_tab):
    cdef Py_ssize_t m = mults.shape[0]
    cdef u64 cur, v, g, total
    cdef Py_ssize_t t, k
    cdef int* digits
    cdef u64* acc
    if m == 0:
        flags[start] = 1
        return
    if q == 2:
        cur = start
        flags[cur] = 1
        total = (<u64> 1) << m
        with nogil:
            for g in range(1, total):
                t = 0
                while not (g >> t) & 1:
                    t += 1
                cur ^= mults[t, 1]
                flags[cur] = 1
        return
    digits = <int*> malloc(m * sizeof(int))
    acc = <u64*> malloc((m + 1) * sizeof(u64))
    if digits == NULL or acc == NULL:
        free(digits)
        free(acc)
        raise MemoryError()
    try:
        with nogil:
            for t in range(m):
                digits[t] = 0
            for t in range(m + 1):
                acc[t] = start
            while True:
                flags[acc[0]] = 1
                t = 0
                while t < m and digits[t] == <int> (q - 1):
                    digits[t] = 0
                    t += 1
                if t == m:
                    break
                digits[t] += 1
                v = _padd(acc[t + 1], mults[t, digits[t]], q, add_tab)
                while t >= 0:
                    acc[t] = v
                    t -= 1
    finally:
        free(digits)
        free(acc)


def project_parents(long long[::1] out, unsigned long long q, int n_child,
                    unsigned long long[:, ::1] red,
                    const unsigned char[::1] add_tab):
    cdef u64 cur, v, g, total
    cdef Py_ssize_t t, k, idx
    cdef int* digits
    cdef u64* acc
    if n_child == 0:
        out[0] = 0
        return
    if q == 2:
        cur = 0
        out[0] = 0
        total = (<u64> 1) << n_child
        with nogil:
            for g in range(1, total):
                t = 0
                while not (g >> t) & 1:
                    t += 1
                cur ^= red[t, 1]
                for k in range(t):
                    cur ^= red[k, 1]
                out[g] = <long long> cur
        return
    digits = <int*> malloc(n_child * sizeof(int))
    acc = <u64*> malloc((n_child + 1) * sizeof(u64))
    if digits == NULL or acc == NULL:
        free(digits)
        free(acc)
        raise MemoryError()
    try:
        with nogil:
            for t in range(n_child):
                digits[t] = 0
            for t in range(n_child + 1):
                acc[t] = 0
            idx = 0
            while True:
                out[idx] = <long long> acc[0]
                idx += 1
                t = 0
                while t < n_child and digits[t] == <int> (q - 1):
                    digits[t] = 0
                    t += 1
                if t == n_child:
                    break
                digits[t] += 1
                v = _padd(acc[t + 1], red[t, digits[t]], q, add_tab)
                while t >= 0:
                    acc[t] = v
                    t -= 1
    finally:
        free(digits)
        free(acc)
