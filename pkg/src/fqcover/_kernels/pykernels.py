"""Pure-Python residue-enumeration kernels.

Residues mod a degree-n monic polynomial are packed as base-q integers:
digit i is the coefficient code of x^i. Digitwise field addition of packed
indices goes through a flat q*q code-addition table; over F_2 it collapses
to a single XOR of the packed values.

These loops are the reference semantics for the compiled twin in
ckernels.pyx and the fallback used when the extension is not built.
"""

from __future__ import annotations


def _padd(a: int, b: int, q: int, tab: bytes) -> int:
    # digitwise table addition; digits past both values are 0 + 0
    out = 0
    shift = 1
    while a or b:
        out += tab[(a % q) * q + (b % q)] * shift
        a //= q
        b //= q
        shift *= q
    return out


def mark_progression(flags, q: int, n_digits: int, start: int, mults, add_tab) -> None:
    """Set flags[i] = 1 for every index in the affine span start + <rows of mults>.

    mults has one row per free digit; row i holds the packed index of each
    scalar multiple c * step_i for c = 0..q-1 (column 0 must be 0).
    """
    m = len(mults)
    if m == 0:
        flags[int(start)] = 1
        return
    if q == 2:
        steps = [int(row[1]) for row in mults]
        cur = int(start)
        flags[cur] = 1
        for g in range(1, 1 << m):
            cur ^= steps[(g & -g).bit_length() - 1]
            flags[cur] = 1
        return
    tab = bytes(bytearray(add_tab))
    rows = [[int(v) for v in row] for row in mults]
    digits = [0] * m
    acc = [int(start)] * (m + 1)
    while True:
        flags[acc[0]] = 1
        t = 0
        while t < m and digits[t] == q - 1:
            digits[t] = 0
            t += 1
        if t == m:
            return
        digits[t] += 1
        v = _padd(acc[t + 1], rows[t][digits[t]], q, tab)
        while t >= 0:
            acc[t] = v
            t -= 1


def project_parents(out, q: int, n_child: int, red, add_tab) -> None:
    """Fill out[r] with the packed parent index of each child residue r.

    Children are enumerated in packed-index order; red row i holds the packed
    parent contribution of c * (x^i reduced mod the parent modulus).
    """
    if n_child == 0:
        out[0] = 0
        return
    rows = [[int(v) for v in row] for row in red]
    if q == 2:
        cur = 0
        out[0] = 0
        for g in range(1, 1 << n_child):
            # step from g-1 to g: digits below t wrap to 0, digit t flips on
            t = (g & -g).bit_length() - 1
            cur ^= rows[t][1]
            for k in range(t):
                cur ^= rows[k][1]
            out[g] = cur
        return
    tab = bytes(bytearray(add_tab))
    digits = [0] * n_child
    acc = [0] * (n_child + 1)
    idx = 0
    while True:
        out[idx] = acc[0]
        idx += 1
        t = 0
        while t < n_child and digits[t] == q - 1:
            digits[t] = 0
            t += 1
        if t == n_child:
            return
        digits[t] += 1
        v = _padd(acc[t + 1], rows[t][digits[t]], q, tab)
        while t >= 0:
            acc[t] = v
            t -= 1
