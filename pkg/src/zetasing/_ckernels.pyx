# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled truncated product of sparse term lists.

Same contract and summation order as ``_pykernels.mul_terms``: products are
generated row-major, stably sorted by key, then reduced left to right.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def mul_terms(a_items, b_items, nus, double xi_max, double kappa,
              double weight_max, double tol):
    cdef Py_ssize_t n = len(a_items), m = len(b_items), d = len(nus)
    if n == 0 or m == 0:
        return []
    cdef cnp.int64_t[:, ::1] ka = np.empty((n, d + 1), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] kb = np.empty((m, d + 1), dtype=np.int64)
    cdef double[::1] ar = np.empty(n), ai = np.empty(n)
    cdef double[::1] br = np.empty(m), bi = np.empty(m)
    cdef double[::1] nu = np.asarray(nus, dtype=np.float64).reshape(d)
    cdef Py_ssize_t i, j, t, cnt = 0, cap
    cdef double xi, xi_lim = xi_max + tol, w_lim = weight_max + tol
    cdef double pr, pi
    cdef cnp.int64_t ell

    for i, ((ell_a, va), c) in enumerate(a_items):
        ka[i, 0] = ell_a
        for t in range(d):
            ka[i, t + 1] = va[t]
        c = complex(c)
        ar[i] = c.real
        ai[i] = c.imag
    for j, ((ell_b, vb), c) in enumerate(b_items):
        kb[j, 0] = ell_b
        for t in range(d):
            kb[j, t + 1] = vb[t]
        c = complex(c)
        br[j] = c.real
        bi[j] = c.imag

    cap = min(n * m, 1 << 16)
    keys_arr = np.empty((cap, d + 1), dtype=np.int64)
    re_arr = np.empty(cap)
    im_arr = np.empty(cap)
    cdef cnp.int64_t[:, ::1] keys = keys_arr
    cdef double[::1] ore = re_arr, oim = im_arr
    cdef cnp.int64_t[::1] row = np.empty(d + 1, dtype=np.int64)

    for i in range(n):
        for j in range(m):
            xi = 0.0
            for t in range(d):
                row[t + 1] = ka[i, t + 1] + kb[j, t + 1]
                xi += <double>row[t + 1] * nu[t]
            if xi > xi_lim:
                continue
            ell = ka[i, 0] + kb[j, 0]
            if <double>ell + kappa * xi > w_lim:
                continue
            if cnt == cap:
                cap *= 2
                keys_arr = np.resize(keys_arr, (cap, d + 1))
                re_arr = np.resize(re_arr, cap)
                im_arr = np.resize(im_arr, cap)
                keys = keys_arr
                ore = re_arr
                oim = im_arr
            keys[cnt, 0] = ell
            for t in range(d):
                keys[cnt, t + 1] = row[t + 1]
            # Python's complex product formula, no fused multiply-add.
            pr = ar[i] * br[j] - ai[i] * bi[j]
            pi = ar[i] * bi[j] + ai[i] * br[j]
            ore[cnt] = pr
            oim[cnt] = pi
            cnt += 1

    if cnt == 0:
        return []
    kview = keys_arr[:cnt]
    order = np.lexsort(kview.T[::-1])
    cdef cnp.intp_t[::1] perm = order.astype(np.intp)
    out = []
    cdef Py_ssize_t s = 0, r, p, q
    cdef double sr, si
    cdef bint same
    while s < cnt:
        p = perm[s]
        sr = ore[p]
        si = oim[p]
        r = s + 1
        while r < cnt:
            q = perm[r]
            same = True
            for t in range(d + 1):
                if keys[q, t] != keys[p, t]:
                    same = False
                    break
            if not same:
                break
            sr = sr + ore[q]
            si = si + oim[q]
            r += 1
        if sr != 0.0 or si != 0.0:
            out.append(((int(keys[p, 0]),
                         tuple([int(keys[p, t + 1]) for t in range(d)])),
                        complex(sr, si)))
        s = r
    return out
