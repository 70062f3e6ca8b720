"""Pure-Python truncated product of sparse term lists.

Reference semantics for the compiled kernel in ``_ckernels.pyx``; both must
return bit-identical results.  Products are visited in row-major order and
summed per key in that order, then keys are sorted.
"""

from __future__ import annotations


def mul_terms(a_items, b_items, nus, xi_max, kappa, weight_max, tol):
    """Multiply two term lists, dropping product terms outside the window.

    Items are ``((ell, vec), coef)``.  A product term is kept when
    ``xi <= xi_max + tol`` and ``ell + kappa * xi <= weight_max + tol``.
    Returns a key-sorted list of items with exact-zero coefficients removed.
    """
    xi_lim = xi_max + tol
    w_lim = weight_max + tol
    acc: dict = {}
    for (la, va), ca in a_items:
        for (lb, vb), cb in b_items:
            vec = tuple([x + y for x, y in zip(va, vb)])
            xi = 0.0
            for m, nu in zip(vec, nus):
                xi += m * nu
            if xi > xi_lim:
                continue
            ell = la + lb
            if ell + kappa * xi > w_lim:
                continue
            key = (ell, vec)
            prod = ca * cb
            if key in acc:
                acc[key] = acc[key] + prod
            else:
                acc[key] = prod
    return [(k, acc[k]) for k in sorted(acc) if acc[k] != 0]
