"""Pure-Python term-dict kernels.

A "terms" value is a dict mapping exponent tuples (one int per variable, negative
allowed for Laurent data) to nonzero Fraction coefficients.  Every function returns a
new canonical dict: no zero coefficients, Fraction values only.  The compiled twin in
``_kernel_c`` implements the same contract; ``_backend`` picks one at import time.
"""

from fractions import Fraction

BACKEND = "python"

_ZERO = Fraction(0)


def add_terms(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, _ZERO) + c
        if s:
            out[e] = s
        elif e in out:
            del out[e]
    return out


def neg_terms(a):
    return {e: -c for e, c in a.items()}


def scale_terms(a, c):
    if not c:
        return {}
    return {e: c * v for e, v in a.items()}


def mul_terms(a, b):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(e, _ZERO) + ca * cb
            if s:
                out[e] = s
            elif e in out:
                del out[e]
    return out


def partial_terms(a, k):
    out = {}
    for e, c in a.items():
        ek = e[k]
        if ek == 0:
            continue
        e2 = e[:k] + (ek - 1,) + e[k + 1:]
        s = out.get(e2, _ZERO) + c * ek
        if s:
            out[e2] = s
        elif e2 in out:
            del out[e2]
    return out


def derive_terms(components, a):
    """Sum of components[k] * d(a)/dx_k over all k."""
    out = {}
    for k, comp in enumerate(components):
        if not comp:
            continue
        p = partial_terms(a, k)
        if not p:
            continue
        for ea, ca in comp.items():
            for eb, cb in p.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, _ZERO) + ca * cb
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
    return out
