# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term-dict kernels; same contract as _kernel_py.

Coefficients come in as Fractions and go out as Fractions, but the inner loops run
on raw (numerator, denominator) integer pairs with a single gcd reduction per output
term, which is where the speedup over Fraction arithmetic comes from.
"""

from fractions import Fraction
from math import gcd

BACKEND = "c"

cdef object _Fraction = Fraction


cdef inline object _mk_fraction(object num, object den):
    # den > 0 and gcd(num, den) == 1 are guaranteed by callers
    cdef object f = _Fraction.__new__(_Fraction)
    f._numerator = num
    f._denominator = den
    return f


cdef inline tuple _tuple_add(tuple ea, tuple eb):
    cdef Py_ssize_t i, n = len(ea)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = ea[i] + eb[i]
    return tuple(out)


cdef dict _finalize(dict acc):
    """acc maps exponent tuples to [num, den] pairs; reduce and wrap as Fractions."""
    cdef dict out = {}
    cdef object num, den, g
    for e, pair in acc.items():
        num = pair[0]
        if num == 0:
            continue
        den = pair[1]
        g = gcd(num, den)
        if g != 1:
            num //= g
            den //= g
        out[e] = _mk_fraction(num, den)
    return out


cdef inline void _acc_add(dict acc, tuple e, object num, object den):
    cdef list cur = <list> acc.get(e)
    if cur is None:
        acc[e] = [num, den]
    else:
        cur[0] = cur[0] * den + num * cur[1]
        cur[1] = cur[1] * den


def add_terms(dict a, dict b):
    cdef dict acc = {}
    for e, c in a.items():
        _acc_add(acc, <tuple> e, c._numerator, c._denominator)
    for e, c in b.items():
        _acc_add(acc, <tuple> e, c._numerator, c._denominator)
    return _finalize(acc)


def neg_terms(dict a):
    cdef dict out = {}
    for e, c in a.items():
        out[e] = _mk_fraction(-c._numerator, c._denominator)
    return out


def scale_terms(dict a, c):
    cdef dict acc = {}
    cdef object cn = c._numerator, cd = c._denominator
    if cn == 0:
        return acc
    for e, v in a.items():
        _acc_add(acc, <tuple> e, v._numerator * cn, v._denominator * cd)
    return _finalize(acc)


cdef void _mul_into(dict acc, dict a, dict b):
    cdef object na, da
    for ea, ca in a.items():
        na = ca._numerator
        da = ca._denominator
        for eb, cb in b.items():
            _acc_add(acc, _tuple_add(<tuple> ea, <tuple> eb),
                     na * cb._numerator, da * cb._denominator)


def mul_terms(dict a, dict b):
    cdef dict acc = {}
    if len(a) > len(b):
        a, b = b, a
    _mul_into(acc, a, b)
    return _finalize(acc)


cdef dict _partial_acc(dict a, Py_ssize_t k):
    """Unreduced partial derivative, as an accumulator dict."""
    cdef dict acc = {}
    cdef tuple e, e2
    cdef object ek
    cdef list le
    for e_obj, c in a.items():
        e = <tuple> e_obj
        ek = e[k]
        if ek == 0:
            continue
        le = list(e)
        le[k] = ek - 1
        e2 = tuple(le)
        _acc_add(acc, e2, c._numerator * ek, c._denominator)
    return acc


def partial_terms(dict a, Py_ssize_t k):
    return _finalize(_partial_acc(a, k))


def derive_terms(list components, dict a):
    cdef dict acc = {}
    cdef dict comp, p
    cdef Py_ssize_t k
    for k in range(len(components)):
        comp = <dict> components[k]
        if not comp:
            continue
        p = _finalize(_partial_acc(a, k))
        if not p:
            continue
        _mul_into(acc, comp, p)
    return _finalize(acc)
