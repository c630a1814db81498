# cython: language_level=3, boundscheck=False, wraparound=False
"""Cython build of the capped term-dict product (see bordx._kernel_py)."""

from cpython.tuple cimport PyTuple_New, PyTuple_GET_ITEM, PyTuple_SET_ITEM
from cpython.ref cimport Py_INCREF


cdef inline long _term_degree(tuple exp, tuple degrees):
    cdef long d = 0
    cdef Py_ssize_t i, n = len(exp)
    for i in range(n):
        d += <long> exp[i] * <long> degrees[i]
    return d


cdef inline tuple _exp_add(tuple ea, tuple eb, Py_ssize_t n):
    cdef tuple key = PyTuple_New(n)
    cdef Py_ssize_t i
    cdef object s
    for i in range(n):
        s = (<object> PyTuple_GET_ITEM(ea, i)) + (<object> PyTuple_GET_ITEM(eb, i))
        Py_INCREF(s)
        PyTuple_SET_ITEM(key, i, s)
    return key


def mul_capped(dict a_terms, dict b_terms, tuple degrees, long cap):
    cdef dict out = {}
    cdef list bitems = []
    cdef Py_ssize_t n = len(degrees)
    cdef long da, db
    cdef tuple ea, eb, key
    cdef object ca, cb, c, pair

    if len(b_terms) > len(a_terms):
        a_terms, b_terms = b_terms, a_terms
    for eb, cb in b_terms.items():
        bitems.append((_term_degree(eb, degrees), eb, cb))
    for ea, ca in a_terms.items():
        da = _term_degree(ea, degrees)
        for pair in bitems:
            db = <long> (<object> PyTuple_GET_ITEM(<tuple> pair, 0))
            if cap >= 0 and da + db > cap:
                continue
            eb = <tuple> PyTuple_GET_ITEM(<tuple> pair, 1)
            cb = <object> PyTuple_GET_ITEM(<tuple> pair, 2)
            key = _exp_add(ea, eb, n)
            c = out.get(key, 0) + ca * cb
            if c:
                out[key] = c
            elif key in out:
                del out[key]
    return out
