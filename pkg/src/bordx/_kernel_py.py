"""Pure-Python kernel for the capped product of exponent-keyed term dicts.

This is the hot loop of the whole workbench; ``bordx._speedups`` provides a
Cython build of the same function and is preferred at import time when it is
available.  Coefficients are arbitrary-precision ints, keys are exponent
tuples, a negative ``cap`` disables degree truncation.
"""


def mul_capped(a_terms, b_terms, degrees, cap):
    if len(b_terms) > len(a_terms):
        a_terms, b_terms = b_terms, a_terms
    bitems = []
    for eb, cb in b_terms.items():
        db = 0
        for i, e in enumerate(eb):
            db += e * degrees[i]
        bitems.append((db, eb, cb))
    out = {}
    for ea, ca in a_terms.items():
        da = 0
        for i, e in enumerate(ea):
            da += e * degrees[i]
        for db, eb, cb in bitems:
            if cap >= 0 and da + db > cap:
                continue
            key = tuple(x + y for x, y in zip(ea, eb))
            c = out.get(key, 0) + ca * cb
            if c:
                out[key] = c
            elif key in out:
                del out[key]
    return out
