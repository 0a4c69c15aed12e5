"""Per-mode first-order differential stencils on separable geometries.

A stencil is a list of ``(field, derivative_order, coefficient(y))`` terms;
applied to the pair of vector components (field 0 = tangential, field 1 =
normal) it represents the modal reduction of div or curl, and for a scalar
field the modal gradient.  Quadratic forms like ``int w * Div u * conj(Div
v)`` expand into products of stencil terms with the test-side coefficient
conjugated.
"""

import numpy as np

TANGENTIAL, NORMAL = 0, 1


def div_stencil(geom, k, y):
    """Modal divergence of a vector field (canonical components)."""
    y = np.asarray(y, dtype=float)
    s = geom.vol_tangential_symbol(k, y)
    if geom.kind == "strip":
        return [(TANGENTIAL, 0, s), (NORMAL, 1, np.ones_like(y, dtype=complex))]
    one = np.ones_like(y, dtype=complex)
    return [(NORMAL, 1, one), (NORMAL, 0, (1.0 / y).astype(complex)), (TANGENTIAL, 0, s)]


def curl_stencil(geom, k, y):
    """Modal scalar curl of a vector field."""
    y = np.asarray(y, dtype=float)
    s = geom.vol_tangential_symbol(k, y)
    one = np.ones_like(y, dtype=complex)
    if geom.kind == "strip":
        return [(NORMAL, 0, s), (TANGENTIAL, 1, -one)]
    return [(TANGENTIAL, 1, one), (TANGENTIAL, 0, (1.0 / y).astype(complex)), (NORMAL, 0, -s)]


def add_quadratic(asm, stencil_trial, stencil_test, weight, coef=1.0):
    """Accumulate coef * int w * (stencil u) * conj(stencil v)."""
    for fa, da, ca in stencil_trial:
        for fb, db, cb in stencil_test:
            asm.add_bilinear(fb, fa, weight * ca * np.conj(cb), da, db, coef=coef)


def div_eval(geom, k, line, coef_t, coef_n, y):
    y = np.asarray(y, dtype=float)
    s = geom.vol_tangential_symbol(k, y)
    val = s * line.evaluate(coef_t, y) + line.evaluate(coef_n, y, deriv=1)
    if geom.kind == "annulus":
        val = val + line.evaluate(coef_n, y) / y
    return val


def div_eval_dy(geom, k, line, coef_t, coef_n, y):
    """Wall-normal derivative of the modal divergence."""
    y = np.asarray(y, dtype=float)
    s = geom.vol_tangential_symbol(k, y)
    val = s * line.evaluate(coef_t, y, deriv=1) + line.evaluate(coef_n, y, deriv=2)
    if geom.kind == "annulus":
        vn = line.evaluate(coef_n, y)
        dvn = line.evaluate(coef_n, y, deriv=1)
        vt = line.evaluate(coef_t, y)
        val = val + dvn / y - vn / y**2 - (s / y) * vt
    return val


def curl_eval(geom, k, line, coef_t, coef_n, y):
    y = np.asarray(y, dtype=float)
    s = geom.vol_tangential_symbol(k, y)
    val = s * line.evaluate(coef_n, y) - line.evaluate(coef_t, y, deriv=1)
    if geom.kind == "annulus":
        val = -val + line.evaluate(coef_t, y) / y
    return val
