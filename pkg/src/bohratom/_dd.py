"""Double-double (compensated) arithmetic for the Kummer power series.

A double-double value is an unevaluated sum hi + lo of two binary64
numbers, giving ~31 significant decimal digits.  Only the handful of
operations the confluent-hypergeometric series needs are provided; all
of them work elementwise on numpy arrays as well as on Python floats.

Complex double-double values are 4-tuples (re_hi, re_lo, im_hi, im_lo).
"""

from __future__ import annotations

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1, Dekker splitting constant


def two_sum(a, b):
    """Error-free sum: returns (s, e) with s + e == a + b exactly."""
    s = a + b
    bb = s - a
    e = (a - (s - bb)) + (b - bb)
    return s, e


def two_prod(a, b):
    """Error-free product via Dekker splitting: p + e == a * b exactly."""
    p = a * b
    ca = _SPLITTER * a
    a_hi = ca - (ca - a)
    a_lo = a - a_hi
    cb = _SPLITTER * b
    b_hi = cb - (cb - b)
    b_lo = b - b_hi
    e = ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo
    return p, e


def dd_add(xh, xl, yh, yl):
    sh, se = two_sum(xh, yh)
    se = se + (xl + yl)
    h, l = two_sum(sh, se)
    return h, l


def dd_mul(xh, xl, yh, yl):
    ph, pe = two_prod(xh, yh)
    pe = pe + (xh * yl + xl * yh)
    h, l = two_sum(ph, pe)
    return h, l


def dd_div(xh, xl, yh, yl):
    # One Newton correction on the float quotient, then a second pass;
    # accurate to ~1 ulp of double-double.
    q1 = xh / yh
    th, tl = dd_mul(q1, np.zeros_like(q1) if isinstance(q1, np.ndarray) else 0.0, yh, yl)
    rh, rl = dd_add(xh, xl, -th, -tl)
    q2 = rh / yh
    th, tl = dd_mul(q2, 0.0, yh, yl)
    rh, rl = dd_add(rh, rl, -th, -tl)
    q3 = rh / yh
    h, l = two_sum(q1, q2)
    l = l + q3
    h, l = two_sum(h, l)
    return h, l


# -- complex double-double ------------------------------------------------

def cdd_from_complex(z):
    z = np.asarray(z, dtype=complex) if isinstance(z, np.ndarray) else complex(z)
    re = np.real(z) if isinstance(z, np.ndarray) else z.real
    im = np.imag(z) if isinstance(z, np.ndarray) else z.imag
    zero = np.zeros_like(re) if isinstance(re, np.ndarray) else 0.0
    return (re, zero, im, zero)


def cdd_to_complex(z):
    rh, rl, ih, il = z
    return (rh + rl) + 1j * (ih + il)


def cdd_add(x, y):
    xr, xrl, xi, xil = x
    yr, yrl, yi, yil = y
    rh, rl = dd_add(xr, xrl, yr, yrl)
    ih, il = dd_add(xi, xil, yi, yil)
    return (rh, rl, ih, il)


def cdd_mul(x, y):
    xr, xrl, xi, xil = x
    yr, yrl, yi, yil = y
    # re = xr*yr - xi*yi ; im = xr*yi + xi*yr, all in dd
    p1h, p1l = dd_mul(xr, xrl, yr, yrl)
    p2h, p2l = dd_mul(xi, xil, yi, yil)
    reh, rel = dd_add(p1h, p1l, -p2h, -p2l)
    p3h, p3l = dd_mul(xr, xrl, yi, yil)
    p4h, p4l = dd_mul(xi, xil, yr, yrl)
    imh, iml = dd_add(p3h, p3l, p4h, p4l)
    return (reh, rel, imh, iml)


def cdd_div(x, y):
    # x / y = x * conj(y) / |y|^2
    yr, yrl, yi, yil = y
    num = cdd_mul(x, (yr, yrl, -yi, -yil))
    m1h, m1l = dd_mul(yr, yrl, yr, yrl)
    m2h, m2l = dd_mul(yi, yil, yi, yil)
    dh, dl = dd_add(m1h, m1l, m2h, m2l)
    nr, nrl, ni, nil = num
    rh, rl = dd_div(nr, nrl, dh, dl)
    ih, il = dd_div(ni, nil, dh, dl)
    return (rh, rl, ih, il)


def cdd_abs_hi(z):
    """Cheap magnitude estimate from the hi components only."""
    rh, _, ih, _ = z
    return np.abs(rh) + np.abs(ih)
