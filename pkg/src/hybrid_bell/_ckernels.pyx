# cython: language_level=3
"""Compiled hot kernels; see ``_pykernels.py`` for the reference semantics."""
from libc.math cimport cos, exp, fabs, sin, M_PI

cdef enum:
    MAXN = 8

cdef int _ONOFF = 0
cdef int _REAL = 0
cdef int _IMAG = 1

cdef double _RHO = 1.0
cdef double _CHI = 2.0
cdef double _PSI = 0.5
cdef double _SIGMA = 0.5

ONOFF = 0
PARITY = 1
REAL = 0
IMAG = 1
GENERAL = 2


cdef inline double _expectation(int scheme, double alpha, double theta, double phi,
                                double bre, double bim, double eta_a,
                                double eta_b) noexcept nogil:
    cdef double a2 = alpha * alpha
    cdef double n2 = bre * bre + bim * bim
    cdef double dm = alpha - bre
    cdef double dp = alpha + bre
    cdef double ep, em, joint, marginal
    if scheme == _ONOFF:
        ep = exp(-eta_b * (dm * dm + bim * bim))
        em = exp(-eta_b * (dp * dp + bim * bim))
        joint = (cos(theta) * (ep - em)
                 + 2.0 * sin(theta) * exp(-(2.0 - eta_b) * a2 - eta_b * n2)
                 * cos(2.0 * eta_b * alpha * bim - phi)
                 - sin(theta) * exp(-2.0 * a2) * cos(phi))
        marginal = ep + em - 1.0
    else:
        ep = exp(-2.0 * eta_b * (dm * dm + bim * bim))
        em = exp(-2.0 * eta_b * (dp * dp + bim * bim))
        joint = (0.5 * cos(theta) * (ep - em)
                 + sin(theta) * exp(-2.0 * (1.0 - eta_b) * a2 - 2.0 * eta_b * n2)
                 * cos(4.0 * eta_b * alpha * bim - phi))
        marginal = 0.5 * (ep + em)
    return eta_a * joint + (1.0 - eta_a) * marginal


cdef inline double _bell8(int scheme, double alpha, double ea, double eb,
                          double t1, double p1, double t2, double p2,
                          double r1, double i1, double r2, double i2) noexcept nogil:
    return (_expectation(scheme, alpha, t1, p1, r1, i1, ea, eb)
            + _expectation(scheme, alpha, t1, p1, r2, i2, ea, eb)
            + _expectation(scheme, alpha, t2, p2, r2, i2, ea, eb)
            - _expectation(scheme, alpha, t2, p2, r1, i1, ea, eb))


cdef inline double _bell_regime(int regime, int scheme, double alpha, double ea,
                                double eb, double* x) noexcept nogil:
    if regime == _REAL:
        return _bell8(scheme, alpha, ea, eb, x[0], 0.0, x[1], 0.0, x[2], 0.0, x[3], 0.0)
    if regime == _IMAG:
        return _bell8(scheme, alpha, ea, eb, 0.5 * M_PI, x[0], 0.5 * M_PI, x[1],
                      0.0, x[2], 0.0, x[3])
    return _bell8(scheme, alpha, ea, eb, x[0], x[1], x[2], x[3], x[4], x[5], x[6], x[7])


def expectation(int scheme, double alpha, double theta, double phi, double bre,
                double bim, double eta_a, double eta_b):
    """Effective joint expectation for one pair of local settings."""
    return _expectation(scheme, alpha, theta, phi, bre, bim, eta_a, eta_b)


def bell_general(int scheme, double alpha, double eta_a, double eta_b, x):
    return _bell8(scheme, alpha, eta_a, eta_b, x[0], x[1], x[2], x[3],
                  x[4], x[5], x[6], x[7])


def bell_regime(int regime, int scheme, double alpha, double eta_a, double eta_b, x):
    cdef double buf[MAXN]
    cdef int n = len(x)
    cdef int k
    if n > MAXN:
        raise ValueError("at most 8 parameters")
    for k in range(n):
        buf[k] = x[k]
    return _bell_regime(regime, scheme, alpha, eta_a, eta_b, buf)


cdef void _sort(double sim[MAXN + 1][MAXN], double* fsim, int m, int n) noexcept nogil:
    cdef int i, j, k
    cdef double f
    cdef double v[MAXN]
    for i in range(1, m):
        f = fsim[i]
        for k in range(n):
            v[k] = sim[i][k]
        j = i - 1
        while j >= 0 and fsim[j] > f:
            fsim[j + 1] = fsim[j]
            for k in range(n):
                sim[j + 1][k] = sim[j][k]
            j -= 1
        fsim[j + 1] = f
        for k in range(n):
            sim[j + 1][k] = v[k]


def nelder_mead_max(int regime, int scheme, double alpha, double eta_a, double eta_b,
                    x0, step, double xatol, double fatol, int maxfev):
    """Maximize the regime's Bell function with a fixed-coefficient simplex.

    Returns ``(x_best, value_best, n_evaluations)``.
    """
    cdef int n = len(x0)
    cdef double sim[MAXN + 1][MAXN]
    cdef double fsim[MAXN + 1]
    cdef double xbar[MAXN]
    cdef double xr[MAXN]
    cdef double xe[MAXN]
    cdef double xc[MAXN]
    cdef double st[MAXN]
    cdef double fxr, fxe, fxc, xspread, fspread, d
    cdef int i, k, nfev
    cdef bint shrink
    if n > MAXN or len(step) != n:
        raise ValueError("bad simplex dimension")
    for k in range(n):
        sim[0][k] = x0[k]
        st[k] = step[k]

    with nogil:
        for i in range(1, n + 1):
            for k in range(n):
                sim[i][k] = sim[0][k]
            sim[i][i - 1] += st[i - 1]
        for i in range(n + 1):
            fsim[i] = -_bell_regime(regime, scheme, alpha, eta_a, eta_b, sim[i])
        nfev = n + 1
        _sort(sim, fsim, n + 1, n)

        while nfev < maxfev:
            xspread = 0.0
            fspread = 0.0
            for i in range(1, n + 1):
                for k in range(n):
                    d = fabs(sim[i][k] - sim[0][k])
                    if d > xspread:
                        xspread = d
                d = fabs(fsim[i] - fsim[0])
                if d > fspread:
                    fspread = d
            if xspread <= xatol and fspread <= fatol:
                break

            for k in range(n):
                xbar[k] = 0.0
            for i in range(n):
                for k in range(n):
                    xbar[k] += sim[i][k]
            for k in range(n):
                xbar[k] /= n

            for k in range(n):
                xr[k] = (1.0 + _RHO) * xbar[k] - _RHO * sim[n][k]
            fxr = -_bell_regime(regime, scheme, alpha, eta_a, eta_b, xr)
            nfev += 1
            shrink = False
            if fxr < fsim[0]:
                for k in range(n):
                    xe[k] = (1.0 + _RHO * _CHI) * xbar[k] - _RHO * _CHI * sim[n][k]
                fxe = -_bell_regime(regime, scheme, alpha, eta_a, eta_b, xe)
                nfev += 1
                if fxe < fxr:
                    for k in range(n):
                        sim[n][k] = xe[k]
                    fsim[n] = fxe
                else:
                    for k in range(n):
                        sim[n][k] = xr[k]
                    fsim[n] = fxr
            elif fxr < fsim[n - 1]:
                for k in range(n):
                    sim[n][k] = xr[k]
                fsim[n] = fxr
            elif fxr < fsim[n]:
                for k in range(n):
                    xc[k] = (1.0 + _PSI * _RHO) * xbar[k] - _PSI * _RHO * sim[n][k]
                fxc = -_bell_regime(regime, scheme, alpha, eta_a, eta_b, xc)
                nfev += 1
                if fxc <= fxr:
                    for k in range(n):
                        sim[n][k] = xc[k]
                    fsim[n] = fxc
                else:
                    shrink = True
            else:
                for k in range(n):
                    xc[k] = (1.0 - _PSI) * xbar[k] + _PSI * sim[n][k]
                fxc = -_bell_regime(regime, scheme, alpha, eta_a, eta_b, xc)
                nfev += 1
                if fxc < fsim[n]:
                    for k in range(n):
                        sim[n][k] = xc[k]
                    fsim[n] = fxc
                else:
                    shrink = True
            if shrink:
                for i in range(1, n + 1):
                    for k in range(n):
                        sim[i][k] = sim[0][k] + _SIGMA * (sim[i][k] - sim[0][k])
                    fsim[i] = -_bell_regime(regime, scheme, alpha, eta_a, eta_b, sim[i])
                nfev += n
            _sort(sim, fsim, n + 1, n)

    return [sim[0][k] for k in range(n)], -fsim[0], nfev
