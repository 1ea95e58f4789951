"""Pure-Python hot kernels.

Mirrors ``_ckernels.pyx`` operation for operation so both backends follow
the same simplex trajectory.  Displacements are passed as Cartesian
components ``(re, im)`` of beta; alpha is real.

Parameter vectors by regime:

``REAL``     (theta1, theta2, b1, b2)            phi = 0, beta = b
``IMAG``     (phi1, phi2, b1, b2)                theta = pi/2, beta = i*b
``GENERAL``  (theta1, phi1, theta2, phi2, re1, im1, re2, im2)
"""
from math import cos, exp, pi, sin

ONOFF = 0
PARITY = 1

REAL = 0
IMAG = 1
GENERAL = 2

HALF_PI = 0.5 * pi

_RHO = 1.0
_CHI = 2.0
_PSI = 0.5
_SIGMA = 0.5


def expectation(scheme, alpha, theta, phi, bre, bim, eta_a, eta_b):
    """Effective joint expectation for one pair of local settings."""
    a2 = alpha * alpha
    n2 = bre * bre + bim * bim
    dm = alpha - bre
    dp = alpha + bre
    if scheme == ONOFF:
        ep = exp(-eta_b * (dm * dm + bim * bim))
        em = exp(-eta_b * (dp * dp + bim * bim))
        joint = (
            cos(theta) * (ep - em)
            + 2.0 * sin(theta) * exp(-(2.0 - eta_b) * a2 - eta_b * n2)
            * cos(2.0 * eta_b * alpha * bim - phi)
            - sin(theta) * exp(-2.0 * a2) * cos(phi)
        )
        marginal = ep + em - 1.0
    else:
        ep = exp(-2.0 * eta_b * (dm * dm + bim * bim))
        em = exp(-2.0 * eta_b * (dp * dp + bim * bim))
        joint = (
            0.5 * cos(theta) * (ep - em)
            + sin(theta) * exp(-2.0 * (1.0 - eta_b) * a2 - 2.0 * eta_b * n2)
            * cos(4.0 * eta_b * alpha * bim - phi)
        )
        marginal = 0.5 * (ep + em)
    return eta_a * joint + (1.0 - eta_a) * marginal


def bell_general(scheme, alpha, eta_a, eta_b, x):
    t1, p1, t2, p2, r1, i1, r2, i2 = x[0], x[1], x[2], x[3], x[4], x[5], x[6], x[7]
    return (
        expectation(scheme, alpha, t1, p1, r1, i1, eta_a, eta_b)
        + expectation(scheme, alpha, t1, p1, r2, i2, eta_a, eta_b)
        + expectation(scheme, alpha, t2, p2, r2, i2, eta_a, eta_b)
        - expectation(scheme, alpha, t2, p2, r1, i1, eta_a, eta_b)
    )


def bell_regime(regime, scheme, alpha, eta_a, eta_b, x):
    if regime == REAL:
        return bell_general(
            scheme, alpha, eta_a, eta_b, (x[0], 0.0, x[1], 0.0, x[2], 0.0, x[3], 0.0)
        )
    if regime == IMAG:
        return bell_general(
            scheme, alpha, eta_a, eta_b,
            (HALF_PI, x[0], HALF_PI, x[1], 0.0, x[2], 0.0, x[3]),
        )
    return bell_general(scheme, alpha, eta_a, eta_b, x)


def _sort(sim, fsim):
    # stable insertion sort on fsim, ascending
    n = len(fsim)
    for i in range(1, n):
        f = fsim[i]
        v = sim[i]
        j = i - 1
        while j >= 0 and fsim[j] > f:
            fsim[j + 1] = fsim[j]
            sim[j + 1] = sim[j]
            j -= 1
        fsim[j + 1] = f
        sim[j + 1] = v


def nelder_mead_max(regime, scheme, alpha, eta_a, eta_b, x0, step, xatol, fatol, maxfev):
    """Maximize the regime's Bell function with a fixed-coefficient simplex.

    Returns ``(x_best, value_best, n_evaluations)``.
    """
    n = len(x0)

    def f(x):
        return -bell_regime(regime, scheme, alpha, eta_a, eta_b, x)

    sim = [list(map(float, x0))]
    for k in range(n):
        v = list(sim[0])
        v[k] += step[k]
        sim.append(v)
    fsim = [f(v) for v in sim]
    nfev = n + 1
    _sort(sim, fsim)

    while nfev < maxfev:
        xspread = 0.0
        fspread = 0.0
        for i in range(1, n + 1):
            for k in range(n):
                d = abs(sim[i][k] - sim[0][k])
                if d > xspread:
                    xspread = d
            d = abs(fsim[i] - fsim[0])
            if d > fspread:
                fspread = d
        if xspread <= xatol and fspread <= fatol:
            break

        xbar = [0.0] * n
        for i in range(n):
            for k in range(n):
                xbar[k] += sim[i][k]
        for k in range(n):
            xbar[k] /= n
        worst = sim[n]

        xr = [(1.0 + _RHO) * xbar[k] - _RHO * worst[k] for k in range(n)]
        fxr = f(xr)
        nfev += 1
        shrink = False
        if fxr < fsim[0]:
            xe = [(1.0 + _RHO * _CHI) * xbar[k] - _RHO * _CHI * worst[k] for k in range(n)]
            fxe = f(xe)
            nfev += 1
            if fxe < fxr:
                sim[n], fsim[n] = xe, fxe
            else:
                sim[n], fsim[n] = xr, fxr
        elif fxr < fsim[n - 1]:
            sim[n], fsim[n] = xr, fxr
        elif fxr < fsim[n]:
            xc = [(1.0 + _PSI * _RHO) * xbar[k] - _PSI * _RHO * worst[k] for k in range(n)]
            fxc = f(xc)
            nfev += 1
            if fxc <= fxr:
                sim[n], fsim[n] = xc, fxc
            else:
                shrink = True
        else:
            xcc = [(1.0 - _PSI) * xbar[k] + _PSI * worst[k] for k in range(n)]
            fxcc = f(xcc)
            nfev += 1
            if fxcc < fsim[n]:
                sim[n], fsim[n] = xcc, fxcc
            else:
                shrink = True
        if shrink:
            best = sim[0]
            for i in range(1, n + 1):
                sim[i] = [best[k] + _SIGMA * (sim[i][k] - best[k]) for k in range(n)]
                fsim[i] = f(sim[i])
            nfev += n
        _sort(sim, fsim)

    return list(sim[0]), -fsim[0], nfev
