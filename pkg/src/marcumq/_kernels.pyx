# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Twin of ``_kernels_py``; keep the two in step."""
from libc.math cimport exp, log, log1p, fabs, frexp, ldexp, pow, INFINITY

cdef double _RESCALE_HI = 2.0 ** 500
cdef double _RESCALE_LO = 2.0 ** -500
cdef double _SERIES_RTOL = 1e-17
cdef long _MAX_ITER = 1000000

cdef double[8] _XGK
cdef double[8] _WGK
cdef double[4] _WG

_XGK[:] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
]
_WGK[:] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
]
_WG[:] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
]


def laguerre(long n, double alpha, double x):
    cdef double l_prev, l_curr, l_next
    cdef long k
    if n == 0:
        return 1.0
    l_prev = 1.0
    l_curr = 1.0 + alpha - x
    for k in range(1, n):
        l_next = ((2 * k + alpha + 1 - x) * l_curr - (k + alpha) * l_prev) / (k + 1)
        l_prev = l_curr
        l_curr = l_next
    return l_curr


def lag_coeffs_extend(double nu, double x, long n, double prev, double curr,
                      long shift, long upto):
    cdef double c_next, mag
    cdef int e
    vals = []
    shifts = []
    while n < upto:
        c_next = ((2 * n + nu - x) / ((n + 1) * (nu + n + 1))) * curr - (
            (n + nu - 1) / ((n + 1) * (nu + n) * (nu + n + 1))
        ) * prev
        prev = curr
        curr = c_next
        n += 1
        mag = fabs(curr)
        if mag > _RESCALE_HI or (0.0 < mag < _RESCALE_LO):
            frexp(curr, &e)
            curr = ldexp(curr, -e)
            prev = ldexp(prev, -e)
            shift += e
        vals.append(curr)
        shifts.append(shift)
    return vals, shifts, (n, prev, curr, shift)


def stop_index(double log_k, double y, long offset, double log_target,
               long n_min, long n_max):
    cdef double log_y = log(y)
    cdef long m = n_min + offset
    cdef double log_r = 0.0
    cdef long k, n0
    cdef double log_bound = INFINITY
    for k in range(1, m + 2):
        log_r += log_y - log(<double>k)
    n0 = n_min
    while True:
        if m + 2 > y:
            log_bound = log_k + log_r - log1p(-y / (m + 2))
            if log_bound <= log_target:
                return n0, log_bound
        else:
            log_bound = INFINITY
        if n0 >= n_max:
            return n0, log_bound
        n0 += 1
        m += 1
        log_r += log_y - log(<double>(m + 1))


def laguerre_sum(const double[:] vals, const long long[:] shifts, double y, long nterms):
    cdef double s = 0.0, comp = 0.0, abs_s = 0.0, pm = 1.0, term, t
    cdef long pe = 0
    cdef int e
    cdef long n
    for n in range(nterms):
        term = ldexp(vals[n] * pm, <int>(shifts[n] + pe))
        t = s + term
        if fabs(s) >= fabs(term):
            comp += (s - t) + term
        else:
            comp += (term - t) + s
        s = t
        abs_s += fabs(term)
        pm = frexp(pm * -y, &e)
        pe += e
    return s + comp, abs_s


cdef double _log_bessel_scaled(double mu, double q) except? -1e308:
    cdef double s = 1.0, term = 1.0, log_scale = 0.0
    cdef long n = 0
    while n < _MAX_ITER:
        term *= q / ((n + 1) * (mu + n + 1))
        n += 1
        s += term
        if s > 1e290:
            log_scale += log(s)
            term /= s
            s = 1.0
        if term < _SERIES_RTOL * s:
            return log_scale + log(s)
    raise ArithmeticError("Bessel series did not converge")


def log_bessel_scaled(double mu, double q):
    return _log_bessel_scaled(mu, q)


cdef double _log_integrand(double nu, double a, double t, double lg_nu) except? -1e308:
    cdef double p, at
    if t == 0.0:
        p = 2 * nu - 1
        if p > 0:
            return -INFINITY
        if p < 0:
            return INFINITY
        return -(nu - 1) * log(2.0) - 0.5 * a * a - lg_nu
    at = a * t
    return ((2 * nu - 1) * log(t)
            - (nu - 1) * log(2.0)
            - 0.5 * (t * t + a * a)
            - lg_nu
            + _log_bessel_scaled(nu - 1, 0.25 * at * at))


def log_integrand(double nu, double a, double t, double lg_nu):
    return _log_integrand(nu, a, t, lg_nu)


cdef inline double _node_value(double nu, double a, double lg_nu, double u,
                               double scale, double power, double log_jac0) except? -1e308:
    cdef double t, lf
    if power == 1.0:
        t = scale * u
        lf = _log_integrand(nu, a, t, lg_nu) + log_jac0
    else:
        t = scale * pow(u, power)
        lf = _log_integrand(nu, a, t, lg_nu) + log_jac0 + (power - 1) * log(u)
    return exp(lf)


def gk15(double nu, double a, double lg_nu, double u0, double u1,
         double scale, double power):
    cdef double center = 0.5 * (u0 + u1)
    cdef double half = 0.5 * (u1 - u0)
    cdef double log_jac0 = log(scale * power)
    cdef double res_k = 0.0, res_g = 0.0, dx, f
    cdef int j
    for j in range(8):
        if j == 7:
            f = _node_value(nu, a, lg_nu, center, scale, power, log_jac0)
            res_k += _WGK[j] * f
            res_g += _WG[3] * f
        else:
            dx = half * _XGK[j]
            f = _node_value(nu, a, lg_nu, center - dx, scale, power, log_jac0)
            res_k += _WGK[j] * f
            if j % 2 == 1:
                res_g += _WG[j // 2] * f
            f = _node_value(nu, a, lg_nu, center + dx, scale, power, log_jac0)
            res_k += _WGK[j] * f
            if j % 2 == 1:
                res_g += _WG[j // 2] * f
    return res_k * half, fabs((res_k - res_g) * half)


def reg_gamma_series(double s, double x, double lg_s):
    cdef double term, total, ap
    cdef long i
    if x == 0.0:
        return 0.0
    term = 1.0 / s
    total = term
    ap = s
    for i in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if term < total * _SERIES_RTOL:
            return total * exp(s * log(x) - x - lg_s)
    raise ArithmeticError("incomplete gamma series did not converge")


def reg_gamma_cf(double s, double x, double lg_s):
    cdef double tiny = 1e-300
    cdef double b = x + 1.0 - s
    cdef double c = 1.0 / tiny
    cdef double d = 1.0 / b
    cdef double h = d
    cdef double an, delta
    cdef long i
    for i in range(1, _MAX_ITER):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if fabs(d) < tiny:
            d = tiny
        c = b + an / c
        if fabs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if fabs(delta - 1.0) < 3e-16:
            return exp(s * log(x) - x - lg_s) * h
    raise ArithmeticError("incomplete gamma continued fraction did not converge")
