"""Pure-Python kernels.

Fallback for the compiled ``_kernels`` extension. Every function here has a
twin of the same name and signature in ``_kernels.pyx``; keep them in step.
Log-gamma values are always supplied by the caller so both backends share one
implementation of it.
"""
import math

_RESCALE_HI = 2.0 ** 500
_RESCALE_LO = 2.0 ** -500
_SERIES_RTOL = 1e-17
_MAX_ITER = 1_000_000

# Gauss-Kronrod 15/7 abscissae and weights (QUADPACK qk15)
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)


def laguerre(n, alpha, x):
    """L_n^(alpha)(x) by the forward three-term recurrence."""
    if n == 0:
        return 1.0
    l_prev = 1.0
    l_curr = 1.0 + alpha - x
    for k in range(1, n):
        l_next = ((2 * k + alpha + 1 - x) * l_curr - (k + alpha) * l_prev) / (k + 1)
        l_prev = l_curr
        l_curr = l_next
    return l_curr


def lag_coeffs_extend(nu, x, n, prev, curr, shift, upto):
    """Advance the scaled coefficient recurrence from index ``n`` to ``upto``.

    The coefficients are c_k = Gamma(nu+1) L_k^(nu-1)(x) / Gamma(nu+k+1), i.e.
    P_{nu,k}(x, 1) scaled by Gamma(nu+1). ``prev``/``curr`` hold c_{n-1} and
    c_n divided by 2**shift. Returns the new mantissas, their shifts and the
    final state.
    """
    vals = []
    shifts = []
    while n < upto:
        c_next = ((2 * n + nu - x) / ((n + 1) * (nu + n + 1))) * curr - (
            (n + nu - 1) / ((n + 1) * (nu + n) * (nu + n + 1))
        ) * prev
        prev = curr
        curr = c_next
        n += 1
        mag = abs(curr)
        if mag > _RESCALE_HI or (0.0 < mag < _RESCALE_LO):
            e = math.frexp(curr)[1]
            curr = math.ldexp(curr, -e)
            prev = math.ldexp(prev, -e)
            shift += e
        vals.append(curr)
        shifts.append(shift)
    return vals, shifts, (n, prev, curr, shift)


def stop_index(log_k, y, offset, log_target, n_min, n_max):
    """Smallest n0 in [n_min, n_max] whose truncation majorant is below target.

    The majorant is exp(log_k) * y**(m+1)/(m+1)! / (1 - y/(m+2)) with
    m = n0 + offset, a geometric bound on e**y - sum_{k<=m} y**k/k!.
    Returns (n0, log_bound); log_bound is +inf while m + 2 <= y.
    """
    log_y = math.log(y)
    # log(y**(m+1)/(m+1)!) for m = n_min + offset
    m = n_min + offset
    log_r = 0.0
    for k in range(1, m + 2):
        log_r += log_y - math.log(k)
    n0 = n_min
    log_bound = math.inf
    while True:
        if m + 2 > y:
            log_bound = log_k + log_r - math.log1p(-y / (m + 2))
            if log_bound <= log_target:
                return n0, log_bound
        else:
            log_bound = math.inf
        if n0 >= n_max:
            return n0, log_bound
        n0 += 1
        m += 1
        log_r += log_y - math.log(m + 1)


def _ldexp(m, e):
    try:
        return math.ldexp(m, e)
    except OverflowError:
        return math.copysign(math.inf, m)


def laguerre_sum(vals, shifts, y, nterms):
    """Compensated sum of c_n (-y)**n for n < nterms.

    Returns (sum, sum of absolute terms).
    """
    s = 0.0
    comp = 0.0
    abs_s = 0.0
    pm = 1.0
    pe = 0
    for n in range(nterms):
        term = _ldexp(vals[n] * pm, shifts[n] + pe)
        t = s + term
        if abs(s) >= abs(term):
            comp += (s - t) + term
        else:
            comp += (term - t) + s
        s = t
        abs_s += abs(term)
        pm, e = math.frexp(pm * -y)
        pe += e
    return s + comp, abs_s


def log_bessel_scaled(mu, q):
    """log of sum_n q**n / (n! (mu+1)_n) for mu > -1, q >= 0.

    I_mu(z) = (z/2)**mu / Gamma(mu+1) times this sum at q = z*z/4.
    """
    s = 1.0
    term = 1.0
    log_scale = 0.0
    n = 0
    while n < _MAX_ITER:
        term *= q / ((n + 1) * (mu + n + 1))
        n += 1
        s += term
        if s > 1e290:
            log_scale += math.log(s)
            term /= s
            s = 1.0
        if term < _SERIES_RTOL * s:
            return log_scale + math.log(s)
    raise ArithmeticError("Bessel series did not converge")


def log_integrand(nu, a, t, lg_nu):
    """log of t**nu exp(-(t*t+a*a)/2) I_{nu-1}(a t) / a**(nu-1)."""
    if t == 0.0:
        p = 2 * nu - 1
        if p > 0:
            return -math.inf
        if p < 0:
            return math.inf
        return -(nu - 1) * math.log(2.0) - 0.5 * a * a - lg_nu
    at = a * t
    return (
        (2 * nu - 1) * math.log(t)
        - (nu - 1) * math.log(2.0)
        - 0.5 * (t * t + a * a)
        - lg_nu
        + log_bessel_scaled(nu - 1, 0.25 * at * at)
    )


def gk15(nu, a, lg_nu, u0, u1, scale, power):
    """Kronrod-15 estimate of the integrand over [u0, u1] and |K15 - G7|.

    The integration variable is u with t = scale * u**power.
    """
    center = 0.5 * (u0 + u1)
    half = 0.5 * (u1 - u0)
    log_jac0 = math.log(scale * power)
    res_k = 0.0
    res_g = 0.0
    for j in range(8):
        if j == 7:
            nodes = (center,)
        else:
            dx = half * _XGK[j]
            nodes = (center - dx, center + dx)
        for u in nodes:
            if power == 1.0:
                t = scale * u
                lf = log_integrand(nu, a, t, lg_nu) + log_jac0
            else:
                t = scale * u ** power
                lf = log_integrand(nu, a, t, lg_nu) + log_jac0 + (power - 1) * math.log(u)
            f = math.exp(lf)
            res_k += _WGK[j] * f
            if j % 2 == 1:
                res_g += _WG[j // 2] * f
    return res_k * half, abs((res_k - res_g) * half)


def reg_gamma_series(s, x, lg_s):
    """Regularized lower incomplete gamma P(s, x) by its power series."""
    if x == 0.0:
        return 0.0
    term = 1.0 / s
    total = term
    ap = s
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if term < total * _SERIES_RTOL:
            return total * math.exp(s * math.log(x) - x - lg_s)
    raise ArithmeticError("incomplete gamma series did not converge")


def reg_gamma_cf(s, x, lg_s):
    """Regularized upper incomplete gamma Q(s, x) by continued fraction (Lentz)."""
    tiny = 1e-300
    b = x + 1.0 - s
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 3e-16:
            return math.exp(s * math.log(x) - x - lg_s) * h
    raise ArithmeticError("incomplete gamma continued fraction did not converge")
