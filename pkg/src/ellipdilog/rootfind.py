"""Solutions of f(z) = c on the torus for a function in divisor form.

Roots are located as zeros of the entire theta function
``G(z) = scale * prod theta1(z - a_i) - c * prod theta1(z - p_j)``, which has
exactly ``deg f`` zeros per period cell and no poles.  Pipeline: coarse grid
scan for local minima of the chordal merit ``|f - c| / (|f| + |c|)``, Newton
from those seeds, then a small-circle contour analysis around each candidate
(power sums of the enclosed roots) to obtain multiplicities and the centres
of multiple roots.
"""

import cmath
import math

import numpy as np

from . import config
from .efield import Divisor
from .errors import InvalidArgumentError, NumericalFailure
from .weierstrass import dlog_theta1

GRID_LEVELS = (64, 128, 256)
NEWTON_ITERS = 80
MAX_STEP = 0.1
DISK_RADIUS = 1e-3
MAX_DISK_RADIUS = 0.05
CIRCLE_MERIT = 1e-6
MERIT_ACCEPT = 1e-6
BACKWARD_TOL = 1e-10
ABEL_TOL = 1e-8


def _is_inf(c):
    return c is None or cmath.isinf(complex(c))


def _g_terms(f, c, z):
    """Chordal merit, Newton step and G'/G for G = num - c*den at z."""
    a, b = f._log_parts(z)
    la, lg = f._dlog_parts(z)
    r = b + cmath.log(c) - a
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        low = r.real <= 0
        t = np.exp(np.where(low, r, -r))
        # low: G ~ 1 - t, G' ~ la - t*lg ; else G ~ t - 1, G' ~ t*la - lg
        g = np.where(low, 1 - t, t - 1)
        gp = np.where(low, la - t * lg, t * la - lg)
        merit = np.abs(g) / (1 + np.abs(t))
        dlog = gp / g
    merit = np.where(np.isfinite(merit), merit, 1.0)
    return merit, dlog


def _deflation(z, roots, lattice):
    if not roots:
        return 0.0
    centres = np.array([r[0] for r in roots])
    mults = np.array([r[1] for r in roots])
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.sum(mults * dlog_theta1(np.asarray(z)[..., None] - centres, lattice.theta), axis=-1)


def _grid(lattice, n):
    s = (np.arange(n) + 0.5) / n
    return s[:, None] + s[None, :] * lattice.tau


def _local_minima(merit):
    m = merit
    mask = np.ones(m.shape, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di or dj:
                mask &= m <= np.roll(np.roll(m, di, axis=0), dj, axis=1)
    return mask


def _newton(f, c, z, roots):
    z = np.array(z, dtype=complex)
    lattice = f.lattice
    active = np.ones(z.shape, dtype=bool)
    for _ in range(NEWTON_ITERS):
        if not np.any(active):
            break
        za = z[active]
        _, dlog = _g_terms(f, c, za)
        dlog = dlog - _deflation(za, roots, lattice)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = 1.0 / dlog
        step = np.where(np.isfinite(step), step, 0.0)
        size = np.abs(step)
        step = np.where(size > MAX_STEP, step * (MAX_STEP / np.maximum(size, MAX_STEP)), step)
        z[active] = lattice.reduce(za - step)
        done = np.abs(step) < 1e-15
        idx = np.nonzero(active)[0]
        active[idx[done]] = False
    merit, _ = _g_terms(f, c, z)
    return z, merit


def _circle(f, c, centre, rho, n_nodes):
    theta = 2 * np.pi * np.arange(n_nodes) / n_nodes
    w = rho * np.exp(1j * theta)
    merit, dlog = _g_terms(f, c, centre + w)
    return w, merit, dlog


def _disk_moments(f, c, centre, rho, kmax):
    w, _, dlog = _circle(f, c, centre, rho, max(64, 8 * kmax + 16))
    if not np.all(np.isfinite(dlog)):
        return None
    return np.array([np.mean(w ** (k + 1) * dlog) for k in range(kmax + 1)])


def _roots_from_power_sums(p, m):
    """Roots of the monic degree-m polynomial with power sums p[1..m]."""
    e = [1.0 + 0j]
    for k in range(1, m + 1):
        acc = 0j
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * p[i]
        e.append(acc / k)
    coeffs = [(-1) ** k * e[k] for k in range(m + 1)]
    return np.roots(coeffs) if m > 0 else np.array([])


def _polish(f, c, z, iters=8):
    z = complex(z)
    for _ in range(iters):
        _, dlog = _g_terms(f, c, np.array([z]))
        if dlog[0] == 0 or not cmath.isfinite(dlog[0]):
            break
        step = 1.0 / dlog[0]
        if not cmath.isfinite(step) or abs(step) > 1e-3:
            break
        z -= step
        if abs(step) < 1e-16:
            break
    return z


def _analyse_candidate(f, c, z, accepted):
    """Roots (centre, multiplicity, radius) inside a small disk around z.

    The radius grows from DISK_RADIUS until |G| on the circle clears
    round-off (flat multiple roots need this), capped by the distance to
    roots already accepted.
    """
    lattice = f.lattice
    cap = MAX_DISK_RADIUS
    for centre, _, r_k in accepted:
        gap = float(lattice.distance(z, centre)) - r_k
        cap = min(cap, 0.5 * gap)
    if cap < 1e-10:
        return []
    rho = min(DISK_RADIUS, cap)
    while True:
        _, merit, _ = _circle(f, c, z, rho, 64)
        floor = float(np.min(merit))
        if floor > CIRCLE_MERIT or rho >= cap:
            break
        rho = min(3 * rho, cap)
    mom = _disk_moments(f, c, z, rho, 0)
    if mom is None:
        return []
    m = int(round(mom[0].real))
    if m <= 0 or abs(mom[0] - m) > 0.05:
        return []
    mom = _disk_moments(f, c, z, rho, m)
    if mom is None:
        return []
    if m == 1:
        return [(_polish(f, c, z + mom[1]), 1, rho)]
    rel = _roots_from_power_sums(mom, m)
    noise = 1e-16 / max(floor, 1e-300)
    merge = rho * max(1e-4, 10 * noise ** (1.0 / m))
    groups = []
    used = np.zeros(m, dtype=bool)
    for i in range(m):
        if used[i]:
            continue
        members = np.nonzero(~used & (np.abs(rel - rel[i]) < merge))[0]
        used[members] = True
        groups.append(members)
    if len(groups) == 1:
        return [(z + mom[1] / m, m, rho)]
    out = []
    for g in groups:
        centre = z + np.mean(rel[g])
        if len(g) == 1:
            centre = _polish(f, c, centre)
        out.append((centre, len(g), rho))
    return out


def _ulp_polish(f, c, z):
    """Best double-precision representative of a simple root: search the
    5x5 neighbourhood of z in units of the local float spacing."""
    k = np.arange(-2, 3)
    dre = np.spacing(abs(z.real) + 1e-300) * k
    dim = np.spacing(abs(z.imag) + 1e-300) * k
    cand = (z.real + dre)[:, None] + 1j * (z.imag + dim)[None, :]
    merit, _ = _g_terms(f, c, cand.ravel())
    return complex(cand.ravel()[int(np.argmin(merit))])


def _inside_accepted(z, accepted, lattice):
    for centre, _, r_k in accepted:
        if lattice.distance(z, centre) < r_k:
            return True
    return False


def solve_fiber(f, c, grid=GRID_LEVELS[0]):
    """All solutions of f(z) = c with multiplicities, as a positive Divisor.

    The total multiplicity equals deg f.  c may be ``inf`` (poles) or 0.
    """
    lattice = f.lattice
    if _is_inf(c):
        return Divisor(f.poles, np.ones(len(f.poles), int), lattice)
    c = complex(c)
    if c == 0:
        return Divisor(f.zeros, np.ones(len(f.zeros), int), lattice)
    if f.is_constant:
        if abs(f.scale - c) <= 1e-12 * max(1.0, abs(c)):
            raise InvalidArgumentError("f is identically equal to c")
        return Divisor([], [], lattice)

    n = f.degree
    accepted = []    # (centre, multiplicity, disk radius)
    levels = [g for g in GRID_LEVELS if g >= grid] or [grid]
    for level in levels:
        pts = _grid(lattice, level)
        merit, _ = _g_terms(f, c, pts)
        seeds = pts[_local_minima(merit)]
        seeds = np.array([s for s in seeds if not _inside_accepted(s, accepted, lattice)],
                         dtype=complex)
        if len(seeds):
            roots_only = [(a[0], a[1]) for a in accepted]
            z, zmerit = _newton(f, c, seeds, roots_only)
            order = np.argsort(zmerit)
            for i in order:
                if zmerit[i] > MERIT_ACCEPT:
                    break
                if _inside_accepted(z[i], accepted, lattice):
                    continue
                accepted.extend(_analyse_candidate(f, c, z[i], accepted))
        total = sum(a[1] for a in accepted)
        if total >= n:
            break
    total = sum(a[1] for a in accepted)
    if total != n:
        raise NumericalFailure(f"fiber multiplicity {total} differs from degree {n}")

    lifts = lattice.reduce(np.array([a[0] for a in accepted], dtype=complex))
    mults = np.array([a[1] for a in accepted], dtype=int)
    lifts = np.array([_ulp_polish(f, c, z) if m == 1 else z for z, m in zip(lifts, mults)])
    merit, _ = _g_terms(f, c, lifts)
    if np.max(merit) > BACKWARD_TOL:
        raise NumericalFailure(f"fiber residual too large ({np.max(merit):.3g})")
    abel = complex(np.sum(mults * lifts) - np.sum(f.poles))
    _, resid = lattice.lattice_part(abel)
    if abs(complex(resid)) > ABEL_TOL:
        raise NumericalFailure(f"fiber violates Abel's relation by {abs(complex(resid)):.3g}")
    return Divisor(lifts, mults, lattice, eps=min(config.EPS, 1e-9))


def fiber_residuals(f, c, fiber):
    """|f(root) - c| for each root of a fiber (a Divisor or an array of lifts)."""
    vals = f(getattr(fiber, "lifts", fiber))
    return np.abs(np.atleast_1d(vals) - complex(c))


def count_zeros(f, c, seed=0, panels=16, nodes=16, retries=5):
    """Number of solutions of f = c in a period cell, by the argument principle.

    Integrates the logarithmic derivative of the entire function
    ``num - c * den`` (or of ``num`` / ``den`` when c is 0 / inf) around a
    slightly shifted fundamental parallelogram.
    """
    lattice = f.lattice
    tau = lattice.tau
    if f.is_constant:
        return 0
    rng = np.random.default_rng(seed)
    x, wts = np.polynomial.legendre.leggauss(nodes)
    t = np.concatenate([(x + 1 + 2 * k) / (2 * panels) for k in range(panels)])
    wt = np.tile(wts, panels) / (2 * panels)
    for _ in range(retries):
        z0 = -(0.01 + 0.05 * rng.random()) * (1 + tau) + 0.02 * (rng.random() - 0.5)
        sides = [(z0, 1.0), (z0 + 1, tau), (z0 + 1 + tau, -1.0), (z0 + tau, -tau)]
        total = 0j
        worst = np.inf
        for start, edge in sides:
            z = start + t * edge
            if _is_inf(c):
                dlog = f._dlog_parts(z)[1]
                merit = np.ones(z.shape)
            elif complex(c) == 0:
                dlog = f._dlog_parts(z)[0]
                merit = np.ones(z.shape)
            else:
                merit, dlog = _g_terms(f, complex(c), z)
            worst = min(worst, float(np.min(merit)))
            total += np.sum(wt * dlog) * edge
        count = total / (2j * math.pi)
        k = int(round(count.real))
        if abs(count - k) < 0.05 and worst > 1e-8:
            return k
    raise NumericalFailure("argument-principle count did not settle on an integer")
