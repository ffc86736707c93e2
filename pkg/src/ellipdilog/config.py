"""Global tolerance ladder.

``EPS`` is the point-matching tolerance on the torus (formal identities are
exact after matching at this radius).  ``TOL_ANALYTIC`` bounds sums of
elliptic dilogarithm values.
"""

from contextlib import contextmanager

EPS = 1e-8
TOL_ANALYTIC = 1e-6


def set_tolerances(eps=None, tol_analytic=None):
    global EPS, TOL_ANALYTIC
    if eps is not None:
        if not eps > 0:
            raise ValueError("eps must be positive")
        EPS = float(eps)
    if tol_analytic is not None:
        if not tol_analytic > 0:
            raise ValueError("tol_analytic must be positive")
        TOL_ANALYTIC = float(tol_analytic)


@contextmanager
def tolerances(eps=None, tol_analytic=None):
    old = (EPS, TOL_ANALYTIC)
    set_tolerances(eps, tol_analytic)
    try:
        yield
    finally:
        set_tolerances(*old)
