"""Data behind the two GHZ decay figures, written as CSV.

``fig1``: the signed concurrence ``Q_N`` of ``|Phi_N^(0), alpha>`` against the
decay probability, one column per N.  ``fig2``: the critical probability
against N for several values of ``tan(alpha)``.
"""
from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .channels import damp
from .errors import VerificationError
from .ghz import GhzParams, concurrence_k0, critical_p, ghz_xmatrix, q_value
from .xmatrix import gm_concurrence

FIG1_N = (2, 10, 100)
FIG2_TAN = (0.01, 0.1, 0.2, 0.5, 1.0)
VERIFY_MAX_N = 12
VERIFY_TOL = 1e-9


def probability_grid(points: int) -> np.ndarray:
    if points < 2:
        raise ValueError("a grid needs at least 2 points")
    return np.linspace(0.0, 1.0, points)


def _label(value):
    return format(value, "g")


def fig1_table(n_list=FIG1_N, alpha=math.pi / 4, grid=None, verify=False,
               threads=None):
    """Header and rows of ``Q_N(P)``.

    With ``verify`` every N up to 12 gets a ``C_sim_N`` column from damping the
    explicit GHZ matrix; a mismatch with ``max(0, Q_N)`` above 1e-9 raises
    :class:`VerificationError`.
    """
    grid = probability_grid(1001) if grid is None else np.asarray(grid, dtype=float)
    n_list = [int(n) for n in n_list]
    header = ["P"] + [f"Q_{n}" for n in n_list]
    columns = [[q_value(n, alpha, P) for P in grid] for n in n_list]
    if verify:
        for n in n_list:
            if n > VERIFY_MAX_N:
                continue
            state = ghz_xmatrix(GhzParams(n, 0, alpha))

            def simulate(P, state=state):
                return gm_concurrence(damp(state, P)).value

            if threads and threads > 1:
                with ThreadPoolExecutor(max_workers=threads) as pool:
                    sim = list(pool.map(simulate, grid))
            else:
                sim = [simulate(P) for P in grid]
            analytic = [concurrence_k0(n, alpha, P) for P in grid]
            gap = max(abs(s - c) for s, c in zip(sim, analytic))
            if gap > VERIFY_TOL:
                raise VerificationError(
                    f"N={n}: simulated and closed-form concurrence differ by {gap:.3g}"
                )
            header.append(f"C_sim_{n}")
            columns.append(sim)
    rows = [[P] + [col[j] for col in columns] for j, P in enumerate(grid)]
    return header, rows


def fig2_table(tan_list=FIG2_TAN, n_values=range(2, 101)):
    """Header and rows of the critical probability ``P_c(N)`` per ``tan(alpha)``.

    ``P_c`` is clamped to 1; the ``finite_*`` columns are 1 where ``P_c < 1``.
    """
    tan_list = [float(t) for t in tan_list]
    header = (["N"] + [f"Pc_tan{_label(t)}" for t in tan_list]
              + [f"finite_tan{_label(t)}" for t in tan_list])
    rows = []
    for n in n_values:
        crit = [critical_p(n, tan_alpha=t) for t in tan_list]
        rows.append([int(n)] + [c.p_c for c in crit]
                    + [int(c.finite_lifetime) for c in crit])
    return header, rows


def _format(value):
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return format(float(value), ".17g")


def write_csv(header, rows, fh):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_format(v) for v in row])
