"""Independent reference implementations used by the tests.

Nothing here calls into fcshmc's production kernels: matrices are assembled
dense from their definitions, gradients come from central differences, and
quadratures from brute-force refinement, so agreement is evidence rather
than tautology.
"""

import numpy as np


def central_diff_grad(f, q, scale=1e-6):
    """Central finite differences with per-coordinate step scale*(1+|q_i|)."""
    q = np.asarray(q, dtype=float)
    g = np.empty_like(q)
    for i in range(q.size):
        d = scale * (1.0 + abs(q[i]))
        hi, lo = q.copy(), q.copy()
        hi[i] += d
        lo[i] -= d
        g[i] = (f(hi) - f(lo)) / (2.0 * d)
    return g


def dense_two_scale_laplacian(n_windows, k_panels, tau_dead, tau_sub):
    """M x M tridiagonal pattern assembled entry by entry from the mesh:
    coupling 1/tau of each link on the off-diagonals, negative adjacent-sum
    diagonal.  Link j is a dead link iff j = 0 mod (K+1)."""
    m = n_windows * (k_panels + 1) + 1
    s0 = 1.0 / tau_dead
    s2 = 1.0 / tau_sub
    link = [s0 if j % (k_panels + 1) == 0 else s2 for j in range(m - 1)]
    a = np.zeros((m, m))
    for j, s in enumerate(link):
        a[j, j + 1] = s
        a[j + 1, j] = s
        a[j, j] -= s
        a[j + 1, j + 1] -= s
    return a


def dense_neumann_block(k_panels):
    """(K+1) x (K+1) unit-coupling path-graph Laplacian (Neumann ends)."""
    size = k_panels + 1
    b = np.zeros((size, size))
    for j in range(size - 1):
        b[j, j + 1] = b[j + 1, j] = 1.0
        b[j, j] -= 1.0
        b[j + 1, j + 1] -= 1.0
    return b


def node_times(params):
    """Elapsed physical time at each flat node, built by walking the mesh."""
    times = [0.0]
    for _ in range(params.N):
        times.append(times[-1] + params.tau_dead)
        for _ in range(params.K):
            times.append(times[-1] + params.tau_sub)
    return np.array(times)


def refined_window_integral(path, t_start, t_end, params, panels=10_000):
    """Reference trapezoid quadrature of I(path(t)) over one exposure window."""
    t = np.linspace(t_start, t_end, panels + 1)
    x = path(t)
    rate = params.I_bg + params.I_ref * np.exp(-x * x / (2.0 * params.omega))
    dt = (t_end - t_start) / panels
    return float(dt * (rate.sum() - 0.5 * (rate[0] + rate[-1])))


def canonical_form(n_active):
    """Skew form Omega on the 2 n_active dimensional active phase space."""
    eye = np.eye(n_active)
    zero = np.zeros((n_active, n_active))
    return np.block([[zero, eye], [-eye, zero]])


def phase_space_jacobian(map_fn, q0, p0, scale=1e-6):
    """FD Jacobian of a phase-space map restricted to the active (non-anchor)
    coordinates, ordered (q_1..q_{M-1}, p_1..p_{M-1})."""
    na = q0.size - 1

    def flat_map(z):
        q = np.concatenate(([0.0], z[:na]))
        p = np.concatenate(([0.0], z[na:]))
        out = map_fn(q, p)
        return np.concatenate((out[0][1:], out[1][1:]))

    z0 = np.concatenate((q0[1:], p0[1:]))
    jac = np.empty((2 * na, 2 * na))
    for i in range(2 * na):
        d = scale * (1.0 + abs(z0[i]))
        hi, lo = z0.copy(), z0.copy()
        hi[i] += d
        lo[i] -= d
        jac[:, i] = (flat_map(hi) - flat_map(lo)) / (2.0 * d)
    return jac
