"""Scratch: compare boundary closures for the two-stage scheme on Case A."""
import numpy as np
import hyperdiff as hd
from hyperdiff.mesh import NodeRole


def solve_variant(case, alpha, dt, tol, max_steps, variant, use_alpha_factor=True):
    grid = case.grid
    cx, cy = dt / grid.h_x, dt / grid.h_y
    hx, hy = 0.5 * cx, 0.5 * cy
    k_x, k_y, k_c, delta = case.k_fields()
    scale = alpha * dt / delta
    bx, by, bc = k_x * scale, k_y * scale, k_c * scale
    det = (1.0 + bx) * (1.0 + by) - bc * bc
    m11, m12, m22 = (1.0 + bx) / det, bc / det, (1.0 + by) / det

    roles = case.roles
    pinned_mask = case.pinned_mask()
    pinned_values = np.where(pinned_mask, case.pinned, 0.0)
    interior_inner = roles[1:-1, 1:-1] == NodeRole.INTERIOR
    wall_bottom = roles[:, 0] == NodeRole.WALL
    wall_top = roles[:, -1] == NodeRole.WALL
    wall_mask = roles == NodeRole.WALL
    af = alpha if use_alpha_factor else 1.0

    phi = pinned_values.copy()
    u = np.zeros(grid.shape)
    v = np.zeros(grid.shape)

    NX, NY = grid.shape

    def ghosted(arr, sym_y=True):
        """(NX, NY+2) array with wall-ghost rows in y (mirror/antimirror)."""
        g = np.empty((NX, NY + 2))
        g[:, 1:-1] = arr
        sign = 1.0 if sym_y else -1.0
        g[:, 0] = sign * arr[:, 1]
        g[:, -1] = sign * arr[:, -2]
        return g

    for step in range(1, max_steps + 1):
        if variant == "v0":
            # zeroth-order extrapolation everywhere (current package behavior)
            rhs_u = (1 - cx) * u[1:-1, 1:-1] + hx * (u[:-2, 1:-1] + u[2:, 1:-1]) \
                + hx * (phi[:-2, 1:-1] - phi[2:, 1:-1])
            rhs_v = (1 - cy) * v[1:-1, 1:-1] + hy * (v[1:-1, :-2] + v[1:-1, 2:]) \
                + hy * (phi[1:-1, :-2] - phi[1:-1, 2:])
            u_new = u.copy(); v_new = v.copy()
            u_new[1:-1, 1:-1] = m11 * rhs_u + m12 * rhs_v
            v_new[1:-1, 1:-1] = m12 * rhs_u + m22 * rhs_v
            upd = (1 - cx - cy) * phi[1:-1, 1:-1] \
                + hx * (phi[:-2, 1:-1] + phi[2:, 1:-1]) + hy * (phi[1:-1, :-2] + phi[1:-1, 2:]) \
                + af * hx * (u_new[:-2, 1:-1] - u_new[2:, 1:-1]) \
                + af * hy * (v_new[1:-1, :-2] - v_new[1:-1, 2:])
            phi_new = phi.copy()
            phi_new[1:-1, 1:-1] = np.where(interior_inner, upd, phi[1:-1, 1:-1])
            phi_new[wall_bottom, 0] = phi_new[wall_bottom, 1]
            phi_new[wall_top, -1] = phi_new[wall_top, -2]
            for arr in (u_new, v_new):
                arr[0, :] = arr[1, :]; arr[-1, :] = arr[-2, :]
                arr[:, 0] = arr[:, 1]; arr[:, -1] = arr[:, -2]
            v_new[wall_mask] = 0.0
        else:
            # wall ghosts: phi,u symmetric, v antisymmetric across walls;
            # wall nodes updated by the interior formulas.
            pg = ghosted(phi, True)
            ug = ghosted(u, True)
            vg = ghosted(v, False)
            # stage 1 on i interior, all j rows (walls included via ghosts)
            rhs_u = (1 - cx) * ug[1:-1, 1:-1] + hx * (ug[:-2, 1:-1] + ug[2:, 1:-1]) \
                + hx * (pg[:-2, 1:-1] - pg[2:, 1:-1])
            rhs_v = (1 - cy) * vg[1:-1, 1:-1] + hy * (vg[1:-1, :-2] + vg[1:-1, 2:]) \
                + hy * (pg[1:-1, :-2] - pg[1:-1, 2:])
            u_new = u.copy(); v_new = v.copy()
            u_new[1:-1, :] = m11 * rhs_u + m12 * rhs_v
            v_new[1:-1, :] = m12 * rhs_u + m22 * rhs_v
            if variant == "v2":
                # Dirichlet columns: linear extrapolation of u, v
                u_new[0, :] = 2 * u_new[1, :] - u_new[2, :]
                u_new[-1, :] = 2 * u_new[-2, :] - u_new[-3, :]
                v_new[0, :] = 2 * v_new[1, :] - v_new[2, :]
                v_new[-1, :] = 2 * v_new[-2, :] - v_new[-3, :]
            else:
                u_new[0, :] = u_new[1, :]; u_new[-1, :] = u_new[-2, :]
                v_new[0, :] = v_new[1, :]; v_new[-1, :] = v_new[-2, :]
            v_new[wall_mask] = 0.0
            # stage 2 with ghosts, updating interior + wall rows
            ung = ghosted(u_new, True)
            vng = ghosted(v_new, False)
            upd = (1 - cx - cy) * pg[1:-1, 1:-1] \
                + hx * (pg[:-2, 1:-1] + pg[2:, 1:-1]) + hy * (pg[1:-1, :-2] + pg[1:-1, 2:]) \
                + af * hx * (ung[:-2, 1:-1] - ung[2:, 1:-1]) \
                + af * hy * (vng[1:-1, :-2] - vng[1:-1, 2:])
            phi_new = phi.copy()
            updatable = ~pinned_mask[1:-1, :]
            phi_new[1:-1, :] = np.where(updatable, upd, phi[1:-1, :])
        np.copyto(phi_new, pinned_values, where=pinned_mask)
        res = np.max(np.abs(phi_new - phi)) / dt
        phi, u, v = phi_new, u_new, v_new
        if res <= tol:
            return phi, step, True
    return phi, max_steps, False


if __name__ == "__main__":
    import sys, time
    grid = hd.GridSpec(50, 50)
    case = hd.case_a(grid, 1e4)
    for variant in ("v0", "v1", "v2"):
        for alpha in (4.0, 1.0):
            t0 = time.perf_counter()
            phi, steps, conv = solve_variant(case, alpha, 1e-4, 1e-7, 400_000, variant)
            t1 = time.perf_counter()
            print(f"{variant} alpha={alpha}: steps={steps} conv={conv} "
                  f"min={phi.min():.4e} max={phi.max():.8f} ({t1-t0:.0f}s)")
        sys.stdout.flush()
