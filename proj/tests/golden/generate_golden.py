#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
#
# Independent high-precision oracle for the frozen golden files in this
# directory. Uses mpmath (50 digits) for the steering/channel vectors and
# plain numpy for the bulk regression constants. Deliberately shares no
# code with the C++ library; keep it that way.
#
# Run from the repository root:
#   python3 tests/golden/generate_golden.py

import numpy as np
from mpmath import mp, mpf, mpc, sqrt as msqrt, exp as mexp, pi as mpi

mp.dps = 50

C0 = mpf("2.99792458e8")


def wavelength(f_hz):
    return C0 / mpf(f_hz)


def offsets(n_ant):
    return [(2 * (i + 1) - n_ant - 1) / mpf(2) for i in range(n_ant)]


def per_antenna_distance(theta, r, delta, d):
    return msqrt(r * r + delta * delta * d * d - 2 * r * theta * delta * d)


def near_steering(theta, r, n_ant, f_hz):
    lam = wavelength(f_hz)
    d = lam / 2
    inv = 1 / msqrt(mpf(n_ant))
    out = []
    for delta in offsets(n_ant):
        rn = per_antenna_distance(mpf(theta), mpf(r), delta, d)
        phase = -2 * mpi * (rn - mpf(r)) / lam
        out.append(inv * mexp(mpc(0, 1) * phase))
    return out


def far_steering(theta, n_ant):
    inv = 1 / msqrt(mpf(n_ant))
    return [inv * mexp(mpc(0, 1) * mpi * mpf(theta) * delta) for delta in offsets(n_ant)]


def channel_vector(theta, r, n_ant, f_hz, beta):
    lam = wavelength(f_hz)
    h = msqrt(mpf(beta)) / mpf(r) * mexp(mpc(0, 1) * (-2 * mpi * mpf(r) / lam))
    b = near_steering(theta, r, n_ant, f_hz)
    s = msqrt(mpf(n_ant))
    return [s * h * bn for bn in b]


def write_cvec(path, vec):
    with open(path, "w") as fh:
        fh.write("index,re,im\n")
        for i, z in enumerate(vec):
            fh.write("%d,%.17g,%.17g\n" % (i, float(z.real), float(z.imag)))
    print("wrote", path)


# ---------------------------------------------------------------- numpy path

def np_near_steering(theta, r, n_ant, lam):
    d = lam / 2.0
    n = np.arange(1, n_ant + 1)
    delta = (2.0 * n - n_ant - 1.0) / 2.0
    rn = np.sqrt(r * r + delta**2 * d * d - 2.0 * r * theta * delta * d)
    return np.exp(-2j * np.pi * (rn - r) / lam) / np.sqrt(n_ant)


def np_far_steering(theta, n_ant):
    n = np.arange(1, n_ant + 1)
    delta = (2.0 * n - n_ant - 1.0) / 2.0
    return np.exp(1j * np.pi * theta * delta) / np.sqrt(n_ant)


def np_gain(u, v):
    return abs(np.vdot(u, v))


def grid_angles(n_ant):
    n = np.arange(1, n_ant + 1)
    return (2.0 * n - n_ant - 1.0) / n_ant


def dominant_region(powers, rho):
    peak = powers.max()
    psi = np.flatnonzero(powers > rho * rho * peak) + 1  # 1-based indices
    if psi.size == 0:
        psi = np.array([int(np.argmax(powers)) + 1])
    return psi


def med_floor(psi):
    s = np.sort(psi)
    m = s.size
    med = s[m // 2] if m % 2 == 1 else (s[m // 2 - 1] + s[m // 2]) / 2.0
    return int(np.floor(med))


def nearest_grid_index(theta, n_ant):
    # argmin over the grid, 1-based
    return int(np.argmin(np.abs(grid_angles(n_ant) - theta))) + 1


def main():
    f_hz = 100e9
    lam = float(C0) / f_hz
    rho = 1.0 / np.sqrt(2.0)

    # frozen steering / channel vectors
    write_cvec("tests/golden/near_steering_n256_theta0p6_r5.csv",
               near_steering("0.6", "5", 256, "100e9"))
    write_cvec("tests/golden/channel_n64_theta0p3_r20.csv",
               channel_vector("0.3", "20", 64, "100e9", mpf(10) ** mpf("-7.2")))

    # scalar spot values
    d = lam / 2.0
    delta1 = (2 * 1 - 256 - 1) / 2.0
    rn = np.sqrt(5.0**2 + delta1**2 * d * d - 2 * 5.0 * 0.5 * delta1 * d)
    # coordinate-geometry cross check: user at (r*sin(phi), r*cos(phi)), cos(phi)=theta
    ux, uy = 5.0 * np.sqrt(1 - 0.5**2), 5.0 * 0.5
    rn_geo = np.hypot(ux - 0.0, uy - delta1 * d)
    print("per_antenna_distance(theta=.5,r=5,n=1,N=256) = %.17g (geo %.17g)" % (rn, rn_geo))

    z_rayleigh = 2 * 0.4**2 / lam
    print("rayleigh(D=0.4) = %.17g" % z_rayleigh)
    zd256 = (255 * d) ** 2 / (2 * 1.2**2 * lam)
    print("Z_delta(N=256, alpha=1.2) = %.17g" % zd256)
    print("samples theta=0 S=6:", [float("inf")] + [zd256 / s for s in range(1, 6)])

    n_ant = 256
    grid = grid_angles(n_ant)
    W = np.stack([np_far_steering(t, n_ant) for t in grid])  # rows are codewords

    # frozen regression bounds: 3 dB dominant-region span, far vs near, and
    # floor(Med(Psi)) deviation from the true angle's grid index
    far_spans, near_spans, med_devs = [], [], []
    for theta in (-0.8, -0.4, 0.4, 0.8):
        for r, spans in ((100.0, far_spans), (1.0, near_spans)):
            b = np_near_steering(theta, r, n_ant, lam)
            powers = np.abs(W.conj() @ b) ** 2
            psi = dominant_region(powers, rho)
            spans.append(psi.size)
            if r == 1.0:
                med_devs.append(abs(med_floor(psi) - nearest_grid_index(theta, n_ant)))
    print("far-field (r=100m) |Psi| per theta:", far_spans)
    print("near-field (r=1m) |Psi| per theta:", near_spans)
    print("near-field med deviation per theta:", med_devs)

    # column coherence between adjacent same-angle polar codewords (N=256, S=6)
    worst = 0.0
    for theta in grid:
        dists = [zd256 * (1 - theta**2) / s for s in range(1, 6)]
        cws = [np_far_steering(theta, n_ant)] + \
              [np_near_steering(theta, r, n_ant, lam) for r in dists]
        for a, b in zip(cws, cws[1:]):
            worst = max(worst, np_gain(a, b))
    print("column coherence max (N=256,S=6): %.17g" % worst)
    with open("tests/golden/column_coherence_max.txt", "w") as fh:
        fh.write("%.17g\n" % worst)

    # angle-in-the-middle median deviation over the grid, noiseless,
    # r in [3,40] m (frozen regression bound)
    dmax = 0
    for idx, theta in enumerate(grid, start=1):
        b_cache = {}
        for r in np.linspace(3.0, 40.0, 16):
            b = np_near_steering(theta, r, n_ant, lam)
            powers = np.abs(W.conj() @ b) ** 2
            dev = abs(med_floor(dominant_region(powers, rho)) - idx)
            dmax = max(dmax, dev)
    print("max med deviation (N=256, grid angles, r in [3,40]):", dmax)

    # scaled variant used by the unit tests (N=128 keeps them fast)
    n128 = 128
    grid128 = grid_angles(n128)
    W128 = np.stack([np_far_steering(t, n128) for t in grid128])
    dmax128 = 0
    for idx, theta in enumerate(grid128, start=1):
        for r in np.linspace(3.0, 40.0, 16):
            b = np_near_steering(theta, r, n128, lam)
            powers = np.abs(W128.conj() @ b) ** 2
            dmax128 = max(dmax128, abs(med_floor(dominant_region(powers, rho)) - idx))
    print("max med deviation (N=128):", dmax128)


if __name__ == "__main__":
    main()
