"""Exhaustive CORDIC error sweep over every reachable gradient pair.

Evaluates the fixed-point polar converter on the whole [-255, 255]^2
grid and reports worst-case angle and magnitude error against
double-precision atan2/hypot, plus the error at a few interesting
inputs. Useful when touching the iteration count or datapath widths.

Usage: python scripts/cordic_sweep.py [--iterations 16]
"""

import argparse

import numpy as np

from hogpipe.cordic import CordicConfig, polar_raw_arrays
from hogpipe.fixq import ANG, MAG


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--iterations", type=int, default=16)
    args = ap.parse_args()

    cfg = CordicConfig(iterations=args.iterations)
    side = np.arange(-255, 256, dtype=np.int64)
    gx = np.repeat(side, 511)
    gy = np.tile(side, 511)
    mag_raw, ang_raw, precise = polar_raw_arrays(gx, gy, cfg)

    true_mag = np.hypot(gx.astype(float), gy.astype(float))
    true_ang = np.degrees(np.arctan2(gy.astype(float), gx.astype(float)))
    true_ang = np.where(true_ang < 0, true_ang + 180.0, true_ang)
    true_ang = np.where(true_ang == 180.0, 0.0, true_ang)

    d = np.abs(ang_raw / ANG.scale - true_ang)
    circ = np.minimum(d, 180.0 - d)
    nz = true_mag > 0
    mag_rel = np.abs(precise[nz] - true_mag[nz]) / true_mag[nz]
    iface = np.abs(mag_raw - precise * MAG.scale)

    print(f"iterations            {cfg.iterations}")
    print(f"inputs                {gx.size}")
    print(f"max angle err (deg)   {float(circ.max()):.6e}")
    print(f"mean angle err (deg)  {float(circ[nz].mean()):.6e}")
    print(f"max |mag| rel err     {float(mag_rel.max()):.6e}")
    print(f"max interface err     {float(iface.max()):.4f} ulp of U10.6")
    worst = int(np.argmax(circ))
    print(f"worst angle input     gx={int(gx[worst])} gy={int(gy[worst])}")


if __name__ == "__main__":
    main()
