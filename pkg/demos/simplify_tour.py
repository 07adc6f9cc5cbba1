"""Lossy plane-code passes: drop tiny faces, merge near-parallel planes.

Run with:  python3 demos/simplify_tour.py
"""

import numpy as np

from planecode import SimplifyParams, decode_convex, simplify_code
from planecode.shapes import chamfered_cube_code, ngon_prism_code

code = chamfered_cube_code(t=0.03)
print("chamfered cube: %d planes (the chamfer face is tiny)" % len(code))
for delta in (1e-5, 1e-3, 0.05):
    out = simplify_code(code, SimplifyParams(delta=delta))
    print("  delta=%-7g keeps %d planes" % (delta, len(out)))
print("  a delta above the chamfer area but below the cube faces removes")
print("  exactly the chamfer plane and restores the plain cube code")

prism = ngon_prism_code(32)
v0 = decode_convex(prism).to_mesh().volume()
print("\n32-gon prism: %d planes, volume %.6f" % (len(prism), v0))
for deg in (5.0, 12.0, 15.0, 25.0):
    out = simplify_code(prism, SimplifyParams(tau=np.radians(deg)))
    v = decode_convex(out).to_mesh().volume()
    print("  tau=%4.1f deg -> %2d planes, volume %.6f (%+.3f%%)" % (
        deg, len(out), v, 100.0 * (v - v0) / v0))
print("neighboring side planes sit 11.25 deg apart, so tau above that")
print("merges them in pairs while the caps never move")
