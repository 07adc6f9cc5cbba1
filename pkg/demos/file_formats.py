"""Walk the .plnc byte layout and round-trip meshes through OBJ and STL.

Run with:  python3 demos/file_formats.py
"""

import struct
import tempfile
from pathlib import Path

from planecode import encode_convex, load_mesh, read_code, write_code, write_obj, write_stl_binary
from planecode.shapes import cube

code = encode_convex(cube()).sorted_canonical()
blob = write_code(code)
print("cube .plnc file, %d bytes:" % len(blob))
print("  magic    %r" % blob[:4])
print("  version  %d" % blob[4])
print("  kind     %d (0 = one convex plane list)" % blob[5])
print("  planes   %d" % struct.unpack_from("<I", blob, 6))
print("  records  6 x 3 float32 (nu, phi, h), little endian:")
for k in range(6):
    nu, phi, h = struct.unpack_from("<3f", blob, 10 + 12 * k)
    print("    % .7f  % .7f  % .7f" % (nu, phi, h))

back = read_code(blob)
print("re-written file identical: %s" % (write_code(back) == blob))

with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    mesh = cube()
    (tmp / "cube.obj").write_text(write_obj(mesh))
    (tmp / "cube.stl").write_bytes(write_stl_binary(mesh))
    for name in ("cube.obj", "cube.stl"):
        data = (tmp / name).read_bytes()
        again = load_mesh(data, name.rsplit(".", 1)[1])
        print("%-9s %5d bytes -> %d verts, %d tris, volume %.6f" % (
            name, len(data), len(again.vertices), len(again.triangles), again.volume()))
