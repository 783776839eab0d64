"""Write SVG figures of the first construction steps for several presets.

Each figure nests the placed squares of all words up to the chosen depth,
marks even vertices with filled dots and odd with hollow ones, and draws the
oriented edges of the level-zero square.
"""

import pathlib

from fractal_dirac import preset, write_svg

OUT = pathlib.Path(__file__).resolve().parent / "figures"
OUT.mkdir(exist_ok=True)

JOBS = [
    ("cantor_dust2", 3),
    ("sierpinski_carpet", 3),
    ("lifted_cantor", 4),
    ("rotation", 4),
    ("non_osc", 3),
]

for name, depth in JOBS:
    path = OUT / f"{name}_depth{depth}.svg"
    write_svg(preset(name), depth, path)
    print(f"wrote {path}")

print()
print("The rotated preset shows each generation turned by a further angle")
print("step; the overlapping preset shows the large center square covering")
print("parts of the corner squares.")
