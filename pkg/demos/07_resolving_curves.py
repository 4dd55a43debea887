"""Embedded resolution of plane curves by weighted blowups.

One weighted blowup at the centre read off the Newton polygon resolves each
quasi-homogeneous singularity in a single step; the singular point of the
proper transform is excluded from the blowup, and the slice charts are
checked smooth.  The invariant strictly decreases along every edge.
"""

from wblow import parse_poly
from wblow.resolve import count_blowups, resolution_is_complete, resolve_plane_curve

CURVES = [
    ("node", "y^2 - x^2"),
    ("cusp", "y^2 - x^3"),
    ("tacnode", "y^2 - x^4"),
    ("ramphoid cusp", "y^2 - x^5"),
    ("E8 curve", "y^3 - x^5"),
    ("two nodes", "y^2 - x^2*(x - 1)^2"),
    ("perturbed cusp", "y^2 - x^3 - x^4"),
]

for name, text in CURVES:
    tree = resolve_plane_curve(parse_poly(text, ("x", "y")), max_steps=8)
    print(f"== {name}: {text} ==")
    print(tree.render())
    print(f"complete: {resolution_is_complete(tree)}  "
          f"blowups: {count_blowups(tree)}")
    print()

print("== a curve with irrational singularities is refused, not guessed ==")
tree = resolve_plane_curve(parse_poly("y^2 - (x^2 - 2)^2", ("x", "y")))
print(tree.render())
