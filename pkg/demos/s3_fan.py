"""Three-punctured sphere: the central cone and the four-cone fan, drawn as SVG.

Writes ``s3_fan.svg`` in the current directory.
"""

from pathlib import Path

from hypfan import enumerate_fan, load_example, secondary_cone
from hypfan.svg import fan_svg

d = load_example("S3")
c = secondary_cone(d, (1, 1, 1))
print("central cone facets (inner normals):", sorted(c.facets))
print("central cone rays:", list(c.rays))

fan = enumerate_fan(d)
for cone in fan.maximal_cones:
    print(cone.rays)
print("f-vector", fan.f_vector)
Path("s3_fan.svg").write_text(fan_svg(fan.to_json()))
print("wrote s3_fan.svg")
