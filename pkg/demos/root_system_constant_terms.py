"""Constant terms of induced functions for B2 and G2, and the B2 skyscraper image."""

from hallshuffle.curvezeta import CurveData
from hallshuffle.rootsystems import gk_restriction, root_datum, skyscraper_g

C = CurveData.symbolic(0)
for name in ("B2", "G2"):
    terms = gk_restriction(root_datum(name), C, (2, 1), 1)
    print(f"{name} g=0, weight (2, 1): {len(terms)} terms within height 1 of the orbit")
    for mu, c in sorted(terms.items())[-3:]:
        print(f"  1_{mu}: {c.to_text()}")

for g in (0, 1):
    img = skyscraper_g(root_datum("B2"), g).image
    print(f"B2 skyscraper image at g={g}: {len(img)} terms, equals 1: {img.to_text() == '1'}")
