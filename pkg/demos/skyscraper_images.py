"""Images of the skyscraper class in ranks 2 and 3, compared with the group-side induction."""

from hallshuffle.rootsystems import root_datum, skyscraper_g
from hallshuffle.thetamap import theta_skyscraper

for name, r in (("A1", 2), ("A2", 3)):
    for g in (0, 1):
        img = theta_skyscraper(r, g)
        same = skyscraper_g(root_datum(name), g).image == img.theta_image
        print(f"r={r} g={g} prefactor={img.prefactor.to_text()} consistent={img.consistent} "
              f"group side agrees={same}")
