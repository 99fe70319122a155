"""Image dimensions of the sporadic quadratic strata, one line per component."""

from strata.components import list_components
from strata.fiber import image_dimension
from strata.stratum import Stratum, expected_image_dimension, stratum_dimension
from strata.sweep import SPORADIC


def main():
    print(f"{'stratum':<16}{'component':<16}{'dim':>4}{'expected':>10}{'image':>7}  status")
    for g, mu in SPORADIC:
        s = Stratum(2, g, mu)
        for c in list_components(s):
            r = image_dimension(c)
            image = "-" if r.dim is None else r.dim
            print(f"{str(s):<16}{str(c.label):<16}{stratum_dimension(s):>4}{expected_image_dimension(s):>10}{image:>7}  {r.status.value}")


if __name__ == "__main__":
    main()
