"""How the peak structure depends on the time-unit convention.

The package converts ps to the internal time variable with 2 pi c (angular
frequencies in cm^-1). Reading the same quoted times with c instead (ordinary
frequencies) is equivalent to dividing every time by 2 pi. This script prints
the candidate-peak tables under both readings, so the physical-spectrum
(Fig. 7) and coincidence (Fig. 4) trends can be compared with the text.
"""

import math

from peak_report import report

if __name__ == "__main__":
    for label, scale in (("2 pi c (package default)", 1.0), ("c (times / 2 pi)", 1.0 / (2 * math.pi))):
        print(f"== time convention: {label}")
        for row in report(scale):
            print(row)
        print()
