"""Compare the close-packed strip entropy with Kasteleyn's cylinder formula.

    python scripts/kasteleyn_oracle.py [max_width]
"""

import math
import sys

from dimerlab.strip import MAX_WIDTH, pure_dimer_entropy

CATALAN = 0.915965594177219015054603514932


def cylinder(W):
    return sum(math.asinh(abs(math.sin((2 * j + 1) * math.pi / W))) for j in range(W)) / (2 * W)


def main(argv):
    top = int(argv[0]) if argv else MAX_WIDTH
    limit = CATALAN / math.pi
    print(f"{'W':>3} {'transfer':>14} {'kasteleyn':>14} {'diff':>9} {'minus G/pi':>11}")
    for W in range(2, top + 1, 2):
        t = pure_dimer_entropy(W)
        k = cylinder(W)
        print(f"{W:>3} {t:14.10f} {k:14.10f} {t - k:9.1e} {t - limit:11.2e}")
    print(f"G/pi = {limit:.10f}")


if __name__ == "__main__":
    main(sys.argv[1:])
