"""Regenerate src/tamagawa/data/torsion_family.json from the closed-form invariants.

The family is described by c4(u) = (u^2 + 3) R6^3 R12 and c6(u) = -R6^4 R24;
the long model with a1 = 1, a2 = a3 = 0 and the short model are derived from
them.  Run from the repository root: python tools/build_family_data.py
"""

import json
from fractions import Fraction
from pathlib import Path

from tamagawa.poly import Poly

R6 = Poly([31, 36, 19, -40, 13, 4, 1])
R12 = Poly([37, 396, 1958, 1684, 2103, -2568, 4, 552, 3, -68, -10, 4, 1])
R24 = Poly([
    3753, 120024, 893052, 2943128, 6945498, 5512360, 3590300, -4083672, 1467519,
    -3808912, 4384056, -851984, -550452, 183120, 62936, -15024, -24009, 568, 5068,
    504, -518, -120, 12, 8, 1,
])

P = Poly([-1, -9, 1, 1])

C4 = Poly([3, 0, 1]) * R6**3 * R12
C6 = -(R6**4) * R24


def coeff_strings(f: Poly) -> list[str]:
    return [str(c) for c in f.coeffs]


def main() -> None:
    A4 = (1 - C4) * Fraction(1, 48)
    A6 = (1 - 3 * C4 - 2 * C6) * Fraction(1, 1728)
    data = {
        "model": "long",
        "version": 1,
        "description": "y^2 + xy = x^3 + A2(u) x^2 + A4(u) x + A6(u); short model y^2 = x^3 + A(u) x + B(u)",
        "A2": ["0"],
        "A4": coeff_strings(A4),
        "A6": coeff_strings(A6),
        # irreducible factors of the discriminant numerator, used as factoring hints
        "disc_factors": {
            "unit": str(2**14),
            "factors": [[coeff_strings(Poly([-1, 1])), 14], [coeff_strings(Poly([1, 1])), 14],
                        [coeff_strings(P), 2], [coeff_strings(R6), 8]],
        },
        "short": {
            "A": coeff_strings(C4 * Fraction(-1, 48)),
            "B": coeff_strings(C6 * Fraction(-1, 864)),
        },
    }
    out = Path(__file__).resolve().parents[1] / "src" / "tamagawa" / "data" / "torsion_family.json"
    out.write_text(json.dumps(data, indent=1) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
