"""Regenerate src/tamagawa/data/jmaps.json (needs sympy, used only here).

Stores each X_0(n) j-map as numerator/denominator polynomials together with
the irreducible factorizations of j, its denominator and j - 1728.  The
factors feed the factorizer as hints; the loader re-multiplies them and
refuses the file if any product disagrees.
"""

import json
from pathlib import Path

import sympy as sp

h = sp.symbols("h")

JMAPS = {
    18: ((h**3 - 2) ** 3 * (h**9 - 6 * h**6 - 12 * h**3 - 8) ** 3, h**9 * (h**3 - 8) * (h**3 + 1) ** 2),
    10: ((h**6 - 4 * h**5 + 16 * h + 16) ** 3, (h + 1) ** 2 * (h - 4) * h**5),
    8: ((h**4 - 16 * h**2 + 16) ** 3, (h**2 - 16) * h**2),
    6: ((h + 6) ** 3 * (h**3 + 18 * h**2 + 84 * h + 24) ** 3, h * (h + 8) ** 3 * (h + 9) ** 2),
}
CUSPS = {18: ["0", "-1", "2"], 10: ["0", "4", "-1"], 8: ["0", "4", "-4"], 6: ["0", "-8", "-9"]}


def coeffs(f) -> list[str]:
    return [str(c) for c in reversed(sp.Poly(sp.expand(f), h).all_coeffs())]


def factors(f) -> dict:
    lc, facs = sp.factor_list(sp.expand(f), h)
    return {"unit": str(lc), "factors": [[coeffs(g), int(e)] for g, e in facs]}


def main() -> None:
    out = {}
    for n, (num, den) in JMAPS.items():
        out[str(n)] = {
            "num": coeffs(num),
            "den": coeffs(den),
            "cusps": CUSPS[n],
            "num_factors": factors(num),
            "den_factors": factors(den),
            "j1728_factors": factors(num - 1728 * den),
        }
    path = Path(__file__).resolve().parents[1] / "src" / "tamagawa" / "data" / "jmaps.json"
    path.write_text(json.dumps(out, indent=1) + "\n")
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
