"""Run a small X_0(n) scan and show the instances that did not simply pass.

    python demos/isogeny_scan.py 6 4 10
"""

import sys

from tamagawa.harness.scans import scan_isogeny_family

n, H, D = (int(a) for a in (sys.argv[1:] or ["6", "4", "10"]))
r = scan_isogeny_family(n, H, D, workers=1)
print(f"X_0({n}), height <= {H}, |d| <= {D}: {r.summary}")
for x in r.results:
    if x.verdict != "pass" or x.exception_tag:
        label = x.verdict if x.verdict != "pass" else "exception"
        print(f"  {label}: h={x.instance['h']} d={x.instance['d']} {x.details}")
        if x.replay:
            print(f"    replay: {x.replay}")
