"""The twelve acceptance checks, each returning a pass flag and a one-line summary."""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ..curve import minimal_invariants_key, minimal_model
from ..families import ANCHOR_U2, ANCHOR_U_HALF, FIXED_J_TABLE, load_torsion_family
from ..padic import splits_completely_at
from ..poly import Poly, resultant
from ..tate import tamagawa_number, tate_local
from .properties import run_property_suite
from .report import ScanReport
from .scans import scan_isogeny_family, scan_torsion_family, verify_fixed_isogeny, verify_i0star_congruences

__all__ = ["Criterion", "CRITERIA", "run_criterion", "run_all"]


@dataclass
class Criterion:
    number: int
    title: str
    ok: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"criterion {self.number:2d} [{'PASS' if self.ok else 'FAIL'}] {self.title}: {self.detail} ({self.seconds:.1f}s)"


def _scan_counts(r: ScanReport) -> str:
    s = r.summary
    return f"{s['total']} instances, {s['fail']} failed, {s['skipped']} skipped, {s['exceptions']} exceptional"


def _failure_text(x) -> str:
    return f"h={x.instance['h']} d={x.instance['d']} (conductor {x.details['conductor']}, c_E {x.details['c_E']})"


def _is_split_I(L, k: int) -> bool:
    return str(L.kodaira) == f"I{k}" and L.split_class == "split" and L.c_p == k


def c1_anchors(workers=None):
    F = load_torsion_family()
    out = []
    ok = True
    for u, anchor, k in ((Fraction(2), ANCHOR_U2, 14), (Fraction(1, 2), ANCHOR_U_HALF, 28)):
        t = time.perf_counter()
        Emin, _ = minimal_model(F.fiber(u), hints=F.hints(u))
        L = tate_local(Emin, 2)
        dt = time.perf_counter() - t
        good = Emin == anchor and _is_split_I(L, k) and dt < 1.0
        ok &= good
        out.append(f"u={u}: {Emin} {L.kodaira} c_2={L.c_p} in {dt:.2f}s")
    return ok, "; ".join(out)


def c2_exception(workers=None):
    F = load_torsion_family()
    k0 = minimal_invariants_key(F.fiber(0), hints=F.hints(0))
    k3 = minimal_invariants_key(F.fiber(3), hints=F.hints(3))
    G = tamagawa_number(F.fiber(0), hints=F.hints(0))
    L2 = G.local_at(2)
    others = {L.p: L.c_p for L in G.locals if L.p != 2}
    ok = k0 == k3 and G.complete and G.conductor.as_dict() == {2: 1, 31: 2} and G.c_E == 14
    ok = ok and L2 is not None and L2.c_p == 14 and all(c == 1 for c in others.values())
    return ok, f"same class {k0 == k3}, conductor {G.conductor}, c_E {G.c_E}, c_2 {L2.c_p if L2 else None}, others {others}"


def c3_torsion_scan(workers=None):
    r = scan_torsion_family(load_torsion_family(), 20, workers=workers)
    tagged = sorted(str(x.instance["u"]) for x in r.results if x.exception_tag is not None)
    ok = r.ok and r.summary["skipped"] == 0 and {"0", "3"} <= set(tagged)
    return ok, f"{_scan_counts(r)}; exceptional u: {', '.join(tagged)}"


def c4_resultants(workers=None):
    F = load_torsion_family()
    disc, c4 = F.short_disc(), F.short_c4()
    vals = {}
    for root in (1, -1):
        lin = Poly([-root, 1])
        q, rem = disc.divmod(lin**14)
        vals[root] = (resultant(lin, q) if rem.is_zero() else None, resultant(lin, c4))
    ok = all(v == (2**82, 2**32) for v in vals.values())
    return ok, ", ".join(f"u{'-' if r == 1 else '+'}1: res(disc)={v[0]}, res(c4)={v[1]}" for r, v in vals.items())


PRINTED_CUBICS = (Poly([4, -27, -4, 3]), Poly([47, 54, -47, -6]), Poly([-2, -9, 2, 1]))


def c5_padic(workers=None):
    got = [splits_completely_at(f, 2) for f in PRINTED_CUBICS]
    return all(got), ", ".join(f"{f}: {g}" for f, g in zip(PRINTED_CUBICS, got))


def c6_x0_18(workers=None):
    r = scan_isogeny_family(18, 12, 30, workers=workers)
    conds = sorted({x.exception_tag["conductor"] for x in r.results if x.exception_tag})
    ok = r.ok and r.summary["skipped"] == 0 and r.summary["exceptions"] > 0 and conds == [14]
    return ok, f"{_scan_counts(r)}; exception conductors {conds}"


def c7_x0_10(workers=None):
    r = scan_isogeny_family(10, 10, 30, workers=workers)
    ok = r.ok and r.summary["skipped"] == 0 and r.summary["exceptions"] == 0
    return ok, _scan_counts(r)


def c8_x0_8(workers=None):
    r = scan_isogeny_family(8, 10, 30, workers=workers)
    conds = sorted({x.exception_tag["conductor"] for x in r.results if x.exception_tag})
    ok = r.ok and r.summary["skipped"] == 0 and set(conds) <= {15, 48}
    return ok, f"{_scan_counts(r)}; exception conductors {conds}"


def c9_x0_6(workers=None):
    r = scan_isogeny_family(6, 10, 30, workers=workers)
    tags = [x.exception_tag for x in r.results if x.exception_tag]
    c1 = sorted({t["conductor"] for t in tags if t["c_E"] == 1 and t["j"] != "0"})
    c3 = sorted({t["conductor"] for t in tags if t["c_E"] == 3})
    ok = r.ok and r.summary["skipped"] == 0 and set(c1) <= {20, 80} and set(c3) <= {20}
    detail = f"{_scan_counts(r)}; c_E=1 (j!=0) conductors {c1}; c_E=3 conductors {c3}"
    if r.failures:
        detail += "; failing: " + ", ".join(_failure_text(x) for x in r.failures)
    return ok, detail


def c10_fixed(workers=None):
    parts, ok = [], True
    for n in sorted(FIXED_J_TABLE):
        r = verify_fixed_isogeny(n, 30)
        ok &= r.ok
        parts.append(f"n={n}: {r.summary['pass']}/{r.summary['total']}")
    return ok, ", ".join(parts)


def c11_i0star(workers=None):
    r = verify_i0star_congruences(200)
    by = {}
    for x in r.results:
        by.setdefault(x.proposition, []).append(x.verdict == "pass")
    dens = next(x for x in r.results if x.proposition == "i0star-density").details
    enough = len(by["i0star-conductor-20"]) >= 20 and len(by["i0star-conductor-80"]) >= 20
    ok = r.ok and enough
    counts = ", ".join(f"{k}: {sum(v)}/{len(v)}" for k, v in by.items())
    return ok, f"{counts}; density {dens['irreducible']}/{dens['primes']} = {dens['fraction']}"


def c12_properties(workers=None):
    t = time.perf_counter()
    r = run_property_suite(0)
    dt = time.perf_counter() - t
    bad = [x.proposition for x in r.results if x.verdict != "pass"]
    ok = not bad and dt <= 120
    return ok, f"{len(r.results)} properties, failing: {bad or 'none'}"


CRITERIA: dict[int, tuple[str, Callable]] = {
    1: ("example anchors", c1_anchors),
    2: ("exceptional curve", c2_exception),
    3: ("torsion family scan H=20", c3_torsion_scan),
    4: ("resultant identities", c4_resultants),
    5: ("2 splits completely", c5_padic),
    6: ("X_0(18) scan", c6_x0_18),
    7: ("X_0(10) scan", c7_x0_10),
    8: ("X_0(8) scan", c8_x0_8),
    9: ("X_0(6) scan", c9_x0_6),
    10: ("fixed j-invariants", c10_fixed),
    11: ("I0* congruences", c11_i0star),
    12: ("property suite", c12_properties),
}


def run_criterion(n: int, workers: int | None = None) -> Criterion:
    title, fn = CRITERIA[n]
    t = time.perf_counter()
    try:
        ok, detail = fn(workers)
    except Exception as exc:  # a crash is a failed criterion, reported with its message
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return Criterion(n, title, ok, detail, time.perf_counter() - t)


def run_all(workers: int | None = None, only: list[int] | None = None) -> list[Criterion]:
    return [run_criterion(n, workers) for n in (only or sorted(CRITERIA))]
