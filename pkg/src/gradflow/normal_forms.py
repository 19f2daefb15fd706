"""Local normal forms of the eight bifurcation families, verified numerically.

Each family is a small polynomial vector field V(x, y, a) on the plane or
the upper half plane.  The module finds its zeros inside a window, computes
Poincare indices by winding numbers, sweeps the parameter over {-1, 0, +1}
and compares the outcome against the expected catalog.  The three gradient
families also carry their potential functions, checked symbolically.

The sink variant of the saddle-node family is written as {-x, -y^2 - a}
(the flow reversal of the source variant); sweeping ``a`` then deforms it
the same way as every other family here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

Poly = dict[tuple[int, int, int], Fraction]  # exponents of (x, y, a)

PLANE = "plane"
UPPER_HALF_PLANE = "upperHalfPlane"

FAMILY_IDS = ("sn-source", "sn-sink", "sc", "bsn-source", "bsn-sink",
              "bds", "ss-sink", "ss-source")


class ZeroOnWindowBoundary(ValueError):
    pass


class NonConvergence(ValueError):
    pass


class AmbiguousWinding(ValueError):
    pass


class CatalogMismatch(ValueError):
    pass


def _poly(*terms: tuple[int, int, int, int]) -> Poly:
    return {(i, j, k): Fraction(c) for i, j, k, c in terms}


def poly_eval(p: Poly, x: float, y: float, a: float) -> float:
    return sum(float(c) * x ** i * y ** j * a ** k
               for (i, j, k), c in p.items())


def poly_partial(p: Poly, var: int) -> Poly:
    out: Poly = {}
    for key, c in p.items():
        if key[var] == 0:
            continue
        new = list(key)
        new[var] -= 1
        out[tuple(new)] = c * key[var]
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class PlanarFamily:
    id: str
    P: Poly
    Q: Poly
    domain: str
    c: float | None = None

    def value(self, x: float, y: float, a: float) -> tuple[float, float]:
        return poly_eval(self.P, x, y, a), poly_eval(self.Q, x, y, a)

    def jacobian(self, x: float, y: float, a: float):
        px, py = poly_partial(self.P, 0), poly_partial(self.P, 1)
        qx, qy = poly_partial(self.Q, 0), poly_partial(self.Q, 1)
        return ((poly_eval(px, x, y, a), poly_eval(py, x, y, a)),
                (poly_eval(qx, x, y, a), poly_eval(qy, x, y, a)))


def family(fid: str, c: float | None = None) -> PlanarFamily:
    """One of the eight families; ``c`` overrides the boundary coupling
    coefficient of the bds/ss forms."""
    if fid == "sn-source":
        return PlanarFamily(fid, _poly((1, 0, 0, 1)),
                            _poly((0, 2, 0, 1), (0, 0, 1, 1)), PLANE)
    if fid == "sn-sink":
        return PlanarFamily(fid, _poly((1, 0, 0, -1)),
                            _poly((0, 2, 0, -1), (0, 0, 1, -1)), PLANE)
    if fid == "sc":
        return PlanarFamily(fid,
                            _poly((2, 0, 0, 1), (0, 2, 0, -1), (0, 0, 0, -1)),
                            _poly((1, 1, 0, -2), (0, 0, 1, 1)), PLANE)
    if fid == "bsn-source":
        return PlanarFamily(fid, _poly((2, 0, 0, 1), (0, 0, 1, 1)),
                            _poly((0, 1, 0, 1)), UPPER_HALF_PLANE)
    if fid == "bsn-sink":
        return PlanarFamily(fid, _poly((2, 0, 0, 1), (0, 0, 1, 1)),
                            _poly((0, 1, 0, -1)), UPPER_HALF_PLANE)
    if fid in ("bds", "ss-sink", "ss-source"):
        if c is None:
            c = {"bds": 0.0, "ss-sink": 1.0, "ss-source": -1.0}[fid]
        sign = -2 if fid == "bds" else 2
        q = _poly((1, 1, 0, sign))
        if c:
            q[(0, 1, 1)] = Fraction(c).limit_denominator(10 ** 9)
        return PlanarFamily(fid,
                            _poly((2, 0, 0, 1), (0, 2, 0, -1), (0, 0, 1, 1)),
                            q, UPPER_HALF_PLANE, c)
    raise ValueError("unknown family %r" % (fid,))


@dataclass(frozen=True)
class ZeroRecord:
    x: float
    y: float
    regular: bool
    on_boundary: bool
    index: int | None = None


_RES = 1e-10       # required residual |V| at a reported zero
_GRID = 48         # sign-scan resolution per axis
# a quadratic zero with residual 1e-10 is only located to about 1e-5, so
# refinements of the same degenerate point can land that far apart
_MERGE = 1e-4      # zeros closer than this are the same point


def _newton(fam: PlanarFamily, a: float, x: float, y: float):
    """Damped (Levenberg) Newton for V = 0; None when it does not settle."""
    lam = 1e-6
    for _ in range(200):
        p, q = fam.value(x, y, a)
        if math.hypot(p, q) < _RES * 1e-2:
            return x, y
        (px, py), (qx, qy) = fam.jacobian(x, y, a)
        # solve (J^T J + lam I) d = -J^T V
        g1 = px * p + qx * q
        g2 = py * p + qy * q
        a11 = px * px + qx * qx + lam
        a12 = px * py + qx * qy
        a22 = py * py + qy * qy + lam
        det = a11 * a22 - a12 * a12
        if det == 0:
            lam *= 10
            continue
        dx = (-g1 * a22 + g2 * a12) / det
        dy = (-g2 * a11 + g1 * a12) / det
        nx, ny = x + dx, y + dy
        np_, nq = fam.value(nx, ny, a)
        if math.hypot(np_, nq) < math.hypot(p, q):
            x, y = nx, ny
            lam = max(lam / 4, 1e-12)
        else:
            lam *= 10
            if lam > 1e12:
                break
    p, q = fam.value(x, y, a)
    return (x, y) if math.hypot(p, q) < _RES else None


def zeros(fam: PlanarFamily, a: float,
          window: tuple[float, float, float, float] = (-2.0, 2.0, -2.0, 2.0)
          ) -> list[ZeroRecord]:
    """All zeros of the family in the window at parameter value ``a``.

    A sign scan over a grid marks candidate cells (either component changes
    sign or is tiny); damped Newton refines each candidate.  On the half
    plane the invariant boundary y = 0 is scanned separately in one
    dimension.
    """
    if abs(a) > 2:
        raise ValueError("parameter sweep is limited to |a| <= 2")
    x0, x1, y0, y1 = window
    if fam.domain == UPPER_HALF_PLANE:
        y0 = 0.0
    h = ((x1 - x0) / _GRID, (y1 - y0) / _GRID)
    small = 4 * max(abs(x1 - x0), abs(y1 - y0)) / _GRID

    def interesting(vals: list[float]) -> bool:
        return (min(vals) <= 0 <= max(vals)
                or min(abs(v) for v in vals) < small)

    found: list[tuple[float, float]] = []
    for i in range(_GRID):
        for j in range(_GRID):
            cx = [x0 + i * h[0], x0 + (i + 1) * h[0]]
            cy = [y0 + j * h[1], y0 + (j + 1) * h[1]]
            ps, qs = [], []
            for x in cx:
                for y in cy:
                    p, q = fam.value(x, y, a)
                    ps.append(p)
                    qs.append(q)
            if interesting(ps) and interesting(qs):
                got = _newton(fam, a, (cx[0] + cx[1]) / 2, (cy[0] + cy[1]) / 2)
                if got is not None:
                    found.append(got)
    if fam.domain == UPPER_HALF_PLANE:
        # P restricted to y = 0 (Q vanishes there identically)
        for i in range(_GRID):
            xm = x0 + (i + 0.5) * h[0]
            got = _newton(fam, a, xm, 0.0)
            if got is not None and abs(got[1]) < _MERGE:
                found.append((got[0], 0.0))

    out: list[ZeroRecord] = []
    for x, y in found:
        if fam.domain == UPPER_HALF_PLANE and y < -_MERGE:
            continue
        if any(math.hypot(x - r.x, y - r.y) < _MERGE for r in out):
            continue
        near_x = min(abs(x - x0), abs(x - x1)) < _MERGE
        near_y = abs(y - y1) < _MERGE or (
            fam.domain == PLANE and abs(y - y0) < _MERGE)
        if near_x or near_y:
            raise ZeroOnWindowBoundary("zero at (%g, %g)" % (x, y))
        boundary = fam.domain == UPPER_HALF_PLANE and abs(y) < _MERGE
        (px, py), (qx, qy) = fam.jacobian(x, 0.0 if boundary else y, a)
        regular = abs(px * qy - py * qx) > 1e-4
        out.append(ZeroRecord(x, 0.0 if boundary else y, regular, boundary))
    return sorted(out, key=lambda r: (r.x, r.y))


def _doubled_value(fam: PlanarFamily, x: float, y: float, a: float):
    """The field reflected through y = 0: (P(x,-y), -Q(x,-y)) below it."""
    if y >= 0:
        return fam.value(x, y, a)
    p, q = fam.value(x, -y, a)
    return p, -q


def poincare_index(fam: PlanarFamily, a: float, z: ZeroRecord,
                   radius: float = 0.25) -> int:
    """Winding number of V around the zero; boundary zeros are measured in
    the doubled field."""
    value = (_doubled_value if z.on_boundary else
             lambda f, x, y, aa: f.value(x, y, aa))
    n = 360
    while n <= 360 * 64:
        total = 0.0
        prev = None
        ok = True
        for k in range(n + 1):
            t = 2 * math.pi * k / n
            p, q = value(fam, z.x + radius * math.cos(t),
                         z.y + radius * math.sin(t), a)
            ang = math.atan2(q, p)
            if prev is not None:
                step = ang - prev
                while step > math.pi:
                    step -= 2 * math.pi
                while step < -math.pi:
                    step += 2 * math.pi
                if abs(step) > math.pi / 4:
                    ok = False
                    break
                total += step
            prev = ang
        if ok:
            w = total / (2 * math.pi)
            if abs(w - round(w)) > 0.02:
                raise AmbiguousWinding("winding %g did not settle" % w)
            return round(w)
        n *= 2
    raise AmbiguousWinding("step refinement cap reached")


def catalog(fam: PlanarFamily, a: float) -> tuple[ZeroRecord, ...]:
    """Zeros with indices filled in, the unit of catalog comparison."""
    return tuple(replace(z, index=poincare_index(fam, a, z))
                 for z in zeros(fam, a))


#: expected multiset of (on_boundary, regular, index) per parameter value
EXPECTED = {
    "sn-source": {-1: [(False, True, 1), (False, True, -1)],
                  0: [(False, False, 0)], 1: []},
    "sn-sink": {-1: [(False, True, 1), (False, True, -1)],
                0: [(False, False, 0)], 1: []},
    "sc": {a: [(False, True, -1), (False, True, -1)] for a in (-1, 0, 1)},
    "bsn-source": {-1: [(True, True, 1), (True, True, -1)],
                   0: [(True, False, 0)], 1: []},
    "bsn-sink": {-1: [(True, True, 1), (True, True, -1)],
                 0: [(True, False, 0)], 1: []},
    "bds": {-1: [(True, True, -1), (True, True, -1)],
            0: [(True, False, -2)], 1: [(False, True, -1)]},
    "ss-sink": {-1: [(True, True, 1), (True, True, 1)],
                0: [(True, False, 2)], 1: [(False, True, 1)]},
    "ss-source": {-1: [(True, True, 1), (True, True, 1)],
                  0: [(True, False, 2)], 1: [(False, True, 1)]},
}

SWEEP = (-1, 0, 1)


@dataclass(frozen=True)
class FamilyReport:
    family: PlanarFamily
    catalogs: dict[int, tuple[ZeroRecord, ...]]

    def doubled_index_total(self, a: int) -> int:
        # boundary zeros already carry the index of the doubled field;
        # interior zeros appear twice in the double
        return sum(z.index if z.on_boundary else 2 * z.index
                   for z in self.catalogs[a])


def _node_kind(fam: PlanarFamily, a: float, z: ZeroRecord) -> str:
    (px, _), (_, qy) = fam.jacobian(z.x, z.y, a)
    return "source" if px + qy > 0 else "sink"


def verify_family(fid: str, c: float | None = None) -> FamilyReport:
    """Sweep a over {-1, 0, +1} and compare against the expected catalog."""
    fam = family(fid, c)
    cats = {}
    for a in SWEEP:
        cat = catalog(fam, a)
        got = sorted((z.on_boundary, z.regular, z.index) for z in cat)
        want = sorted(EXPECTED[fid][a])
        if got != want:
            raise CatalogMismatch("%s at a=%d: found %r, expected %r"
                                  % (fid, a, got, want))
        cats[a] = cat
    # the merged interior node must have the declared stability
    if fid in ("ss-sink", "ss-source"):
        (z,) = cats[1]
        kind = _node_kind(fam, 1, z)
        if kind != fid.split("-")[1]:
            raise CatalogMismatch("%s at a=1: interior node is a %s"
                                  % (fid, kind))
    return FamilyReport(fam, cats)


# -- catastrophes -------------------------------------------------------------

@dataclass(frozen=True)
class Catastrophe:
    id: str
    f: Poly
    family_id: str


CATASTROPHES = (
    # x^3/3 + a x + y^2/2
    Catastrophe("fold-source",
                _poly((3, 0, 0, Fraction(1, 3)), (1, 0, 1, 1),
                      (0, 2, 0, Fraction(1, 2))),
                "bsn-source"),
    # x^3/3 + a x - y^2/2
    Catastrophe("fold-sink",
                _poly((3, 0, 0, Fraction(1, 3)), (1, 0, 1, 1),
                      (0, 2, 0, Fraction(-1, 2))),
                "bsn-sink"),
    # x^3/3 + a x - x y^2
    Catastrophe("double-saddle",
                _poly((3, 0, 0, Fraction(1, 3)), (1, 0, 1, 1),
                      (1, 2, 0, -1)),
                "bds"),
)


def gradient_consistency(cat: Catastrophe) -> bool:
    """Exact check that grad f equals the paired family (P, Q)."""
    fam = family(cat.family_id)
    return (poly_partial(cat.f, 0) == fam.P
            and poly_partial(cat.f, 1) == fam.Q)


# -- c-invariance -------------------------------------------------------------

@dataclass(frozen=True)
class CInvarianceReport:
    family_id: str
    catalogs: dict[float, dict[int, tuple]]
    invariant: bool
    degenerate_c: tuple[float, ...]


def c_invariance(fid: str, c_values) -> CInvarianceReport:
    """Compare zero counts and index multisets across boundary couplings.

    A coupling is flagged degenerate when it produces a non-hyperbolic
    interior zero that is not a saddle (a center), which breaks typicality.
    """
    cats: dict[float, dict[int, tuple]] = {}
    degenerate = []
    for c in c_values:
        fam = family(fid, c)
        per_a = {}
        flagged = False
        for a in SWEEP:
            cat = catalog(fam, a)
            entries = []
            for z in cat:
                stability = None
                if z.regular and z.index == 1:
                    # distinguish node stability: a +1 node can be a sink
                    # or a source, and the coupling sign decides which
                    (px, py), (qx, qy) = fam.jacobian(z.x, z.y, a)
                    tr = px + qy
                    if abs(tr) < 1e-9 and px * qy - py * qx > 0:
                        flagged = True
                    else:
                        stability = "source" if tr > 0 else "sink"
                entries.append((z.on_boundary, z.index, stability))
            per_a[a] = tuple(sorted(
                entries, key=lambda e: (e[0], e[1], e[2] or "")))
        cats[c] = per_a
        if flagged:
            degenerate.append(c)
    baseline = next(iter(cats.values()))
    invariant = all(v == baseline for v in cats.values())
    return CInvarianceReport(fid, cats, invariant, tuple(degenerate))
