"""Exact piecewise linear functions of one rational variable.

A PL is defined on an interval of the extended line.  Interior knots are
rational; a finite domain end always coincides with the first/last knot,
while an infinite end extends the boundary piece with a constant slope.
All operations are exact over Fraction.
"""

import bisect
from fractions import Fraction

from .scalars import INF, NINF, Dual, is_inf


def _nm(x):
    """Coerce a finite scalar, passing Dual perturbations through."""
    return x if isinstance(x, (Fraction, Dual)) else Fraction(x)


class PL:
    __slots__ = ("xs", "vs", "lslope", "rslope")

    def __init__(self, xs, vs, lslope=None, rslope=None):
        if not xs:
            raise ValueError("a PL needs at least one knot")
        if len(xs) != len(vs):
            raise ValueError("knot/value length mismatch")
        for a, b in zip(xs, xs[1:]):
            if not a < b:
                raise ValueError("knots must be strictly increasing")
        self.xs = tuple(xs)
        self.vs = tuple(vs)
        self.lslope = lslope
        self.rslope = rslope

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, v, lo=NINF, hi=INF):
        v = _nm(v)
        if is_inf(lo) and is_inf(hi):
            return cls([Fraction(0)], [v], Fraction(0), Fraction(0))
        if is_inf(lo):
            return cls([hi], [v], Fraction(0), None)
        if is_inf(hi):
            return cls([lo], [v], None, Fraction(0))
        if lo == hi:
            return cls([lo], [v])
        return cls([lo, hi], [v, v])

    @classmethod
    def line(cls, slope, x0, v0, lo=NINF, hi=INF):
        """The affine function through (x0, v0) with the given slope."""
        slope = Fraction(slope)
        x0 = _nm(x0)
        v0 = _nm(v0)
        at = lambda x: v0 + slope * (x - x0)
        if is_inf(lo) and is_inf(hi):
            return cls([x0], [v0], slope, slope)
        if is_inf(lo):
            return cls([hi], [at(hi)], slope, None)
        if is_inf(hi):
            return cls([lo], [at(lo)], None, slope)
        if lo == hi:
            return cls([lo], [at(lo)])
        return cls([lo, hi], [at(lo), at(hi)])

    # -- basic queries -----------------------------------------------------

    @property
    def dom_lo(self):
        return NINF if self.lslope is not None else self.xs[0]

    @property
    def dom_hi(self):
        return INF if self.rslope is not None else self.xs[-1]

    def __call__(self, x):
        x = _nm(x)
        xs = self.xs
        if x <= xs[0]:
            if x == xs[0]:
                return self.vs[0]
            if self.lslope is None:
                raise ValueError("argument below domain")
            return self.vs[0] + self.lslope * (x - xs[0])
        if x >= xs[-1]:
            if x == xs[-1]:
                return self.vs[-1]
            if self.rslope is None:
                raise ValueError("argument above domain")
            return self.vs[-1] + self.rslope * (x - xs[-1])
        i = bisect.bisect_left(xs, x)
        if xs[i] == x:
            return self.vs[i]
        x0, x1 = xs[i - 1], xs[i]
        v0, v1 = self.vs[i - 1], self.vs[i]
        return v0 + (v1 - v0) * (x - x0) / (x1 - x0)

    def __repr__(self):
        return "PL(%r, %r, lslope=%r, rslope=%r)" % (
            list(self.xs), list(self.vs), self.lslope, self.rslope)

    def canon(self):
        """Remove interior knots that sit on a straight piece."""
        xs, vs = list(self.xs), list(self.vs)
        out_x, out_v = [xs[0]], [vs[0]]
        for i in range(1, len(xs) - 1):
            x0, v0 = out_x[-1], out_v[-1]
            # collinearity via cross-multiplication: safe for Dual knots
            if (vs[i] - v0) * (xs[i + 1] - xs[i]) != (vs[i + 1] - vs[i]) * (xs[i] - x0):
                out_x.append(xs[i])
                out_v.append(vs[i])
        if len(xs) > 1:
            out_x.append(xs[-1])
            out_v.append(vs[-1])
        # an infinite tail collinear with the boundary piece absorbs the knot
        if self.lslope is not None and len(out_x) > 1:
            if out_v[1] - out_v[0] == self.lslope * (out_x[1] - out_x[0]):
                out_x.pop(0)
                out_v.pop(0)
        if self.rslope is not None and len(out_x) > 1:
            if out_v[-1] - out_v[-2] == self.rslope * (out_x[-1] - out_x[-2]):
                out_x.pop()
                out_v.pop()
        return PL(out_x, out_v, self.lslope, self.rslope)

    def __eq__(self, other):
        if not isinstance(other, PL):
            return NotImplemented
        a, b = self.canon(), other.canon()
        return (a.xs, a.vs, a.lslope, a.rslope) == (b.xs, b.vs, b.lslope, b.rslope)

    # -- pointwise arithmetic ---------------------------------------------

    def shift_y(self, d):
        d = _nm(d)
        return PL(self.xs, [v + d for v in self.vs], self.lslope, self.rslope)

    def scale_y(self, k):
        k = Fraction(k)
        sl = None if self.lslope is None else self.lslope * k
        sr = None if self.rslope is None else self.rslope * k
        return PL(self.xs, [v * k for v in self.vs], sl, sr)

    def __neg__(self):
        return self.scale_y(-1)

    def restrict(self, lo, hi):
        """Restriction to [lo, hi] intersect domain; None if empty."""
        lo = max(lo, self.dom_lo)
        hi = min(hi, self.dom_hi)
        if lo > hi:
            return None
        inner = [x for x in self.xs if lo < x < hi]
        xs, vs = [], []
        if not is_inf(lo):
            xs.append(lo)
            vs.append(self(lo))
        for x in inner:
            xs.append(x)
            vs.append(self(x))
        if not is_inf(hi) and (not xs or hi > xs[-1]):
            xs.append(hi)
            vs.append(self(hi))
        if not xs:  # fully infinite range: keep all knots
            xs, vs = list(self.xs), list(self.vs)
        lsl = self.lslope if is_inf(lo) else None
        rsl = self.rslope if is_inf(hi) else None
        return PL(xs, vs, lsl, rsl)

    # -- suprema and sign --------------------------------------------------

    def sup(self):
        """(supremum, witness knot or None when attained only at infinity)."""
        best = max(self.vs)
        arg = self.xs[self.vs.index(best)]
        if self.lslope is not None and self.lslope < 0:
            return INF, None
        if self.rslope is not None and self.rslope > 0:
            return INF, None
        return best, arg

    def inf(self):
        v, a = (-self).sup()
        return -v, a

    def ge_zero_regions(self):
        """Maximal closed subintervals of the domain where self >= 0."""
        segs = []
        xs, vs = self.xs, self.vs
        if self.lslope is not None:
            l, x0, v0 = self.lslope, xs[0], vs[0]
            if l == 0:
                if v0 >= 0:
                    segs.append((NINF, x0))
            else:
                thr = x0 - v0 / l
                if l > 0:
                    if thr <= x0:
                        segs.append((thr, x0))
                else:
                    if v0 >= 0:
                        segs.append((NINF, x0))
                    else:
                        segs.append((NINF, thr))
        for i in range(len(xs)):
            if vs[i] >= 0:
                segs.append((xs[i], xs[i]))
            if i + 1 < len(xs):
                a, b = xs[i], xs[i + 1]
                va, vb = vs[i], vs[i + 1]
                if va >= 0 and vb >= 0:
                    segs.append((a, b))
                elif va > 0 > vb or va < 0 < vb:
                    z = a + (b - a) * va / (va - vb)
                    segs.append((a, z) if va > 0 else (z, b))
        if self.rslope is not None:
            r, x1, v1 = self.rslope, xs[-1], vs[-1]
            if r == 0:
                if v1 >= 0:
                    segs.append((x1, INF))
            else:
                thr = x1 - v1 / r
                if r < 0:
                    if thr >= x1:
                        segs.append((x1, thr))
                else:
                    if v1 >= 0:
                        segs.append((x1, INF))
                    else:
                        segs.append((thr, INF))
        segs = [(a, b) for a, b in segs if a <= b]
        segs.sort(key=_seg_key)
        merged = []
        for a, b in segs:
            if merged and a <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], b)
            else:
                merged.append([a, b])
        return [(a, b) for a, b in merged]


def _seg_key(seg):
    a, _ = seg
    if is_inf(a):
        return (-1 if a < 0 else 1, Fraction(0))
    return (0, a)


# -- binary combinations ---------------------------------------------------

def align(f, g):
    """Restrict f and g to their common domain on a merged knot set.

    Returns (xs, fv, gv, lf, lg, rf, rg) or None if the domains are disjoint.
    """
    lo = max(f.dom_lo, g.dom_lo)
    hi = min(f.dom_hi, g.dom_hi)
    if lo > hi:
        return None
    f2 = f.restrict(lo, hi)
    g2 = g.restrict(lo, hi)
    xs = sorted(set(f2.xs) | set(g2.xs))
    fv = [f2(x) for x in xs]
    gv = [g2(x) for x in xs]
    return xs, fv, gv, f2.lslope, g2.lslope, f2.rslope, g2.rslope


def pl_add(f, g):
    al = align(f, g)
    if al is None:
        return None
    xs, fv, gv, lf, lg, rf, rg = al
    ls = None if lf is None else lf + lg
    rs = None if rf is None else rf + rg
    return PL(xs, [a + b for a, b in zip(fv, gv)], ls, rs)


def pl_sub(f, g):
    return pl_add(f, -g)


def pl_max(f, g):
    al = align(f, g)
    if al is None:
        return None
    xs, fv, gv, lf, lg, rf, rg = al
    out_x, out_v = [], []
    for i in range(len(xs)):
        if i > 0:
            d0 = fv[i - 1] - gv[i - 1]
            d1 = fv[i] - gv[i]
            if (d0 > 0 > d1) or (d0 < 0 < d1):
                t = d0 / (d0 - d1)
                xc = xs[i - 1] + t * (xs[i] - xs[i - 1])
                vc = fv[i - 1] + t * (fv[i] - fv[i - 1])
                if out_x[-1] < xc < xs[i]:
                    out_x.append(xc)
                    out_v.append(vc)
        out_x.append(xs[i])
        out_v.append(max(fv[i], gv[i]))
    ls = rs = None
    if lf is not None:
        d0 = fv[0] - gv[0]
        ds = lf - lg
        if d0 != 0 and ds != 0 and d0 / ds > 0:
            xc = xs[0] - d0 / ds
            vc = fv[0] + lf * (xc - xs[0])
            out_x.insert(0, xc)
            out_v.insert(0, vc)
        if ds < 0:
            ls = lf
        elif ds > 0:
            ls = lg
        else:
            ls = lf if d0 >= 0 else lg
    if rf is not None:
        d1 = fv[-1] - gv[-1]
        ds = rf - rg
        if d1 != 0 and ds != 0 and -d1 / ds > 0:
            xc = xs[-1] - d1 / ds
            vc = fv[-1] + rf * (xc - xs[-1])
            out_x.append(xc)
            out_v.append(vc)
        if ds > 0:
            rs = rf
        elif ds < 0:
            rs = rg
        else:
            rs = rf if d1 >= 0 else rg
    return PL(out_x, out_v, ls, rs).canon()


def pl_min(f, g):
    m = pl_max(-f, -g)
    return None if m is None else -m


def pl_abs(f):
    return pl_max(f, -f)


def pl_max_list(fs):
    it = iter(fs)
    acc = next(it)
    for f in it:
        acc = pl_max(acc, f)
        if acc is None:
            return None
    return acc


def pl_min_list(fs):
    it = iter(fs)
    acc = next(it)
    for f in it:
        acc = pl_min(acc, f)
        if acc is None:
            return None
    return acc
