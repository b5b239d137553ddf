"""Rectangle approximations of interval modules.

Two approximations are provided: the midpoint construction (pull the two
extreme bounding-rectangle corners halfway onto the boundary staircases) and
the optimal rectangle, found by partitioning the bounding rectangle into
diagonal bands, placing the four rectangle corners into bands in every
combination, and solving each placement exactly as a handful of small linear
programs over rationals.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .geometry import (RectangleSpec, StaircaseInterval, band, intercept,
                       point, tval)
from .interleaving import triv_distance
from .scalars import INF, NINF, ext, is_inf

HALF = Fraction(1, 2)


@dataclass
class RectApproxResult:
    rect: RectangleSpec
    epsilon: object


# --------------------------------------------------------------------------
# midpoint construction


def _corner_pull(reg, x, lower):
    """Distance from a bounding corner to its boundary staircase, and the
    midpoint of the pull (half the diagonal gap)."""
    c = intercept(x)
    seg = reg.slice_at(c)
    if seg.is_empty:
        return INF, x
    target = seg.t_lo if lower else seg.t_hi
    gap = (target - tval(x)) if lower else (tval(x) - target)
    if is_inf(gap):
        return INF, x
    step = gap / 2 if lower else -gap / 2
    return gap / 2, point(x.x1 + step, x.x2 + step)


def construction1(M: StaircaseInterval) -> RectApproxResult:
    """Midpoint rectangle approximation.

    The bounding corners r', s' are pulled halfway toward their diagonal
    projections on the lower/upper staircase; the achieved distance is the
    larger half-gap.  When trivializing the module is at least as cheap, the
    zero module is returned instead.
    """
    reg = M.region()
    triv = reg.triv()
    er, r = _corner_pull(reg, M.bounding_r, lower=True)
    es, s = _corner_pull(reg, M.bounding_s, lower=False)
    eps = max(er, es)
    if triv > eps:
        return RectApproxResult(RectangleSpec(r, s), eps)
    return RectApproxResult(RectangleSpec.zero(), triv)


# --------------------------------------------------------------------------
# slice-length tables over the vertex diagonals


class DiamTable:
    """Slice lengths at the vertex diagonals with range-max lookups."""

    def __init__(self, intercepts, lengths):
        self.intercepts = list(intercepts)
        self.lengths = list(lengths)
        n = len(lengths)
        self.inside_max = {}
        self.outside_max = {}
        for i in range(n):
            acc = NINF
            for j in range(i, n):
                acc = max(acc, lengths[j])
                self.inside_max[(i, j)] = acc
        for i in range(n):
            for j in range(i, n):
                out = [lengths[k] for k in range(n) if k < i or k > j]
                self.outside_max[(i, j)] = max(out) if out else NINF

    def diam(self, i, j):
        if j < i:
            return NINF
        return self.inside_max[(i, j)]

    def codiam(self, i, j):
        if j < i:
            return max(self.lengths) if self.lengths else NINF
        return self.outside_max[(i, j)]


def diam_tables(M: StaircaseInterval) -> DiamTable:
    reg = M.region()
    cs = reg.knots()
    g = reg.length_fn()
    if g is INF:
        lengths = [INF for _ in cs]
    else:
        lengths = [g(c) for c in cs]
    return DiamTable(cs, lengths)


def band_partition(M: StaircaseInterval):
    """Diagonal bands of the bounding rectangle cut at the vertex diagonals."""
    reg = M.region()
    breaks = reg.knots()
    if reg.clo is NINF:
        breaks = [NINF] + breaks
    if reg.chi is INF:
        breaks = breaks + [INF]
    if len(breaks) == 1:
        return [band(breaks[0], breaks[0])]
    return [band(a, b) for a, b in zip(breaks, breaks[1:])]


# --------------------------------------------------------------------------
# exact rational simplex (min c.x, A x <= b, x >= 0)


def solve_lp(c, A, b, duals=False):
    """Two-phase simplex with Bland's rule, exact over Fraction.

    Returns (value, x) or None when infeasible.  Unbounded problems raise.
    With duals=True the result is (value, x, y) where y holds the optimal
    row multipliers read off the slack reduced costs, normalized so that
    b.y equals the optimal value.
    """
    m, n = len(A), len(c)
    rows = []
    senses = []  # +1 slack, -1 needs artificial
    for i in range(m):
        ai = [Fraction(v) for v in A[i]]
        bi = Fraction(b[i])
        if bi < 0:
            ai = [-v for v in ai]
            bi = -bi
            senses.append(-1)
        else:
            senses.append(1)
        rows.append((ai, bi))
    nart = sum(1 for s in senses if s < 0)
    total = n + m + nart
    T = []
    basis = []
    ak = 0
    for i, (ai, bi) in enumerate(rows):
        row = ai + [Fraction(0)] * (m + nart) + [bi]
        row[n + i] = Fraction(1) if senses[i] > 0 else Fraction(-1)
        if senses[i] > 0:
            basis.append(n + i)
        else:
            row[n + m + ak] = Fraction(1)
            basis.append(n + m + ak)
            ak += 1
        T.append(row)

    def pivot(r, col):
        piv = T[r][col]
        T[r] = [v / piv for v in T[r]]
        for rr in range(len(T)):
            if rr != r and T[rr][col] != 0:
                f = T[rr][col]
                T[rr] = [a - f * p for a, p in zip(T[rr], T[r])]
        basis[r] = col

    def run(obj, ncols):
        red = list(obj) + [Fraction(0)]
        for r, bv in enumerate(basis):
            if obj[bv] != 0:
                f = obj[bv]
                red = [a - f * p for a, p in zip(red, T[r])]
        while True:
            col = None
            for j in range(ncols):
                if red[j] < 0:
                    col = j
                    break
            if col is None:
                return -red[-1], red
            row = None
            best = None
            for r in range(len(T)):
                if T[r][col] > 0:
                    ratio = T[r][-1] / T[r][col]
                    if best is None or ratio < best or \
                            (ratio == best and basis[r] < basis[row]):
                        best, row = ratio, r
            if row is None:
                raise ArithmeticError("unbounded linear program")
            pivot(row, col)
            f = red[col]
            if f != 0:
                red = [a - f * p for a, p in zip(red, T[row])]

    if nart:
        obj1 = [Fraction(0)] * (n + m) + [Fraction(1)] * nart
        if run(obj1, total)[0] > 0:
            return None
        # pivot any artificial out of the basis
        for r in range(len(T)):
            if basis[r] >= n + m:
                for j in range(n + m):
                    if T[r][j] != 0:
                        pivot(r, j)
                        break
    obj2 = [Fraction(v) for v in c] + [Fraction(0)] * (m + nart)
    val, red = run(obj2, n + m)
    x = [Fraction(0)] * n
    for r, bv in enumerate(basis):
        if bv < n:
            x[bv] = T[r][-1]
    if duals:
        y = [red[n + i] * senses[i] for i in range(m)]
        return val, x, y
    return val, x


# --------------------------------------------------------------------------
# per-cell optimization

# affine expressions a0 + a.(p1, p2, q1, q2); constants may be infinite
_ZERO4 = (Fraction(0),) * 4


def _aff(const, coeffs=_ZERO4):
    return (ext(const), tuple(Fraction(v) for v in coeffs))

_P1 = _aff(0, (1, 0, 0, 0))
_P2 = _aff(0, (0, 1, 0, 0))
_Q1 = _aff(0, (0, 0, 1, 0))
_Q2 = _aff(0, (0, 0, 0, 1))


def _acomb(k1, e1, k2=0, e2=None, const=0):
    c = ext(const) + k1 * e1[0] + (k2 * e2[0] if e2 is not None else 0)
    v2 = e2[1] if e2 is not None else _ZERO4
    return (c, tuple(k1 * a + k2 * b for a, b in zip(e1[1], v2)))


def _piece(f, lo, hi):
    """PL f as (alpha, beta) with f(c) = alpha + beta*c on the band [lo, hi]."""
    if not is_inf(lo) and not is_inf(hi) and lo == hi:
        return (f(lo), Fraction(0))
    if is_inf(lo):
        beta = f.lslope
        x0 = hi
    elif is_inf(hi):
        beta = f.rslope
        x0 = lo
    else:
        beta = (f(hi) - f(lo)) / (hi - lo)
        x0 = lo
    return (f(x0) - beta * x0, beta)


class _CellGeometry:
    """Per-band linear pieces of the boundary functions of one interval."""

    def __init__(self, M: StaircaseInterval):
        self.M = M
        self.reg = M.region()
        self.bands = band_partition(M)
        self.tables = diam_tables(M)
        self.lo_pieces = []
        self.hi_pieces = []
        self.min_len = []
        for b in self.bands:
            if self.reg.tlo is NINF:
                self.lo_pieces.append(None)
            else:
                self.lo_pieces.append(_piece(self.reg.tlo, b.lo, b.hi))
            if self.reg.thi is INF:
                self.hi_pieces.append(None)
            else:
                self.hi_pieces.append(_piece(self.reg.thi, b.lo, b.hi))
            lop, hip = self.lo_pieces[-1], self.hi_pieces[-1]
            if lop is None or hip is None:
                self.min_len.append(Fraction(0))
            else:
                # slice length is linear across a band: min at the ends
                a, k = hip[0] - lop[0], hip[1] - lop[1]
                ends = [a + k * e for e in (b.lo, b.hi) if not is_inf(e)]
                self.min_len.append(max(min(ends), Fraction(0))
                                    if ends else Fraction(0))

    def boundary_eval(self, bi, corner_c, corner_t, which):
        """dl-style gap atoms at a corner constrained to band bi."""
        piece = self.hi_pieces[bi] if which == "hi" else self.lo_pieces[bi]
        if piece is None:
            return None  # infinite boundary: the gap is +-inf, caller decides
        alpha, beta = piece
        # alpha + beta*c - t  as an affine expression
        e = _acomb(beta, corner_c, -1, corner_t, const=alpha)
        return e

    def slice_len(self, bi, corner_c):
        lop, hip = self.lo_pieces[bi], self.hi_pieces[bi]
        if lop is None or hip is None:
            return None  # unbounded slice
        a = hip[0] - lop[0]
        b = hip[1] - lop[1]
        return _acomb(b, corner_c, const=a)


def _cell_ranges(geo, bi, bj):
    """Index range of vertex diagonals certainly inside [c_q, c_p]."""
    cs = geo.tables.intercepts
    lo = geo.bands[bj].hi
    hi = geo.bands[bi].lo
    i = 0
    while i < len(cs) and cs[i] < lo:
        i += 1
    j = len(cs) - 1
    while j >= 0 and cs[j] > hi:
        j -= 1
    return i, j


def optimize_cell(M, cell, tables=None, geo=None, best_bound=None):
    """Best rectangle with its four corners in the given bands.

    cell = (i, j, k, l): the band indices for the top-left, bottom-right,
    bottom-left and top-right corners.  Returns (RectangleSpec, value) or
    None when the placement is infeasible or cannot beat best_bound.
    """
    if geo is None:
        geo = _CellGeometry(M)
    return _optimize_bands(M, geo, cell, best_bound, which="all")


def _optimize_bands(M, geo, cell, best_bound, which):
    """Shared band-placement solver.

    which selects the solved branches: "all" (the per-cell problem),
    "pinch" (the two width/height branches, with the r and s corner
    intercepts relaxed to the contiguous band range - they do not appear in
    those objectives) or "hull" (the boundary-shift branch only).
    """
    bi, bj, bk, bl = cell
    bands = geo.bands
    rb, sb = M.bounding_r, M.bounding_s
    if any(is_inf(v) for v in (rb.x1, rb.x2, sb.x1, sb.x2)):
        raise PreconditionError("cell optimization needs a bounded interval")

    cp = _acomb(1, _P2, -1, _P1)
    cq = _acomb(1, _Q2, -1, _Q1)
    cr = _acomb(1, _Q2, -1, _P1)
    cs_ = _acomb(1, _P2, -1, _Q1)
    tp = _acomb(HALF, _P1, HALF, _P2)
    tq = _acomb(HALF, _Q1, HALF, _Q2)
    tr = _acomb(HALF, _P1, HALF, _Q2)
    ts = _acomb(HALF, _Q1, HALF, _P2)

    cons = []  # affine <= 0

    def bounds(bidx, ce):
        bnd = bands[bidx]
        if not is_inf(bnd.lo):
            cons.append(_acomb(-1, ce, const=bnd.lo))
        if not is_inf(bnd.hi):
            cons.append(_acomb(1, ce, const=-bnd.hi))

    bounds(bi, cp)
    bounds(bj, cq)
    if which == "pinch":
        # the r and s intercepts only need to stay inside the cell's
        # contiguous band range
        for ce in (cr, cs_):
            if not is_inf(bands[bj].lo):
                cons.append(_acomb(-1, ce, const=bands[bj].lo))
            if not is_inf(bands[bi].hi):
                cons.append(_acomb(1, ce, const=-bands[bi].hi))
    else:
        bounds(bk, cr)
        bounds(bl, cs_)
    cons.append(_acomb(-1, _P1, const=rb.x1))
    cons.append(_acomb(-1, _Q2, const=rb.x2))
    cons.append(_acomb(1, _Q1, const=-sb.x1))
    cons.append(_acomb(1, _P2, const=-sb.x2))
    cons.append(_acomb(1, _P1, -1, _Q1))
    cons.append(_acomb(1, _Q2, -1, _P2))

    vi, vj = _cell_ranges(geo, bi, bj)
    out_d = geo.tables.codiam(vi, vj)
    in_d = geo.tables.diam(vi, vj)
    if best_bound is not None:
        # every branch carries the outside diameter and both slice lengths
        lb = max(geo.min_len[bi], geo.min_len[bj],
                 out_d if out_d is not NINF else Fraction(0))
        if lb / 2 > best_bound:
            return None

    len_p = geo.slice_len(bi, cp)
    len_q = geo.slice_len(bj, cq)
    if len_p is None or len_q is None:
        return None

    t1 = [_acomb(HALF, len_p), _acomb(HALF, len_q)]
    if out_d is not NINF:
        t1.append(_aff(out_d / 2))
    t2a = [_acomb(HALF, len_p), _acomb(HALF, len_q)]
    if in_d is not NINF:
        t2a.append(_aff(in_d / 2))
    width = _acomb(HALF, _Q1, -HALF, _P1)
    height = _acomb(HALF, _P2, -HALF, _Q2)

    branches = []
    if which in ("all", "pinch"):
        branches.append(t1 + t2a + [width])
        branches.append(t1 + t2a + [height])
    if which in ("all", "hull"):
        hull_terms = []
        for bidx, ce, te, side, sign in ((bi, cp, tp, "hi", 1),
                                         (bj, cq, tq, "hi", 1),
                                         (bk, cr, tr, "lo", 1),
                                         (bi, cp, tp, "lo", -1),
                                         (bj, cq, tq, "lo", -1),
                                         (bl, cs_, ts, "hi", -1)):
            e = geo.boundary_eval(bidx, ce, te, side)
            if e is None:
                hull_terms = None
                break
            hull_terms.append(e if sign > 0 else _acomb(-1, e))
        if hull_terms is not None:
            branches.append(t1 + hull_terms + [_aff(0)])

    best = None
    lbs = (rb.x1, rb.x2, rb.x1, rb.x2)
    ubs = (sb.x1, sb.x2, sb.x1, sb.x2)
    for atoms in branches:
        res = _solve_branch(atoms, cons, lbs, ubs)
        if res is None:
            continue
        val, xs = res
        p1, p2, q1, q2 = xs
        rect = RectangleSpec((p1, q2), (q1, p2))
        key = (val, rect.area(), (p1, q2, q1, p2))
        if best is None or key < best[0]:
            best = (key, rect, val)
    if best is None:
        return None
    return best[1], best[2]


def _solve_branch(atoms, cons, lbs, ubs):
    """Minimize max(atoms) under cons <= 0 and the variable box."""
    usable = []
    for a0, av in atoms:
        if a0 is INF:
            return None
        if a0 is NINF:
            continue
        usable.append((a0, av))
    if not usable:
        return None
    # variables: shifted (p1, p2, q1, q2) then the epigraph variable t
    n = 5
    A, b = [], []
    for c0, cv in cons:
        if c0 is NINF:
            continue
        if c0 is INF:
            return None
        shift = c0 + sum(k * l for k, l in zip(cv, lbs))
        A.append(list(cv) + [Fraction(0)])
        b.append(-shift)
    for a0, av in usable:
        shift = a0 + sum(k * l for k, l in zip(av, lbs))
        A.append(list(av) + [Fraction(-1)])
        b.append(-shift)
    for v in range(4):
        row = [Fraction(0)] * n
        row[v] = Fraction(1)
        A.append(row)
        b.append(ubs[v] - lbs[v])
    # solve through the dual: min b.y  s.t.  -A^T y <= (0,0,0,0,1), y >= 0.
    # Its right-hand side is nonnegative, so no phase 1 is needed, and the
    # tableau has only five rows; the primal optimum is -value and the
    # primal point is the vector of row multipliers.
    m = len(A)
    Ad = [[-A[i][j] for i in range(m)] for j in range(n)]
    bd = [Fraction(0)] * 4 + [Fraction(1)]
    try:
        dval, _, x = solve_lp(b, Ad, bd, duals=True)
    except ArithmeticError:
        return None  # unbounded dual: the placement is infeasible
    return -dval, tuple(x[v] + lbs[v] for v in range(4))


# --------------------------------------------------------------------------
# global search


def optimal_rectangle(M: StaircaseInterval) -> RectApproxResult:
    """Best rectangle-or-zero approximation under the interleaving distance.

    Enumerates every placement of the four corners into diagonal bands,
    solves each exactly, and keeps the best value; ties go to smaller area,
    then lexicographic corners, and the zero module wins whenever
    trivializing is at least as cheap as the best rectangle.
    """
    triv = triv_distance(M)
    if M.is_rectangle():
        return RectApproxResult(RectangleSpec(M.bounding_r, M.bounding_s),
                                Fraction(0))
    rb, sb = M.bounding_r, M.bounding_s
    if any(is_inf(v) for v in (rb.x1, rb.x2, sb.x1, sb.x2)):
        # unbounded support: fall back to the midpoint construction
        return construction1(M)
    geo = _CellGeometry(M)
    nb = len(geo.bands)
    seed = construction1(M)
    best = None  # best cell result: (key, rect, value)

    def consider(out):
        nonlocal best
        if out is None:
            return
        rect, val = out
        key = (val, rect.area(),
               (rect.r.x1, rect.r.x2, rect.s.x1, rect.s.x2))
        if best is None or key < best[0]:
            best = (key, rect, val)

    def bound():
        return seed.epsilon if best is None else min(seed.epsilon, best[2])

    for j in range(nb):
        for i in range(j, nb):
            # the width/height branches ignore the r and s corner bands
            consider(_optimize_bands(M, geo, (i, j, j, j), bound(),
                                     which="pinch"))
            for k in range(j, i + 1):
                for l in range(j, i + 1):
                    consider(_optimize_bands(M, geo, (i, j, k, l), bound(),
                                             which="hull"))
    # a cell only displaces the midpoint construction when strictly better
    rect, eps = seed.rect, seed.epsilon
    if best is not None and best[2] < eps:
        rect, eps = best[1], best[2]
    if rect.is_zero or triv <= eps:
        return RectApproxResult(RectangleSpec.zero(), triv)
    return RectApproxResult(rect, eps)


def approx_decomposable(summands, method="optimal"):
    """Summand-wise rectangle approximation of a decomposable module.

    Returns (rect specs aligned with the summands, per-summand epsilons,
    aggregate epsilon = max).  Zero sentinels mark dropped summands.
    """
    if method == "construction1":
        results = [construction1(Mi) for Mi in summands]
    elif method == "optimal":
        results = [optimal_rectangle(Mi) for Mi in summands]
    else:
        raise ValueError("unknown method %r" % (method,))
    rects = [r.rect for r in results]
    eps = [r.epsilon for r in results]
    return rects, eps, (max(eps) if eps else Fraction(0))
