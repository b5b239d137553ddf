"""Interleaving distances between staircase interval modules.

Everything here works on diagonal slice functions.  The slicewise distance
is a 1-parameter computation per intercept; the full interval distance adds
a correction obtained by probing shifted overlaps at finitely many shift
values.  All arithmetic is exact; one-sided limits at probe breakpoints are
evaluated with infinitesimal (Dual) perturbations.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PreconditionError
from .geometry import (DiagRegion, Point2, StaircaseInterval, point, point_at,
                       region_intersection, tval)
from .pl import PL, pl_abs, pl_max, pl_min, pl_sub
from .scalars import INF, NINF, Dual, ext, is_inf, real_part

HALF = Fraction(1, 2)


def _as_region(x) -> DiagRegion:
    if isinstance(x, StaircaseInterval):
        return x.region()
    if isinstance(x, DiagRegion):
        return x
    raise TypeError("expected a StaircaseInterval or DiagRegion")


# --------------------------------------------------------------------------
# slicewise distance


def slice_di(s1, s2):
    """Interleaving distance of two segment modules on the same diagonal."""
    e1, e2 = s1.is_empty, s2.is_empty
    if e1 and e2:
        return Fraction(0)
    if e1 or e2:
        s = s2 if e1 else s1
        if is_inf(s.t_lo) or is_inf(s.t_hi):
            return INF
        return s.length / 2
    if s1.intercept != s2.intercept:
        raise PreconditionError("slices lie on different diagonals")
    half_longest = max(_seg_len(s1), _seg_len(s2)) / 2
    shift = max(_absdiff(s1.t_lo, s2.t_lo), _absdiff(s1.t_hi, s2.t_hi))
    return min(half_longest, shift)


def _seg_len(s):
    return INF if (is_inf(s.t_lo) or is_inf(s.t_hi)) else s.length


def _absdiff(a, b):
    return abs(a - b)


def triv_distance(M):
    """Distance from M to the zero module: half the longest slice."""
    return _as_region(M).triv()


# --------------------------------------------------------------------------
# supremum of the slicewise distance over all diagonals


def di_diag(M, N):
    v, _ = _di_diag(_as_region(M), _as_region(N))
    return v


def _di_diag(A: DiagRegion, B: DiagRegion):
    """(sup over intercepts of slice_di, a witness intercept or None)."""
    best, arg = Fraction(0), None

    def upd(v, a):
        nonlocal best, arg
        if v > best:
            best, arg = v, a

    for lo, hi in _only_pieces(A.clo, A.chi, B.clo, B.chi):
        upd(*_sup_half_length(A, lo, hi))
    for lo, hi in _only_pieces(B.clo, B.chi, A.clo, A.chi):
        upd(*_sup_half_length(B, lo, hi))
    lo, hi = max(A.clo, B.clo), min(A.chi, B.chi)
    if lo <= hi:
        upd(*_sup_both(A, B, lo, hi))
    return best, arg


def _only_pieces(alo, ahi, blo, bhi):
    """Closed pieces of [alo, ahi] outside (blo, bhi)."""
    ps = []
    if alo < blo:
        ps.append((alo, min(ahi, blo)))
    if bhi < ahi:
        ps.append((max(alo, bhi), ahi))
    return [(a, b) for a, b in ps if a <= b]


def _sup_half_length(A, lo, hi):
    g = A.length_fn()
    if g is INF:
        return INF, None
    r = g.restrict(lo, hi)
    if r is None:
        return Fraction(0), None
    v, a = r.sup()
    if v <= 0:
        return Fraction(0), a
    return v / 2, a


def _sup_both(A, B, lo, hi):
    rA = A.restrict_hull(lo, hi)
    rB = B.restrict_hull(lo, hi)
    gA, gB = rA.length_fn(), rB.length_fn()
    mx = None if (gA is INF or gB is INF) else pl_max(gA, gB).scale_y(HALF)
    t1 = _abs_gap(rA.tlo, rB.tlo, NINF, lo, hi)
    t2 = _abs_gap(rA.thi, rB.thi, INF, lo, hi)
    if t1 is INF or t2 is INF:
        shift = INF
    else:
        shift = pl_max(t1, t2)
    if mx is None and shift is INF:
        return INF, None
    if shift is INF:
        f = mx
    elif mx is None:
        f = shift
    else:
        f = pl_min(mx, shift)
    v, a = f.sup()
    return (v, a) if v > 0 else (Fraction(0), a)


def _abs_gap(f, g, sentinel, lo, hi):
    """|f - g| as a PL; two matching sentinels cancel, one alone is INF."""
    fs, gs = f is sentinel, g is sentinel
    if fs and gs:
        return PL.const(0, lo, hi)
    if fs or gs:
        return INF
    return pl_abs(pl_sub(f, g))


# --------------------------------------------------------------------------
# component checks for shifted overlaps


@dataclass
class ComponentCheck:
    verdict: str                     # "valid", "trivializable" or "fails"
    valid: bool
    triv_sup: object                 # sup of the pointwise kill distance
    witness: object = None           # a Point2 where the check is tight


def _component_status(Q: DiagRegion, src: DiagRegion, shifted: DiagRegion):
    """Validity and trivialization bound for one overlap component Q.

    Q must be a component of the intersection of src and shifted, and the
    canonical componentwise morphism under consideration maps src-sections
    into shifted-sections.  Q is valid (the morphism may be the identity on
    it) when everything of src below Q already lies in shifted and
    everything of shifted above Q lies back in src.  Otherwise the morphism
    must vanish on Q, which is possible only when every section dies within
    the kill bound: half the larger of the climb from Q's bottom out of
    src's upper boundary and the drop from Q's top out of shifted's lower
    boundary.
    """
    valid = True
    down = region_intersection(src, Q.down_extension())
    if down is not None and not shifted.contains(down):
        valid = False
    if valid:
        up = region_intersection(shifted, Q.up_extension())
        if up is not None and not src.contains(up):
            valid = False
    t1, w1 = _sup_gap(src.thi, Q.tlo, INF, NINF, Q, lower=True)
    t2, w2 = _sup_gap(Q.thi, shifted.tlo, INF, NINF, Q, lower=False)
    if t2 > t1:
        t1, w1 = t2, w2
    triv_sup = t1 if is_inf(t1) else t1 / 2
    return valid, triv_sup, w1


def _sup_gap(f, g, f_sent, g_sent, Q, lower):
    if f is f_sent or g is g_sent:
        return INF, None
    d = pl_sub(f.restrict(Q.clo, Q.chi), g.restrict(Q.clo, Q.chi))
    v, c = d.sup()
    if c is None:
        return v, None
    t = (Q.tlo(c) if lower else Q.thi(c))
    if is_inf(t):
        return v, None
    return v, point_at(real_part(c), real_part(t))


def check_component(Q, M, N, delta):
    """Classify one overlap component against a target interleaving shift.

    The component is judged for the canonical morphism that maps sections
    of N into sections of M over Q.
    """
    delta = ext(delta)
    Qr, A, B = _as_region(Q), _as_region(M), _as_region(N)
    if not (A.contains(Qr) and B.contains(Qr)):
        raise PreconditionError("component is not inside both intervals")
    valid, triv_sup, witness = _component_status(Qr, B, A)
    if valid:
        verdict = "valid"
    elif triv_sup < delta:
        verdict = "trivializable"
    else:
        verdict = "fails"
    return ComponentCheck(verdict, valid, triv_sup, witness)


# --------------------------------------------------------------------------
# the decision procedure and the distance


@dataclass
class DecisionReport:
    delta: object
    accepted: bool
    diag_distance: object
    reason: str = ""
    checks: list = field(default_factory=list)


def _candidate_deltas(A: DiagRegion, B: DiagRegion):
    vals = set()
    for R in (A, B):
        vals.update(R.knots())
        vals.update(x for x in R.corner_coordinates() if not is_inf(x))
    vals = sorted(vals)
    out = set()
    for i, u in enumerate(vals):
        for v in vals[i:]:
            d = v - u
            out.add(d)
            out.add(d / 2)
    out.add(Fraction(0))
    return sorted(out)


def _probe_components(A, B, dprime):
    """Overlap components in both shift directions at one probe value."""
    for direction, src, sh in (("M,N-shift", A, B.shift(dprime)),
                               ("M-shift,N", B, A.shift(dprime))):
        inter = region_intersection(src, sh)
        if inter is None:
            continue
        for idx, comp in enumerate(inter.components()):
            yield direction, idx, comp, src, sh


def _kill_requirement(A, B, dprime):
    """Largest trivialization bound over non-valid overlap components.

    None means every component carries its canonical identity morphism, so
    the shift is acceptable regardless of the threshold.
    """
    worst = None
    for _, _, comp, src, sh in _probe_components(A, B, dprime):
        valid, triv_sup, _ = _component_status(comp, src, sh)
        if not valid and (worst is None or triv_sup > worst):
            worst = triv_sup
            if worst is INF:
                break
    return worst


def di_decision(M, N, delta) -> DecisionReport:
    """Is there a delta-interleaving between the two interval modules?

    Requires the slicewise distance to fit within delta, then inspects the
    overlap components of each module with the other shifted down by delta.
    Each component must either carry the canonical identity morphism
    (valid) or have all of its sections die strictly within the shift
    (trivializable); any other component blocks the interleaving.
    """
    delta = ext(delta)
    if delta < 0:
        raise PreconditionError("delta must be nonnegative")
    A, B = _as_region(M), _as_region(N)
    dd, ddarg = _di_diag(A, B)
    rep = DecisionReport(delta, True, dd)
    if dd > delta:
        rep.accepted = False
        rep.reason = "some diagonal slice pair is farther than delta"
        if ddarg is not None:
            rep.checks.append(("diag", ddarg, None, "fails", dd, None))
        return rep
    if is_inf(delta):
        return rep
    for direction, idx, comp, src, sh in _probe_components(A, B, delta):
        valid, triv_sup, witness = _component_status(comp, src, sh)
        if valid:
            verdict = "valid"
        elif triv_sup < delta:
            verdict = "trivializable"
        else:
            verdict = "fails"
        rep.checks.append((direction, delta, idx, verdict, triv_sup, witness))
        if verdict == "fails":
            rep.accepted = False
            rep.reason = ("overlap component at shift %s is neither valid "
                          "nor killed within delta" % (delta,))
            return rep
    return rep


_di_cache: dict = {}


def _dual_parts(x):
    if isinstance(x, Dual):
        return x.a, x.b
    return Fraction(x), Fraction(0)


def _gap_root(A, B, a, b):
    """Least shift in the open gap (a, b) accepted by the kill requirement.

    Inside a gap the combinatorics of the overlaps is fixed, so the kill
    requirement K is convex piecewise linear there.  Acceptance (K < delta)
    therefore first occurs either immediately above a or at the leftmost
    root of K(delta) - delta, which a tangent-line chase reaches exactly in
    finitely many steps.  Returns None when the gap contains no accepted
    shift.
    """
    cur = a
    for _ in range(64):
        K = _kill_requirement(A, B, Dual(cur, 1))
        if K is None:
            return cur
        if K is INF:
            return None
        hr, hs = _dual_parts(K - Dual(cur, 1))
        if hr < 0 or (hr == 0 and hs < 0):
            return cur
        if hs >= 0:
            return None
        nxt = cur - hr / hs
        if b is not None and nxt >= b:
            return None
        cur = nxt
    raise RuntimeError("tangent chase did not terminate")


def di_interval(M, N):
    """Exact interleaving distance between two interval modules.

    Computed as the least shift, at or above the slicewise supremum, whose
    overlap components all pass the decision criterion, scanning the
    combinatorial breakpoints in order and chasing tangent lines of the
    kill requirement inside each gap.  One-sided limits at breakpoints are
    evaluated with infinitesimal perturbations, so infima that the decision
    itself only attains in the limit are still returned exactly.
    """
    key = None
    if isinstance(M, StaircaseInterval) and isinstance(N, StaircaseInterval):
        if M == N:
            return Fraction(0)
        key = (M, N)
        hit = _di_cache.get(key)
        if hit is not None:
            return hit
    A, B = _as_region(M), _as_region(N)
    dd, _ = _di_diag(A, B)
    out = INF
    if dd is not INF:
        cands = sorted({dd} | {c for c in _candidate_deltas(A, B) if c > dd})
        out = None
        for i, a in enumerate(cands):
            K = _kill_requirement(A, B, a)
            if K is None or K < a:
                out = a
                break
            b = cands[i + 1] if i + 1 < len(cands) else None
            r = _gap_root(A, B, a, b)
            if r is not None:
                out = r
                break
        if out is None:
            out = INF
    if key is not None:
        _di_cache[key] = out
        _di_cache[(key[1], key[0])] = out
    return out


# --------------------------------------------------------------------------
# interval vs rectangle, in closed form


def _eval_lim(f, c):
    """f(c) extended by tail limits at c = +-inf; None outside the domain."""
    if is_inf(c):
        s = f.rslope if c > 0 else f.lslope
        if s is None:
            return None
        if s == 0:
            return f.vs[-1] if c > 0 else f.vs[0]
        sign = s if c > 0 else -s
        return INF if sign > 0 else NINF
    if c < f.dom_lo or c > f.dom_hi:
        return None
    return f(c)


def _lo_at(reg, c):
    if reg.tlo is NINF:
        return NINF
    return _eval_lim(reg.tlo, c)


def _hi_at(reg, c):
    if reg.thi is INF:
        return INF
    return _eval_lim(reg.thi, c)


def di_interval_vs_rect(M, R):
    """Interleaving distance from an interval module to a rectangle module.

    The rectangle must sit inside M's bounding rectangle (after
    normalize_rect this always holds).  The distance splits into the slice
    mismatch outside the rectangle's diagonal band and, inside the band,
    the smaller of a kill bound and a boundary shift bound.
    """
    if not isinstance(M, StaircaseInterval):
        raise TypeError("M must be a StaircaseInterval")
    if R.is_zero:
        return triv_distance(M)
    rb, sb = M.bounding_r, M.bounding_s
    from .geometry import pt_le
    if not (pt_le(rb, R.r) and pt_le(R.s, sb)):
        raise PreconditionError("rectangle exceeds the bounding rectangle")
    reg = M.region()
    r, s, p, q = R.r, R.s, R.p, R.q
    cq = q.x2 - q.x1
    cp = p.x2 - p.x1
    cr = r.x2 - r.x1
    cs = s.x2 - s.x1
    g = reg.length_fn()
    t_out = Fraction(0)
    t_in = Fraction(0)
    if g is INF:
        if reg.clo < cq or reg.chi > cp:
            t_out = INF
        t_in = INF
    else:
        for lo, hi in _only_pieces(reg.clo, reg.chi, cq, cp):
            v, _ = _sup_half_length_strip(g, lo, hi)
            t_out = max(t_out, v)
        v, _ = _sup_half_length_strip(g, cq, cp)
        t_in = v
    t_pinch = min(R.width, R.height) / 2
    shift_terms = []
    for val in (_sub_or_inf(_hi_at(reg, cp), tval(p)),
                _sub_or_inf(_hi_at(reg, cq), tval(q)),
                _sub_or_inf(_lo_at(reg, cr), tval(r)),
                _sub_or_inf(tval(p), _lo_at(reg, cp)),
                _sub_or_inf(tval(q), _lo_at(reg, cq)),
                _sub_or_inf(tval(s), _hi_at(reg, cs))):
        shift_terms.append(val)
    t_shift = max(max(shift_terms), Fraction(0))
    return max(t_out, min(max(t_in, t_pinch), t_shift))


def _sub_or_inf(a, b):
    if a is None or b is None:
        return INF
    return a - b


def _sup_half_length_strip(g, lo, hi):
    r = g.restrict(lo, hi)
    if r is None:
        return Fraction(0), None
    v, a = r.sup()
    if v <= 0:
        return Fraction(0), a
    return v / 2, a


def normalize_rect(M, R):
    """Push a rectangle's corners inside M's bounding rectangle."""
    if R.is_zero:
        return R
    from .geometry import RectangleSpec
    rb, sb = M.bounding_r, M.bounding_s
    r1 = max(min(R.r.x1, sb.x1), rb.x1)
    r2 = max(min(R.r.x2, sb.x2), rb.x2)
    s1 = min(max(R.s.x1, rb.x1), sb.x1)
    s2 = min(max(R.s.x2, rb.x2), sb.x2)
    return RectangleSpec((r1, r2), (s1, s2))
