"""Bottleneck distance between interval decomposable modules.

A decomposable module is handled as a plain list of StaircaseInterval
summands.  The distance is the least threshold at which a partial matching
exists whose pairs are within the threshold and whose unmatched summands
trivialize within it; the search runs over the finite candidate set of all
pairwise costs and trivialization costs.
"""

from dataclasses import dataclass
from fractions import Fraction

from .geometry import RectangleSpec
from .interleaving import di_interval, di_interval_vs_rect, triv_distance
from .rect_approx import approx_decomposable
from .scalars import INF, is_inf


@dataclass
class CostProfile:
    costs: list  # costs[i][j] = interleaving distance of M_i and N_j
    triv_m: list
    triv_n: list


def _summand_cost(mi, nj):
    # bounded rectangles inside the partner's bounding rectangle hit the
    # closed form; everything else goes through the decision procedure
    if nj.is_rectangle():
        rb, sb = mi.bounding_r, mi.bounding_s
        r, s = nj.bounding_r, nj.bounding_s
        coords = (rb.x1, rb.x2, sb.x1, sb.x2, r.x1, r.x2, s.x1, s.x2)
        if (not any(is_inf(v) for v in coords)
                and rb.x1 <= r.x1 and rb.x2 <= r.x2
                and s.x1 <= sb.x1 and s.x2 <= sb.x2):
            return di_interval_vs_rect(mi, RectangleSpec(r, s))
    return di_interval(mi, nj)


def pairwise_costs(M, N) -> CostProfile:
    costs = [[_summand_cost(mi, nj) for nj in N] for mi in M]
    return CostProfile(costs,
                       [triv_distance(mi) for mi in M],
                       [triv_distance(nj) for nj in N])


@dataclass
class MatchingResult:
    delta: object
    pairs: list  # (i, j) index pairs
    unmatched_m: list  # (i, trivialization cost)
    unmatched_n: list


def _max_matching(nl, nr, adj):
    """Augmenting-path maximum matching; adj[l] lists right neighbours."""
    match_l = [None] * nl
    match_r = [None] * nr
    for l in range(nl):
        seen = [False] * nr
        _augment(l, adj, seen, match_l, match_r)
    return match_l, match_r


def _augment(l, adj, seen, match_l, match_r):
    for r in adj[l]:
        if seen[r]:
            continue
        seen[r] = True
        if match_r[r] is None or _augment(match_r[r], adj, seen, match_l, match_r):
            match_l[l] = r
            match_r[r] = l
            return True
    return False


def delta_matched(profile: CostProfile, delta):
    """MatchingResult at the threshold, or None when no matching works.

    Uses the standard doubled bipartite graph: each side is augmented with a
    shadow copy of the other, a summand may match its own shadow when it
    trivializes within delta, and shadows match each other freely.
    """
    nm, nn = len(profile.triv_m), len(profile.triv_n)
    size = nm + nn
    adj = [[] for _ in range(size)]
    for i in range(nm):
        for j in range(nn):
            if profile.costs[i][j] <= delta:
                adj[i].append(j)
        if profile.triv_m[i] <= delta:
            adj[i].append(nn + i)
    for j in range(nn):
        l = nm + j  # shadow of N_j on the left
        if profile.triv_n[j] <= delta:
            adj[l].append(j)
        adj[l].extend(range(nn, nn + nm))
    match_l, _ = _max_matching(size, size, adj)
    if any(r is None for r in match_l):
        return None
    pairs = [(i, match_l[i]) for i in range(nm) if match_l[i] < nn]
    um = [(i, profile.triv_m[i]) for i in range(nm) if match_l[i] >= nn]
    matched_n = {j for _, j in pairs}
    un = [(j, profile.triv_n[j]) for j in range(nn) if j not in matched_n]
    return MatchingResult(delta, pairs, um, un)


def bottleneck_from_profile(profile: CostProfile) -> MatchingResult:
    cands = {Fraction(0)}
    for row in profile.costs:
        cands.update(v for v in row if not is_inf(v))
    cands.update(v for v in profile.triv_m if not is_inf(v))
    cands.update(v for v in profile.triv_n if not is_inf(v))
    cands = sorted(cands)
    # least feasible candidate; feasibility is monotone in delta
    lo, hi = 0, len(cands) - 1
    best = None
    if delta_matched(profile, cands[hi]) is None:
        return delta_matched(profile, INF)
    while lo <= hi:
        mid = (lo + hi) // 2
        res = delta_matched(profile, cands[mid])
        if res is None:
            lo = mid + 1
        else:
            best = res
            hi = mid - 1
    return best


def bottleneck_distance(M, N) -> MatchingResult:
    return bottleneck_from_profile(pairwise_costs(M, N))


@dataclass
class LowerBoundReport:
    d_b: object
    eps_star_m: object
    eps_star_n: object
    rects_m: list
    rects_n: list
    d_b_approx: object
    raw: object
    lower_bound: object
    matching: MatchingResult


def interleaving_lower_bound(M, N) -> LowerBoundReport:
    """Lower bound on the interleaving distance from the bottleneck chain.

    Computes d_B(M, N), the optimal per-summand rectangle approximations and
    their aggregate epsilons, and d_B between the approximations; reports
    (1/3) d_B(M, N) - (4/3)(eps_M + eps_N) both raw and clamped at 0.
    """
    matching = bottleneck_distance(M, N)
    rects_m, _, em = approx_decomposable(M, method="optimal")
    rects_n, _, en = approx_decomposable(N, method="optimal")
    am = [r.as_interval() for r in rects_m if not r.is_zero]
    an = [r.as_interval() for r in rects_n if not r.is_zero]
    d_b_approx = bottleneck_distance(am, an).delta
    d_b = matching.delta
    if is_inf(d_b):
        raw = INF if not (is_inf(em) or is_inf(en)) else Fraction(0)
    else:
        raw = Fraction(1, 3) * d_b - Fraction(4, 3) * (em + en)
    lb = max(Fraction(0), raw)
    return LowerBoundReport(d_b, em, en, rects_m, rects_n, d_b_approx,
                            raw, lb, matching)
