"""Admissible walks on the even lattice and their exact weights.

A walk of kind X runs from -n to n (step sum +2n), kind Y from n to -n
(step sum -2n), kind W returns to n (step sum 0).  Steps are drawn from the
potential support; the interior vertices j(1), ..., j(nu) must avoid +-n.
The weight of a walk with steps x(1..nu+1) is

    h(x, z) = prod_t V(x(t)) * prod_{t=1}^{nu} 1 / (n^2 - j(t)^2 + z).

For a two-term potential the steps are -2R and +2S, so a walk is an
interleaving of step counts (neg, pos) solving  -2R neg + 2S pos = step sum.
Solutions organize into shells: consecutive shells differ by (s, r) extra
steps.  The shell sum is computed exactly by a lattice-path dynamic program
(the vertex after a prefix depends only on the counts used, not their order);
explicit enumeration is kept for oracle checks and walk inspection.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

from .numerics import GaussianRational, ScalarLike, binomial
from .potential import FourierPotential, TwoTermParams


class WalkKind(str, Enum):
    X = "X"
    Y = "Y"
    W = "W"


_STEP_SUM_FACTOR = {WalkKind.X: 2, WalkKind.Y: -2, WalkKind.W: 0}
_START_SIGN = {WalkKind.X: -1, WalkKind.Y: 1, WalkKind.W: 1}


class WalkSingularityError(ArithmeticError):
    """A weight denominator n^2 - j(t)^2 + z vanished at interior position t."""

    def __init__(self, n: int, t: int, vertex: int):
        self.n = n
        self.t = t
        self.vertex = vertex
        super().__init__(
            f"singular weight factor at n={n}, interior position t={t}, vertex j={vertex}"
        )


@dataclass(frozen=True)
class Walk:
    """Step sequence with its kind and index n; validated on construction."""

    steps: Tuple[int, ...]
    kind: WalkKind
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n}")
        if not self.steps:
            raise ValueError("a walk needs at least one step")
        for x in self.steps:
            if x == 0 or x % 2 != 0:
                raise ValueError(f"steps must be even and nonzero, got {x}")
        want = _STEP_SUM_FACTOR[self.kind] * self.n
        got = sum(self.steps)
        if got != want:
            raise ValueError(
                f"step sum {got} does not match kind {self.kind.value} at n={self.n} (want {want})"
            )

    @property
    def nu(self) -> int:
        """Number of interior vertices (steps minus one)."""
        return len(self.steps) - 1

    def start(self) -> int:
        return _START_SIGN[self.kind] * self.n

    def end(self) -> int:
        return self.start() + sum(self.steps)


def vertices(walk: Walk) -> Tuple[int, ...]:
    """All vertices j(0), ..., j(nu+1) including both endpoints."""
    out = [walk.start()]
    for x in walk.steps:
        out.append(out[-1] + x)
    return tuple(out)


def is_admissible(walk: Walk) -> bool:
    """True when no interior vertex equals +-n."""
    verts = vertices(walk)
    n = walk.n
    return all(v != n and v != -n for v in verts[1:-1])


@dataclass(frozen=True)
class ShellSteps:
    """Step counts of one two-term shell: `neg` steps -2R and `pos` steps +2S."""

    neg: int
    pos: int

    @property
    def total(self) -> int:
        return self.neg + self.pos


def shell_step_counts(
    params: TwoTermParams, n: int, kind: WalkKind, shell: int
) -> Optional[ShellSteps]:
    """Step counts of shell `shell` (0-indexed), or None when infeasible.

    Kind X solves -r*neg + s*pos = n/d, kind Y solves r*neg - s*pos = n/d;
    no solution exists unless d divides n.  Successive shells add (s, r).
    Kind W uses counts (s*k, r*k) with k = shell >= 1; shell 0 is empty.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if shell < 0:
        raise ValueError(f"shell index must be >= 0, got {shell}")
    r, s, d = params.r, params.s, params.d
    if kind is WalkKind.W:
        return ShellSteps(s * shell, r * shell) if shell >= 1 else None
    if n % d != 0:
        return None
    n_red = n // d
    if kind is WalkKind.X:
        neg0 = next(p for p in range(s) if (n_red + r * p) % s == 0)
        pos0 = (n_red + r * neg0) // s
    else:
        pos0 = next(q for q in range(r) if (n_red + s * q) % r == 0)
        neg0 = (n_red + s * pos0) // r
    return ShellSteps(neg0 + s * shell, pos0 + r * shell)


def shell_size_bound(params: TwoTermParams, n: int, kind: WalkKind, shell: int) -> int:
    """Interleaving count C(neg+pos, neg); an upper bound for the walk count."""
    counts = shell_step_counts(params, n, kind, shell)
    if counts is None:
        return 0
    return binomial(counts.total, counts.neg)


def enumerate_shell(
    params: TwoTermParams,
    n: int,
    kind: WalkKind,
    shell: int,
    max_walks: int = 1_000_000,
) -> List[Walk]:
    """All admissible walks of one shell, in lexicographic step order.

    Infeasible shells give an empty list.  Enumeration is depth first with
    prefix pruning (a prefix that lands on +-n before the final step is dead);
    trying the negative step -2R before +2S at every position makes the output
    order lexicographic."""
    counts = shell_step_counts(params, n, kind, shell)
    if counts is None:
        return []
    if binomial(counts.total, counts.neg) > max_walks:
        raise ValueError(
            f"shell holds up to {binomial(counts.total, counts.neg)} interleavings; "
            f"raise max_walks to enumerate"
        )
    neg_step, pos_step = -2 * params.R, 2 * params.S
    start = _START_SIGN[kind] * n
    total = counts.total
    out: List[Walk] = []
    prefix: List[int] = []

    def extend(vertex: int, neg_left: int, pos_left: int) -> None:
        placed = total - neg_left - pos_left
        if placed == total:
            out.append(Walk(tuple(prefix), kind, n))
            return
        # neg_step < 0 < pos_step, so this trial order is lexicographic
        for step in (neg_step, pos_step):
            left = neg_left if step == neg_step else pos_left
            if left == 0:
                continue
            nxt = vertex + step
            # interior vertices must avoid +-n; the final vertex is exempt
            if placed + 1 < total and (nxt == n or nxt == -n):
                continue
            prefix.append(step)
            if step == neg_step:
                extend(nxt, neg_left - 1, pos_left)
            else:
                extend(nxt, neg_left, pos_left - 1)
            prefix.pop()

    extend(start, counts.neg, counts.pos)
    return out


def enumerate_closed(
    pot: FourierPotential, n: int, step_cap: int, max_walks: int = 1_000_000
) -> List[Walk]:
    """All admissible closed walks (kind W, start and end at n) with at most
    `step_cap` steps over the full potential support, lexicographic order."""
    if step_cap < 1:
        raise ValueError(f"step_cap must be >= 1, got {step_cap}")
    steps = sorted(pot.support())
    if not steps:
        return []
    max_step = max(abs(x) for x in steps)
    out: List[Walk] = []
    prefix: List[int] = []

    # DFS trying steps in ascending order emits walks in lexicographic step
    # order (a closing walk precedes every longer walk sharing its prefix).
    def extend(vertex: int, used: int) -> None:
        if len(out) >= max_walks:
            raise ValueError("too many closed walks; raise max_walks")
        for step in steps:
            nxt = vertex + step
            if nxt == n:
                out.append(Walk(tuple(prefix) + (step,), WalkKind.W, n))
                continue
            if nxt == -n:
                continue
            remaining = step_cap - used - 1
            # prune prefixes that cannot return to n within the budget
            if remaining == 0 or abs(nxt - n) > remaining * max_step:
                continue
            prefix.append(step)
            extend(nxt, used + 1)
            prefix.pop()

    extend(n, 0)
    return out


def weight(walk: Walk, pot: FourierPotential, z: ScalarLike) -> GaussianRational:
    """Exact walk weight h(x, z); raises WalkSingularityError on a vanishing
    interior denominator.  Steps outside the support contribute factor 0."""
    zg = GaussianRational.of(z)
    n = walk.n
    value = GaussianRational.of(1)
    for x in walk.steps:
        value = value * pot.coefficient(x)
    verts = vertices(walk)
    for t in range(1, len(verts) - 1):
        j = verts[t]
        denom = GaussianRational.of(Fraction(n * n - j * j)) + zg
        if denom.is_zero():
            raise WalkSingularityError(n, t, j)
        value = value / denom
    return value


def shell_sum(
    params: TwoTermParams,
    n: int,
    kind: WalkKind,
    shell: int,
    z: ScalarLike,
) -> GaussianRational:
    """Exact sum of h(x, z) over all admissible walks of one shell.

    Lattice DP on the (neg-used, pos-used) grid: the vertex after i negative
    and j positive steps is start - 2Ri + 2Sj regardless of order, so path
    sums factor through grid nodes.  Nodes at +-n are forbidden (interior
    admissibility); a vanishing denominator on a node that some admissible
    walk passes raises WalkSingularityError."""
    if kind is WalkKind.W:
        raise ValueError("shell_sum covers kinds X and Y; use enumerate_closed for W")
    counts = shell_step_counts(params, n, kind, shell)
    if counts is None:
        return GaussianRational()
    zg = GaussianRational.of(z)
    neg_step, pos_step = -2 * params.R, 2 * params.S
    start = _START_SIGN[kind] * n
    P, Q = counts.neg, counts.pos
    nsq = n * n

    def vertex(i: int, j: int) -> int:
        return start + neg_step * i + pos_step * j

    def interior(i: int, j: int) -> bool:
        return (i, j) != (0, 0) and (i, j) != (P, Q)

    def forbidden(i: int, j: int) -> bool:
        v = vertex(i, j)
        return interior(i, j) and (v == n or v == -n)

    # forward reachability over passable nodes
    reach = [[False] * (Q + 1) for _ in range(P + 1)]
    reach[0][0] = True
    for i in range(P + 1):
        for j in range(Q + 1):
            if (i, j) == (0, 0) or forbidden(i, j):
                continue
            reach[i][j] = (i > 0 and reach[i - 1][j]) or (j > 0 and reach[i][j - 1])

    # backward reachability (can this node still reach the endpoint?)
    back = [[False] * (Q + 1) for _ in range(P + 1)]
    back[P][Q] = True
    for i in range(P, -1, -1):
        for j in range(Q, -1, -1):
            if (i, j) == (P, Q) or forbidden(i, j):
                continue
            back[i][j] = (i < P and back[i + 1][j]) or (j < Q and back[i][j + 1])

    one = GaussianRational.of(1)
    zero = GaussianRational()
    f = [[zero] * (Q + 1) for _ in range(P + 1)]
    f[0][0] = one
    for i in range(P + 1):
        for j in range(Q + 1):
            if (i, j) == (0, 0) or forbidden(i, j):
                continue
            inflow = zero
            if i > 0:
                inflow = inflow + f[i - 1][j]
            if j > 0:
                inflow = inflow + f[i][j - 1]
            if not interior(i, j):
                f[i][j] = inflow
                continue
            v = vertex(i, j)
            denom = GaussianRational.of(Fraction(nsq - v * v)) + zg
            if denom.is_zero():
                if reach[i][j] and back[i][j]:
                    raise WalkSingularityError(n, i + j, v)
                f[i][j] = zero
                continue
            f[i][j] = inflow / denom

    return f[P][Q] * (params.a ** P) * (params.b ** Q)
