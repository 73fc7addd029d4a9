"""Brute-force counting oracles, independent of the transfer machinery.

Every counter here goes through transporter / canonical_vertex lookups
only.  They exist to cross-check the cycle-decomposition zeta engine:
a closed walk of normalized length n displaces its base point by n
times a weight, so the search space is always the finite set of vertex
classes times the weight set and no unbounded search occurs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .quotient import QuotientGroup, SpecValidationError
from .rootgeom import HalfVec, Vec, mat_vec, vec_add, vec_scale


@dataclass(frozen=True)
class CountTable:
    """Counts indexed by length (walks, galleries) or half-step count (semi)."""

    rep: str
    kind: str
    values: tuple

    def __post_init__(self):
        if any(v < 0 for v in self.values):
            raise ValueError("counts must be nonnegative")


def count_closed_walks(q: QuotientGroup, rep: str, n: int) -> int:
    """Closed walks of normalized length n: pairs (vertex class, weight)
    whose endpoint is carried back by some group element."""
    if n < 1:
        raise ValueError("walk length must be positive")
    total = 0
    for lam in q.rs.weights(rep):
        step = vec_scale(n, lam)
        for x in q.vertex_reps:
            if q.transporter(x, vec_add(x, step)) is not None:
                total += 1
    return total


def count_geodesic_walks(q: QuotientGroup, rep: str, n: int) -> int:
    """Closed geodesic walks: as count_closed_walks, but the carrying
    element's linear part must fix the direction (no corner at closing)."""
    if n < 1:
        raise ValueError("walk length must be positive")
    total = 0
    for lam in q.rs.weights(rep):
        step = vec_scale(n, lam)
        for x in q.vertex_reps:
            g = q.transporter(x, vec_add(x, step))
            if g is not None and mat_vec(g.linear, lam) == lam:
                total += 1
    return total


def _half_line_is_rational(x2: Vec, lam: Vec) -> bool:
    # the line through x in direction lam meets the vertex lattice exactly
    # when x is congruent to 0 or lam/2 modulo the lattice (lam primitive)
    ex, ey = x2[0] % 2, x2[1] % 2
    return (ex, ey) == (0, 0) or (ex, ey) == (lam[0] % 2, lam[1] % 2)


def count_semi_closings(
    q: QuotientGroup, rep: str, j: int, weights: Optional[Sequence[Vec]] = None
) -> int:
    """Half-step closings of non-rational lines through half-lattice points.

    j counts half-steps of size lam/2.  A pair (x, lam) closes when some
    group element whose linear part fixes lam carries x to x + (j/2) lam.
    """
    if j < 1:
        raise ValueError("half-step count must be positive")
    wts = tuple(weights) if weights is not None else q.rs.weights(rep)
    total = 0
    for lam in wts:
        for h in q.half_orbit_reps():
            x2 = (h.x2, h.y2)
            if _half_line_is_rational(x2, lam):
                continue
            y = HalfVec(x2[0] + j * lam[0], x2[1] + j * lam[1])
            g = q.transporter(HalfVec(*x2), y)
            if g is not None and mat_vec(g.linear, lam) == lam:
                total += 1
    return total


def count_closed_galleries(q: QuotientGroup, rep: str, n: int) -> int:
    """Closed length-n paths of the alternating gallery dynamics.

    A state is a vertex class with an ordered admissible direction pair;
    one step moves the vertex by the first direction and swaps the pair.
    Counted by stepping the raw triple in the plane and asking for a
    group element matching both endpoint and labels.
    """
    if n < 1:
        raise ValueError("gallery length must be positive")
    pairs = q.rs.gallery_pairs(rep)
    total = 0
    for v in q.vertex_reps:
        for lam, mu in pairs:
            pos, a, b = v, lam, mu
            for _ in range(n):
                pos = vec_add(pos, a)
                a, b = b, a
            g = q.transporter(v, pos)
            if (
                g is not None
                and mat_vec(g.linear, lam) == a
                and mat_vec(g.linear, mu) == b
            ):
                total += 1
    return total


def lambda_set_size(
    q: QuotientGroup, m_odd: int, v: Vec, glide: str = "sigma"
) -> int:
    """Lattice points in the glide fundamental domain moved by v under the
    m-th glide power, counted by direct enumeration.

    v must be a coroot-lattice vector with nonzero beta-component in the
    (alpha, beta) basis.  ``glide`` selects sigma or t*sigma together with
    its matching fundamental domain.
    """
    if q.kind != "klein":
        raise SpecValidationError("glide line counts require a Klein quotient")
    if m_odd % 2 == 0:
        raise ValueError("glide power must be odd")
    if not q.rs.in_coroot_lattice(v):
        raise ValueError(f"{v} is not in the coroot lattice")
    _, d = q.alpha_beta_coords(v)
    if d == 0:
        raise ValueError("v must have nonzero beta-component")
    if glide == "sigma":
        g = q.sigma
    elif glide == "tsigma":
        g = q.t.compose(q.sigma)
    else:
        raise ValueError("glide must be 'sigma' or 'tsigma'")
    _, b_used = q.alpha_beta_coords(g.translation)
    gm = g ** m_odd
    k = q.k_gamma
    alpha, beta = q.alpha, q.beta
    window = abs(b_used) + abs(d) + 4
    count = 0
    for p in range(k):
        for qq in range(-window, window + 1):
            x = vec_add(vec_scale(p, alpha), vec_scale(qq, beta))
            if gm.apply(x) != vec_add(x, v):
                continue
            # fundamental domain: alpha-coordinate in [0, k) with
            # beta-coordinate below b/2, plus half of the boundary line
            if 2 * qq < b_used or (2 * qq == b_used and 2 * p < k):
                count += 1
    return count


def walk_count_table(q: QuotientGroup, rep: str, max_n: int) -> CountTable:
    return CountTable(
        rep, "walks", tuple(count_closed_walks(q, rep, n) for n in range(1, max_n + 1))
    )


def geodesic_count_table(q: QuotientGroup, rep: str, max_n: int) -> CountTable:
    return CountTable(
        rep,
        "geodesic",
        tuple(count_geodesic_walks(q, rep, n) for n in range(1, max_n + 1)),
    )


def semi_count_table(q: QuotientGroup, rep: str, max_j: int) -> CountTable:
    return CountTable(
        rep, "semi", tuple(count_semi_closings(q, rep, j) for j in range(1, max_j + 1))
    )


def gallery_count_table(q: QuotientGroup, rep: str, max_n: int) -> CountTable:
    return CountTable(
        rep,
        "galleries",
        tuple(count_closed_galleries(q, rep, n) for n in range(1, max_n + 1)),
    )
