"""Exact root data for block parabolic subgroups of GL(n).

The (co)character space of the diagonal torus is identified with R^n
carrying the standard inner product, so a linear form and a vector are
the same kind of object: a tuple of n rationals.  A standard parabolic
subgroup is encoded by the ordered composition of its diagonal block
sizes.  Everything in this module is exact rational arithmetic; square
roots (covolumes) are taken lazily at a caller-supplied precision.

Conventions, validated by the duality and covolume tests rather than
assumed: for adjacent blocks i, i+1 of sizes m_i, m_{i+1}, the simple
root *and* its coroot are both represented by the vector
indicator(block i)/m_i - indicator(block i+1)/m_{i+1}; the weights and
coweights are the dual basis inside the sum-zero subspace of each
enclosing block.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

import mpmath as mp

from .numeric import sqrt_fraction, to_mpf

Q = Fraction
Vector = tuple[Fraction, ...]


# ---------------------------------------------------------------------------
# vectors

def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(c, v: Vector) -> Vector:
    c = Q(c)
    return tuple(c * a for a in v)


def pairing(u: Vector, v: Vector) -> Fraction:
    """Euclidean pairing <u, v>; exact."""
    return sum((a * b for a, b in zip(u, v, strict=True)), Q(0))


def zero_vector(n: int) -> Vector:
    return (Q(0),) * n


@dataclass(frozen=True)
class AmbientSpace:
    """R^n with the standard inner product."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")

    def check(self, v: Vector) -> Vector:
        if len(v) != self.n:
            raise ValueError(f"vector has {len(v)} coordinates, expected {self.n}")
        return v


@dataclass(frozen=True)
class LinearForm:
    """A linear form on the torus space, identified with a rational vector."""

    coords: Vector

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Q(c) for c in self.coords))

    def pair(self, v) -> Fraction:
        other = v.coords if isinstance(v, LinearForm) else v
        return pairing(self.coords, other)


# ---------------------------------------------------------------------------
# compositions and profiles

def compositions(r: int) -> list[tuple[int, ...]]:
    """All 2^(r-1) ordered compositions of r, reverse-lexicographic."""
    if r < 1:
        raise ValueError("r must be positive")
    out: list[tuple[int, ...]] = []

    def rec(rest: int, prefix: tuple[int, ...]):
        if rest == 0:
            out.append(prefix)
            return
        for first in range(rest, 0, -1):
            rec(rest - first, prefix + (first,))

    rec(r, ())
    return out


@dataclass(frozen=True)
class BlockProfile:
    """A standard parabolic P with P_0 <= P <= G.

    `parts` is the composition of r counting how many of the r inner
    blocks (each of size d) each diagonal block of P swallows; block i
    of P has size d*parts[i].
    """

    d: int
    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(int(p) for p in self.parts))
        if self.d < 1 or any(p < 1 for p in self.parts) or not self.parts:
            raise ValueError("invalid block profile")

    @property
    def r(self) -> int:
        return sum(self.parts)

    @property
    def n(self) -> int:
        return self.d * self.r

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(self.d * p for p in self.parts)

    def refines(self, other: "BlockProfile") -> bool:
        if self.n != other.n:
            return False
        return set(_boundaries(other.sizes)) <= set(_boundaries(self.sizes))


def group_profile(d: int, r: int) -> BlockProfile:
    return BlockProfile(d, (r,))


def base_profile(d: int, r: int) -> BlockProfile:
    return BlockProfile(d, (1,) * r)


def enumerate_parabolics(d: int, r: int) -> list[BlockProfile]:
    """All standard parabolics between P_0 and G, reverse-lex composition order."""
    return [BlockProfile(d, parts) for parts in compositions(r)]


def _boundaries(sizes: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    acc = 0
    for s in sizes:
        acc += s
        out.append(acc)
    return tuple(out)


def _block_ranges(sizes: tuple[int, ...]) -> list[range]:
    out = []
    start = 0
    for s in sizes:
        out.append(range(start, start + s))
        start += s
    return out


def _indicator_over_size(n: int, block: range) -> Vector:
    w = Q(1, len(block))
    return tuple(w if i in block else Q(0) for i in range(n))


# ---------------------------------------------------------------------------
# simple roots, coroots and their dual bases

@dataclass(frozen=True)
class SimpleData:
    roots: tuple[Vector, ...]
    coroots: tuple[Vector, ...]
    weights: tuple[Vector, ...]
    coweights: tuple[Vector, ...]


def _simple_data_sizes(fine: tuple[int, ...], coarse: tuple[int, ...]) -> SimpleData:
    n = sum(fine)
    if sum(coarse) != n or not set(_boundaries(coarse)) <= set(_boundaries(fine)):
        raise ValueError("first profile must refine the second")
    ranges = _block_ranges(fine)
    coarse_bounds = set(_boundaries(coarse))
    fine_bounds = _boundaries(fine)

    coroots: list[Vector] = []
    groups: list[list[int]] = []  # indices of coroots sharing a coarse block
    current: list[int] = []
    for i in range(len(fine) - 1):
        if fine_bounds[i] in coarse_bounds:
            if current:
                groups.append(current)
            current = []
            continue
        alpha = vec_sub(_indicator_over_size(n, ranges[i]),
                        _indicator_over_size(n, ranges[i + 1]))
        current.append(len(coroots))
        coroots.append(alpha)
    if current:
        groups.append(current)

    # dual basis, solved per coarse block in exact arithmetic
    coweights: list[Vector | None] = [None] * len(coroots)
    for group in groups:
        basis = [coroots[i] for i in group]
        gram = [[pairing(a, b) for b in basis] for a in basis]
        for j in range(len(group)):
            rhs = [Q(1) if m == j else Q(0) for m in range(len(group))]
            x = _solve_exact(gram, rhs)
            w = zero_vector(n)
            for c, b in zip(x, basis):
                w = vec_add(w, vec_scale(c, b))
            coweights[group[j]] = w

    co = tuple(coroots)
    cw = tuple(coweights)  # type: ignore[arg-type]
    # roots and coroots coincide as vectors in this self-dual model,
    # hence so do weights and coweights
    return SimpleData(roots=co, coroots=co, weights=cw, coweights=cw)


def simple_data(fine: BlockProfile, coarse: BlockProfile | None = None) -> SimpleData:
    """Roots/coroots of A_P on the Levi of Q, plus the dual bases, P <= Q."""
    if coarse is None:
        coarse = group_profile(fine.d, fine.r)
    if fine.n != coarse.n:
        raise ValueError("profiles live in different spaces")
    return _simple_data_sizes(fine.sizes, coarse.sizes)


def _solve_exact(mat: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gaussian elimination over the rationals; raises on singular input."""
    m = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    size = len(m)
    for col in range(size):
        piv = next((i for i in range(col, size) if m[i][col] != 0), None)
        if piv is None:
            raise ValueError("singular system")
        m[col], m[piv] = m[piv], m[col]
        inv = Q(1) / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for i in range(size):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return [m[i][size] for i in range(size)]


# ---------------------------------------------------------------------------
# covolumes and theta factors

def gram_determinant(vectors: list[Vector] | tuple[Vector, ...]) -> Fraction:
    """Exact determinant of the Gram matrix; 1 for the empty family."""
    vectors = list(vectors)
    if not vectors:
        return Q(1)
    gram = [[pairing(a, b) for b in vectors] for a in vectors]
    size = len(gram)
    det = Q(1)
    for col in range(size):
        piv = next((i for i in range(col, size) if gram[i][col] != 0), None)
        if piv is None:
            raise ValueError("linearly dependent vectors")
        if piv != col:
            gram[col], gram[piv] = gram[piv], gram[col]
            det = -det
        det *= gram[col][col]
        inv = Q(1) / gram[col][col]
        for i in range(col + 1, size):
            if gram[i][col] != 0:
                f = gram[i][col] * inv
                gram[i] = [a - f * b for a, b in zip(gram[i], gram[col])]
    if det <= 0:
        raise ValueError("linearly dependent vectors")
    return det


def covolume(vectors) -> mp.mpf:
    """sqrt(det Gram) at the current working precision; empty family -> 1."""
    return sqrt_fraction(gram_determinant(tuple(vectors)))


@dataclass(frozen=True)
class ThetaFactor:
    """Normalized product of pairings: evaluates to covolume^-1 * prod <lam, f>."""

    forms: tuple[Vector, ...]
    gram_det: Fraction

    @classmethod
    def from_forms(cls, forms) -> "ThetaFactor":
        forms = tuple(forms)
        return cls(forms=forms, gram_det=gram_determinant(forms))

    @property
    def degree(self) -> int:
        return len(self.forms)

    def covolume(self) -> mp.mpf:
        return sqrt_fraction(self.gram_det)

    def rational_part(self, lam: Vector) -> Fraction:
        out = Q(1)
        for f in self.forms:
            out *= pairing(lam, f)
        return out

    def evaluate(self, lam: Vector) -> mp.mpf:
        return to_mpf(self.rational_part(lam)) / self.covolume()


def theta_factor(P: BlockProfile, Q_prof: BlockProfile | None = None) -> ThetaFactor:
    """theta_P^Q: covolume-normalized product over the coroots of (P, Q)."""
    data = simple_data(P, Q_prof)
    return ThetaFactor.from_forms(data.coroots)


def hat_theta_factor(fine: BlockProfile, coarse: BlockProfile) -> ThetaFactor:
    """hat theta for the pair (fine, coarse): product over the coweights."""
    data = simple_data(fine, coarse)
    return ThetaFactor.from_forms(data.coweights)


def theta(P: BlockProfile, lam: Vector, Q_prof: BlockProfile | None = None) -> mp.mpf:
    return theta_factor(P, Q_prof).evaluate(lam)


def hat_theta(fine: BlockProfile, coarse: BlockProfile, lam: Vector) -> mp.mpf:
    return hat_theta_factor(fine, coarse).evaluate(lam)


def epsilon(P: BlockProfile, Q_prof: BlockProfile | None = None) -> int:
    """(-1)^(dim a_P^Q), the parity sign of the alternating sums."""
    k_coarse = 1 if Q_prof is None else Q_prof.k
    return -1 if (P.k - k_coarse) % 2 else 1


def project(lam: Vector, P: BlockProfile) -> tuple[Vector, Vector]:
    """Orthogonal decomposition lam = lam_upper + lam_lower.

    lam_lower (second entry) is constant on each P-block (the block-mean
    part); lam_upper sums to zero within each P-block.  Exact.
    """
    n = len(lam)
    if n != P.n:
        raise ValueError("dimension mismatch")
    lower: list[Fraction] = []
    for rng in _block_ranges(P.sizes):
        mean = sum((lam[i] for i in rng), Q(0)) / len(rng)
        lower.extend([mean] * len(rng))
    low = tuple(lower)
    return vec_sub(lam, low), low


# ---------------------------------------------------------------------------
# the block-permutation Weyl action

def block_permutations(parts: tuple[int, ...]):
    """All permutations of the inner blocks preserving the given grouping.

    Yields tuples sigma over range(r); sigma is the identity outside the
    grouped ranges.  Deterministic order.
    """
    ranges = []
    start = 0
    for c in parts:
        ranges.append(list(range(start, start + c)))
        start += c

    def rec(i: int, current: list[int]):
        if i == len(ranges):
            yield tuple(current)
            return
        for perm in permutations(ranges[i]):
            yield from rec(i + 1, current + list(perm))

    yield from rec(0, [])


def permute_blocks(d: int, sigma: tuple[int, ...], v: Vector) -> Vector:
    """Permute the r size-d blocks of v: block i of the result is block sigma[i] of v."""
    out: list[Fraction] = []
    for i in range(len(sigma)):
        src = sigma[i] * d
        out.extend(v[src:src + d])
    return tuple(out)
