"""
Exact Core for the Crossing-Depth Toolkit
Rational arithmetic, homogeneous points, arrangement functionals, projective flats
and the exact circular order of directions on a circle.

Nothing in here ever touches a float: every count the solvers return is decided by
the sign of an exact rational.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key, reduce
from math import gcd
from typing import Iterable, List, Sequence, Tuple, Union

from ..exceptions import DegenerateInputError, DimensionMismatchError, InstanceError

logger = logging.getLogger(__name__)

Rat = Fraction
RatLike = Union[int, Fraction, str]


# ---------------------------------------------------------------------------
# Rationals
# ---------------------------------------------------------------------------


def to_rat(value: RatLike, field: str = "") -> Fraction:
    """Parse an int, Fraction or "num/den" string into an exact rational"""
    if type(value) is Fraction:
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise InstanceError(f"expected integer or 'num/den', got {value!r}", field)
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        num, sep, den = text.partition("/")
        try:
            numerator = int(num)
            denominator = int(den) if sep else 1
        except ValueError:
            raise InstanceError(f"malformed rational {value!r}", field) from None
        if denominator == 0:
            raise InstanceError(f"zero denominator in {value!r}", field)
        return Fraction(numerator, denominator)
    raise InstanceError(f"expected integer or 'num/den', got {value!r}", field)


def format_rat(value: Fraction) -> Union[int, str]:
    """JSON form of a rational: plain int when integral, else "num/den" """
    value = canonical_rat(value)
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


def canonical_rat(value: RatLike) -> Fraction:
    # Fraction normalises on construction: reduced, positive denominator
    return to_rat(value)


def sign(value) -> int:
    return (value > 0) - (value < 0)


def _as_int(value) -> Union[int, None]:
    if type(value) is int:
        return value
    if type(value) is Fraction and value.denominator == 1:
        return value.numerator
    return None


def integer_scaled(values: Sequence[Fraction]) -> Tuple[int, ...]:
    """Positive multiple of `values` with coprime integer entries"""
    ints = [_as_int(v) for v in values]
    if None not in ints:
        g = reduce(gcd, ints, 0)
        return tuple(ints) if g == 0 else tuple(i // g for i in ints)
    values = [Fraction(v) for v in values]
    lcm_den = reduce(lambda acc, v: acc * v.denominator // gcd(acc, v.denominator), values, 1)
    ints = [int(v * lcm_den) for v in values]
    g = reduce(gcd, (abs(i) for i in ints), 0)
    if g == 0:
        return tuple(ints)
    return tuple(i // g for i in ints)


def _dot(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(xs, ys)), Fraction(0))


# ---------------------------------------------------------------------------
# Homogeneous points and arrangement functionals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HomogeneousPoint:
    """Nonzero (d+1)-vector of rationals: an affine point or a direction at infinity"""

    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(to_rat(c) for c in self.coords)
        if not coords or all(c == 0 for c in coords):
            raise DegenerateInputError("homogeneous point must be nonzero")
        object.__setattr__(self, "coords", coords)

    @property
    def dim(self) -> int:
        """Ambient affine dimension d"""
        return len(self.coords) - 1

    @property
    def is_at_infinity(self) -> bool:
        return self.coords[-1] == 0

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __neg__(self) -> "HomogeneousPoint":
        return HomogeneousPoint(tuple(-c for c in self.coords))

    def scaled(self, factor: RatLike) -> "HomogeneousPoint":
        factor = to_rat(factor)
        return HomogeneousPoint(tuple(factor * c for c in self.coords))

    def dot(self, other: Sequence[Fraction]) -> Fraction:
        if len(other) != len(self.coords):
            raise DimensionMismatchError(
                f"length {len(other)} does not match length {len(self.coords)}"
            )
        return _dot(self.coords, other)

    def canonical(self) -> "HomogeneousPoint":
        """Coprime integer representative with first nonzero coordinate positive"""
        ints = integer_scaled(self.coords)
        lead = next(i for i in ints if i != 0)
        if lead < 0:
            ints = tuple(-i for i in ints)
        return HomogeneousPoint(tuple(Fraction(i) for i in ints))

    def same_point(self, other: "HomogeneousPoint") -> bool:
        """Projective equality: proportional coordinate vectors"""
        return self.canonical() == other.canonical()

    def affine(self) -> Tuple[Fraction, ...]:
        if self.is_at_infinity:
            raise DegenerateInputError("point at infinity has no affine coordinates")
        w = self.coords[-1]
        return tuple(c / w for c in self.coords[:-1])


def lift_affine(point: Sequence[RatLike]) -> HomogeneousPoint:
    """Embed an affine point p of R^d as (p, 1)"""
    return HomogeneousPoint(tuple(to_rat(c) for c in point) + (Fraction(1),))


def lift_direction(direction: Sequence[RatLike]) -> HomogeneousPoint:
    """Embed a direction v of R^d as the point at infinity (v, 0)"""
    return HomogeneousPoint(tuple(to_rat(c) for c in direction) + (Fraction(0),))


@dataclass(frozen=True)
class ArrangementFunctional:
    """Linear functional on homogeneous space; its zero set is one arrangement hyperplane"""

    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(to_rat(c) for c in self.coeffs)
        if not coeffs or all(c == 0 for c in coeffs):
            raise DegenerateInputError("arrangement functional must be nonzero")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def dim(self) -> int:
        return len(self.coeffs) - 1

    def __neg__(self) -> "ArrangementFunctional":
        return ArrangementFunctional(tuple(-c for c in self.coeffs))

    def scaled(self, factor: RatLike) -> "ArrangementFunctional":
        factor = to_rat(factor)
        return ArrangementFunctional(tuple(factor * c for c in self.coeffs))

    def evaluate(self, point: Union[HomogeneousPoint, Sequence[Fraction]]) -> Fraction:
        coords = point.coords if isinstance(point, HomogeneousPoint) else tuple(point)
        if len(coords) != len(self.coeffs):
            raise DimensionMismatchError(
                f"functional of length {len(self.coeffs)} applied to point of length {len(coords)}"
            )
        return _dot(self.coeffs, coords)

    def sign_of(self, point: Union[HomogeneousPoint, Sequence[Fraction]]) -> int:
        return sign(self.evaluate(point))


def evaluate(h: ArrangementFunctional, u: HomogeneousPoint) -> Fraction:
    return h.evaluate(u)


def sign_of(h: ArrangementFunctional, u: HomogeneousPoint) -> int:
    return h.sign_of(u)


# ---------------------------------------------------------------------------
# Exact linear algebra
# ---------------------------------------------------------------------------


def row_reduce(rows: Iterable[Sequence[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form by exact Gauss-Jordan elimination"""
    matrix = [[Fraction(x) for x in row] for row in rows]
    if not matrix:
        return [], []
    width = len(matrix[0])
    pivots: List[int] = []
    r = 0
    for col in range(width):
        pivot = next((i for i in range(r, len(matrix)) if matrix[i][col] != 0), None)
        if pivot is None:
            continue
        matrix[r], matrix[pivot] = matrix[pivot], matrix[r]
        lead = matrix[r][col]
        matrix[r] = [x / lead for x in matrix[r]]
        for i in range(len(matrix)):
            if i != r and matrix[i][col] != 0:
                factor = matrix[i][col]
                matrix[i] = [a - factor * b for a, b in zip(matrix[i], matrix[r])]
        pivots.append(col)
        r += 1
        if r == len(matrix):
            break
    return matrix[:r], pivots


def matrix_rank(rows: Iterable[Sequence[Fraction]]) -> int:
    return len(row_reduce(rows)[1])


def null_space(rows: Sequence[Sequence[Fraction]], width: int) -> List[List[Fraction]]:
    """Basis of {x : row . x = 0 for every row}"""
    reduced, pivots = row_reduce(rows)
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for f in free:
        vector = [Fraction(0)] * width
        vector[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            vector[p] = -row[f]
        basis.append(vector)
    return basis


# ---------------------------------------------------------------------------
# Projective flats
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProjectiveFlat:
    """Linear subspace of homogeneous space given by an exactly independent basis"""

    basis: Tuple[HomogeneousPoint, ...]

    def __post_init__(self):
        basis = tuple(
            b if isinstance(b, HomogeneousPoint) else HomogeneousPoint(tuple(b))
            for b in self.basis
        )
        if not basis:
            raise DegenerateInputError("flat needs at least one basis vector")
        width = len(basis[0])
        if any(len(b) != width for b in basis):
            raise DimensionMismatchError("basis vectors of different length")
        if len(basis) > width:
            raise DegenerateInputError(f"{len(basis)} vectors cannot be independent in dimension {width}")
        if matrix_rank([b.coords for b in basis]) != len(basis):
            raise DegenerateInputError("flat basis is linearly dependent")
        object.__setattr__(self, "basis", basis)

    @property
    def hdim(self) -> int:
        """Dimension of the linear subspace; projective dimension is hdim - 1"""
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return self.basis[0].dim

    def point(self, coords: Sequence[RatLike]) -> HomogeneousPoint:
        """The vector sum(coords[i] * basis[i])"""
        if len(coords) != self.hdim:
            raise DimensionMismatchError(f"expected {self.hdim} flat coordinates, got {len(coords)}")
        coords = [to_rat(c) for c in coords]
        width = len(self.basis[0])
        return HomogeneousPoint(
            tuple(sum((c * b.coords[i] for c, b in zip(coords, self.basis)), Fraction(0)) for i in range(width))
        )

    def contains(self, vector: Union[HomogeneousPoint, Sequence[Fraction]]) -> bool:
        coords = vector.coords if isinstance(vector, HomogeneousPoint) else tuple(vector)
        return matrix_rank([b.coords for b in self.basis] + [coords]) == self.hdim

    def spans_same(self, other: "ProjectiveFlat") -> bool:
        return self.hdim == other.hdim and all(self.contains(b) for b in other.basis)


def orthogonal_complement(flat: ProjectiveFlat) -> ProjectiveFlat:
    """Polar flat under the standard inner product on homogeneous coordinates"""
    width = flat.ambient_dim + 1
    vectors = null_space([b.coords for b in flat.basis], width)
    if not vectors:
        raise DegenerateInputError("flat spans the whole space; its complement is empty")
    return ProjectiveFlat(tuple(HomogeneousPoint(tuple(v)) for v in vectors))


def flats_intersect(a: ProjectiveFlat, b: ProjectiveFlat) -> bool:
    """True iff the two subspaces share a nonzero vector"""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError("flats live in different ambient dimensions")
    rows = [v.coords for v in a.basis] + [v.coords for v in b.basis]
    return matrix_rank(rows) < a.hdim + b.hdim


# ---------------------------------------------------------------------------
# Circle directions
# ---------------------------------------------------------------------------


def direction_key(alpha, beta) -> Tuple[int, int]:
    """Coprime integer pair with the same direction as (alpha, beta)"""
    if alpha == 0 and beta == 0:
        raise DegenerateInputError("circle direction must be nonzero")
    a, b = _as_int(alpha), _as_int(beta)
    if a is None or b is None:
        return integer_scaled((alpha, beta))  # type: ignore[return-value]
    g = gcd(a, b)
    return (a // g, b // g)


@dataclass(frozen=True)
class CircleVector:
    """Point alpha*b1 + beta*b2 on the unit circle of a 2-dimensional flat"""

    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        alpha, beta = to_rat(self.alpha), to_rat(self.beta)
        if alpha == 0 and beta == 0:
            raise DegenerateInputError("circle vector must be nonzero")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    def __neg__(self) -> "CircleVector":
        return CircleVector(-self.alpha, -self.beta)

    def __add__(self, other: "CircleVector") -> "CircleVector":
        return CircleVector(self.alpha + other.alpha, self.beta + other.beta)

    def __iter__(self):
        return iter((self.alpha, self.beta))

    @property
    def coords(self) -> Tuple[Fraction, Fraction]:
        return (self.alpha, self.beta)

    def perp(self) -> "CircleVector":
        """Quarter turn counterclockwise"""
        return CircleVector(-self.beta, self.alpha)

    def canonical(self) -> "CircleVector":
        """Direction-preserving form: coprime integers"""
        a, b = direction_key(self.alpha, self.beta)
        return CircleVector(Fraction(a), Fraction(b))

    def axis_key(self) -> Tuple[int, int]:
        """Key of the line through the origin: coprime, beta > 0 or (beta == 0 and alpha > 0)"""
        a, b = direction_key(self.alpha, self.beta)
        if b < 0 or (b == 0 and a < 0):
            a, b = -a, -b
        return (a, b)

    def key(self) -> Tuple[int, int]:
        return direction_key(self.alpha, self.beta)


def compare_directions(u: Sequence, v: Sequence) -> int:
    """circular_compare on plain (alpha, beta) pairs"""
    ua, ub = u
    va, vb = v
    upper_u = ub > 0 or (ub == 0 and ua > 0)
    upper_v = vb > 0 or (vb == 0 and va > 0)
    if upper_u != upper_v:
        return -1 if upper_u else 1
    cross = ua * vb - va * ub
    if cross > 0:
        return -1
    if cross < 0:
        return 1
    return 0


def circular_compare(u: CircleVector, v: CircleVector) -> int:
    """-1 if u precedes v counterclockwise from (1, 0), 0 if same direction, else 1"""
    return compare_directions(u.coords, v.coords)


def sort_circular(vectors: Iterable[CircleVector]) -> List[CircleVector]:
    return sorted(vectors, key=cmp_to_key(circular_compare))


def arc_midpoint(start: CircleVector, end: CircleVector) -> CircleVector:
    """Interior direction of the counterclockwise open arc from start to end

    Gaps between antipode-closed boundaries never exceed a half-turn; a gap of
    exactly a half-turn (end == -start) is resolved by the quarter turn.
    """
    alpha, beta = start.alpha + end.alpha, start.beta + end.beta
    if alpha == 0 and beta == 0:
        return start.perp()
    return CircleVector(alpha, beta)
