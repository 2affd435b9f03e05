"""Exact arithmetic for finitely generated abelian groups.

Groups are kept in invariant-factor normal form (torsion orders t1 | t2 | ...),
elements are integer coefficient vectors with torsion coordinates reduced to
[0, t), and homomorphisms are integer matrices acting on generator coordinates.
Everything is built on an exact integer Smith normal form; kernels, images and
subgroup comparisons reduce to integer linear algebra, so every answer is
exact.  All values are immutable after construction.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product as _iproduct
from math import gcd
from typing import Iterator, Optional, Sequence

Matrix = list[list[int]]


class FgAbError(ValueError):
    """Domain error: mismatched parents, malformed matrices, bad orders."""


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b == g."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        quo = g // next_g
        x, next_x = next_x, x - quo * next_x
        y, next_y = next_y, y - quo * next_y
        g, next_g = next_g, g - quo * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def _identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    if a and len(a[0]) != inner:
        raise FgAbError("matrix shape mismatch in multiplication")
    return [
        [sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
        for i in range(rows)
    ]


def int_det(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(matrix)
    if n == 0:
        return 1
    if any(len(row) != n for row in matrix):
        raise FgAbError("determinant of non-square matrix")
    m = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_normal_form(
    matrix: Sequence[Sequence[int]],
) -> tuple[Matrix, Matrix, Matrix]:
    """Diagonalize an integer matrix by unimodular transformations.

    Returns (U, D, V) with D == U * matrix * V, U and V unimodular, D diagonal
    with non-negative entries satisfying d_i | d_{i+1}.  Any rectangular
    matrix is accepted, including empty ones.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    if any(len(row) != cols for row in matrix):
        raise FgAbError("ragged matrix")
    d = [list(row) for row in matrix]
    u = _identity(rows)
    v = _identity(cols)

    def swap_rows(i, j):
        if i != j:
            d[i], d[j] = d[j], d[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for row in d:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def row_combine(i, j, a, b, c, e):
        # (row_i, row_j) <- (a*row_i + b*row_j, c*row_i + e*row_j), a*e-b*c = +-1
        d[i], d[j] = (
            [a * d[i][k] + b * d[j][k] for k in range(cols)],
            [c * d[i][k] + e * d[j][k] for k in range(cols)],
        )
        u[i], u[j] = (
            [a * u[i][k] + b * u[j][k] for k in range(rows)],
            [c * u[i][k] + e * u[j][k] for k in range(rows)],
        )

    def col_combine(i, j, a, b, c, e):
        for row in d:
            row[i], row[j] = a * row[i] + b * row[j], c * row[i] + e * row[j]
        for row in v:
            row[i], row[j] = a * row[i] + b * row[j], c * row[i] + e * row[j]

    def add_col_into(src, dst):
        for row in d:
            row[dst] += row[src]
        for row in v:
            row[dst] += row[src]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    n = min(rows, cols)

    def diagonalize():
        for t in range(n):
            while True:
                # Pivot: smallest nonzero magnitude in the trailing submatrix.
                pivot = None
                for i in range(t, rows):
                    for j in range(t, cols):
                        if d[i][j] != 0 and (
                            pivot is None
                            or abs(d[i][j]) < abs(d[pivot[0]][pivot[1]])
                        ):
                            pivot = (i, j)
                if pivot is None:
                    break
                swap_rows(t, pivot[0])
                swap_cols(t, pivot[1])
                dirty = False
                for i in range(t + 1, rows):
                    if d[i][t] != 0:
                        if d[i][t] % d[t][t] == 0:
                            quo = d[i][t] // d[t][t]
                            row_combine(t, i, 1, 0, -quo, 1)
                        else:
                            g, x, y = xgcd(d[t][t], d[i][t])
                            a, b = d[t][t] // g, d[i][t] // g
                            row_combine(t, i, x, y, -b, a)
                            dirty = True
                for j in range(t + 1, cols):
                    if d[t][j] != 0:
                        if d[t][j] % d[t][t] == 0:
                            quo = d[t][j] // d[t][t]
                            col_combine(t, j, 1, 0, -quo, 1)
                        else:
                            g, x, y = xgcd(d[t][t], d[t][j])
                            a, b = d[t][t] // g, d[t][j] // g
                            col_combine(t, j, x, y, -b, a)
                            dirty = True
                if dirty:
                    continue
                if all(d[i][t] == 0 for i in range(t + 1, rows)) and all(
                    d[t][j] == 0 for j in range(t + 1, cols)
                ):
                    break
            if d[t][t] < 0:
                negate_row(t)

    diagonalize()
    # Enforce the divisibility chain: fold a violating d_{i+1} back into
    # column i and rerun; each pass strictly shrinks d_i, so this terminates.
    while True:
        violation = None
        for i in range(n - 1):
            a, b = d[i][i], d[i + 1][i + 1]
            if a != 0 and b % a != 0:
                violation = i
                break
        if violation is None:
            break
        add_col_into(violation + 1, violation)
        diagonalize()
    return u, d, v


def _diag(d: Matrix) -> list[int]:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def _normalize_orders(orders: Sequence[int], free: int) -> tuple[int, tuple[int, ...]]:
    """Fold a list of cyclic orders into invariant-factor form.

    Each order is a non-negative integer, 0 meaning an infinite cyclic summand.
    """
    from collections import defaultdict

    prime_exps: dict[int, list[int]] = defaultdict(list)
    free_rank = free
    for t in orders:
        if t < 0:
            raise FgAbError("negative cyclic order")
        if t == 0:
            free_rank += 1
            continue
        if t == 1:
            continue
        rem = t
        p = 2
        while p * p <= rem:
            if rem % p == 0:
                e = 0
                while rem % p == 0:
                    rem //= p
                    e += 1
                prime_exps[p].append(e)
            p += 1
        if rem > 1:
            prime_exps[rem].append(1)
    if not prime_exps:
        return free_rank, ()
    depth = max(len(v) for v in prime_exps.values())
    factors = []
    for slot in range(depth):
        f = 1
        for p, exps in prime_exps.items():
            exps_sorted = sorted(exps, reverse=True)
            if slot < len(exps_sorted):
                f *= p ** exps_sorted[slot]
        factors.append(f)
    factors.reverse()  # ascending, t_i | t_{i+1}
    return free_rank, tuple(factors)


@dataclass(frozen=True)
class FgAbGroup:
    """A finitely generated abelian group Z^r + Z/t1 + ... + Z/tk.

    The torsion orders are in invariant-factor form: each t_i >= 2 and
    t_i | t_{i+1}.  Equality of groups is structural equality of this
    normal form.
    """

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise FgAbError("negative free rank")
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))
        for t in self.torsion:
            if t < 2:
                raise FgAbError(f"torsion order {t} < 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise FgAbError(
                    f"torsion orders {list(self.torsion)} violate divisibility chain"
                )

    @classmethod
    def trivial(cls) -> "FgAbGroup":
        return cls(0, ())

    @classmethod
    def free(cls, rank: int) -> "FgAbGroup":
        return cls(rank, ())

    @classmethod
    def cyclic(cls, n: int) -> "FgAbGroup":
        """Z for n == 0, Z/n for n >= 2, trivial for n == 1."""
        if n == 0:
            return cls(1, ())
        if n == 1:
            return cls(0, ())
        return cls(0, (n,))

    @property
    def rank(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> Optional[int]:
        """Number of elements, or None if infinite."""
        if not self.is_finite:
            return None
        n = 1
        for t in self.torsion:
            n *= t
        return n

    def coord_orders(self) -> tuple[int, ...]:
        """Per-coordinate orders, 0 for free coordinates."""
        return (0,) * self.free_rank + self.torsion

    def element(self, coeffs: Sequence[int]) -> "GroupElement":
        return GroupElement(self, tuple(coeffs))

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def generators(self) -> list["GroupElement"]:
        gens = []
        for i in range(self.rank):
            coeffs = [0] * self.rank
            coeffs[i] = 1
            gens.append(self.element(coeffs))
        return gens

    def elements(self) -> Iterator["GroupElement"]:
        """Enumerate all elements (finite groups only)."""
        if not self.is_finite:
            raise FgAbError("cannot enumerate an infinite group")
        for coeffs in _iproduct(*(range(t) for t in self.torsion)):
            yield self.element(coeffs)

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z_{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GroupElement:
    """An element of an FgAbGroup, stored in canonical coordinates."""

    group: FgAbGroup
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if len(coeffs) != self.group.rank:
            raise FgAbError(
                f"coefficient vector of length {len(coeffs)} for group of rank "
                f"{self.group.rank}"
            )
        reduced = list(coeffs)
        off = self.group.free_rank
        for i, t in enumerate(self.group.torsion):
            reduced[off + i] %= t
        object.__setattr__(self, "coeffs", tuple(reduced))

    def _check_same(self, other: "GroupElement"):
        if self.group != other.group:
            raise FgAbError("elements belong to different groups")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check_same(other)
        return GroupElement(
            self.group, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        self._check_same(other)
        return GroupElement(
            self.group, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, tuple(-a for a in self.coeffs))

    def scale(self, k: int) -> "GroupElement":
        return GroupElement(self.group, tuple(k * a for a in self.coeffs))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def order(self) -> Optional[int]:
        """Least k >= 1 with k*x == 0; None if the free part is nonzero."""
        off = self.group.free_rank
        if any(c != 0 for c in self.coeffs[:off]):
            return None
        k = 1
        for i, t in enumerate(self.group.torsion):
            c = self.coeffs[off + i]
            if c:
                step = t // gcd(c, t)
                k = k * step // gcd(k, step)
        return k

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coeffs) + ")"


def elem_op(a: GroupElement, b: Optional[GroupElement], op: str, k: int = 0):
    """Uniform entry point for element arithmetic: add/sub/neg/scale."""
    if op == "add":
        assert b is not None
        return a + b
    if op == "sub":
        assert b is not None
        return a - b
    if op == "neg":
        return -a
    if op == "scale":
        return a.scale(k)
    raise FgAbError(f"unknown element operation {op!r}")


def element_order(a: GroupElement) -> Optional[int]:
    """Order of an element; None means infinite."""
    return a.order()


@dataclass(frozen=True)
class Homomorphism:
    """A homomorphism given by its integer matrix on generator coordinates.

    Column j of `matrix` holds the codomain coordinates of the image of the
    j-th domain generator.  Construction rejects matrices that violate the
    domain's torsion relations.
    """

    domain: FgAbGroup
    codomain: FgAbGroup
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        mat = tuple(tuple(int(x) for x in row) for row in self.matrix)
        if len(mat) != self.codomain.rank or any(
            len(row) != self.domain.rank for row in mat
        ):
            raise FgAbError(
                f"matrix of shape {len(mat)}x{len(mat[0]) if mat else 0} for map "
                f"rank {self.domain.rank} -> rank {self.codomain.rank}"
            )
        object.__setattr__(self, "matrix", mat)
        off = self.domain.free_rank
        for j, t in enumerate(self.domain.torsion):
            col = [mat[i][off + j] for i in range(self.codomain.rank)]
            image = self.codomain.element(col).scale(t)
            if not image.is_zero:
                raise FgAbError(
                    f"matrix not well defined: order-{t} generator maps to an "
                    f"element not killed by {t}"
                )

    @classmethod
    def from_columns(
        cls, domain: FgAbGroup, codomain: FgAbGroup, columns: Sequence[GroupElement]
    ) -> "Homomorphism":
        if len(columns) != domain.rank:
            raise FgAbError("one image column required per domain generator")
        mat = [
            [col.coeffs[i] for col in columns] for i in range(codomain.rank)
        ]
        return cls(domain, codomain, tuple(tuple(r) for r in mat))

    @classmethod
    def zero(cls, domain: FgAbGroup, codomain: FgAbGroup) -> "Homomorphism":
        mat = tuple(
            tuple(0 for _ in range(domain.rank)) for _ in range(codomain.rank)
        )
        return cls(domain, codomain, mat)

    @classmethod
    def identity(cls, group: FgAbGroup) -> "Homomorphism":
        mat = tuple(
            tuple(1 if i == j else 0 for j in range(group.rank))
            for i in range(group.rank)
        )
        return cls(group, group, mat)

    def apply(self, x: GroupElement) -> GroupElement:
        if x.group != self.domain:
            raise FgAbError("argument not in the domain of this homomorphism")
        coeffs = [
            sum(self.matrix[i][j] * x.coeffs[j] for j in range(self.domain.rank))
            for i in range(self.codomain.rank)
        ]
        return self.codomain.element(coeffs)

    def compose(self, inner: "Homomorphism") -> "Homomorphism":
        """self after inner: (self . inner)(x) = self(inner(x))."""
        if inner.codomain != self.domain:
            raise FgAbError("composition mismatch")
        prod = _mat_mul([list(r) for r in self.matrix], [list(r) for r in inner.matrix])
        return Homomorphism(
            inner.domain, self.codomain, tuple(tuple(r) for r in prod)
        )


def hom_apply(h: Homomorphism, x: GroupElement) -> GroupElement:
    return h.apply(x)


def hom_compose(g: Homomorphism, h: Homomorphism) -> Homomorphism:
    """(g . h)(x) = g(h(x))."""
    return g.compose(h)


class Cmp(enum.Enum):
    EQUAL = "equal"
    PROPER_SUB = "proper_sub"
    PROPER_SUPER = "proper_super"
    INCOMPARABLE = "incomparable"


def _solve_integer(
    columns: list[list[int]], coord_orders: Sequence[int], target: Sequence[int]
) -> bool:
    """Decide whether target is an integer combination of columns modulo the
    relations t_i * e_i given by nonzero coord_orders."""
    dim = len(coord_orders)
    cols = [list(c) for c in columns]
    for i, t in enumerate(coord_orders):
        if t:
            rel = [0] * dim
            rel[i] = t
            cols.append(rel)
    if not cols:
        return all(c == 0 for c in target)
    a = [[col[i] for col in cols] for i in range(dim)]
    u, d, _v = smith_normal_form(a)
    y = [sum(u[i][k] * target[k] for k in range(dim)) for i in range(dim)]
    diag = _diag(d)
    for i in range(dim):
        di = diag[i] if i < len(diag) else 0
        if di == 0:
            if y[i] != 0:
                return False
        elif y[i] % di != 0:
            return False
    return True


def _kernel_generators(
    matrix_rows: list[list[int]],
    codomain_orders: Sequence[int],
    domain: FgAbGroup,
) -> list[GroupElement]:
    """Generators of {x in domain : M x == 0 in the codomain coordinates}.

    codomain_orders holds the order of each codomain coordinate (0 = free).
    """
    a_dim = domain.rank
    c_dim = len(codomain_orders)
    if c_dim == 0:
        return [g for g in domain.generators()]
    # Solve M x = R y over Z, i.e. find the nullspace of [M | -R].
    cols = a_dim
    rel_cols = [i for i, t in enumerate(codomain_orders) if t]
    a = [list(matrix_rows[i]) + [0] * len(rel_cols) for i in range(c_dim)]
    for jj, i in enumerate(rel_cols):
        a[i][cols + jj] = -codomain_orders[i]
    _u, d, v = smith_normal_form(a)
    total_cols = cols + len(rel_cols)
    diag = _diag(d)
    rank = sum(1 for x in diag if x != 0)
    gens = []
    for j in range(rank, total_cols):
        x = [v[i][j] for i in range(cols)]
        el = domain.element(x)
        if not el.is_zero:
            gens.append(el)
    # Torsion relations of the domain itself always land in the kernel and
    # are implicit; the projection above already accounts for them because
    # elements are canonically reduced.
    return gens


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of an ambient group, given by a generating set."""

    ambient: FgAbGroup
    generators_: tuple[GroupElement, ...]

    def __post_init__(self):
        for g in self.generators_:
            if g.group != self.ambient:
                raise FgAbError("subgroup generator outside the ambient group")
        object.__setattr__(
            self,
            "generators_",
            tuple(g for g in self.generators_ if not g.is_zero),
        )

    @classmethod
    def trivial(cls, ambient: FgAbGroup) -> "Subgroup":
        return cls(ambient, ())

    @classmethod
    def whole(cls, ambient: FgAbGroup) -> "Subgroup":
        return cls(ambient, tuple(ambient.generators()))

    def contains(self, x: GroupElement) -> bool:
        if x.group != self.ambient:
            raise FgAbError("membership test against a different ambient group")
        columns = [list(g.coeffs) for g in self.generators_]
        return _solve_integer(columns, self.ambient.coord_orders(), list(x.coeffs))

    def contains_subgroup(self, other: "Subgroup") -> bool:
        if other.ambient != self.ambient:
            raise FgAbError("subgroup comparison across ambient groups")
        return all(self.contains(g) for g in other.generators_)

    @property
    def is_trivial(self) -> bool:
        return all(g.is_zero for g in self.generators_)

    def is_whole(self) -> bool:
        return self.contains_subgroup(Subgroup.whole(self.ambient))

    def enumerate(self) -> set[tuple[int, ...]]:
        """All element coordinate tuples (finite ambient groups only)."""
        if not self.ambient.is_finite:
            raise FgAbError("cannot enumerate a subgroup of an infinite group")
        seen = {self.ambient.zero().coeffs}
        frontier = [self.ambient.zero()]
        while frontier:
            x = frontier.pop()
            for g in self.generators_:
                y = x + g
                if y.coeffs not in seen:
                    seen.add(y.coeffs)
                    frontier.append(y)
        return seen

    def __str__(self) -> str:
        if self.is_trivial:
            return "<0>"
        return "<" + ", ".join(str(g) for g in self.generators_) + ">"


def kernel(h: Homomorphism) -> Subgroup:
    """The kernel of a homomorphism, as a subgroup of its domain."""
    gens = _kernel_generators(
        [list(r) for r in h.matrix], h.codomain.coord_orders(), h.domain
    )
    return Subgroup(h.domain, tuple(gens))


def kernel_into_coords(
    domain: FgAbGroup, rows: Sequence[Sequence[int]], coord_orders: Sequence[int]
) -> Subgroup:
    """Kernel of the map given by `rows` into coordinates with the given
    orders (0 = free).  Used when the codomain is a plain coordinate block,
    e.g. a direct sum of tabulated stems, without renormalizing it."""
    if len(rows) != len(coord_orders):
        raise FgAbError("one coordinate order per matrix row required")
    for row in rows:
        if len(row) != domain.rank:
            raise FgAbError("matrix width must match domain rank")
    gens = _kernel_generators([list(r) for r in rows], list(coord_orders), domain)
    return Subgroup(domain, tuple(gens))


def image(h: Homomorphism) -> Subgroup:
    """The image of a homomorphism, as a subgroup of its codomain."""
    cols = [
        h.codomain.element([h.matrix[i][j] for i in range(h.codomain.rank)])
        for j in range(h.domain.rank)
    ]
    return Subgroup(h.codomain, tuple(cols))


def subgroup_cmp(a: Subgroup, b: Subgroup) -> Cmp:
    """Compare two subgroups of the same ambient group."""
    fwd = b.contains_subgroup(a)
    bwd = a.contains_subgroup(b)
    if fwd and bwd:
        return Cmp.EQUAL
    if fwd:
        return Cmp.PROPER_SUB
    if bwd:
        return Cmp.PROPER_SUPER
    return Cmp.INCOMPARABLE


def direct_sum(groups: Sequence[FgAbGroup]) -> FgAbGroup:
    """Direct sum, renormalized to invariant-factor form."""
    free = sum(g.free_rank for g in groups)
    orders = [t for g in groups for t in g.torsion]
    free_rank, torsion = _normalize_orders(orders, free)
    return FgAbGroup(free_rank, torsion)
