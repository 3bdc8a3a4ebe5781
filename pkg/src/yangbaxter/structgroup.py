"""Structure groups of involutive solutions through exact affine matrices.

Each generator x_i maps to the integer matrix [P_i | e_i; 0 | 1] whose block
is the permutation matrix of sigma[i] (column j carries a 1 in row
sigma[i](j)) and whose last column is the i-th standard basis vector.  All
arithmetic is exact; growth of the Cayley ball, the Promislow word set and
the unique-product falsifier are built on top.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .perms import Perm, compose, identity as identity_perm, invert
from .solutions import Solution


@dataclass(frozen=True)
class AffineElement:
    """Pair (permutation, integer shift), i.e. the matrix [P | t; 0 | 1]."""

    perm_part: Perm
    trans_part: tuple[int, ...]

    @staticmethod
    def identity(n: int) -> "AffineElement":
        return AffineElement(identity_perm(n), (0,) * n)

    def __mul__(self, other: "AffineElement") -> "AffineElement":
        p, t = self.perm_part, self.trans_part
        q, s = other.perm_part, other.trans_part
        n = len(p)
        trans = list(t)
        for j in range(n):
            trans[p[j]] += s[j]
        return AffineElement(compose(p, q), tuple(trans))

    def inverse(self) -> "AffineElement":
        p, t = self.perm_part, self.trans_part
        return AffineElement(invert(p), tuple(-t[p[i]] for i in range(len(p))))

    def to_matrix(self) -> tuple[tuple[int, ...], ...]:
        n = len(self.perm_part)
        pinv = invert(self.perm_part)
        rows = []
        for i in range(n):
            row = [0] * (n + 1)
            row[pinv[i]] = 1  # column j holds a 1 in row perm(j)
            row[n] = self.trans_part[i]
            rows.append(tuple(row))
        rows.append(tuple([0] * n + [1]))
        return tuple(rows)


def affine_representation(s: Solution) -> list[AffineElement]:
    """Faithful generators of the structure group of an involutive solution.

    Every defining relation x y = u v with r(x, y) = (u, v) is verified on
    the matrices before returning.
    """
    if not s.involutive:
        raise ValueError("the affine representation requires an involutive solution")
    n = s.size
    gens = [
        AffineElement(s.sigma[i], tuple(1 if j == i else 0 for j in range(n)))
        for i in range(n)
    ]
    for x in range(n):
        for y in range(n):
            u, v = s.r(x, y)
            if gens[x] * gens[y] != gens[u] * gens[v]:  # pragma: no cover
                raise RuntimeError(
                    f"structure relation fails at (x={x}, y={y}); "
                    "this contradicts the construction"
                )
    return gens


# ---------------------------------------------------------------------------
# Words

Word = tuple[int, ...]  # signed 1-based generator indices

_TOKEN_RE = re.compile(r"^(\d+)(')?$")


def parse_word(text: str) -> Word:
    """Parse "1 2'" -> (1, -2): whitespace-separated tokens, ' marks inverse."""
    out = []
    for token in text.split():
        m = _TOKEN_RE.match(token)
        if not m:
            raise ValueError(f"bad word token {token!r}; expected i or i'")
        idx = int(m.group(1))
        if idx < 1:
            raise ValueError("generator indices are 1-based")
        out.append(-idx if m.group(2) else idx)
    return tuple(out)


def format_word(word: Word) -> str:
    return " ".join(f"{abs(i)}'" if i < 0 else str(i) for i in word)


def eval_word(gens, word: Word):
    """Exact product of generators (1-based, negative = inverse)."""
    if not gens:
        raise ValueError("need at least one generator")
    acc = gens[0] * gens[0].inverse()
    for i in word:
        if not 1 <= abs(i) <= len(gens):
            raise ValueError(f"generator index {i} out of range 1..{len(gens)}")
        g = gens[abs(i) - 1]
        acc = acc * (g if i > 0 else g.inverse())
    return acc


# ---------------------------------------------------------------------------
# Cayley ball growth


@dataclass(frozen=True)
class GrowthResult:
    values: tuple[int, ...]
    truncated: bool = False


def ball_sizes(
    s: Solution, radius: int, max_elements: int = 2_000_000
) -> GrowthResult:
    """Cumulative ball sizes in the Cayley graph on X and X^{-1}.

    Edges join g and gx, so the graph is undirected with the symmetric
    generating set; values[k] counts elements at distance <= k.  Exceeding
    `max_elements` returns the computed prefix flagged as truncated.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    gens = affine_representation(s)
    moves = gens + [g.inverse() for g in gens]
    return GrowthResult(*_bfs_sizes(AffineElement.identity(s.size), moves, radius, max_elements))


def ball_sizes_via_matrices(
    s: Solution, radius: int, max_elements: int = 2_000_000
) -> GrowthResult:
    """Independent recomputation of ball_sizes over raw integer matrices."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    gens = affine_representation(s)
    mats = [_MatrixElement(g.to_matrix()) for g in gens]
    moves = mats + [m.inverse() for m in mats]
    ident = _MatrixElement(AffineElement.identity(s.size).to_matrix())
    return GrowthResult(*_bfs_sizes(ident, moves, radius, max_elements))


def _bfs_sizes(start, moves, radius: int, max_elements: int):
    seen = {start}
    frontier = [start]
    sizes = [1]
    truncated = False
    for _ in range(radius):
        new = []
        for el in frontier:
            for m in moves:
                nxt = el * m
                if nxt not in seen:
                    seen.add(nxt)
                    new.append(nxt)
            if len(seen) > max_elements:
                truncated = True
                break
        if truncated:
            break
        frontier = new
        sizes.append(len(seen))
    return tuple(sizes), truncated


@dataclass(frozen=True)
class _MatrixElement:
    rows: tuple[tuple[int, ...], ...]

    def __mul__(self, other: "_MatrixElement") -> "_MatrixElement":
        a, b = self.rows, other.rows
        m = len(a)
        return _MatrixElement(
            tuple(
                tuple(sum(a[i][k] * b[k][j] for k in range(m)) for j in range(m))
                for i in range(m)
            )
        )

    def inverse(self) -> "_MatrixElement":
        inv = _invert_rational([[Fraction(v) for v in row] for row in self.rows])
        return _MatrixElement(
            tuple(tuple(int(v) for v in row) for row in inv)
        )


# ---------------------------------------------------------------------------
# Rational series guessing


@dataclass(frozen=True)
class SeriesGuess:
    """p(t)/q(t) fitted to finitely many coefficients; a conjecture by nature."""

    numerator: tuple[int, ...]
    denominator: tuple[int, ...]
    conjecture: bool = True

    def __str__(self) -> str:
        return f"({_poly_str(self.numerator)}) / ({_poly_str(self.denominator)})"

    def expand(self, count: int) -> list[int]:
        p = [Fraction(c) for c in self.numerator]
        q = [Fraction(c) for c in self.denominator]
        out: list[Fraction] = []
        for k in range(count):
            total = p[k] if k < len(p) else Fraction(0)
            for i in range(1, min(k, len(q) - 1) + 1):
                total -= q[i] * out[k - i]
            out.append(total / q[0])
        if any(v.denominator != 1 for v in out):
            raise ValueError("series is not integral")
        return [int(v) for v in out]


def _poly_str(coeffs) -> str:
    terms = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        if k == 0:
            terms.append(str(c))
        else:
            mono = "t" if k == 1 else f"t^{k}"
            if c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}*{mono}")
    if not terms:
        return "0"
    return " + ".join(terms).replace("+ -", "- ")


def guess_rational_series(values) -> SeriesGuess | None:
    """Minimal-order rational function reproducing every supplied value.

    Searches denominators of degree d <= len(values)/2 whose linear
    recurrence holds from index d on; the numerator absorbs the initial
    segment.  Exact rational arithmetic throughout; the result re-expands to
    the inputs or is discarded.  None when nothing of admissible order fits.
    """
    vals = [Fraction(int(v)) for v in values]
    if len(vals) < 6:
        raise ValueError("need at least 6 values to guess a series")
    length = len(vals)
    # keep at least one validation row beyond the unknowns, otherwise order
    # length/2 degenerates into interpolation and never fails
    for d in range(1, (length - 1) // 2 + 1):
        rows = [[vals[k - i] for i in range(1, d + 1)] for k in range(d, length)]
        rhs = [-vals[k] for k in range(d, length)]
        tail = _solve_exact(rows, rhs)
        if tail is None:
            continue
        q = [Fraction(1)] + tail
        p = [
            sum(q[i] * vals[k - i] for i in range(0, k + 1) if i <= d)
            for k in range(d)
        ]
        guess = _normalize_fraction_polys(p, q)
        if guess is None:
            continue
        try:
            if guess.expand(length) == [int(v) for v in vals]:
                return guess
        except ValueError:
            continue
    return None


def _solve_exact(rows, rhs):
    """One exact solution of an overdetermined linear system, or None."""
    if not rows:
        return None
    m, ncols = len(rows), len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, m) if aug[r][col] != 0), None)
        if pivot is None:
            continue
        aug[row], aug[pivot] = aug[pivot], aug[row]
        pv = aug[row][col]
        aug[row] = [v / pv for v in aug[row]]
        for r in range(m):
            if r != row and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    for r in range(row, m):
        if aug[r][ncols] != 0:
            return None  # inconsistent
    solution = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        solution[col] = aug[r][ncols]
    # free variables are zero; verify the full system
    for r, b in zip(rows, rhs):
        if sum(c * x for c, x in zip(r, solution)) != b:
            return None
    return solution


def _normalize_fraction_polys(p, q) -> SeriesGuess | None:
    p = _trim(p)
    q = _trim(q)
    if not q or q[0] == 0:
        return None
    if not p:
        p = [Fraction(0)]
    g = _poly_gcd(p, q)
    if len(g) > 1:
        p = _poly_div(p, g)
        q = _poly_div(q, g)
    if q[0] == 0:
        return None
    denom_lcm = 1
    for c in p + q:
        denom_lcm = denom_lcm * c.denominator // _gcd(denom_lcm, c.denominator)
    p_int = [int(c * denom_lcm) for c in p]
    q_int = [int(c * denom_lcm) for c in q]
    content = 0
    for c in p_int + q_int:
        content = _gcd(content, abs(c))
    if content > 1:
        p_int = [c // content for c in p_int]
        q_int = [c // content for c in q_int]
    if q_int[0] < 0:
        p_int = [-c for c in p_int]
        q_int = [-c for c in q_int]
    return SeriesGuess(tuple(p_int), tuple(q_int))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _trim(_poly_mod(a, b))
    if not a:
        return [Fraction(1)]
    return [c / a[-1] for c in a]


def _poly_mod(a, b):
    a = list(a)
    while len(a) >= len(b) and _trim(a):
        factor = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= factor * c
        a = _trim(a)
        if not a:
            break
    return a


def _poly_div(a, b):
    out = [Fraction(0)] * (len(a) - len(b) + 1)
    rem = list(a)
    while len(rem) >= len(b) and _trim(rem):
        factor = rem[-1] / b[-1]
        shift = len(rem) - len(b)
        out[shift] = factor
        for i, c in enumerate(b):
            rem[shift + i] -= factor * c
        rem = _trim(rem)
    return _trim(out) or [Fraction(0)]


# ---------------------------------------------------------------------------
# Exact rational matrices (for groups presented by explicit matrices)


@dataclass(frozen=True)
class RationalMatrix:
    rows: tuple[tuple[Fraction, ...], ...]

    @staticmethod
    def from_lists(rows) -> "RationalMatrix":
        return RationalMatrix(
            tuple(tuple(Fraction(v) for v in row) for row in rows)
        )

    @staticmethod
    def identity(n: int) -> "RationalMatrix":
        return RationalMatrix(
            tuple(
                tuple(Fraction(1 if i == j else 0) for j in range(n))
                for i in range(n)
            )
        )

    def __mul__(self, other: "RationalMatrix") -> "RationalMatrix":
        a, b = self.rows, other.rows
        m = len(a)
        return RationalMatrix(
            tuple(
                tuple(sum(a[i][k] * b[k][j] for k in range(m)) for j in range(m))
                for i in range(m)
            )
        )

    def inverse(self) -> "RationalMatrix":
        return RationalMatrix(
            tuple(
                tuple(row)
                for row in _invert_rational([list(r) for r in self.rows])
            )
        )


def _invert_rational(rows):
    n = len(rows)
    aug = [
        [Fraction(v) for v in row] + [Fraction(1 if i == j else 0) for j in range(n)]
        for i, row in enumerate(rows)
    ]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def promislow_matrix_generators() -> tuple[RationalMatrix, RationalMatrix]:
    """The classical pair of 4x4 rational matrices generating the Promislow group."""
    half = Fraction(1, 2)
    x = RationalMatrix.from_lists(
        [
            [0, 1, 0, 0],
            [2, 0, 0, 0],
            [0, 0, 0, half],
            [0, 0, 1, 0],
        ]
    )
    y = RationalMatrix.from_lists(
        [
            [0, 0, 1, 0],
            [0, 0, 0, 1],
            [2, 0, 0, 0],
            [0, half, 0, 0],
        ]
    )
    return x, y


# ---------------------------------------------------------------------------
# Promislow set and the unique product falsifier


def promislow_set(x, y) -> list:
    """The 14 classical words in x and y, deduplicated, first occurrence first."""
    xi, yi = x.inverse(), y.inverse()
    xy = x * y
    xyx = x * y * x
    words = [
        x * x * y,
        y * y * x,
        x * y * xi,
        (y * y * x).inverse(),
        (xy * xy).inverse(),
        y,
        xy * xy * x,
        xy * xy,
        xyx.inverse(),
        y * x * y,
        yi,
        x,
        xyx,
        xi,
    ]
    unique = []
    for w in words:
        if w not in unique:
            unique.append(w)
    return unique


def promislow_relations_hold(x, y) -> bool:
    """x^-1 y^2 x = y^-2 and y^-1 x^2 y = x^-2, checked exactly."""
    xi, yi = x.inverse(), y.inverse()
    return (
        xi * y * y * x == (y * y).inverse()
        and yi * x * x * y == (x * x).inverse()
    )


@dataclass(frozen=True)
class UppVerdict:
    """Outcome of the unique-product check for the pair (S, S)."""

    falsified: bool
    set_size: int
    product_count: int
    unique_products: tuple  # pairs (index_a, index_b) with a unique factorization
    multiplicity_histogram: tuple[tuple[int, int], ...]  # (multiplicity, count)

    def __str__(self) -> str:
        if self.falsified:
            return (
                f"FALSIFIED: all {self.product_count} products of the "
                f"{self.set_size}-element set admit at least two factorizations"
            )
        return (
            f"not falsified by this set: {len(self.unique_products)} of "
            f"{self.product_count} products have a unique factorization"
        )


def upp_falsify(S) -> UppVerdict:
    """Check whether S witnesses failure of the unique product property.

    Computes S*S with factorization multiplicities.  If every product has at
    least two factorizations, no element of S*S has a unique product and the
    pair (S, S) falsifies the property.  Otherwise the uniquely factorizable
    products are reported.
    """
    elements = list(S)
    products: dict = {}
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            products.setdefault(a * b, []).append((i, j))
    unique = tuple(
        factorizations[0]
        for factorizations in products.values()
        if len(factorizations) == 1
    )
    histogram: dict[int, int] = {}
    for factorizations in products.values():
        histogram[len(factorizations)] = histogram.get(len(factorizations), 0) + 1
    return UppVerdict(
        falsified=not unique,
        set_size=len(elements),
        product_count=len(products),
        unique_products=unique,
        multiplicity_histogram=tuple(sorted(histogram.items())),
    )


# ---------------------------------------------------------------------------
# Presentations


@dataclass(frozen=True)
class Presentation:
    generators: int
    relations: tuple[tuple[Word, Word], ...]
    ambiguous: bool = False


def structure_presentation(s: Solution) -> Presentation:
    """Generators 1..n with x y = u v whenever r(x, y) = (u, v), deduplicated."""
    n = s.size
    seen = set()
    relations = []
    for x in range(n):
        for y in range(n):
            u, v = s.r(x, y)
            lhs = (x + 1, y + 1)
            rhs = (u + 1, v + 1)
            if lhs == rhs:
                continue
            key = tuple(sorted((lhs, rhs)))
            if key in seen:
                continue
            seen.add(key)
            relations.append((lhs, rhs))
    return Presentation(n, tuple(relations))


def additive_group_presentation(s: Solution) -> Presentation:
    """Companion presentation with relations x u = u sigma_u(v) for r(x, y) = (u, v).

    The defining rule never mentions y on the right-hand side, so its intent
    is ambiguous as written; the listing is produced verbatim and flagged,
    not normalized.
    """
    n = s.size
    seen = set()
    relations = []
    for x in range(n):
        for y in range(n):
            u, v = s.r(x, y)
            lhs = (x + 1, u + 1)
            rhs = (u + 1, s.sigma[u][v] + 1)
            if lhs == rhs:
                continue
            key = tuple(sorted((lhs, rhs)))
            if key in seen:
                continue
            seen.add(key)
            relations.append((lhs, rhs))
    return Presentation(n, tuple(relations), ambiguous=True)


def generator_collapse(p: Presentation) -> list[list[int]]:
    """Partition of the generators forced by one-step cancellation.

    Relations g a = h a or a g = a h (after rewriting through previously
    merged generators) force g = h; iterate to a fixed point.  Sound but
    deliberately incomplete: it only witnesses non-injectivity, never proves
    injectivity.
    """
    parent = list(range(p.generators + 1))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: int, b: int) -> bool:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[max(ra, rb)] = min(ra, rb)
        return True

    changed = True
    while changed:
        changed = False
        for lhs, rhs in p.relations:
            if len(lhs) != 2 or len(rhs) != 2:
                continue
            a, b = (find(i) for i in lhs)
            c, d = (find(i) for i in rhs)
            if b == d and union(a, c):
                changed = True
            if a == c and union(b, d):
                changed = True
    blocks: dict[int, list[int]] = {}
    for g in range(1, p.generators + 1):
        blocks.setdefault(find(g), []).append(g)
    return [sorted(v) for _, v in sorted(blocks.items())]
