"""Weight/cocharacter lattice arithmetic for rank <= 2 GIT presentations.

A presentation records the torus rank, the nonzero roots of the group, the
weights of the linearized representation (with multiplicity), and generators
of the Weyl group acting on the weight lattice. All arithmetic is exact:
lattice vectors are integer tuples and derived quantities are Fractions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vector = tuple  # integer or Fraction coordinates
Matrix = tuple  # rows, each a tuple of ints


class PresentationError(ValueError):
    """Raised when a presentation file or dict fails validation."""


def pair(lam: Sequence, chi: Sequence):
    """Exact pairing <lam, chi> between cocharacter and weight vectors."""
    if len(lam) != len(chi):
        raise ValueError(f"length mismatch: {len(lam)} vs {len(chi)}")
    return sum(a * b for a, b in zip(lam, chi))


def vec_add(a: Sequence, b: Sequence) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Sequence, b: Sequence) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vec_neg(a: Sequence) -> Vector:
    return tuple(-x for x in a)


def vec_scale(c, a: Sequence) -> Vector:
    return tuple(c * x for x in a)


def is_zero(a: Sequence) -> bool:
    return all(x == 0 for x in a)


def primitive(a: Sequence) -> Vector:
    """Primitive integer vector on the ray of ``a`` (first nonzero coord > 0
    is NOT imposed; only the gcd is stripped and an all-integer tuple kept)."""
    fracs = [Fraction(x) for x in a]
    if all(f == 0 for f in fracs):
        raise ValueError("zero vector has no primitive representative")
    denom = 1
    for f in fracs:
        denom = denom * f.denominator // gcd(denom, f.denominator)
    ints = [int(f * denom) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(x // g for x in ints)


def primitive_signed(a: Sequence) -> Vector:
    """Primitive vector with the first nonzero coordinate positive."""
    p = primitive(a)
    for x in p:
        if x != 0:
            return p if x > 0 else vec_neg(p)
    raise ValueError("zero vector")


def mat_apply(m: Matrix, v: Sequence) -> Vector:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def mat_identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_inverse_transpose(m: Matrix) -> Matrix:
    """Inverse transpose of an integer matrix with det +-1.

    This is the induced action on the cocharacter lattice: pairing is then
    preserved, <g*lam, g.chi> = <lam, chi>.
    """
    n = len(m)
    aug = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == k)) for k in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular Weyl generator")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    invm = [[aug[i][n + j] for j in range(n)] for i in range(n)]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            x = invm[j][i]
            if x.denominator != 1:
                raise ValueError("Weyl generator is not invertible over the integers")
            row.append(int(x))
        out.append(tuple(row))
    return tuple(out)


@dataclass(frozen=True)
class GitPresentation:
    """A rank <= 2 linearized torus/reductive-group presentation.

    weights is a tuple of (vector, multiplicity) pairs; roots is a tuple of
    vectors; weyl is a tuple of integer matrices generating the Weyl action
    on the weight lattice.
    """

    rank: int
    roots: tuple
    weights: tuple
    weyl: tuple

    @classmethod
    def from_dict(cls, data: dict) -> "GitPresentation":
        try:
            rank = int(data["rank"])
            roots = tuple(tuple(int(x) for x in r) for r in data.get("roots", []))
            weights = tuple(
                (tuple(int(x) for x in w["vec"]), int(w.get("mult", 1)))
                for w in data["weights"]
            )
            weyl = tuple(
                tuple(tuple(int(x) for x in row) for row in m)
                for m in data.get("weyl", [])
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise PresentationError(f"malformed presentation: {exc}") from exc
        p = cls(rank=rank, roots=roots, weights=weights, weyl=weyl)
        p.validate()
        return p

    @classmethod
    def from_json(cls, path) -> "GitPresentation":
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        return cls.from_dict(data)

    def validate(self) -> None:
        if self.rank < 1 or self.rank > 2:
            raise PresentationError(f"unsupported rank {self.rank} (only 1 and 2)")
        for r in self.roots:
            if len(r) != self.rank:
                raise PresentationError(f"root {r} has wrong length")
        for w, m in self.weights:
            if len(w) != self.rank:
                raise PresentationError(f"weight {w} has wrong length")
            if m < 1:
                raise PresentationError(f"weight {w} has nonpositive multiplicity {m}")
        for g in self.weyl:
            if len(g) != self.rank or any(len(row) != self.rank for row in g):
                raise PresentationError("Weyl generator has wrong shape")
            mat_inverse_transpose(g)  # integer invertibility
        for g in self.weyl:
            if sorted(mat_apply(g, r) for r in self.roots) != sorted(self.roots):
                raise PresentationError("Weyl generator does not permute the roots")
            ws = sorted((mat_apply(g, w), m) for w, m in self.weights)
            if ws != sorted(self.weights):
                raise PresentationError("Weyl generator does not permute the weights")

    def weight_multiset(self) -> list:
        """All weights with multiplicity expanded, in input order."""
        out = []
        for w, m in self.weights:
            out.extend([w] * m)
        return out

    def weyl_elements(self) -> tuple:
        """All elements of the finite group generated by the Weyl generators."""
        seen = {mat_identity(self.rank)}
        frontier = list(seen)
        while frontier:
            nxt = []
            for g in frontier:
                for h in self.weyl:
                    gh = mat_mul(g, h)
                    if gh not in seen:
                        seen.add(gh)
                        nxt.append(gh)
            frontier = nxt
            if len(seen) > 10000:
                raise PresentationError("Weyl generators do not generate a small finite group")
        return tuple(sorted(seen))


def is_quasi_symmetric(p: GitPresentation) -> bool:
    """True when the weights on every line through the origin sum to zero."""
    lines: dict = {}
    for w in p.weight_multiset():
        if is_zero(w):
            continue
        d = primitive_signed(w)
        lines[d] = vec_add(lines.get(d, (0,) * p.rank), w)
    return all(is_zero(total) for total in lines.values())


def weyl_invariant_basis(p: GitPresentation) -> tuple:
    """Primitive basis of the Weyl-fixed subspace of the weight lattice.

    Computed as the exact kernel of the stacked (g - I) matrices; each basis
    vector is primitive with first nonzero coordinate positive, and the list
    is sorted lexicographically descending for determinism.
    """
    n = p.rank
    rows: list = []
    for g in p.weyl:
        for i in range(n):
            row = [Fraction(g[i][j] - (1 if i == j else 0)) for j in range(n)]
            if any(x != 0 for x in row):
                rows.append(row)
    # reduced row echelon form
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    basis = []
    free = [c for c in range(n) if c not in pivots]
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -rows[i][f]
        basis.append(primitive_signed(v))
    return tuple(sorted(basis, reverse=True))


def invariant_line(p: GitPresentation) -> Vector:
    """Primitive generator of the Weyl-fixed line; errors if not a line."""
    basis = weyl_invariant_basis(p)
    if len(basis) != 1:
        raise PresentationError(
            f"Weyl-fixed subspace has dimension {len(basis)}, expected a line"
        )
    return basis[0]


def weight_orbit(p: GitPresentation, chi: Sequence) -> tuple:
    """Weyl orbit of a weight, sorted lexicographically."""
    chi = tuple(chi)
    orbit = {mat_apply(g, chi) for g in p.weyl_elements()}
    return tuple(sorted(orbit))


def dominant_representative(p: GitPresentation, chi: Sequence):
    """Lexicographically maximal element of the Weyl orbit, with the orbit."""
    orbit = weight_orbit(p, chi)
    return orbit[-1], orbit


def load_fixture(name: str) -> GitPresentation:
    """Load one of the packaged presentation fixtures by file name."""
    from importlib.resources import files

    res = files("flopwin.fixtures").joinpath(name)
    return GitPresentation.from_dict(json.loads(res.read_text(encoding="utf-8")))
