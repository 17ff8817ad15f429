"""Exact linear algebra over cyclotomic scalars."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cyclo import ONE, ZERO, CycloNum, Scalar, as_cyclo
from .errors import DivisionByZero
from .poly import BiPoly


def rref(rows: Sequence[Sequence[CycloNum]]) -> tuple[list[list[CycloNum]], list[int]]:
    """Reduced row echelon form and pivot columns; zero rows are dropped."""
    mat = [[as_cyclo(c) for c in row] for row in rows]
    ncols = len(mat[0]) if mat else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pr = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = mat[r][col].inverse()
        mat[r] = [c * inv for c in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                factor = mat[i][col]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def nullspace(rows: Sequence[Sequence[CycloNum]], ncols: int) -> list[list[CycloNum]]:
    """Basis of {v : M v = 0}, one vector per free column, free entry set to 1."""
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


@dataclass(frozen=True)
class Mat2:
    """2x2 matrix [[a, b], [c, d]] acting on column vectors."""

    a: CycloNum
    b: CycloNum
    c: CycloNum
    d: CycloNum

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, as_cyclo(getattr(self, name)))

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(ONE, ZERO, ZERO, ONE)

    @classmethod
    def diag(cls, p: Scalar, q: Scalar) -> "Mat2":
        return cls(p, ZERO, ZERO, q)

    @classmethod
    def scalar(cls, lam: Scalar) -> "Mat2":
        return cls(lam, ZERO, ZERO, lam)

    def entries(self) -> tuple[CycloNum, ...]:
        return (self.a, self.b, self.c, self.d)

    def det(self) -> CycloNum:
        return self.a * self.d - self.b * self.c

    def __mul__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                    self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def __sub__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def inverse(self) -> "Mat2":
        det = self.det()
        if not det:
            raise DivisionByZero("singular matrix")
        inv = det.inverse()
        return Mat2(self.d * inv, -self.b * inv, -self.c * inv, self.a * inv)

    def __pow__(self, k: int) -> "Mat2":
        if k < 0:
            return self.inverse() ** (-k)
        out, base = Mat2.identity(), self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def apply_vector(self, v: tuple) -> tuple:
        return (self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1])

    def act(self, f: BiPoly) -> BiPoly:
        """f o m, that is f(a*x + b*y, c*x + d*y)."""
        x, y = BiPoly.x(), BiPoly.y()
        return f.subs(x * self.a + y * self.b, x * self.c + y * self.d)

    def is_identity(self) -> bool:
        return self == Mat2.identity()

    def normalized(self) -> "Mat2":
        """Projective representative: first nonzero entry scaled to 1."""
        lead = next(e for e in self.entries() if e)
        inv = lead.inverse()
        return Mat2(*(e * inv for e in self.entries()))

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"
