"""Quadratic spaces over a real quadratic field.

A :class:`QSpace` is a diagonal quadratic form, either Lorentzian of
signature (n, 1) or positive definite (the latter hosts the standard
finite root-system models).  Vectors are exact coordinate tuples; all
linear algebra (inner products, reflections, orthogonal projection)
is carried out symbolically in the field.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from coxpoly.field import FieldScalar, FieldError


class DimensionError(ValueError):
    """Vector length does not match the space."""


class DegenerateGramError(ValueError):
    """Linear solve hit a singular Gram matrix."""


def _as_scalar(x, d: int) -> FieldScalar:
    if isinstance(x, FieldScalar):
        return x
    if isinstance(x, int):
        return FieldScalar(x, 0, 1, d)
    raise TypeError(f"expected FieldScalar or int, got {type(x).__name__}")


class QVector:
    """An exact coordinate vector in a :class:`QSpace`."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable):
        object.__setattr__(self, "coords", tuple(coords))

    def __setattr__(self, name, value):
        raise AttributeError("QVector is immutable")

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, QVector) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __add__(self, other: QVector) -> QVector:
        return QVector(a + b for a, b in zip(self.coords, other.coords, strict=True))

    def __sub__(self, other: QVector) -> QVector:
        return QVector(a - b for a, b in zip(self.coords, other.coords, strict=True))

    def __neg__(self) -> QVector:
        return QVector(-a for a in self.coords)

    def scale(self, t) -> QVector:
        return QVector(a * t for a in self.coords)

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.coords)

    def to_json(self) -> list:
        return [a.to_triple() for a in self.coords]

    @classmethod
    def from_json(cls, data, d: int) -> QVector:
        return cls(FieldScalar.from_triple(t, d) for t in data)

    def __repr__(self) -> str:
        return "QVector(" + ", ".join(str(a) for a in self.coords) + ")"


class QSpace:
    """Diagonal quadratic form with coefficients in Q(sqrt(d))."""

    __slots__ = ("diag", "d")

    def __init__(self, diag: Iterable, d: int = 0, allow_any_signature: bool = False):
        diag_t = tuple(_as_scalar(x, d) for x in diag)
        if not diag_t:
            raise ValueError("space must have positive dimension")
        object.__setattr__(self, "diag", diag_t)
        object.__setattr__(self, "d", d)
        if not allow_any_signature:
            neg = sum(1 for x in diag_t if x.sign() < 0)
            zero = sum(1 for x in diag_t if x.sign() == 0)
            if zero or neg > 1:
                raise ValueError(
                    f"signature must be (n,1) or positive definite, got "
                    f"{len(diag_t) - neg - zero} positive / {neg} negative / {zero} zero"
                )

    def __setattr__(self, name, value):
        raise AttributeError("QSpace is immutable")

    @property
    def dim(self) -> int:
        return len(self.diag)

    @property
    def is_lorentzian(self) -> bool:
        return any(x.sign() < 0 for x in self.diag)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QSpace) and self.d == other.d and self.diag == other.diag
        )

    def __hash__(self) -> int:
        return hash((self.diag, self.d))

    def zero(self) -> QVector:
        return QVector(FieldScalar(0, 0, 1, self.d) for _ in range(self.dim))

    def scalar(self, a: int, b: int = 0, c: int = 1) -> FieldScalar:
        return FieldScalar(a, b, c, self.d)

    def vector(self, coords: Sequence) -> QVector:
        v = QVector(_as_scalar(x, self.d) for x in coords)
        if len(v) != self.dim:
            raise DimensionError(f"expected {self.dim} coordinates, got {len(v)}")
        return v

    # -- core bilinear algebra -----------------------------------------------

    def inner(self, u: QVector, v: QVector) -> FieldScalar:
        if len(u) != self.dim or len(v) != self.dim:
            raise DimensionError("vector length does not match space dimension")
        acc = FieldScalar(0, 0, 1, self.d)
        for w, a, b in zip(self.diag, u.coords, v.coords):
            if a.is_zero() or b.is_zero():
                continue
            acc = acc + w * a * b
        return acc

    def norm(self, v: QVector) -> FieldScalar:
        return self.inner(v, v)

    def reflect(self, root: QVector, v: QVector) -> QVector:
        """Image of ``v`` under reflection across the hyperplane of ``root``."""
        n = self.norm(root)
        if n.sign() <= 0:
            raise FieldError("reflection requires a positive-norm root")
        t = (self.inner(v, root) * 2) / n
        if t.is_zero():
            return v
        return v - root.scale(t)

    def gram(self, roots: Sequence[QVector]) -> list[list[FieldScalar]]:
        n = len(roots)
        g = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                g[i][j] = g[j][i] = self.inner(roots[i], roots[j])
        return g

    # -- exact linear solving ------------------------------------------------

    def solve(
        self, matrix: Sequence[Sequence[FieldScalar]], rhs: Sequence[FieldScalar]
    ) -> list[FieldScalar]:
        """Solve ``matrix @ x = rhs`` by Gaussian elimination over the field.

        Pivots on the first nonzero entry in each column; raises
        :class:`DegenerateGramError` when the matrix is singular.
        """
        n = len(matrix)
        aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
        for col in range(n):
            pivot = next(
                (r for r in range(col, n) if not aug[r][col].is_zero()), None
            )
            if pivot is None:
                raise DegenerateGramError("singular matrix in exact solve")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            pv = aug[col][col]
            for r in range(n):
                if r == col or aug[r][col].is_zero():
                    continue
                f = aug[r][col] / pv
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return [aug[i][n] / aug[i][i] for i in range(n)]

    # -- projections ---------------------------------------------------------

    def span_projection(
        self, span: Sequence[QVector], v: QVector
    ) -> tuple[QVector, QVector]:
        """Split ``v = p + q`` with ``p`` in the span and ``q`` orthogonal to it."""
        if not span:
            return self.zero(), v
        g = self.gram(span)
        rhs = [self.inner(v, s) for s in span]
        coeffs = self.solve(g, rhs)
        p = self.zero()
        for c, s in zip(coeffs, span):
            if not c.is_zero():
                p = p + s.scale(c)
        return p, v - p

    def orth_project(self, span: Sequence[QVector], v: QVector) -> QVector:
        """The component of ``v`` orthogonal to the span."""
        return self.span_projection(span, v)[1]

    def orth_complement_basis(self, span: Sequence[QVector]) -> list[QVector]:
        """An exact basis of the orthogonal complement of the span.

        The span must be linearly independent with nondegenerate Gram
        (true for the positive-definite spans used in face extraction).
        """
        target = self.dim - len(span)
        basis: list[QVector] = []
        echelon: list[tuple[int, list[FieldScalar]]] = []
        for i in range(self.dim):
            if len(basis) == target:
                break
            e = self.vector([1 if j == i else 0 for j in range(self.dim)])
            q = self.orth_project(span, e) if span else e
            row = list(q.coords)
            for lead, erow in echelon:
                if not row[lead].is_zero():
                    f = row[lead] / erow[lead]
                    row = [x - f * y for x, y in zip(row, erow)]
            lead = next((k for k, x in enumerate(row) if not x.is_zero()), None)
            if lead is not None:
                echelon.append((lead, row))
                basis.append(q)
        if len(basis) != target:
            raise DegenerateGramError("span is not linearly independent")
        return basis

    def orthogonal_basis(
        self, vecs: Sequence[QVector]
    ) -> list[tuple[QVector, FieldScalar]]:
        """Diagonalizing (vector, norm) pairs spanning the same subspace.

        Gram-Schmidt over the field; when every remaining vector is
        isotropic, two of them with a nonzero pairing are combined first
        (always possible while the restricted form is nondegenerate).
        """
        work = list(vecs)
        out: list[tuple[QVector, FieldScalar]] = []
        while work:
            reduced = []
            for w in work:
                for b, bn in out:
                    t = self.inner(w, b) / bn
                    if not t.is_zero():
                        w = w - b.scale(t)
                if not w.is_zero():
                    reduced.append(w)
            work = reduced
            if not work:
                break
            idx = next(
                (k for k, w in enumerate(work) if not self.norm(w).is_zero()), None
            )
            if idx is None:
                pair = next(
                    (
                        (i, j)
                        for i in range(len(work))
                        for j in range(i + 1, len(work))
                        if not self.inner(work[i], work[j]).is_zero()
                    ),
                    None,
                )
                if pair is None:
                    raise DegenerateGramError("degenerate form on subspace")
                work[pair[0]] = work[pair[0]] + work[pair[1]]
                continue
            v = work.pop(idx)
            out.append((v, self.norm(v)))
        return out

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {"d": self.d, "diag": [x.to_triple() for x in self.diag]}

    @classmethod
    def from_json(cls, data) -> QSpace:
        d = int(data["d"])
        return cls([FieldScalar.from_triple(t, d) for t in data["diag"]], d)

    def __repr__(self) -> str:
        return f"QSpace(dim={self.dim}, d={self.d})"


def proportional(u: QVector, v: QVector) -> bool:
    """True when ``v`` is a strictly positive multiple of ``u``."""
    if len(u) != len(v):
        return False
    i = next((k for k, x in enumerate(u.coords) if not x.is_zero()), None)
    j = next((k for k, x in enumerate(v.coords) if not x.is_zero()), None)
    if i is None or j is None:
        return i == j
    if i != j:
        return False
    t = v[i] / u[i]
    if t.sign() <= 0:
        return False
    return all((x * t) == y for x, y in zip(u.coords, v.coords))


def projective_key(u: QVector) -> tuple:
    """Hashable key equal for vectors that differ by a positive scaling."""
    i = next((k for k, x in enumerate(u.coords) if not x.is_zero()), None)
    if i is None:
        return ("zero",)
    ratios = tuple(x / u[i] for x in u.coords)
    return (i, u[i].sign(), ratios)
