"""Bounded chain complexes of named, graded bases over the rationals.

Basis labels are carried through every construction so reports can name
the vectors they talk about. Differentials lower degree by one.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import InputError, StructureError
from .linalg import Matrix, RowReducer, PreparedSolve, is_zero_vec


class GradedSpace:
    """Finitely supported assignment degree -> list of distinct labels."""

    def __init__(self, degrees: dict):
        clean = {}
        for k, labels in degrees.items():
            labels = tuple(str(x) for x in labels)
            if len(set(labels)) != len(labels):
                raise InputError(f"duplicate labels in degree {k}")
            if labels:
                clean[int(k)] = labels
        self.degrees = clean

    def dim(self, k: int) -> int:
        return len(self.degrees.get(k, ()))

    def labels(self, k: int):
        return self.degrees.get(k, ())

    def support(self):
        return sorted(self.degrees)

    def total_dim(self) -> int:
        return sum(len(v) for v in self.degrees.values())

    def index(self, k: int, label: str) -> int:
        try:
            return self.degrees[k].index(label)
        except (KeyError, ValueError):
            raise InputError(f"no label {label!r} in degree {k}") from None

    def __eq__(self, other):
        return isinstance(other, GradedSpace) and self.degrees == other.degrees

    def __repr__(self):
        return "GradedSpace(%s)" % {k: len(v) for k, v in sorted(self.degrees.items())}

    @staticmethod
    def direct_sum(a: "GradedSpace", b: "GradedSpace", tags=("L.", "R.")) -> "GradedSpace":
        out = {}
        for k in set(a.support()) | set(b.support()):
            out[k] = tuple(tags[0] + x for x in a.labels(k)) + tuple(tags[1] + x for x in b.labels(k))
        return GradedSpace(out)


class ChainComplex:
    """A graded space with degree-lowering differentials, d*d = 0."""

    def __init__(self, space: GradedSpace, diff: dict, check: bool = True):
        self.space = space
        self.diff = {}
        for k, m in diff.items():
            k = int(k)
            if not isinstance(m, Matrix):
                m = Matrix.from_rows(m)
            if m.rows != space.dim(k - 1) or m.cols != space.dim(k):
                raise InputError(
                    f"differential at degree {k} has shape {m.rows}x{m.cols}, "
                    f"expected {space.dim(k - 1)}x{space.dim(k)}")
            if not m.is_zero():
                self.diff[k] = m
        if check:
            self.check_d_squared()

    def d(self, k: int) -> Matrix:
        m = self.diff.get(k)
        if m is None:
            return Matrix.zeros(self.space.dim(k - 1), self.space.dim(k))
        return m

    def check_d_squared(self):
        for k in list(self.diff):
            if self.space.dim(k - 2) and not (self.d(k - 1) @ self.d(k)).is_zero():
                raise StructureError(f"d*d != 0 entering degree {k - 2}")

    def dim(self, k: int) -> int:
        return self.space.dim(k)

    def support(self):
        return self.space.support()

    def homology(self, k: int):
        """Dimension and representing cycles of H_k, pivot convention.

        Representatives are the kernel-basis vectors that enlarge the span
        of the image, taken in kernel-basis order.
        """
        cycles = self.d(k).kernel_basis()
        image_cols = [self.d(k + 1).col(j) for j in range(self.dim(k + 1))]
        rr = RowReducer(self.dim(k))
        for v in image_cols:
            rr.add(v)
        reps = [z for z in cycles if rr.add(z)]
        return len(reps), reps

    def homology_tool(self, k: int) -> "HomologyTool":
        return HomologyTool(self, k)


class HomologyTool:
    """Coordinates of cycles in a fixed homology basis of one degree."""

    def __init__(self, cx: ChainComplex, k: int):
        self.cx = cx
        self.k = k
        self.dim, self.reps = cx.homology(k)
        image = [cx.d(k + 1).col(j) for j in range(cx.dim(k + 1))]
        cols = list(self.reps) + image
        n = cx.dim(k)
        self._solver = PreparedSolve(Matrix.from_cols(cols, rows=n)) if cols else None
        self._n = n

    def coords(self, cycle):
        """Class of a cycle in the representative basis; None if not a cycle."""
        if not is_zero_vec(self.cx.d(self.k).apply(cycle)):
            return None
        if self._solver is None:
            return () if is_zero_vec(cycle) else None
        x = self._solver.solve(cycle)
        if x is None:
            return None
        return tuple(x[: self.dim])


class ChainMap:
    """Degree-zero map of complexes commuting with the differentials."""

    def __init__(self, source: ChainComplex, target: ChainComplex, comps: dict,
                 check: bool = True):
        self.source = source
        self.target = target
        self.comps = {}
        for k, m in comps.items():
            k = int(k)
            if not isinstance(m, Matrix):
                m = Matrix.from_rows(m)
            if m.rows != target.dim(k) or m.cols != source.dim(k):
                raise InputError(
                    f"chain map component at degree {k} has shape {m.rows}x{m.cols}, "
                    f"expected {target.dim(k)}x{source.dim(k)}")
            if not m.is_zero():
                self.comps[k] = m
        if check:
            self.check_chain()

    def at(self, k: int) -> Matrix:
        m = self.comps.get(k)
        if m is None:
            return Matrix.zeros(self.target.dim(k), self.source.dim(k))
        return m

    def check_chain(self):
        degs = set(self.source.support()) | set(self.comps)
        for k in degs:
            lhs = self.target.d(k) @ self.at(k)
            rhs = self.at(k - 1) @ self.source.d(k)
            if lhs.data != rhs.data:
                raise StructureError(f"map does not commute with d at degree {k}")

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self after other."""
        if other.target is not self.source and other.target.space != self.source.space:
            raise InputError("chain map composition mismatch")
        degs = set(other.comps) | set(self.comps)
        return ChainMap(other.source, self.target,
                        {k: self.at(k) @ other.at(k) for k in degs}, check=False)

    @staticmethod
    def identity(cx: ChainComplex) -> "ChainMap":
        return ChainMap(cx, cx, {k: Matrix.identity(cx.dim(k)) for k in cx.support()},
                        check=False)


def is_quasi_iso(f: ChainMap):
    """Whether f induces isomorphisms on homology, with a per-degree report.

    Report rows: (degree, rank of induced map, source H dim, target H dim).
    """
    degs = sorted(set(f.source.support()) | set(f.target.support()))
    report = []
    ok = True
    for k in degs:
        src = f.source.homology_tool(k)
        tgt = f.target.homology_tool(k)
        rr = RowReducer(max(tgt.dim, 1))
        rank = 0
        for z in src.reps:
            c = tgt.coords(f.at(k).apply(z))
            if c is None:
                raise StructureError(f"image of a cycle is not a cycle at degree {k}")
            if tgt.dim and rr.add(c):
                rank += 1
        if not (rank == src.dim == tgt.dim):
            ok = False
        report.append((k, rank, src.dim, tgt.dim))
    return ok, report
