"""Square matrices over RatFunc."""

from ..errors import AlgebraError
from .parsing import parse
from .ratfunc import ONE, ZERO, RatFunc


class MatR:
    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(RatFunc.coerce(a) if not isinstance(a, str) else parse(a) for a in r)
                     for r in rows)
        if any(len(r) != len(rows) for r in rows):
            raise AlgebraError("matrix must be square")
        self.rows = rows

    @property
    def size(self):
        return len(self.rows)

    @classmethod
    def identity(cls, r):
        return cls([[ONE if i == j else ZERO for j in range(r)] for i in range(r)])

    @classmethod
    def zero(cls, r):
        return cls([[ZERO] * r for _ in range(r)])

    @classmethod
    def unit(cls, r, i, j, value=ONE):
        return cls([[value if (a, b) == (i, j) else ZERO for b in range(r)] for a in range(r)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def map(self, f):
        return MatR([[f(a) for a in r] for r in self.rows])

    def _check(self, other):
        if self.size != other.size:
            raise AlgebraError(f"size mismatch {self.size} vs {other.size}")

    def __add__(self, other):
        self._check(other)
        return MatR([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._check(other)
        return MatR([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return self.map(lambda a: -a)

    def __mul__(self, other):
        if not isinstance(other, MatR):
            c = RatFunc.coerce(other)
            return self.map(lambda a: a * c)
        self._check(other)
        n = self.size
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = ZERO
                for k in range(n):
                    a = self.rows[i][k]
                    if a.is_zero():
                        continue
                    b = other.rows[k][j]
                    if b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return MatR(out)

    __rmul__ = __mul__

    def commutator(self, other):
        return self * other - other * self

    def trace(self):
        acc = ZERO
        for i in range(self.size):
            acc = acc + self.rows[i][i]
        return acc

    def transpose(self):
        return MatR(list(zip(*self.rows)))

    def is_zero(self):
        return all(a.is_zero() for r in self.rows for a in r)

    def __eq__(self, other):
        return isinstance(other, MatR) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def flatten(self):
        """Row-major entry list."""
        return [a for r in self.rows for a in r]

    def det(self):
        # fraction-free elimination over the fraction field
        n = self.size
        m = [list(r) for r in self.rows]
        sign = 1
        prev = ONE
        for k in range(n - 1):
            p = next((i for i in range(k, n) if not m[i][k].is_zero()), None)
            if p is None:
                return ZERO
            if p != k:
                m[k], m[p] = m[p], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev
                m[i][k] = ZERO
            prev = m[k][k]
        return m[n - 1][n - 1] * sign

    def inverse(self):
        n = self.size
        m = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(self.rows)]
        for c in range(n):
            p = next((i for i in range(c, n) if not m[i][c].is_zero()), None)
            if p is None:
                raise AlgebraError("singular matrix")
            m[c], m[p] = m[p], m[c]
            inv = m[c][c].inverse()
            m[c] = [a * inv for a in m[c]]
            for i in range(n):
                if i != c and not m[i][c].is_zero():
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return MatR([r[n:] for r in m])

    def charpoly(self, y="y"):
        """det(y Id - A) as a RatFunc in the new variable y."""
        yv = RatFunc.var(y)
        return (MatR.identity(self.size) * yv - self).det()

    def subs(self, mapping):
        return self.map(lambda a: a.subs(mapping))

    def derivative(self, name):
        return self.map(lambda a: a.derivative(name))

    def free_vars(self):
        from .poly import sort_vars

        return sort_vars([v for r in self.rows for a in r for v in a.free_vars()])

    def to_strings(self):
        return [[str(a) for a in r] for r in self.rows]

    def __repr__(self):
        return "MatR(" + repr(self.to_strings()) + ")"
