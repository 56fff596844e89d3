"""
Simplex de tabla densa sobre Fraction con la regla de Bland.

Resuelve problemas de empaquetamiento max c·y, A·y ≤ b, y ≥ 0 con b ≥ 0: el
origen es factible y las holguras forman la base inicial, así que no hay
fase 1. Al terminar, el costo reducido de cada holgura cambiado de signo es
el valor dual de su restricción.
"""

from dataclasses import dataclass
from fractions import Fraction

from ..logger import get_logger

logger = get_logger(__name__)


class Unbounded(ArithmeticError):
    pass


@dataclass(frozen=True, slots=True)
class SimplexResult:
    value: Fraction
    primal: tuple[Fraction, ...]  # y
    dual: tuple[Fraction, ...]  # un valor por fila
    pivots: int


class PackingTableau:
    """
    Filas = restricciones, columnas = n variables originales + m holguras.
    `reduced` guarda c_j - z_j; se entra por el menor índice con valor > 0.
    """

    def __init__(self, A: list[list[Fraction]], b: list[Fraction], c: list[Fraction]):
        self.m = len(A)
        self.n = len(c)
        if any(bi < 0 for bi in b):
            raise ValueError("el tableau de empaquetamiento requiere b ≥ 0")
        width = self.n + self.m
        self.rows: list[list[Fraction]] = []
        for i, row in enumerate(A):
            slack = [Fraction(0)] * self.m
            slack[i] = Fraction(1)
            self.rows.append([Fraction(v) for v in row] + slack)
        self.rhs: list[Fraction] = [Fraction(v) for v in b]
        self.reduced: list[Fraction] = [Fraction(v) for v in c] + [Fraction(0)] * self.m
        self.objective = Fraction(0)
        self.basis: list[int] = list(range(self.n, width))
        self.pivots = 0

    def _entering(self) -> int | None:
        for j, r in enumerate(self.reduced):
            if r > 0:
                return j
        return None

    def _leaving(self, j: int) -> int:
        best: tuple[Fraction, int, int] | None = None
        for i, row in enumerate(self.rows):
            if row[j] > 0:
                cand = (self.rhs[i] / row[j], self.basis[i], i)
                if best is None or cand < best:
                    best = cand
        if best is None:
            raise Unbounded(f"columna {j} sin cota")
        return best[2]

    def pivot(self, i: int, j: int) -> None:
        piv = self.rows[i][j]
        self.rows[i] = [v / piv for v in self.rows[i]]
        self.rhs[i] /= piv
        for k, row in enumerate(self.rows):
            if k != i and row[j] != 0:
                f = row[j]
                self.rows[k] = [a - f * p for a, p in zip(row, self.rows[i])]
                self.rhs[k] -= f * self.rhs[i]
        f = self.reduced[j]
        self.reduced = [a - f * p for a, p in zip(self.reduced, self.rows[i])]
        self.objective += f * self.rhs[i]
        self.basis[i] = j
        self.pivots += 1

    def solve(self) -> SimplexResult:
        while (j := self._entering()) is not None:
            self.pivot(self._leaving(j), j)
        y = [Fraction(0)] * (self.n + self.m)
        for i, var in enumerate(self.basis):
            y[var] = self.rhs[i]
        dual = tuple(-self.reduced[self.n + i] for i in range(self.m))
        logger.debug("[WIDTHS] simplex: valor %s tras %s pivotes", self.objective, self.pivots)
        return SimplexResult(self.objective, tuple(y[: self.n]), dual, self.pivots)


def maximize_packing(A: list[list[Fraction]], b: list[Fraction], c: list[Fraction]) -> SimplexResult:
    return PackingTableau(A, b, c).solve()


__all__ = ["Unbounded", "SimplexResult", "PackingTableau", "maximize_packing"]
