"""
Jerarquía de excepciones de intervalos.

Todas heredan de IntervalosError; main.py las traduce a código de salida,
nivel de log y etiqueta de métrica.
"""


class IntervalosError(Exception):
    """Raíz de los errores propios del paquete."""


# ---------------------------------------------------------------------------
# Modelo y validación
# ---------------------------------------------------------------------------

class InvalidInterval(IntervalosError, ValueError):
    """Intervalo con l > r o intervalo abierto vacío."""


class InvalidQuery(IntervalosError, ValueError):
    """Consulta mal formada (vacía, etiquetas repetidas, ...)."""


class DuplicateVariableInAtom(InvalidQuery):
    """La misma variable aparece dos veces en un átomo."""


class DatabaseError(IntervalosError):
    """Base de los errores de validación base de datos ↔ consulta."""


class MissingRelation(DatabaseError):
    """Falta la relación de una etiqueta de átomo."""


class ArityMismatch(DatabaseError):
    """Esquema o fila con columnas distintas a las del átomo."""


class KindMismatch(DatabaseError):
    """Celda o variable de tipo incompatible (intervalo vs punto)."""


# ---------------------------------------------------------------------------
# Entrada de la CLI
# ---------------------------------------------------------------------------

class QuerySyntaxError(IntervalosError):
    """Error de sintaxis en el texto de la consulta, con posición."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (línea {line}, columna {column})")
        self.line = line
        self.column = column


class ParseError(IntervalosError):
    """Celda, cabecera o fichero de base de datos ilegible."""


# ---------------------------------------------------------------------------
# Límites y precondiciones de los algoritmos
# ---------------------------------------------------------------------------

class SizeLimitExceeded(IntervalosError):
    """Entrada por encima del tope de un análisis exhaustivo."""


class TooLargeForOracle(SizeLimitExceeded):
    """Producto de tamaños de relación por encima de ORACLE_MAX_CELLS."""


class UnknownInterval(IntervalosError):
    """Intervalo con extremos fuera de la rejilla del árbol de segmentos."""


class NotIntervalVariable(IntervalosError):
    """Se pidió resolver una variable que no es de intervalo."""


class InvalidPermutation(IntervalosError, ValueError):
    """La permutación no recorre exactamente las aristas de la variable."""


class SelfJoinUnsupported(IntervalosError):
    """La reducción hacia atrás exige consultas sin auto-joins."""


class MixedBitstringLengths(IntervalosError):
    """Cadenas de bits de longitudes distintas en la reducción hacia atrás."""


class NoBergeCycle(IntervalosError):
    """El hipergrafo destino no tiene ciclo de Berge de longitud ≥ 3."""


class UncoverableVertex(IntervalosError):
    """Vértice del conjunto objetivo sin ninguna arista incidente."""


class InvalidDecomposition(IntervalosError):
    """Descomposición en árbol que no cubre aristas o rompe la conectividad."""


class NotAcyclic(IntervalosError):
    """Yannakakis pedido sobre una consulta sin join tree."""


class InvariantViolation(IntervalosError, AssertionError):
    """Un auto-chequeo interno falló (unicidad de testigos, certificado del LP)."""


__all__ = [
    "IntervalosError",
    "InvalidInterval",
    "InvalidQuery",
    "DuplicateVariableInAtom",
    "DatabaseError",
    "MissingRelation",
    "ArityMismatch",
    "KindMismatch",
    "QuerySyntaxError",
    "ParseError",
    "SizeLimitExceeded",
    "TooLargeForOracle",
    "UnknownInterval",
    "NotIntervalVariable",
    "InvalidPermutation",
    "SelfJoinUnsupported",
    "MixedBitstringLengths",
    "NoBergeCycle",
    "UncoverableVertex",
    "InvalidDecomposition",
    "NotAcyclic",
    "InvariantViolation",
]
