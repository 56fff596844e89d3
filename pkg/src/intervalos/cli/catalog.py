"""
Catálogo de consultas de ejemplo (CLI `--catalog NAME` y tests).

Cada entrada lleva el texto de la consulta y una línea de descripción con
lo que se espera de ella.
"""

from dataclasses import dataclass

from ..core.model import Query
from .parser import parse_query


@dataclass(frozen=True, slots=True)
class CatalogEntry:
    name: str
    text: str
    description: str

    def query(self) -> Query:
        return parse_query(self.text)


_ENTRIES = (
    CatalogEntry(
        "triangle",
        "R([A],[B]), S([B],[C]), T([A],[C])",
        "triángulo IJ: 8 consultas EJ, cota fhtw 3/2, no ι-acíclico",
    ),
    CatalogEntry(
        "triangle-ej",
        "R(A,B), S(B,C), T(A,C)",
        "triángulo EJ: ρ* = fhtw = 3/2",
    ),
    CatalogEntry(
        "lw4",
        "R([A],[B],[C]), S([B],[C],[D]), T([C],[D],[A]), U([D],[A],[B])",
        "Loomis-Whitney con 4 variables: 1296 → 81 consultas en 6 clases, cota fhtw 2 (ancho ij 5/3)",
    ),
    CatalogEntry(
        "clique4",
        "R([A],[B]), S([A],[C]), T([A],[D]), U([B],[C]), V([B],[D]), W([C],[D])",
        "4-clique IJ: 1296 → 81 consultas, todas con fhtw 2",
    ),
    CatalogEntry(
        "triple-edge",
        "R([A],[B],[C]), S([A],[B],[C]), T([A],[B],[C])",
        "arista triple: γ-acíclico pero no ι-acíclico, 216 consultas",
    ),
    CatalogEntry(
        "triple-edge-ab",
        "R([A],[B],[C]), S([A],[B],[C]), T([A],[B])",
        "variante con T([A],[B]): no ι-acíclica, 72 consultas",
    ),
    CatalogEntry(
        "alpha-not-gamma",
        "R([A],[B],[C]), S([B],[C]), T([A],[B])",
        "α-acíclico, no γ-acíclico: 24 → 3 consultas con fhtw {3/2, 1, 1}",
    ),
    CatalogEntry(
        "triple-edge-a",
        "R([A],[B],[C]), S([A],[B],[C]), T([A])",
        "variante con T([A]): ι-acíclica (solo ciclos de Berge de largo 2)",
    ),
    CatalogEntry(
        "forked",
        "R([A],[B]), S([A],[C]), T([C],[D]), T([C],[E])",
        "sin ciclos de Berge, con auto-join sobre T",
    ),
    CatalogEntry(
        "double-edge",
        "R([A],[B],[C]), S([A],[B])",
        "un ciclo de Berge de largo 2: ι-acíclico, 4 consultas",
    ),
    CatalogEntry(
        "star",
        "R([A],[B]), S([A],[C]), T([A],[D])",
        "estrella sobre [A]: Berge-acíclica",
    ),
    CatalogEntry(
        "path",
        "R([A],[B]), S([B],[C]), T([C],[D])",
        "camino de tres átomos: Berge-acíclico (vía cuasi-lineal del benchmark)",
    ),
    CatalogEntry(
        "mixed-path",
        "R([A],B), S(B,[C]), T([A],[C])",
        "triángulo mixto EIJ: equi-join en B, intersección en [A] y [C]",
    ),
)

CATALOG: dict[str, CatalogEntry] = {e.name: e for e in _ENTRIES}


def catalog_query(name: str) -> Query:
    """
    Raises:
        KeyError: nombre fuera del catálogo
    """
    try:
        return CATALOG[name].query()
    except KeyError:
        raise KeyError(f"consulta {name!r} fuera del catálogo; disponibles: {', '.join(CATALOG)}") from None


__all__ = ["CatalogEntry", "CATALOG", "catalog_query"]
