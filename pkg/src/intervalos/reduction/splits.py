"""Descomposiciones ordenadas de una cadena de bits en i partes (partes vacías permitidas)."""

from itertools import combinations_with_replacement
from math import comb


def bitstring_splits(bits: str, parts: int) -> list[tuple[str, ...]]:
    """
    Todas las tuplas (b1, ..., b_parts) con b1∘...∘b_parts == bits.

    Son C(|bits| + parts - 1, parts - 1), en orden lexicográfico de los cortes:
    ("01", 2) → [("", "01"), ("0", "1"), ("01", "")].
    """
    if parts < 1:
        raise ValueError(f"parts debe ser ≥ 1, llegó {parts}")
    out: list[tuple[str, ...]] = []
    for cuts in combinations_with_replacement(range(len(bits) + 1), parts - 1):
        bounds = (0, *cuts, len(bits))
        out.append(tuple(bits[a:b] for a, b in zip(bounds, bounds[1:])))
    return out


def split_count(length: int, parts: int) -> int:
    """|bitstring_splits(s, parts)| para |s| = length."""
    return comb(length + parts - 1, parts - 1)
