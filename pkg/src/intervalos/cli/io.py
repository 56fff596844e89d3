"""
Lectura y escritura de bases de datos (directorio CSV o fichero JSON).

Directorio: un `<etiqueta>.csv` por átomo, UTF-8 con LF, separado por comas
y sin comillas. La cabecera es el esquema: `[A]` columna de intervalo, `A`
columna de punto, `A1:bits` columna de cadenas de bits (la celda vacía es ε).
Las celdas de intervalo son `[l,r]`; se aceptan también `(l,r)`, `[l,r)` y
`(l,r]`, que se cierran con el ε de toda la base. Los números se parsean de
forma exacta.

JSON: {"relations": {etiqueta: {"schema": [...], "rows": [[...], ...]}}}
con las mismas cadenas que el CSV.
"""

import hashlib
import re
from collections.abc import Sequence
from pathlib import Path

from pydantic import ValidationError

from ..core.database import Cell, Database, Relation
from ..core.errors import KindMismatch, ParseError
from ..core.model import Variable, VarKind
from ..core.rational import (
    Interval,
    RawInterval,
    closing_epsilon,
    format_rational,
    parse_rational,
)
from ..logger import get_logger
from ..schemas import DatabaseFile, RelationFile

logger = get_logger(__name__)

BITS_SUFFIX = ":bits"

_INTERVAL = re.compile(r"^([\[(])\s*([^,\[\]()]+?)\s*,\s*([^,\[\]()]+?)\s*([\])])$")
_BITS = re.compile(r"^[01]*$")
_NAME = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")
_SPLIT_NAME = re.compile(r"^(.*?)_*(\d+)$")

RawCell = RawInterval | Cell
RawRelation = tuple[tuple[Variable, ...], list[tuple[RawCell, ...]]]


# ---------------------------------------------------------------------------
# Cabeceras y celdas
# ---------------------------------------------------------------------------

def parse_header_cell(text: str, where: str) -> Variable:
    """`[A]` → intervalo, `A` → punto, `A1:bits` → punto de cadenas de bits."""
    raw = text.strip()
    if raw.startswith("[") and raw.endswith("]"):
        name, kind = raw[1:-1].strip(), VarKind.INTERVAL
    elif raw.endswith(BITS_SUFFIX):
        name = raw[: -len(BITS_SUFFIX)].strip()
        if not _NAME.match(name):
            raise ParseError(f"{where}: nombre de columna inválido {text!r}")
        m = _SPLIT_NAME.match(name)
        origin, index = (m.group(1) or name, int(m.group(2))) if m else (name, 0)
        return Variable(name, VarKind.POINT, origin=origin, index=index)
    else:
        name, kind = raw, VarKind.POINT
    if not _NAME.match(name):
        raise ParseError(f"{where}: nombre de columna inválido {text!r}")
    return Variable(name, kind)


def format_header_cell(var: Variable, bits: bool) -> str:
    if var.is_interval:
        return f"[{var.name}]"
    return f"{var.name}{BITS_SUFFIX}" if bits else var.name


def parse_cell(text: str, var: Variable, where: str) -> RawCell:
    """
    Raises:
        KindMismatch: intervalo en columna de punto o número en columna de intervalo
        ParseError: celda ilegible
    """
    raw = text.strip()
    m = _INTERVAL.match(raw)
    if var.is_interval:
        if not m:
            raise KindMismatch(f"{where}: se esperaba un intervalo en [{var.name}], se leyó {text!r}")
        return RawInterval(
            parse_rational(m.group(2)),
            parse_rational(m.group(3)),
            left_closed=m.group(1) == "[",
            right_closed=m.group(4) == "]",
            text=raw,
        )
    if m:
        raise KindMismatch(f"{where}: intervalo {text!r} en la columna de punto {var.name}")
    if var.origin is not None:
        if not _BITS.match(raw):
            raise ParseError(f"{where}: cadena de bits inválida {text!r}")
        return raw
    if not raw:
        raise ParseError(f"{where}: celda vacía en la columna {var.name}")
    return parse_rational(raw)


def format_cell(cell: Cell) -> str:
    if isinstance(cell, Interval):
        return str(cell)
    if isinstance(cell, str):
        return cell
    return format_rational(cell)


def split_line(line: str) -> list[str]:
    """Separa por comas fuera de corchetes y paréntesis."""
    cells, depth, start = [], 0, 0
    for i, ch in enumerate(line):
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth = max(0, depth - 1)
        elif ch == "," and depth == 0:
            cells.append(line[start:i])
            start = i + 1
    cells.append(line[start:])
    return cells


def _is_bits_column(rel: Relation, i: int) -> bool:
    var = rel.schema[i]
    return var.origin is not None or any(isinstance(row[i], str) for row in rel.rows)


# ---------------------------------------------------------------------------
# Cierre de intervalos abiertos
# ---------------------------------------------------------------------------

def close_intervals(raw: dict[str, RawRelation]) -> Database:
    """
    Cierra los intervalos abiertos o semiabiertos con
    ε = mínimo hueco positivo entre extremos / (4·(total + 1)).
    """
    intervals = [
        cell for _, rows in raw.values() for row in rows for cell in row
        if isinstance(cell, RawInterval)
    ]
    eps = closing_epsilon((p for x in intervals for p in (x.l, x.r)), len(intervals))
    opened = sum(1 for x in intervals if not (x.left_closed and x.right_closed))
    if opened:
        logger.info("[IO] %s intervalos abiertos cerrados con ε=%s", opened, eps)
    relations = {}
    for label, (schema, rows) in raw.items():
        closed = [
            tuple(c.close(eps) if isinstance(c, RawInterval) else c for c in row)
            for row in rows
        ]
        relations[label] = Relation(label, schema, tuple(closed))
    return Database(relations)


# ---------------------------------------------------------------------------
# CSV
# ---------------------------------------------------------------------------

def _read_csv(path: Path) -> RawRelation:
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise ParseError(f"no se pudo leer {path}: {e}") from e
    lines = [ln.rstrip("\r") for ln in text.split("\n")]
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError(f"{path.name}: fichero vacío (falta la cabecera)")
    schema = tuple(
        parse_header_cell(c, f"{path.name}:1") for c in split_line(lines[0])
    )
    rows = []
    for n, line in enumerate(lines[1:], start=2):
        cells = split_line(line)
        if len(cells) != len(schema):
            raise ParseError(f"{path.name}:{n}: {len(cells)} celdas, la cabecera tiene {len(schema)}")
        rows.append(tuple(parse_cell(c, v, f"{path.name}:{n}") for c, v in zip(cells, schema)))
    return schema, rows


def _write_csv(rel: Relation, path: Path) -> None:
    bits = [_is_bits_column(rel, i) for i in range(len(rel.schema))]
    lines = [",".join(format_header_cell(v, b) for v, b in zip(rel.schema, bits))]
    lines.extend(",".join(format_cell(c) for c in row) for row in rel.rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def _read_json(path: Path) -> dict[str, RawRelation]:
    try:
        model = DatabaseFile.model_validate_json(path.read_bytes())
    except (OSError, ValidationError) as e:
        raise ParseError(f"{path.name}: JSON de base de datos inválido: {e}") from e
    raw: dict[str, RawRelation] = {}
    for label, spec in model.relations.items():
        where = f"{path.name}:{label}"
        schema = tuple(parse_header_cell(c, where) for c in spec.schema_)
        rows = []
        for n, row in enumerate(spec.rows):
            if len(row) != len(schema):
                raise ParseError(f"{where}: fila {n} con {len(row)} celdas, el esquema tiene {len(schema)}")
            rows.append(tuple(parse_cell(c, v, f"{where}[{n}]") for c, v in zip(row, schema)))
        raw[label] = (schema, rows)
    return raw


def _write_json(db: Database, path: Path) -> None:
    relations = {}
    for label, rel in db.items():
        bits = [_is_bits_column(rel, i) for i in range(len(rel.schema))]
        relations[label] = RelationFile(
            schema=[format_header_cell(v, b) for v, b in zip(rel.schema, bits)],
            rows=[[format_cell(c) for c in row] for row in rel.rows],
        )
    text = DatabaseFile(relations=relations).model_dump_json(by_alias=True, indent=2)
    path.write_text(text + "\n", encoding="utf-8", newline="\n")


# ---------------------------------------------------------------------------
# API pública
# ---------------------------------------------------------------------------

def load_database(path: str | Path, labels: Sequence[str] | None = None) -> Database:
    """
    Carga un directorio de CSV o un fichero .json. Con `labels` solo se leen
    esas relaciones (las que falten las detecta validate).

    Raises:
        ParseError: fichero ilegible, cabecera o celda inválida
        KindMismatch: celda de tipo incompatible con su columna
    """
    path = Path(path)
    if path.is_dir():
        files = sorted(path.glob("*.csv"))
        wanted = set(labels) if labels is not None else None
        raw = {
            f.stem: _read_csv(f) for f in files
            if wanted is None or f.stem in wanted
        }
    elif path.suffix.lower() == ".json" and path.is_file():
        raw = _read_json(path)
        if labels is not None:
            raw = {k: v for k, v in raw.items() if k in set(labels)}
    else:
        raise ParseError(f"{path}: se esperaba un directorio de CSV o un fichero .json")
    db = close_intervals(raw)
    logger.info("[IO] base cargada de %s: %s", path, db.sizes())
    return db


def save_database(db: Database, path: str | Path) -> None:
    """Escribe en `path`: fichero .json o directorio de CSV (se crea si falta)."""
    path = Path(path)
    if path.suffix.lower() == ".json":
        path.parent.mkdir(parents=True, exist_ok=True)
        _write_json(db, path)
    else:
        path.mkdir(parents=True, exist_ok=True)
        for label, rel in db.items():
            _write_csv(rel, path / f"{label}.csv")
    logger.info("[IO] base escrita en %s (%s filas)", path, db.total_rows)


def digest(path: str | Path) -> str:
    """sha256 del fichero, o de los ficheros de un directorio en orden de nombre."""
    path = Path(path)
    h = hashlib.sha256()
    if path.is_dir():
        for f in sorted(p for p in path.rglob("*") if p.is_file()):
            h.update(str(f.relative_to(path)).encode("utf-8"))
            h.update(f.read_bytes())
    else:
        h.update(path.read_bytes())
    return h.hexdigest()


__all__ = [
    "BITS_SUFFIX",
    "parse_header_cell",
    "format_header_cell",
    "parse_cell",
    "format_cell",
    "split_line",
    "close_intervals",
    "load_database",
    "save_database",
    "digest",
]
