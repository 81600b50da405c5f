"""JSON codecs for codes, trellises and the worked-example fixtures."""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

import config
from algebra.codes import LinearCode, code_from_generator
from algebra.linalg import FieldMatrix, PrimeField, field_of, to_lists
from algebra.spans import Span, parse_span
from errors import ParseError, TrellisError
from trellises.trellis import LinearTrellis, TrellisSection

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CodeInput:
    """A code file: the rows exactly as written plus the derived code."""

    code: LinearCode
    G: FieldMatrix
    H: FieldMatrix
    spans: Optional[List[Span]] = None
    name: str = ""

    @property
    def field(self) -> PrimeField:
        return self.code.field

    @property
    def has_parity_checks(self) -> bool:
        return self.H is not self.code.H


def _field(p: Any) -> PrimeField:
    try:
        return PrimeField(int(p))
    except (TypeError, ValueError) as e:
        raise ParseError(f"Invalid field order {p!r}: {e}")


def parse_matrix(data: Any, field: PrimeField, cols: Optional[int] = None) -> FieldMatrix:
    """
    Read a matrix from nested integer lists or a row literal such as "1001;0110".

    Row literals separate rows with ';' and entries with spaces, or use one
    digit per entry when no spaces are present.
    """
    if isinstance(data, str):
        rows = []
        for chunk in data.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            entries = chunk.split() if " " in chunk else list(chunk)
            try:
                rows.append([int(entry) for entry in entries])
            except ValueError:
                raise ParseError(f"Invalid matrix row {chunk!r}")
        data = rows
    try:
        arr = np.asarray(data, dtype=np.int64)
    except (TypeError, ValueError) as e:
        raise ParseError(f"Matrix rows must be integer lists: {e}")
    if arr.ndim != 2 and not (arr.ndim == 1 and arr.size == 0):
        raise ParseError(f"Expected a list of equal-length rows, got shape {arr.shape}")
    if cols is not None and arr.size and arr.shape[1] != cols:
        raise ParseError(f"Rows have {arr.shape[1]} entries, expected {cols}")
    return field.matrix(arr, cols=cols)


def parse_matrix_text(text: str) -> FieldMatrix:
    """
    Read the matrix literal format: a "p rows cols" header line, then one
    line of space-separated residues per row.

    Raises:
        ParseError: bad header, wrong row count or wrong row length
    """
    lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
    if not lines:
        raise ParseError("Empty matrix literal")
    header = lines[0].split()
    if len(header) != 3:
        raise ParseError(f"Matrix header must be 'p rows cols', got {lines[0]!r}")
    try:
        p, rows, cols = (int(x) for x in header)
    except ValueError:
        raise ParseError(f"Matrix header must be 'p rows cols', got {lines[0]!r}")
    if len(lines) - 1 != rows:
        raise ParseError(f"Header announces {rows} rows, found {len(lines) - 1}")
    data = []
    for line in lines[1:]:
        try:
            data.append([int(x) for x in line.split()])
        except ValueError:
            raise ParseError(f"Invalid matrix row {line!r}")
    return parse_matrix(data, _field(p), cols=cols)


def format_matrix_text(m: FieldMatrix) -> str:
    values = to_lists(m)
    lines = [f"{field_of(m).p} {m.shape[0]} {m.shape[1]}"]
    lines.extend(" ".join(str(x) for x in row) for row in values)
    return "\n".join(lines) + "\n"


def code_from_dict(data: Dict[str, Any]) -> CodeInput:
    """
    Decode {"p", "n", "generators"} with optional "parity_checks", "spans", "name".

    Raises:
        ParseError: missing keys, ragged rows, a non-prime p or bad span text
    """
    if not isinstance(data, dict):
        raise ParseError("A code file must hold a JSON object")
    for key in ("p", "generators"):
        if key not in data:
            raise ParseError(f"Code file is missing {key!r}")
    field = _field(data["p"])
    G = parse_matrix(data["generators"], field)
    n = int(data.get("n", G.shape[1]))
    if G.shape[1] != n:
        raise ParseError(f"Generators have {G.shape[1]} columns but n = {n}")
    name = str(data.get("name", ""))
    try:
        code = code_from_generator(field.p, G, name=name)
    except TrellisError as e:
        raise ParseError(str(e))
    H = parse_matrix(data["parity_checks"], field, cols=n) if "parity_checks" in data else code.H
    spans = None
    if "spans" in data:
        spans = [parse_span(text, n) if isinstance(text, str) else Span.from_json(text) for text in data["spans"]]
        if len(spans) != G.shape[0]:
            raise ParseError(f"{len(spans)} spans for {G.shape[0]} generator rows")
    return CodeInput(code=code, G=G, H=H, spans=spans, name=name)


def code_to_dict(entry: Union[CodeInput, LinearCode]) -> Dict[str, Any]:
    if isinstance(entry, LinearCode):
        return {"p": entry.field.p, "n": entry.n, "name": entry.name,
                "generators": to_lists(entry.G), "parity_checks": to_lists(entry.H)}
    data = {"p": entry.field.p, "n": entry.code.n, "name": entry.name,
            "generators": to_lists(entry.G), "parity_checks": to_lists(entry.H)}
    if entry.spans:
        data["spans"] = [str(span) for span in entry.spans]
    return data


def trellis_to_dict(t: LinearTrellis) -> Dict[str, Any]:
    return {
        "p": t.field.p,
        "n": t.n,
        "sections": [
            {
                "ambient_in": section.ambient_in,
                "ambient_out": section.ambient_out,
                "state_basis": to_lists(section.state_basis),
                "transitions": to_lists(section.transitions),
            }
            for section in t.sections
        ],
    }


def trellis_from_dict(data: Dict[str, Any]) -> LinearTrellis:
    """
    Decode a trellis object.

    Raises:
        ParseError: malformed JSON structure or inconsistent sections
    """
    try:
        field = _field(data["p"])
        sections = []
        for entry in data["sections"]:
            ambient_in, ambient_out = int(entry["ambient_in"]), int(entry["ambient_out"])
            sections.append(TrellisSection(
                state_basis=parse_matrix(entry["state_basis"], field, cols=ambient_in),
                transitions=parse_matrix(entry["transitions"], field, cols=ambient_in + 1 + ambient_out),
                ambient_in=ambient_in,
                ambient_out=ambient_out,
            ))
        if "n" in data and int(data["n"]) != len(sections):
            raise ParseError(f"n = {data['n']} but {len(sections)} sections")
        return LinearTrellis(field, tuple(sections))
    except (KeyError, TypeError) as e:
        raise ParseError(f"Malformed trellis JSON: {e}")
    except ParseError:
        raise
    except TrellisError as e:
        raise ParseError(str(e))


def read_json(path: Union[str, Path]) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON ({e})")
    except OSError as e:
        raise ParseError(f"{path}: {e.strerror}")


def is_trellis_document(data: Dict[str, Any]) -> bool:
    return isinstance(data, dict) and "sections" in data


def load_code(path: Union[str, Path]) -> CodeInput:
    return code_from_dict(read_json(path))


def load_trellis(path: Union[str, Path]) -> LinearTrellis:
    return trellis_from_dict(read_json(path))


def _json_default(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.astype(np.int64).tolist()
    if isinstance(value, Span):
        return str(value)
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def dumps(data: Any) -> str:
    """Deterministic JSON text."""
    return json.dumps(data, indent=2, sort_keys=True, default=_json_default)


def list_fixtures() -> List[str]:
    return sorted(path.stem for path in Path(config.FIXTURES_DIR).glob("*.json"))


def load_fixture(name: str) -> Dict[str, Any]:
    """Raw fixture document: the code under "code" plus expected values."""
    path = Path(config.FIXTURES_DIR) / f"{name}.json"
    if not path.exists():
        raise ParseError(f"Unknown fixture {name!r}; available: {', '.join(list_fixtures())}")
    logger.debug("Loading fixture %s", path)
    return read_json(path)


def fixture_code(name: str) -> CodeInput:
    return code_from_dict(load_fixture(name)["code"])
