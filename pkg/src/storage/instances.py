"""Instance files: canonical JSON with complex entries as ``[re, im]`` pairs."""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import ValidationError

from src.exceptions import ReportIoError, SchemaError
from src.linalg import haar_random_unitary, random_density
from src.models import Instance, InstanceDocument
from src.quantum import DensityOperator, PvmBasis

logger = logging.getLogger(__name__)


def _diagnostics(error: ValidationError) -> List[str]:
    return [f"{'.'.join(str(p) for p in e['loc']) or '<root>'}: {e['msg']}" for e in error.errors()]


def _to_matrix(rows: List[List[List[float]]], dim: int, field: str) -> np.ndarray:
    if len(rows) != dim or any(len(row) != dim for row in rows):
        raise SchemaError("invalid instance", [f"{field}: expected a {dim}x{dim} matrix"])
    pairs = np.asarray(rows, dtype=np.float64)
    return pairs[..., 0] + 1j * pairs[..., 1]


def _to_rows(matrix: np.ndarray) -> List[List[List[float]]]:
    # + 0.0 turns -0.0 into 0.0 so the canonical text has a single zero
    return [[[float(z.real) + 0.0, float(z.imag) + 0.0] for z in row] for row in matrix]


def _read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ReportIoError(f"cannot read {path}: {e}") from e


def _write_text(path: str | Path, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        raise ReportIoError(f"cannot write {path}: {e}") from e


def instance_from_text(text: str, source: str = "<string>") -> Instance:
    """
    Validate an instance document.

    Raises:
        SchemaError: With ``line``/field diagnostics when the document is malformed
        InvariantError: Naming the violated invariant, e.g. ``trace = 0.9``
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid instance {source}", [f"line {e.lineno} column {e.colno}: {e.msg}"]) from e
    try:
        document = InstanceDocument.model_validate(raw)
    except ValidationError as e:
        raise SchemaError(f"invalid instance {source}", _diagnostics(e)) from e

    d = document.dim
    rho = DensityOperator(_to_matrix(document.rho, d, "rho"), label=document.label)
    basis_a = PvmBasis(_to_matrix(document.basis_a, d, "basis_a"))
    basis_b = None if document.basis_b is None else PvmBasis(_to_matrix(document.basis_b, d, "basis_b"))
    for name, spectrum in (("spectrum_a", document.spectrum_a), ("spectrum_b", document.spectrum_b)):
        if spectrum is not None and len(spectrum) != d:
            raise SchemaError(f"invalid instance {source}", [f"{name}: expected {d} values, got {len(spectrum)}"])
    return Instance(
        rho=rho,
        basis_a=basis_a,
        basis_b=basis_b,
        label=document.label,
        spectrum_a=document.spectrum_a,
        spectrum_b=document.spectrum_b,
    )


def parse_instance(path: str | Path) -> Instance:
    """Read and validate an instance file; see :func:`instance_from_text`."""
    instance = instance_from_text(_read_text(path), source=str(path))
    logger.debug("instance parsed", extra={"path": str(path), "dim": instance.dim})
    return instance


def instance_to_text(instance: Instance) -> str:
    """
    Canonical text of an instance: two-space indented JSON, fixed key order, trailing newline.

    Basis matrices are stored row by row; their columns are the basis vectors.
    Optional fields that are unset are omitted.
    """
    document: Dict[str, Any] = {
        "dim": instance.dim,
        "label": instance.label,
        "rho": _to_rows(instance.rho.matrix),
        "basis_a": _to_rows(instance.basis_a.vectors),
    }
    if instance.basis_b is not None:
        document["basis_b"] = _to_rows(instance.basis_b.vectors)
    if instance.spectrum_a is not None:
        document["spectrum_a"] = [float(v) for v in instance.spectrum_a]
    if instance.spectrum_b is not None:
        document["spectrum_b"] = [float(v) for v in instance.spectrum_b]
    return json.dumps(document, indent=2) + "\n"


def emit_instance(instance: Instance, path: Optional[str | Path] = None) -> str:
    """Return the canonical text and write it to ``path`` when given."""
    text = instance_to_text(instance)
    if path is not None:
        _write_text(path, text)
    return text


def random_instance(
    d: int,
    seed: int | np.random.Generator,
    rank: Optional[int] = None,
    with_basis_b: bool = True,
    with_spectra: bool = False,
    label: str = "",
) -> Instance:
    """
    Seeded random instance: induced-measure state of the given rank (full rank by default) and Haar bases.

    Spectra, when requested, are uniform in ``[-1, 1]``.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    rho = DensityOperator(random_density(d, rank or d, rng), label=label)
    basis_a = PvmBasis(haar_random_unitary(d, rng))
    basis_b = PvmBasis(haar_random_unitary(d, rng)) if with_basis_b else None
    spectrum_a = spectrum_b = None
    if with_spectra:
        spectrum_a = [float(v) for v in rng.uniform(-1.0, 1.0, d)]
        spectrum_b = [float(v) for v in rng.uniform(-1.0, 1.0, d)] if with_basis_b else None
    return Instance(rho=rho, basis_a=basis_a, basis_b=basis_b, label=label, spectrum_a=spectrum_a, spectrum_b=spectrum_b)
