"""Lecture/écriture des fichiers scénario, matrice, rapport et courbes CSV."""

import json
from pathlib import Path
from typing import Any, Dict, Iterable, Mapping, Union

import numpy as np
import pandas as pd
import structlog

from ..exceptions import ConfigurationError, ValidationError

logger = structlog.get_logger("serialization")

PathLike = Union[str, Path]

CURVE_COLUMNS = ["n", "norm", "bound", "margin"]


def read_json(path: PathLike) -> Any:
    """Lit un fichier JSON structuré.

    Args:
        path: Chemin du fichier

    Returns:
        Contenu décodé

    Raises:
        ConfigurationError: Si le fichier n'existe pas
        ValidationError: Si le contenu n'est pas du JSON valide
    """
    file_path = Path(path)
    if not file_path.is_file():
        raise ConfigurationError.input_file_not_found(str(file_path))
    try:
        return json.loads(file_path.read_text(encoding="utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise ValidationError.invalid_format(str(file_path), str(e), "JSON valide")


def dumps(data: Any) -> str:
    """Encode en JSON déterministe (clés triées, indentation 2).

    Les flottants utilisent la représentation courte de Python, qui
    relit exactement le même double.
    """
    return json.dumps(to_jsonable(data), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_json(path: PathLike, data: Any) -> None:
    """Écrit un fichier JSON déterministe, en créant les répertoires parents."""
    file_path = Path(path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    file_path.write_text(dumps(data), encoding="utf-8")
    logger.debug("json_written", path=str(file_path))


def to_jsonable(value: Any) -> Any:
    """Convertit récursivement tableaux et scalaires numpy en types natifs."""
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Mapping):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if isinstance(value, float) and not np.isfinite(value):
        return str(value)
    return value


def read_matrix(path: PathLike) -> np.ndarray:
    """Lit une matrice dense (lignes) depuis un fichier JSON.

    Le fichier contient soit un tableau imbriqué, soit un objet
    ``{"matrix": [[...], ...]}``.

    Raises:
        ValidationError: Si la matrice n'est pas rectangulaire et finie
    """
    data = read_json(path)
    if isinstance(data, dict):
        if "matrix" not in data:
            raise ValidationError.required_field_missing("matrix")
        data = data["matrix"]
    return matrix_from_rows(data, field_name=str(path))


def matrix_from_rows(rows: Any, field_name: str = "matrix") -> np.ndarray:
    """Convertit un tableau imbriqué (ordre ligne) en matrice finie 2-D."""
    try:
        matrix = np.array(rows, dtype=float)
    except (TypeError, ValueError):
        raise ValidationError.invalid_format(field_name, rows, "tableau rectangulaire de réels")
    if matrix.ndim != 2 or matrix.shape[0] == 0 or matrix.shape[1] == 0:
        raise ValidationError.invalid_format(field_name, matrix.shape, "matrice 2-D non vide")
    if not np.all(np.isfinite(matrix)):
        raise ValidationError.invalid_format(field_name, "non fini", "entrées finies")
    return matrix


def write_curve_csv(path: PathLike, rows: Iterable[Dict[str, Any]]) -> None:
    """Exporte une courbe de normes de sommes partielles en CSV.

    Args:
        path: Fichier de sortie
        rows: Points de courbe avec les clés n, norm, bound, margin
    """
    frame = pd.DataFrame(list(rows), columns=CURVE_COLUMNS)
    file_path = Path(path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(file_path, index=False, float_format="%.17g")
    logger.debug("curve_csv_written", path=str(file_path), rows=len(frame))
