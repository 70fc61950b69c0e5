from typing import Annotated, Any

import numpy as np
from pydantic import BaseModel, ConfigDict, PlainSerializer, PlainValidator


def _freeze(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def _as_int_matrix(value: Any) -> np.ndarray:
    """Validate a two-dimensional integer matrix.

    Float input is accepted only when every entry is integral, so that operator
    arithmetic stays exact.
    """
    array = np.asarray(value)
    if array.ndim != 2:
        raise ValueError(f"Expected a 2-D matrix, got shape {array.shape}")
    if not np.issubdtype(array.dtype, np.integer):
        if not np.all(np.isfinite(array)) or not np.all(array == np.round(array)):
            raise ValueError("Integer matrix contains non-integral entries")
    return _freeze(np.array(array, dtype=np.int64))


def _as_real_matrix(value: Any) -> np.ndarray:
    array = np.array(value, dtype=np.float64)
    if array.ndim != 2:
        raise ValueError(f"Expected a 2-D matrix, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise ValueError("Matrix contains non-finite entries")
    return _freeze(array)


def _as_real_vector(value: Any) -> np.ndarray:
    array = np.array(value, dtype=np.float64)
    if array.ndim != 1:
        raise ValueError(f"Expected a 1-D vector, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise ValueError("Vector contains non-finite entries")
    return _freeze(array)


def to_nested_list(array: np.ndarray) -> list:
    """Serialise an array to (nested) Python lists."""
    return array.tolist()


IntMatrix = Annotated[
    np.ndarray,
    PlainValidator(_as_int_matrix),
    PlainSerializer(to_nested_list, return_type=list, when_used="always"),
]
"""Read-only ``int64`` matrix, serialised as nested lists."""

RealMatrix = Annotated[
    np.ndarray,
    PlainValidator(_as_real_matrix),
    PlainSerializer(to_nested_list, return_type=list, when_used="always"),
]
"""Read-only finite ``float64`` matrix, serialised as nested lists."""

RealVector = Annotated[
    np.ndarray,
    PlainValidator(_as_real_vector),
    PlainSerializer(to_nested_list, return_type=list, when_used="always"),
]
"""Read-only finite ``float64`` vector, serialised as a list."""


class FrozenModel(BaseModel):
    """Base for immutable domain values that may carry numpy arrays."""

    model_config = ConfigDict(
        arbitrary_types_allowed=True, frozen=True, extra="forbid"
    )
