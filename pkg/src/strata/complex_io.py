"""Reading and writing the JSON complex document.

The schema is fixed:

    {
      "maximal_simplices": [[int, ...], ...],
      "singular":          [[int, ...], ...],        # optional
      "filtration":        {"0": [[int, ...], ...], ...},  # optional
      "labels":            {"vertex id": "name", ...}      # optional
    }

Unknown keys are rejected.  Filtration keys are stratum indices as
strings; each level accumulates onto the previous so levels may be given
sparsely.  Writing is canonical: fixed key order, simplices sorted, so a
document round-trips byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import InputFormatError, MalformedInputError, DomainError
from .intersection import Filtration, default_filtration
from .simplicial import SimplicialComplex, face_closure

__all__ = ["ComplexDocument", "loads_document", "load_document", "dumps_complex"]

_ALLOWED_KEYS = {"maximal_simplices", "singular", "filtration", "labels"}


@dataclass(frozen=True)
class ComplexDocument:
    """A host complex plus its optional stratification data."""

    complex: SimplicialComplex
    singular: SimplicialComplex | None = None
    filtration: Filtration | None = None
    labels: dict[int, str] | None = None

    def effective_singular(self) -> tuple[SimplicialComplex | None, str]:
        """The singular set to use, and where it came from.

        Declared sets win; otherwise the deepest filtration level;
        otherwise None (the caller may fall back to link-test heuristics).
        """
        if self.singular is not None:
            return self.singular, "declared"
        if self.filtration is not None:
            return self.filtration.singular_set, "filtration"
        return None, "none"

    def effective_filtration(self) -> Filtration:
        if self.filtration is not None:
            return self.filtration
        return default_filtration(self.complex, self.singular)


def _simplex_list(value, where: str) -> list[list[int]]:
    if not isinstance(value, list) or not all(isinstance(s, list) for s in value):
        raise InputFormatError(f"{where} must be a list of vertex lists")
    for s in value:
        for v in s:
            if not isinstance(v, int) or isinstance(v, bool):
                raise InputFormatError(f"{where} contains a non-integer vertex {v!r}")
    return value


def loads_document(text: str) -> ComplexDocument:
    """Parse and validate a JSON complex document."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise InputFormatError("document must be a JSON object")
    unknown = set(raw) - _ALLOWED_KEYS
    if unknown:
        raise InputFormatError(f"unknown keys {sorted(unknown)} in complex document")
    if "maximal_simplices" not in raw:
        raise InputFormatError('document is missing "maximal_simplices"')

    try:
        K = face_closure(_simplex_list(raw["maximal_simplices"], "maximal_simplices"))
    except MalformedInputError as exc:
        raise InputFormatError(str(exc)) from exc
    if K.is_empty:
        raise InputFormatError("the complex must contain at least one simplex")

    singular = None
    if "singular" in raw:
        try:
            singular = face_closure(_simplex_list(raw["singular"], "singular"))
        except MalformedInputError as exc:
            raise InputFormatError(str(exc)) from exc
        host = set(K.simplices())
        if not set(singular.simplices()).issubset(host):
            raise InputFormatError("singular set is not a subcomplex of the complex")
        if not singular.is_empty and singular.dimension > K.dimension - 2:
            raise InputFormatError(
                f"singular set has dimension {singular.dimension}; a "
                f"{K.dimension}-pseudomanifold allows at most {K.dimension - 2}"
            )

    filtration = None
    if "filtration" in raw:
        if not isinstance(raw["filtration"], dict):
            raise InputFormatError('"filtration" must map level indices to simplex lists')
        m = K.dimension
        per_level: dict[int, list[list[int]]] = {}
        for key, value in raw["filtration"].items():
            try:
                idx = int(key)
            except ValueError as exc:
                raise InputFormatError(f"filtration level {key!r} is not an integer") from exc
            if not 0 <= idx <= m - 2:
                raise InputFormatError(
                    f"filtration level {idx} outside 0..{m - 2} for dimension {m}"
                )
            per_level[idx] = _simplex_list(value, f'filtration level "{key}"')
        levels: list[SimplicialComplex] = []
        acc: list[list[int]] = []
        for i in range(max(m - 1, 0)):
            acc = acc + per_level.get(i, [])
            try:
                levels.append(face_closure(acc) if acc else SimplicialComplex(()))
            except MalformedInputError as exc:
                raise InputFormatError(str(exc)) from exc
        try:
            filtration = Filtration(K, tuple(levels))
        except DomainError as exc:
            raise InputFormatError(str(exc)) from exc

    labels = None
    if "labels" in raw:
        if not isinstance(raw["labels"], dict):
            raise InputFormatError('"labels" must map vertex ids to names')
        labels = {}
        vertex_set = set(K.vertices)
        for key, value in raw["labels"].items():
            try:
                vid = int(key)
            except ValueError as exc:
                raise InputFormatError(f"label key {key!r} is not a vertex id") from exc
            if vid not in vertex_set:
                raise InputFormatError(f"label for unknown vertex {vid}")
            if not isinstance(value, str):
                raise InputFormatError(f"label for vertex {vid} is not a string")
            labels[vid] = value

    return ComplexDocument(
        complex=K, singular=singular, filtration=filtration, labels=labels
    )


def load_document(path: str) -> ComplexDocument:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    return loads_document(text)


def _simplex_rows(simplices) -> str:
    rows = [json.dumps(list(s)) for s in simplices]
    return "[\n    " + ",\n    ".join(rows) + "\n  ]"


def dumps_complex(
    K: SimplicialComplex,
    singular: SimplicialComplex | None = None,
    labels: dict[int, str] | None = None,
) -> str:
    """Canonical JSON for a complex; deterministic byte for byte.

    One simplex per line, fixed key order, maximal simplices sorted.
    """
    parts = [f'  "maximal_simplices": {_simplex_rows(K.maximal_simplices)}']
    if singular is not None and not singular.is_empty:
        parts.append(f'  "singular": {_simplex_rows(singular.maximal_simplices)}')
    if labels:
        body = json.dumps({str(k): labels[k] for k in sorted(labels)}, indent=2)
        parts.append('  "labels": ' + body.replace("\n", "\n  "))
    return "{\n" + ",\n".join(parts) + "\n}\n"
