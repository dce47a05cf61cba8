"""
Ornamentation file format.

One JSON object per line::

    {"tree": "((()))", "g": [3, 2, 3]}
    {"tree": "(()())", "ornaments": [[0, 1], [1], [2]]}

``ornaments`` lists δ(v_i) for every preorder id ``i``; chains may use the
compact 1-based ``g`` form instead, and are always emitted in it.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field, model_validator

from ornapop.combinatorics.errors import DomainError
from ornapop.combinatorics.ornamentation import Ornamentation
from ornapop.combinatorics.tamari import GSequence
from ornapop.combinatorics.trees import parse_tree


class OrnamentationRecord(BaseModel):
    """Serialized ornamentation."""

    tree: str = Field(..., description="Balanced-parenthesis tree")
    ornaments: Optional[list[list[int]]] = Field(
        default=None, description="Ascending node ids of δ(v_i), indexed by preorder id"
    )
    g: Optional[list[int]] = Field(default=None, description="1-based g-sequence (chains only)")

    @model_validator(mode="after")
    def _one_encoding(self) -> OrnamentationRecord:
        if (self.ornaments is None) == (self.g is None):
            raise ValueError("exactly one of 'ornaments' and 'g' must be given")
        return self

    def to_ornamentation(self) -> Ornamentation:
        tree = parse_tree(self.tree)
        if self.g is not None:
            if not tree.is_chain:
                raise DomainError(f"'g' needs a chain tree, got {self.tree}")
            return GSequence.of(self.g).to_ornamentation(tree)
        return Ornamentation(tree, self.ornaments or [])

    @classmethod
    def from_ornamentation(cls, delta: Ornamentation) -> OrnamentationRecord:
        if delta.tree.is_chain:
            return cls(tree=delta.tree.render(), g=list(GSequence.from_ornamentation(delta).g))
        return cls(tree=delta.tree.render(), ornaments=[list(o) for o in delta.key])

    def to_line(self) -> str:
        return self.model_dump_json(exclude_none=True)


def dump_line(delta: Ornamentation) -> str:
    return OrnamentationRecord.from_ornamentation(delta).to_line()


def compact_label(delta: Ornamentation) -> str:
    """g-sequence for chains, ornament list otherwise."""
    if delta.tree.is_chain:
        return str(GSequence.from_ornamentation(delta))
    return "[" + ",".join("{" + ",".join(map(str, o)) + "}" for o in delta.key) + "]"


def load_ornamentations(path: str | Path) -> list[Ornamentation]:
    """
    Read every non-blank line of ``path`` as a record.

    Raises:
        pydantic.ValidationError: malformed JSON or fields.
        TreeParseError / DomainError: the record describes no ornamentation.
    """
    text = Path(path).read_text(encoding="utf-8")
    records = [
        OrnamentationRecord.model_validate_json(line) for line in text.splitlines() if line.strip()
    ]
    if not records:
        raise DomainError(f"{path} holds no ornamentation records")
    return [r.to_ornamentation() for r in records]
