"""JSON (de)serialization for reports and other engine results."""

import json
from abc import ABCMeta, abstractmethod
from json import JSONEncoder
from pathlib import Path
from shutil import copy
from typing import Any, Dict, List, Optional, Union

from .cli import emit_critical, emit_warning

MARKER = "$"
TYPE_KEY = f"{MARKER}t"

JSON_T = Union[Dict[str, Any], List[Any], str, int, float, bool, None]


class SerializableMixin(metaclass=ABCMeta):
    """Mixin for types which define `to_object`.

    Subclasses may set the `type_id` class attribute; it is written under the
    `$t` key of the serial form and registered so that `by_type_id()` can find
    the class again.
    """

    type_id: Optional[str] = None
    named_types: "dict[str, type]" = dict()

    def __init_subclass__(cls, **kwargs) -> None:
        type_id = cls.__dict__.get("type_id")
        if type_id is not None:
            SerializableMixin.named_types[type_id] = cls
        return super().__init_subclass__(**kwargs)

    @abstractmethod
    def to_object(self) -> "dict[str, JSON_T]":
        """Return a dictionary representation of this object.

        Implementations must start by calling `super().to_object()` and then
        update the resulting dictionary with their serializable data.
        """
        mapping: "dict[str, JSON_T]" = dict()
        if self.type_id is not None:
            mapping[TYPE_KEY] = self.type_id
        return mapping

    @classmethod
    def by_type_id(cls, type_id: str) -> type:
        """Return the class associated with the given type id."""
        return cls.named_types[type_id]


class EngineJSONEncoder(JSONEncoder):
    """Encoder that understands `SerializableMixin` objects, sets and tuples of them."""

    def default(self, o: Any) -> JSON_T:
        if isinstance(o, SerializableMixin):
            return o.to_object()
        if isinstance(o, (set, frozenset)):
            return sorted(o, key=str)
        if isinstance(o, Path):
            return str(o)
        return super().default(o)


def dumps(obj: Any, indent: Optional[int] = 4, sort_keys: bool = True, **kwargs) -> str:
    """Dump the given object as a JSON-formatted string with a trailing newline."""
    text = json.dumps(
        obj,
        cls=EngineJSONEncoder,
        indent=indent,
        sort_keys=sort_keys,
        ensure_ascii=False,
        **kwargs,
    )
    return text + "\n"


def dump(obj: Any, dest: Path, backup: str = ".bak", **kwargs) -> None:
    """Write `obj` to `dest` as JSON.

    An existing file at `dest` is backed up first and restored if
    serialization fails.
    """
    dest = Path(dest)
    backup_path = None
    if backup and dest.exists():
        backup_path = Path(str(dest) + backup)
        copy(dest, backup_path)
    try:
        text = dumps(obj, **kwargs)
        dest.parent.mkdir(parents=True, exist_ok=True)
        with open(dest, "w", encoding="utf-8") as fp:
            fp.write(text)
    except Exception as e:
        if backup_path is not None:
            emit_warning(
                f"An exception occurred while saving file '{dest}'. Restoring backup from '{backup_path}'."
            )
            backup_path.replace(dest)
            backup_path = None
        else:
            emit_critical(f"Failed to save file '{dest}'.")
        raise IOError(f"Could not write {dest}.") from e
    finally:
        if backup_path is not None:
            backup_path.unlink(missing_ok=True)
