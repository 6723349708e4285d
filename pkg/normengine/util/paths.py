"""Path-related utilities: packaged assets and knowledge-base lookup."""

from importlib.resources import files
from pathlib import Path
from typing import Iterable, Union

import click

from normengine.errors import EngineError

from .constants import BUILTIN_KB_ID, KB_SUFFIX

BUILTIN_KBS = {BUILTIN_KB_ID: "norms_road.nkb"}


def asset_path(*parts: str):
    """Return a traversable for a file shipped under `normengine/assets`."""
    resource = files("normengine").joinpath("assets")
    for part in parts:
        resource = resource.joinpath(part)
    return resource


def read_text(source: Union[str, Path]) -> str:
    """Read a UTF-8 input file, turning I/O failures into an `EngineError`."""
    try:
        with click.open_file(str(source), "r", encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise EngineError(f"Cannot read '{source}': {e.strerror or e}.") from e


def resolve_kb(spec: Union[str, Path]) -> "tuple[str, str]":
    """Return `(source_name, text)` for a `--kb` value: a builtin id or a file path."""
    spec = str(spec)
    if spec in BUILTIN_KBS:
        return spec, asset_path(BUILTIN_KBS[spec]).read_text(encoding="utf-8")
    return spec, read_text(spec)


def corpus_files(directory: Path, suffix: str) -> "list[Path]":
    """The files of `directory` with the given suffix, sorted by name."""
    return sorted(p for p in Path(directory).iterdir() if p.suffix == suffix and p.is_file())


def extra_kbs(directory: Path) -> "list[Path]":
    """User knowledge bases shipped alongside a corpus."""
    return corpus_files(directory, KB_SUFFIX)


def kb_sources(specs: Iterable[Union[str, Path]]) -> "list[tuple[str, str]]":
    return [resolve_kb(spec) for spec in specs]
