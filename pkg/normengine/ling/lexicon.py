"""Lexicon tables mapping French lemmas to semantic literal patterns.

One entry per line, tab-separated: `lemma  context  pattern  [defeasible]`.
The context is `verb`, `qualif`, `noun` or `compl_v:<preposition>`. The
pattern is a literal over S (the clause's subject agent), O (its object
agent) and T (its time interval; T+1 is the next one), or `_` for a lemma
that carries no semantic content.
"""

from dataclasses import dataclass
from typing import Optional

from normengine.dsl.parser import parse_literal
from normengine.errors import ParseError
from normengine.logic import Literal
from normengine.util.paths import asset_path

ROLE_VARIABLES = frozenset({"S", "O", "T"})
CONTEXTS = ("verb", "qualif", "noun")
COMPL_V = "compl_v"
DEFAULT_LEXICON = "lexicon_fr.tsv"


@dataclass(frozen=True)
class LexiconEntry:
    lemma: str
    context: str
    maps_to: Optional[Literal] = None
    defeasible: bool = False

    @property
    def preposition(self) -> Optional[str]:
        if self.context.startswith(COMPL_V + ":"):
            return self.context.split(":", 1)[1]
        return None


class Lexicon:
    """Entries indexed by `(lemma, context)`."""

    def __init__(self, entries=()) -> None:
        self._entries: "dict[tuple[str, str], LexiconEntry]" = {}
        for entry in entries:
            self._entries[(entry.lemma, entry.context)] = entry

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries.values())

    def lookup(self, lemma: str, context: str) -> Optional[LexiconEntry]:
        return self._entries.get((lemma, context))

    @property
    def nouns(self) -> "frozenset[str]":
        """Lemmas of the nouns that denote vehicles, hence agents."""
        return frozenset(e.lemma for e in self if e.context == "noun")


def _valid_context(context: str) -> bool:
    if context in CONTEXTS:
        return True
    kind, _, preposition = context.partition(":")
    return kind == COMPL_V and bool(preposition)


def load_lexicon(text: str, source: Optional[str] = None) -> Lexicon:
    """Parse a lexicon table.

    Raises:
        ParseError: on a malformed line, an unknown context, a pattern using
            other variables than S, O and T, or a duplicate entry.
    """
    entries: "dict[tuple[str, str], LexiconEntry]" = {}
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        columns = [c.strip() for c in line.split("\t")]
        if len(columns) not in (3, 4):
            raise ParseError("Expected 3 or 4 tab-separated columns.", number, 1, source)
        lemma, context, pattern = columns[:3]
        defeasible = len(columns) == 4 and columns[3].lower() in ("defeasible", "yes", "true")
        if not _valid_context(context):
            raise ParseError(f"Unknown lexicon context '{context}'.", number, 1, source)
        maps_to = None
        if pattern != "_":
            try:
                maps_to = parse_literal(pattern)
            except ParseError as e:
                raise ParseError(f"Bad pattern for '{lemma}': {e.message}", number, 1, source) from None
            if maps_to.predicate.linguistic:
                raise ParseError(f"Pattern for '{lemma}' must be semantic.", number, 1, source)
            extra = {name for name, _ in maps_to.variables()} - ROLE_VARIABLES
            if extra:
                raise ParseError(
                    f"Pattern for '{lemma}' uses unknown variables {', '.join(sorted(extra))}.",
                    number,
                    1,
                    source,
                )
        if (lemma, context) in entries:
            raise ParseError(f"Duplicate lexicon entry for '{lemma}' ({context}).", number, 1, source)
        entries[(lemma, context)] = LexiconEntry(lemma, context, maps_to, defeasible)
    return Lexicon(entries.values())


def default_lexicon() -> Lexicon:
    return load_lexicon(asset_path(DEFAULT_LEXICON).read_text(encoding="utf-8"), DEFAULT_LEXICON)
