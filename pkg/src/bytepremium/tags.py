"""Language identity (ISO 639-3 + ISO 15924) and the four-way script-type taxonomy."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

_LANG_RE = re.compile(r"^[a-z]{3}$")
_SCRIPT_RE = re.compile(r"^[A-Za-z]{4}$")


@dataclass(frozen=True, order=True)
class LanguageTag:
    """A language/script pair such as ``mya_mymr``.

    The script is stored lowercased so ``Latn`` and ``latn`` compare equal.
    Ordering follows the canonical string form.
    """

    language: str
    script: str

    def __post_init__(self):
        if not _LANG_RE.match(self.language):
            raise ValueError(f"language code must be 3 lowercase letters, got {self.language!r}")
        if not _SCRIPT_RE.match(self.script):
            raise ValueError(f"script code must be 4 ASCII letters, got {self.script!r}")
        object.__setattr__(self, "script", self.script.lower())

    @classmethod
    def parse(cls, text: str | LanguageTag) -> LanguageTag:
        if isinstance(text, LanguageTag):
            return text
        lang, sep, script = text.strip().partition("_")
        if not sep:
            raise ValueError(f"expected '<iso639-3>_<iso15924>', got {text!r}")
        return cls(lang, script)

    @property
    def iso15924(self) -> str:
        """Script code in ISO 15924 title case (``Latn``)."""
        return self.script.title()

    def __str__(self):
        return f"{self.language}_{self.script}"


def as_tag(value) -> LanguageTag:
    return LanguageTag.parse(value)


class ScriptType(str, enum.Enum):
    ALPHABET = "alphabet"
    ABJAD = "abjad"
    ABUGIDA = "abugida"
    LOGOGRAPHY = "logography"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, value) -> ScriptType:
        if isinstance(value, ScriptType):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            choices = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown script type {value!r}; expected one of {choices}") from None


_A, _J, _U, _L = ScriptType.ALPHABET, ScriptType.ABJAD, ScriptType.ABUGIDA, ScriptType.LOGOGRAPHY

# Keyed by lowercased ISO 15924 code. Japanese (mixed kanji/kana) is filed as
# logography; Korean (hangul, mixed) as alphabet.
SCRIPT_TYPES: dict[str, ScriptType] = {
    "latn": _A, "cyrl": _A, "grek": _A, "armn": _A, "geor": _A, "hang": _A,
    "kore": _A, "tfng": _A, "mong": _A, "olck": _A, "copt": _A, "goth": _A,
    "runr": _A, "ogam": _A, "nkoo": _A, "adlm": _A,
    "arab": _J, "hebr": _J, "syrc": _J, "samr": _J, "phnx": _J,
    "deva": _U, "beng": _U, "gujr": _U, "guru": _U, "orya": _U, "taml": _U,
    "telu": _U, "knda": _U, "mlym": _U, "sinh": _U, "tibt": _U, "mymr": _U,
    "khmr": _U, "laoo": _U, "thai": _U, "ethi": _U, "cans": _U, "bali": _U,
    "java": _U, "thaa": _U, "limb": _U, "tale": _U, "bugi": _U, "sund": _U,
    "tglg": _U, "mtei": _U, "lana": _U, "cakm": _U,
    "hani": _L, "hans": _L, "hant": _L, "jpan": _L,
}


def script_type_for(script: str) -> ScriptType | None:
    """Look up the script type of an ISO 15924 code, or ``None`` if unmapped."""
    return SCRIPT_TYPES.get(script.lower())
