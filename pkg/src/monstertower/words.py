"""RVT/RVL code words and their spelling rules."""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = ["RvtCode", "SpellingError", "validate_code", "codim", "LETTERS"]

LETTERS = frozenset("RVTL")


class SpellingError(ValueError):
    def __init__(self, position: int, reason: str = ""):
        self.position = position
        super().__init__(f"spelling error at position {position}" + (f": {reason}" if reason else ""))


@dataclass(frozen=True)
class RvtCode:
    """A word over {R, V, T, L}.

    ``annotations[i]`` lists ``(plane kind, birth level)`` for the critical
    planes containing the direction that produced letter ``i``.
    """

    letters: str
    annotations: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if isinstance(self.letters, (list, tuple)):
            object.__setattr__(self, "letters", "".join(self.letters))
        if self.letters:
            validate_code(self.letters)

    def __str__(self):
        return self.letters

    def __len__(self):
        return len(self.letters)


def validate_code(w) -> bool:
    """Return True, or raise :class:`SpellingError` at the first violation (1-based)."""
    letters = w.letters if isinstance(w, RvtCode) else str(w)
    if not letters:
        raise SpellingError(1, "empty word")
    for i, ch in enumerate(letters):
        if ch not in LETTERS:
            raise SpellingError(i + 1, f"unknown letter {ch!r}")
    if letters[0] != "R":
        raise SpellingError(1, "every word starts with R")
    for i in range(1, len(letters)):
        if letters[i] in "TL" and letters[i - 1] == "R":
            raise SpellingError(i + 1, f"{letters[i]} cannot follow R")
    return True


def codim(w) -> int:
    """Critical letters, with L weighing two (V plus one tangency condition)."""
    letters = w.letters if isinstance(w, RvtCode) else str(w)
    return sum(1 for ch in letters if ch in "VT") + 2 * letters.count("L")
