"""Free group words and finite presentations.

A word is a tuple of nonzero ints: ``k`` stands for generator ``k - 1`` and
``-k`` for its inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Word = tuple[int, ...]


class PresentationError(ValueError):
    pass


def reduce(word: Iterable[int]) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word: Iterable[int]) -> Word:
    w = reduce(word)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


def inverse(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def power(word: Sequence[int], k: int) -> Word:
    if k < 0:
        return reduce(inverse(word) * -k)
    return reduce(tuple(word) * k)


def commutator(x: Sequence[int], y: Sequence[int]) -> Word:
    """x y x^-1 y^-1"""
    return reduce((*x, *y, *inverse(x), *inverse(y)))


def conjugate(x: Sequence[int], by: Sequence[int]) -> Word:
    """by^-1 x by"""
    return reduce((*inverse(by), *x, *by))


def cyclic_normal_form(word: Sequence[int]) -> Word:
    """Canonical representative of a relator up to rotation and inversion."""
    w = cyclic_reduce(word)
    if not w:
        return w
    candidates = []
    for v in (w, inverse(w)):
        candidates.extend(v[i:] + v[:i] for i in range(len(v)))
    return min(candidates, key=lambda c: (len(c), [(abs(x), -x) for x in c]))


def exponent_sums(word: Sequence[int], ngens: int) -> list[int]:
    sums = [0] * ngens
    for x in word:
        sums[abs(x) - 1] += 1 if x > 0 else -1
    return sums


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self) -> None:
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError("duplicate generator names")
        ngens = len(self.generators)
        for r in self.relators:
            if any(x == 0 or abs(x) > ngens for x in r):
                raise PresentationError(f"relator {r} uses undeclared generators")
        object.__setattr__(self, "relators", tuple(cyclic_reduce(r) for r in self.relators))

    @property
    def rank(self) -> int:
        return len(self.generators)

    def format_word(self, word: Sequence[int]) -> str:
        return " ".join(
            self.generators[abs(x) - 1] + ("" if x > 0 else "^-1") for x in word
        )

    def to_text(self) -> str:
        lines = ["gens: " + " ".join(self.generators)]
        lines += [("rel: " + self.format_word(r)).rstrip() for r in self.relators]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "GroupPresentation":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("gens:"):
            raise PresentationError("first line must start with 'gens:'")
        gens = tuple(lines[0][len("gens:"):].split())
        index = {g: i + 1 for i, g in enumerate(gens)}
        relators = []
        for ln in lines[1:]:
            if not ln.startswith("rel:"):
                raise PresentationError(f"unexpected line {ln!r}")
            word = []
            for tok in ln[len("rel:"):].split():
                name, inv = (tok[:-3], True) if tok.endswith("^-1") else (tok, False)
                if name not in index:
                    raise PresentationError(f"undeclared generator {name!r}")
                word.append(-index[name] if inv else index[name])
            relators.append(tuple(word))
        return cls(gens, tuple(relators))

    def relabel(self, names: Sequence[str]) -> "GroupPresentation":
        return GroupPresentation(tuple(names), self.relators)


def free_group(rank: int, prefix: str = "x") -> GroupPresentation:
    return GroupPresentation(tuple(f"{prefix}{i}" for i in range(rank)), ())
