"""Decorated reduced words and transition maps between them.

A decorated word attaches a vector of semifield coordinates to a reduced
word for w_0 of a simply laced datum.  Two elementary moves rewrite a
decorated word in place:

* a 2-move swaps adjacent letters with orthogonal nodes and swaps their
  coordinates;
* a 3-move rewrites a segment (p, p', p) with p.p' = -1 as (p', p, p') and
  maps the coordinates (x, y, z) to (yz/(x+z), x+z, xy/(x+z)).

Both moves are involutions.  Transporting coordinates along any braid-move
path between two words defines the transition map; the result does not
depend on the path (path independence is certified by the symbolic checks
in :mod:`foldline.checks`), so connected components of the decorated-word
graph are parametrized by the coordinates at any fixed word.  A
:class:`ChamberPoint` is a component, represented by its coordinates at
the datum's canonical base word.

Transition paths are found by breadth-first search in the braid-move graph
with lexicographically smallest neighbors first, memoized per word pair,
so repeated transitions cost one dictionary lookup plus the moves.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .cartan import CartanDatum, DiagramAutomorphism
from .errors import WordError
from .semifield import SemifieldValue
from .weyl import Word, _neighbor_letters, base_word, word_for_w0
from .weyl import reduced_word_for_w0_ending_with, reduced_word_for_w0_starting_with


@dataclass(frozen=True)
class DecoratedWord:
    """A reduced word for w_0 with one semifield coordinate per letter."""

    word: Word
    coords: tuple[SemifieldValue, ...]

    def __post_init__(self):
        if len(self.coords) != len(self.word.letters):
            raise WordError(
                "coords-length",
                f"{len(self.word.letters)} letters but {len(self.coords)} coordinates",
            )
        models = {value.model for value in self.coords}
        if len(models) > 1:
            raise WordError("coords-model", "coordinates must share one semifield model")

    @property
    def datum(self) -> CartanDatum:
        return self.word.datum

    def __str__(self) -> str:
        return " ".join(
            f"{i}^{c}" for i, c in zip(self.word.letters, self.coords)
        )


def decorated(datum: CartanDatum, letters: Sequence[str], coords) -> DecoratedWord:
    """Validate and build a decorated word."""
    return DecoratedWord(word_for_w0(datum, letters), tuple(coords))


def apply_move(dw: DecoratedWord, k: int, r: int) -> DecoratedWord:
    """Apply the braid move at 1-based position k with length r in {2, 3}."""
    datum = dw.datum
    letters = dw.word.letters
    if r not in (2, 3):
        raise WordError("invalid-move", f"elementary moves have r in {{2, 3}}, got {r}")
    if k < 1 or k + r - 1 > len(letters):
        raise WordError("invalid-move", f"move ({k}, {r}) does not fit the word")
    k0 = k - 1
    p, q = letters[k0], letters[k0 + 1]
    segment = letters[k0 : k0 + r]
    if p == q or segment != tuple(p if t % 2 == 0 else q for t in range(r)):
        raise WordError("invalid-move", f"segment at ({k}, {r}) is not alternating")
    dot = datum.dot(p, q)
    if r == 2:
        if dot != 0:
            raise WordError("invalid-move", f"nodes {p}, {q} are not orthogonal")
        new_letters = letters[:k0] + (q, p) + letters[k0 + 2 :]
        new_coords = (
            dw.coords[:k0]
            + (dw.coords[k0 + 1], dw.coords[k0])
            + dw.coords[k0 + 2 :]
        )
    else:
        if dot != -1:
            raise WordError("invalid-move", f"nodes {p}, {q} are not joined simply")
        x, y, z = dw.coords[k0 : k0 + 3]
        s = x + z
        new_letters = letters[:k0] + (q, p, q) + letters[k0 + 3 :]
        new_coords = dw.coords[:k0] + (y * z / s, s, x * y / s) + dw.coords[k0 + 3 :]
    return DecoratedWord(Word(datum, new_letters), new_coords)


@lru_cache(maxsize=None)
def _move_path(
    datum: CartanDatum, start: tuple[str, ...], goal: tuple[str, ...]
) -> tuple[tuple[int, int], ...]:
    """A braid-move path start -> goal as (k, r) pairs, via BFS."""
    if start == goal:
        return ()
    parents: dict[tuple[str, ...], tuple[tuple[str, ...], int, int]] = {}
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for letters, k, r in sorted(_neighbor_letters(datum, current)):
            if letters in seen:
                continue
            seen.add(letters)
            parents[letters] = (current, k, r)
            if letters == goal:
                path = []
                node = goal
                while node != start:
                    node, k, r = parents[node]
                    path.append((k, r))
                return tuple(reversed(path))
            queue.append(letters)
    raise WordError("disconnected", "words are not connected by braid moves")


def move_path(
    datum: CartanDatum, start: tuple[str, ...], goal: tuple[str, ...]
) -> tuple[tuple[int, int], ...]:
    """The memoized braid-move path between two reduced words."""
    return _move_path(datum, tuple(start), tuple(goal))


def transition(dw: DecoratedWord, to_word: Word, collect_trace: bool = False):
    """Transport coordinates from dw.word to to_word along braid moves.

    Returns the decorated word at ``to_word``; with ``collect_trace`` the
    full move-by-move list of decorated words is returned alongside it.
    """
    datum = dw.datum
    if not datum.simply_laced:
        raise WordError(
            "not-simply-laced",
            "coordinate moves are defined on simply laced data; fold instead",
        )
    if to_word.datum != datum:
        raise WordError("datum-mismatch", "target word belongs to a different datum")
    trace = [dw] if collect_trace else None
    current = dw
    for k, r in _move_path(datum, dw.word.letters, to_word.letters):
        current = apply_move(current, k, r)
        if collect_trace:
            trace.append(current)
    if collect_trace:
        return current, trace
    return current


@dataclass(frozen=True)
class ChamberPoint:
    """A connected component of the decorated-word graph.

    Represented by the coordinates at the datum's base word; components are
    equal exactly when these coordinates are equal.
    """

    datum: CartanDatum
    coords: tuple[SemifieldValue, ...]

    @property
    def word(self) -> Word:
        return base_word(self.datum)

    def __str__(self) -> str:
        return str(DecoratedWord(self.word, self.coords))


def canonical(dw: DecoratedWord) -> ChamberPoint:
    """The component of a decorated word (coordinates at the base word)."""
    at_base = transition(dw, base_word(dw.datum))
    return ChamberPoint(dw.datum, at_base.coords)


def realize(cp: ChamberPoint, word: Word) -> DecoratedWord:
    """The unique decorated word of the component at the given word."""
    return transition(DecoratedWord(cp.word, cp.coords), word)


def lambda_coord(cp: ChamberPoint, i: str) -> SemifieldValue:
    """First coordinate at any word starting with i (well defined)."""
    return realize(cp, reduced_word_for_w0_starting_with(cp.datum, i)).coords[0]


def rho_coord(cp: ChamberPoint, i: str) -> SemifieldValue:
    """Last coordinate at any word ending with i (well defined)."""
    return realize(cp, reduced_word_for_w0_ending_with(cp.datum, i)).coords[-1]


def sigma_action(dw: DecoratedWord, sigma: DiagramAutomorphism) -> DecoratedWord:
    """Relabel the letters by sigma, keeping coordinates."""
    return DecoratedWord(
        Word(dw.datum, sigma.apply_word(dw.word.letters)), dw.coords
    )


def sigma_action_point(cp: ChamberPoint, sigma: DiagramAutomorphism) -> ChamberPoint:
    """The induced action on components: relabel, then re-canonicalize."""
    return canonical(sigma_action(DecoratedWord(cp.word, cp.coords), sigma))


def is_sigma_fixed(cp: ChamberPoint, sigma: DiagramAutomorphism) -> bool:
    """True iff the component is fixed by the induced sigma action."""
    return sigma_action_point(cp, sigma).coords == cp.coords
