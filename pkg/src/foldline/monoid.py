"""The tropical monoid on natural-number word coordinates.

Generators xi_i^n (one per node i and integer exponent n) obey

    (i)   xi_i^a xi_i^b = xi_i^{min(a,b)}
    (ii)  xi_i^a xi_j^b = xi_j^b xi_i^a            when i.j = 0
    (iii) xi_i^a xi_j^b xi_i^c = xi_j^{b+c-m} xi_i^{m} xi_j^{a+b-m},
          m = min(a,c), when i.j = -1

with xi_i^0 not a unit.  Products of exactly N generators along a reduced
word for w_0 with natural exponents form a submonoid whose elements have a
unique normal form: coordinates in N^N at the datum's base word, related
across words by the tropical transition maps of :mod:`foldline.chamber`.
Left multiplication by xi_i^n replaces the first coordinate c_1 by
min(n, c_1) in any word starting with i; right multiplication mirrors this
on the last coordinate.  General products expand the left factor into its
generator string and act letter by letter.

The crystal-operator structure is recovered from the monoid action: the
string length l_i is the least n with xi_i^n m = m (equivalently the first
coordinate at an i-first word), lower_to_zero is xi_i^0, and raise_to(n)
resets the first coordinate, giving mutually inverse bijections between
the l_i = 0 and l_i = n fibers.  The exponent-scaling endomorphisms
m -> (coordinates times e) are multiplicative and commute with diagram
automorphisms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import chamber, folding
from .cartan import CartanDatum, DiagramAutomorphism, FoldedDatum
from .chamber import ChamberPoint, DecoratedWord
from .errors import MonoidError
from .semifield import TropNat
from .weyl import Word, base_word, word_for_w0
from .weyl import reduced_word_for_w0_ending_with, reduced_word_for_w0_starting_with

_SCAN_CAP = 10**6


@dataclass(frozen=True)
class MonoidGenerator:
    """xi_i^n; exponents may be any integer, but only n >= 0 acts here."""

    i: str
    n: int


@dataclass(frozen=True)
class MonoidElement:
    """Normal form: natural coordinates at the datum's base word."""

    datum: CartanDatum
    coords: tuple[int, ...]

    def __post_init__(self):
        if any(not isinstance(c, int) or c < 0 for c in self.coords):
            raise MonoidError("bad-coords", "normal-form coordinates must be naturals")
        if len(self.coords) != len(base_word(self.datum).letters):
            raise MonoidError("bad-coords", "coordinate count must match the word length")

    @property
    def word(self) -> Word:
        return base_word(self.datum)

    def decorated(self) -> DecoratedWord:
        return DecoratedWord(self.word, tuple(TropNat(c) for c in self.coords))

    def chamber_point(self) -> ChamberPoint:
        return ChamberPoint(self.datum, tuple(TropNat(c) for c in self.coords))

    def __str__(self) -> str:
        return str(self.decorated())


def _coords_at(m: MonoidElement, word: Word) -> tuple[int, ...]:
    moved = chamber.transition(m.decorated(), word)
    return tuple(c.n for c in moved.coords)


def _from_word_coords(datum: CartanDatum, word: Word, coords: Sequence[int]) -> MonoidElement:
    dw = DecoratedWord(word, tuple(TropNat(c) for c in coords))
    at_base = chamber.transition(dw, base_word(datum))
    return MonoidElement(datum, tuple(c.n for c in at_base.coords))


def normal_form(datum: CartanDatum, letters: Sequence[str], coords: Sequence[int]) -> MonoidElement:
    """The element with the given coordinates along the given reduced word."""
    return _from_word_coords(datum, word_for_w0(datum, letters), coords)


def left_mul_gen(gen: MonoidGenerator, m: MonoidElement) -> MonoidElement:
    """xi_i^n . m: min into the first coordinate of an i-first word."""
    if gen.n < 0:
        raise MonoidError(
            "negative-exponent",
            "only exponents n >= 0 stabilize the normal-form submonoid",
        )
    word = reduced_word_for_w0_starting_with(m.datum, gen.i)
    coords = list(_coords_at(m, word))
    coords[0] = min(gen.n, coords[0])
    return _from_word_coords(m.datum, word, coords)


def right_mul_gen(m: MonoidElement, gen: MonoidGenerator) -> MonoidElement:
    """m . xi_i^n: the mirror rule on the last coordinate of an i-last word."""
    if gen.n < 0:
        raise MonoidError(
            "negative-exponent",
            "only exponents n >= 0 stabilize the normal-form submonoid",
        )
    word = reduced_word_for_w0_ending_with(m.datum, gen.i)
    coords = list(_coords_at(m, word))
    coords[-1] = min(gen.n, coords[-1])
    return _from_word_coords(m.datum, word, coords)


def generator_string(m: MonoidElement) -> tuple[MonoidGenerator, ...]:
    """m as the product of generators along its base word."""
    return tuple(
        MonoidGenerator(i, c) for i, c in zip(m.word.letters, m.coords)
    )


def mul(m1: MonoidElement, m2: MonoidElement) -> MonoidElement:
    """Product in the monoid: act with m1's generator string on m2."""
    if m1.datum != m2.datum:
        raise MonoidError("datum-mismatch", "elements live over different data")
    out = m2
    for gen in reversed(generator_string(m1)):
        out = left_mul_gen(gen, out)
    return out


def sigma_monoid(m: MonoidElement, sigma: DiagramAutomorphism) -> MonoidElement:
    """The automorphism xi_i^n -> xi_sigma(i)^n on normal forms."""
    relabeled = Word(m.datum, sigma.apply_word(m.word.letters))
    return _from_word_coords(m.datum, relabeled, m.coords)


def is_sigma_fixed_monoid(m: MonoidElement, sigma: DiagramAutomorphism) -> bool:
    return sigma_monoid(m, sigma) == m


def frobenius(e: int, m: MonoidElement) -> MonoidElement:
    """The endomorphism scaling every generator exponent by e >= 1."""
    if e < 1:
        raise MonoidError("bad-exponent", "the scaling endomorphism needs e >= 1")
    return MonoidElement(m.datum, tuple(e * c for c in m.coords))


def folded_mul(
    fd: FoldedDatum, f1: Sequence[int], f2: Sequence[int], letters: Sequence[str]
) -> tuple[int, ...]:
    """Product of two sigma-fixed elements in folded coordinates.

    Both inputs are natural coordinate vectors on the given folded word;
    they are unfolded, multiplied, checked sigma-fixed, and folded back.
    """
    letters = tuple(letters)
    elements = []
    for coords in (f1, f2):
        fdw = folding.folded_decorated(
            fd, letters, tuple(TropNat(c) for c in coords)
        )
        unfolded = folding.unfold(fdw)
        elements.append(
            _from_word_coords(fd.source, unfolded.word, [c.n for c in unfolded.coords])
        )
    product = mul(elements[0], elements[1])
    if not is_sigma_fixed_monoid(product, fd.sigma):
        raise MonoidError("not-sigma-fixed", "product of sigma-fixed elements must be sigma-fixed")
    back = folding.fold_coordinates(fd, product.chamber_point(), letters)
    return tuple(c.n for c in back.coords)


# ---------------------------------------------------------------------------
# String lengths and crystal operators


def l_coordinate(m: MonoidElement, i: str) -> int:
    """l_i read off coordinates: the first coordinate at an i-first word."""
    return chamber.lambda_coord(m.chamber_point(), i).n


def l_scan(m: MonoidElement, i: str) -> int:
    """l_i by generator scan: the least n with xi_i^n m = m.

    Bounded by one past the largest coordinate at the scanned word, which
    dominates the answer.
    """
    word = reduced_word_for_w0_starting_with(m.datum, i)
    bound = max(_coords_at(m, word)) + 1
    for n in range(min(bound, _SCAN_CAP) + 1):
        if left_mul_gen(MonoidGenerator(i, n), m) == m:
            return n
    raise MonoidError("scan-overflow", "generator scan failed to terminate")


def r_coordinate(m: MonoidElement, i: str) -> int:
    """r_i read off coordinates: the last coordinate at an i-last word."""
    return chamber.rho_coord(m.chamber_point(), i).n


def r_scan(m: MonoidElement, i: str) -> int:
    """r_i by generator scan: the least n with m xi_i^n = m."""
    word = reduced_word_for_w0_ending_with(m.datum, i)
    bound = max(_coords_at(m, word)) + 1
    for n in range(min(bound, _SCAN_CAP) + 1):
        if right_mul_gen(m, MonoidGenerator(i, n)) == m:
            return n
    raise MonoidError("scan-overflow", "generator scan failed to terminate")


def lower_to_zero(m: MonoidElement, i: str) -> MonoidElement:
    """xi_i^0 . m: lands in the l_i = 0 fiber."""
    return left_mul_gen(MonoidGenerator(i, 0), m)


def raise_to(n: int, m: MonoidElement, i: str) -> MonoidElement:
    """Inverse of lower_to_zero onto the l_i = n fiber (needs l_i(m) = 0)."""
    if n < 0:
        raise MonoidError("bad-exponent", "the target fiber needs n >= 0")
    word = reduced_word_for_w0_starting_with(m.datum, i)
    coords = list(_coords_at(m, word))
    if coords[0] != 0:
        raise MonoidError("raise-precondition", f"raise_to needs l_{i}(m) = 0")
    coords[0] = n
    return _from_word_coords(m.datum, word, coords)


def crystal_raise(m: MonoidElement, i: str) -> MonoidElement:
    """One step up the i-string: l_i goes up by one."""
    return raise_to(l_coordinate(m, i) + 1, lower_to_zero(m, i), i)


def crystal_graph_dot(datum: CartanDatum, bound: int) -> str:
    """DOT graph of raising steps from the bottom element, coordinates <= bound."""
    bottom = MonoidElement(datum, (0,) * len(base_word(datum).letters))
    seen = {bottom.coords}
    queue = [bottom]
    edges = []
    while queue:
        current = queue.pop()
        for i in datum.labels:
            raised = crystal_raise(current, i)
            if max(raised.coords, default=0) > bound:
                continue
            edges.append((current.coords, raised.coords, i))
            if raised.coords not in seen:
                seen.add(raised.coords)
                queue.append(raised)
    names = {coords: f"n{index}" for index, coords in enumerate(sorted(seen))}
    lines = ["digraph crystal {"]
    for coords, name in names.items():
        label = ",".join(str(c) for c in coords)
        lines.append(f'  {name} [label="{label}"];')
    for source, target, i in sorted(edges):
        lines.append(f'  {names[source]} -> {names[target]} [label="{i}"];')
    lines.append("}")
    return "\n".join(lines)
