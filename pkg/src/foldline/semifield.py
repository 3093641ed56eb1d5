"""Exact semifield arithmetic in four models.

A semifield here is a set with operations ``a+b``, ``a*b``, ``a/b`` obeying
the usual commutative/associative/distributive laws, but without subtraction
and without a zero.  The four models are:

* ``rat``   -- positive rationals with ordinary field operations;
* ``tropz`` -- the integers with ``add = min``, ``mul = +``, ``div = -``;
* ``tropn`` -- the nonnegative integers inside ``tropz``; division is
  partial and underflow is a hard error (the min-plus structure on N is
  stable under ``a+b``, ``ab`` and ``a/(a+b)`` but not under general
  division);
* ``sym``   -- formal subtraction-free rational functions: quotients of
  multivariate polynomials with nonnegative integer coefficients over a
  declared variable set.  No GCD cancellation is performed; equality is
  decided by cross multiplication, which is exact because the coefficient
  arithmetic never leaves N.

Evaluating a subtraction-free expression in ``tropz`` computes its
tropicalization: every formula proved symbolically in ``sym`` therefore
yields a piecewise-linear identity for free.  The symbolic model is the
verification oracle for all identity checks in :mod:`foldline.folding`.

Values support the operators ``+``, ``*``, ``/``, ``**`` (positive integer
power) and ``k * value`` for a positive integer ``k``, meaning the k-fold
sum ``value + ... + value``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import SemifieldError

IntLike = Union[int, Fraction]


def _require_same_model(a: "SemifieldValue", b: object) -> "SemifieldValue":
    if not isinstance(b, SemifieldValue):
        raise SemifieldError(
            "model-mismatch", f"expected a semifield value, got {type(b).__name__}"
        )
    if a.model != b.model:
        raise SemifieldError(
            "model-mismatch", f"cannot combine {a.model.name} with {b.model.name}"
        )
    return b


class SemifieldValue:
    """Common operator plumbing for all four value kinds."""

    __slots__ = ()

    @property
    def model(self) -> "Semifield":
        raise NotImplementedError

    def _add(self, other):
        raise NotImplementedError

    def _mul(self, other):
        raise NotImplementedError

    def _div(self, other):
        raise NotImplementedError

    def nfold(self, k: int) -> "SemifieldValue":
        """k-fold sum self + self + ... + self (k >= 1)."""
        raise NotImplementedError

    def __add__(self, other):
        return self._add(_require_same_model(self, other))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.nfold(other)
        return self._mul(_require_same_model(self, other))

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.nfold(other)
        return NotImplemented

    def __truediv__(self, other):
        return self._div(_require_same_model(self, other))

    def __pow__(self, k):
        if not isinstance(k, int) or k < 1:
            raise SemifieldError("bad-power", "powers must be integers >= 1")
        out = self
        for _ in range(k - 1):
            out = out._mul(self)
        return out


# ---------------------------------------------------------------------------
# Model descriptors


@dataclass(frozen=True)
class Semifield:
    """Descriptor of one semifield model; values point back at it."""

    @property
    def name(self) -> str:
        raise NotImplementedError

    def from_int(self, n: int) -> SemifieldValue:
        """The coercion iota from integers (tagged values in the tropical models)."""
        raise NotImplementedError

    def one(self) -> SemifieldValue:
        """The multiplicative unit (iota(0) in the tropical models)."""
        raise NotImplementedError


@dataclass(frozen=True)
class RationalSemifield(Semifield):
    name_: str = "rat"

    @property
    def name(self):
        return self.name_

    def from_int(self, n: int) -> "PosRational":
        return self.value(n)

    def value(self, q: IntLike) -> "PosRational":
        return PosRational(Fraction(q))

    def one(self) -> "PosRational":
        return self.value(1)


@dataclass(frozen=True)
class TropicalIntSemifield(Semifield):
    name_: str = "tropz"

    @property
    def name(self):
        return self.name_

    def from_int(self, n: int) -> "TropInt":
        return TropInt(n)

    value = from_int

    def one(self) -> "TropInt":
        return self.from_int(0)


@dataclass(frozen=True)
class TropicalNatSemifield(Semifield):
    name_: str = "tropn"

    @property
    def name(self):
        return self.name_

    def from_int(self, n: int) -> "TropNat":
        return TropNat(n)

    value = from_int

    def one(self) -> "TropNat":
        return self.from_int(0)


RATIONALS = RationalSemifield()
TROP_INT = TropicalIntSemifield()
TROP_NAT = TropicalNatSemifield()


class PosRational(SemifieldValue):
    """A strictly positive rational number."""

    __slots__ = ("q",)

    def __init__(self, q: Fraction):
        if q <= 0:
            raise SemifieldError("not-positive", f"rational value must be > 0, got {q}")
        object.__setattr__(self, "q", Fraction(q))

    def __setattr__(self, *a):  # immutable
        raise AttributeError("PosRational is immutable")

    @property
    def model(self):
        return RATIONALS

    def _add(self, other):
        return PosRational(self.q + other.q)

    def _mul(self, other):
        return PosRational(self.q * other.q)

    def _div(self, other):
        return PosRational(self.q / other.q)

    def nfold(self, k):
        if k < 1:
            raise SemifieldError("bad-nfold", "n-fold sum needs k >= 1")
        return PosRational(self.q * k)

    def __eq__(self, other):
        if not isinstance(other, PosRational):
            return NotImplemented
        return self.q == other.q

    def __hash__(self):
        return hash(("rat", self.q))

    def __repr__(self):
        return f"PosRational({self.q})"

    def __str__(self):
        return str(self.q)


class TropInt(SemifieldValue):
    """An integer under the tropical (min, +, -) operations."""

    __slots__ = ("n",)
    _model = TROP_INT

    def __init__(self, n: int):
        if not isinstance(n, int):
            raise SemifieldError("not-integer", f"tropical value must be an int, got {n!r}")
        object.__setattr__(self, "n", n)

    def __setattr__(self, *a):
        raise AttributeError("tropical values are immutable")

    @property
    def model(self):
        return self._model

    def _make(self, n):
        return type(self)(n)

    def _add(self, other):
        return self._make(min(self.n, other.n))

    def _mul(self, other):
        return self._make(self.n + other.n)

    def _div(self, other):
        return self._make(self.n - other.n)

    def nfold(self, k):
        if k < 1:
            raise SemifieldError("bad-nfold", "n-fold sum needs k >= 1")
        return self  # min(n, n, ...) = n

    def __eq__(self, other):
        if not isinstance(other, TropInt):
            return NotImplemented
        return self.model == other.model and self.n == other.n

    def __hash__(self):
        return hash((self.model.name, self.n))

    def __repr__(self):
        return f"{type(self).__name__}({self.n})"

    def __str__(self):
        return str(self.n)


class TropNat(TropInt):
    """A nonnegative integer under (min, +, -); division is partial."""

    __slots__ = ()
    _model = TROP_NAT

    def __init__(self, n: int):
        if not isinstance(n, int):
            raise SemifieldError("not-integer", f"tropical value must be an int, got {n!r}")
        if n < 0:
            raise SemifieldError("tropnat-range", f"tropical natural must be >= 0, got {n}")
        super().__init__(n)

    def _div(self, other):
        if self.n < other.n:
            raise SemifieldError(
                "tropnat-underflow",
                f"tropical division {self.n} - {other.n} leaves the naturals",
            )
        return TropNat(self.n - other.n)


# ---------------------------------------------------------------------------
# Sparse integer polynomials (support for the symbolic model)


class Poly:
    """Sparse integer polynomial in a fixed number of variables.

    Terms map exponent tuples to nonzero integer coefficients.  The class
    allows arbitrary integer coefficients (exact division needs signed
    intermediates); the symbolic semifield only ever stores polynomials
    whose coefficients are positive.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, int]):
        clean = {e: c for e, c in terms.items() if c}
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):
        raise AttributeError("Poly is immutable")

    @classmethod
    def constant(cls, nvars: int, c: int) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Poly":
        e = [0] * nvars
        e[index] = 1
        return cls(nvars, {tuple(e): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> int:
        if self.is_zero():
            return 0
        [(e, c)] = self.terms.items()
        return c

    def is_one(self) -> bool:
        return self.is_constant() and self.constant_value() == 1

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def has_nonnegative_coefficients(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def content(self) -> int:
        return math.gcd(*self.terms.values()) if self.terms else 0

    def primitive(self) -> tuple[int, "Poly"]:
        """Split into (integer content, primitive part)."""
        if self.is_zero():
            return 0, self
        g = self.content()
        if g == 1:
            return 1, self
        return g, Poly(self.nvars, {e: c // g for e, c in self.terms.items()})

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.nvars, out)

    def __mul__(self, other: "Poly") -> "Poly":
        out: dict[tuple, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.nvars, out)

    def scale(self, k: int) -> "Poly":
        if k == 1:
            return self
        return Poly(self.nvars, {e: c * k for e, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.nvars, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def sort_key(self):
        return (self.degree(), len(self.terms), sorted(self.terms.items()))

    def leading(self) -> tuple[tuple, int]:
        """Lexicographically largest exponent and its coefficient."""
        e = max(self.terms)
        return e, self.terms[e]

    def exact_div(self, other: "Poly") -> "Poly | None":
        """Exact quotient self/other, or None if not divisible.

        Plain long division by the lex-leading term; signed intermediate
        coefficients are fine.
        """
        if other.is_zero():
            return None
        if other.is_one():
            return self
        rem = dict(self.terms)
        quo: dict[tuple, int] = {}
        le, lc = other.leading()
        while rem:
            re = max(rem)
            rc = rem[re]
            qe = tuple(a - b for a, b in zip(re, le))
            if any(x < 0 for x in qe) or rc % lc != 0:
                return None
            qc = rc // lc
            quo[qe] = quo.get(qe, 0) + qc
            for e, c in other.terms.items():
                key = tuple(a + b for a, b in zip(qe, e))
                v = rem.get(key, 0) - qc * c
                if v:
                    rem[key] = v
                else:
                    rem.pop(key, None)
        return Poly(self.nvars, quo)

    def evaluate(self, model: Semifield, values: list[SemifieldValue]) -> SemifieldValue:
        """Evaluate with the given per-variable semifield values.

        Integer coefficients become n-fold sums, so evaluation in a
        tropical model is the tropicalization of the polynomial.
        """
        if self.is_zero():
            raise SemifieldError("zero-value", "cannot evaluate the zero polynomial")
        total = None
        for e, c in sorted(self.terms.items()):
            term = model.one()
            for x, k in zip(values, e):
                for _ in range(k):
                    term = term * x
            term = term.nfold(c)
            total = term if total is None else total + term
        return total

    def render(self, variables: tuple[str, ...]) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            factors = []
            if c != 1 or not any(e):
                factors.append(str(c))
            for name, k in zip(variables, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({self.terms!r})"


def _split_common(
    left: Iterable[Poly], right: Iterable[Poly]
) -> tuple[list[Poly], list[Poly], list[Poly]]:
    """Split two factor multisets into (common, left rest, right rest)."""
    right_rest = list(right)
    common: list[Poly] = []
    left_rest: list[Poly] = []
    for f in left:
        try:
            right_rest.remove(f)
            common.append(f)
        except ValueError:
            left_rest.append(f)
    return common, left_rest, right_rest


def _expand(nvars: int, scalar: int, factors: Iterable[Poly]) -> Poly:
    out = Poly.constant(nvars, scalar)
    for f in factors:
        out = out * f
    return out


@dataclass(frozen=True)
class SymbolicSemifield(Semifield):
    """Subtraction-free rational functions over a declared variable set."""

    variables: tuple[str, ...] = ()

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise SemifieldError("bad-variables", "duplicate variable names")

    @property
    def name(self):
        return "sym"

    def from_int(self, n: int) -> "SymRat":
        if n < 1:
            raise SemifieldError("not-positive", f"symbolic constant must be >= 1, got {n}")
        return SymRat._build(self, n, (), 1, ())

    def one(self) -> "SymRat":
        return self.from_int(1)

    def var(self, name: str) -> "SymRat":
        index = self.variables.index(name)
        return SymRat._build(
            self, 1, (Poly.variable(len(self.variables), index),), 1, ()
        )

    def vars(self) -> dict[str, "SymRat"]:
        return {name: self.var(name) for name in self.variables}


class SymRat(SemifieldValue):
    """A subtraction-free rational function num/den.

    Internally the numerator and denominator are kept as an integer scalar
    times a multiset of polynomial factors.  Products and quotients then
    cancel shared factors syntactically, and sums cancel any factor of the
    expanded numerator that exactly divides a denominator factor (keeping
    nonnegative coefficients throughout).  Without this, representation
    degree doubles with every elementary move along a long transition path.
    The observable value is still a plain pair of canonical sparse
    polynomials, exposed by :attr:`num` and :attr:`den`; equality is by
    cross multiplication.
    """

    __slots__ = ("_model", "cnum", "fnum", "cden", "fden")

    def __init__(self, *a, **kw):
        raise TypeError("build SymRat values via a SymbolicSemifield model")

    @classmethod
    def _build(
        cls,
        model: SymbolicSemifield,
        cnum: int,
        fnum: Iterable[Poly],
        cden: int,
        fden: Iterable[Poly],
    ) -> "SymRat":
        nvars = len(model.variables)
        num_factors: list[Poly] = []
        den_factors: list[Poly] = []
        for store, factors, side in ((num_factors, fnum, "num"), (den_factors, fden, "den")):
            for f in factors:
                if f.is_zero():
                    raise SemifieldError("zero-value", f"zero polynomial in {side}")
                c, p = f.primitive()
                if c < 0 or not p.has_nonnegative_coefficients():
                    raise SemifieldError(
                        "negative-coefficients",
                        "symbolic values must stay subtraction-free",
                    )
                if side == "num":
                    cnum *= c
                else:
                    cden *= c
                if not p.is_one():
                    store.append(p)
        if cnum <= 0 or cden <= 0:
            raise SemifieldError("zero-value", "symbolic value must be nonzero and positive")
        g = math.gcd(cnum, cden)
        cnum //= g
        cden //= g
        _, num_factors, den_factors = _split_common(num_factors, den_factors)
        num_factors, den_factors = cls._division_cancel(num_factors, den_factors)
        obj = object.__new__(cls)
        object.__setattr__(obj, "_model", model)
        object.__setattr__(obj, "cnum", cnum)
        object.__setattr__(obj, "fnum", tuple(sorted(num_factors, key=Poly.sort_key)))
        object.__setattr__(obj, "cden", cden)
        object.__setattr__(obj, "fden", tuple(sorted(den_factors, key=Poly.sort_key)))
        return obj

    def __setattr__(self, *a):
        raise AttributeError("SymRat is immutable")

    @staticmethod
    def _division_cancel(
        num: list[Poly], den: list[Poly]
    ) -> tuple[list[Poly], list[Poly]]:
        """Cancel num/den factor pairs where one exactly divides the other.

        Only quotients with nonnegative coefficients are accepted, so the
        subtraction-free invariant is preserved; anything else is left
        uncancelled (harmless, just a larger representative).
        """
        changed = True
        while changed:
            changed = False
            for i, f in enumerate(num):
                for j, g in enumerate(den):
                    big, small = (f, g) if f.degree() >= g.degree() else (g, f)
                    q = big.exact_div(small)
                    if q is None or not q.has_nonnegative_coefficients():
                        continue
                    del num[i], den[j]
                    if not q.is_one():
                        (num if big is f else den).append(q)
                    changed = True
                    break
                if changed:
                    break
        return num, den

    @property
    def model(self) -> SymbolicSemifield:
        return self._model

    @property
    def nvars(self) -> int:
        return len(self._model.variables)

    @property
    def num(self) -> Poly:
        """Expanded numerator (canonical sparse form)."""
        return _expand(self.nvars, self.cnum, self.fnum)

    @property
    def den(self) -> Poly:
        """Expanded denominator (canonical sparse form)."""
        return _expand(self.nvars, self.cden, self.fden)

    def _add(self, other: "SymRat") -> "SymRat":
        # a/b + c/d over the least common denominator of the factored forms,
        # pulling shared factors out of the two summands before expanding.
        common_den, rest_a, rest_b = _split_common(self.fden, other.fden)
        gden = math.gcd(self.cden, other.cden)
        ka = self.cnum * (other.cden // gden)
        kb = other.cnum * (self.cden // gden)
        common_num, s1, s2 = _split_common(
            list(self.fnum) + rest_b, list(other.fnum) + rest_a
        )
        kc = math.gcd(ka, kb)
        summed = _expand(self.nvars, ka // kc, s1) + _expand(self.nvars, kb // kc, s2)
        return SymRat._build(
            self._model,
            kc,
            common_num + [summed],
            gden * (self.cden // gden) * (other.cden // gden),
            common_den + rest_a + rest_b,
        )

    def _mul(self, other: "SymRat") -> "SymRat":
        return SymRat._build(
            self._model,
            self.cnum * other.cnum,
            self.fnum + other.fnum,
            self.cden * other.cden,
            self.fden + other.fden,
        )

    def _div(self, other: "SymRat") -> "SymRat":
        return SymRat._build(
            self._model,
            self.cnum * other.cden,
            self.fnum + other.fden,
            self.cden * other.cnum,
            self.fden + other.fnum,
        )

    def nfold(self, k):
        if k < 1:
            raise SemifieldError("bad-nfold", "n-fold sum needs k >= 1")
        return SymRat._build(self._model, self.cnum * k, self.fnum, self.cden, self.fden)

    def __eq__(self, other):
        if not isinstance(other, SymRat):
            return NotImplemented
        if self._model != other._model:
            return False
        _, left, right = _split_common(
            list(self.fnum) + list(other.fden), list(other.fnum) + list(self.fden)
        )
        kl = self.cnum * other.cden
        kr = other.cnum * self.cden
        k = math.gcd(kl, kr)
        return _expand(self.nvars, kl // k, left) == _expand(self.nvars, kr // k, right)

    __hash__ = None  # equal values can have distinct representatives

    def evaluate(self, assignment: Mapping[str, SemifieldValue]) -> SemifieldValue:
        """Evaluate in another model by substituting values for variables."""
        values = [assignment[name] for name in self._model.variables]
        if not values:
            raise SemifieldError("bad-variables", "evaluation needs at least one variable")
        model = values[0].model
        out = model.one()
        for f in self.fnum:
            out = out * f.evaluate(model, values)
        out = out.nfold(self.cnum)
        den = model.one()
        for f in self.fden:
            den = den * f.evaluate(model, values)
        den = den.nfold(self.cden)
        return out / den

    def __str__(self):
        def wrap(p: Poly) -> str:
            text = p.render(self._model.variables)
            return f"({text})" if len(p.terms) > 1 else text

        num = wrap(self.num)
        if self.cden == 1 and not self.fden:
            return num
        return f"{num} / {wrap(self.den)}"

    def __repr__(self):
        return f"SymRat({self})"


# ---------------------------------------------------------------------------
# Module-level operations (the functional face of the value methods)


def add(a: SemifieldValue, b: SemifieldValue) -> SemifieldValue:
    return a + b


def mul(a: SemifieldValue, b: SemifieldValue) -> SemifieldValue:
    return a * b


def div(a: SemifieldValue, b: SemifieldValue) -> SemifieldValue:
    return a / b


def nfold_sum(k: int, a: SemifieldValue) -> SemifieldValue:
    """a + a + ... + a with k summands (k >= 1)."""
    return a.nfold(k)


def sym_equal(a: SymRat, b: SymRat) -> bool:
    """Cross-multiplied equality of symbolic values (same variable set)."""
    if not isinstance(a, SymRat) or not isinstance(b, SymRat):
        raise SemifieldError("model-mismatch", "sym_equal needs two symbolic values")
    if a.model != b.model:
        raise SemifieldError("model-mismatch", "symbolic values over different variables")
    return a == b


def iota(model: Semifield, n: int) -> SemifieldValue:
    """The tagged-value coercion Z -> K (N -> K for the natural model)."""
    return model.from_int(n)


def iota_inv(value: SemifieldValue) -> int:
    if not isinstance(value, TropInt):
        raise SemifieldError("model-mismatch", "iota_inv is defined on tropical values")
    return value.n


MODELS: dict[str, Semifield] = {
    "rat": RATIONALS,
    "tropz": TROP_INT,
    "tropn": TROP_NAT,
}


def model_by_name(name: str, variables: tuple[str, ...] = ()) -> Semifield:
    """Resolve a CLI model name; ``sym`` needs its variable set."""
    if name == "sym":
        return SymbolicSemifield(tuple(variables))
    try:
        return MODELS[name]
    except KeyError:
        raise SemifieldError("unknown-model", f"unknown semifield model {name!r}") from None
