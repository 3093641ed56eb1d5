"""Semifield models: worked examples, algebra laws, tropicalization."""

import pytest
from fractions import Fraction

from hypothesis import given, strategies as st

from foldline.errors import SemifieldError
from foldline.exprs import parse_value
from foldline.semifield import (
    RATIONALS,
    TROP_INT,
    TROP_NAT,
    Poly,
    SymbolicSemifield,
    add,
    div,
    iota,
    iota_inv,
    mul,
    nfold_sum,
    sym_equal,
)

SYM = SymbolicSemifield(("x", "y", "z"))


def sym_vars():
    names = SYM.vars()
    return names["x"], names["y"], names["z"]


class TestExamples:
    def test_tropical_min_plus_minus(self):
        three, five = TROP_INT.from_int(3), TROP_INT.from_int(5)
        assert add(three, five).n == 3
        assert mul(three, five).n == 8
        assert div(three, five).n == -2

    def test_rational_division(self):
        one, two = RATIONALS.value(1), RATIONALS.value(2)
        assert div(one, two).q == Fraction(1, 2)

    def test_symbolic_identities(self):
        x, y, _ = sym_vars()
        assert x + y == y + x
        two = SYM.from_int(2)
        assert x * y / (x + x) == (y / two) * (x / x)

    def test_nfold_sum(self):
        assert nfold_sum(2, RATIONALS.value(3)).q == 6
        assert nfold_sum(2, TROP_INT.from_int(3)).n == 3
        x, _, _ = sym_vars()
        doubled = nfold_sum(2, x)
        assert doubled == x + x
        assert str(doubled) == "2*x"

    def test_sym_equal(self):
        x, y, _ = sym_vars()
        assert sym_equal(x + y, y + x)
        assert sym_equal(x * y / (x + x), x * y / nfold_sum(2, x))
        model = SymbolicSemifield(("a", "b", "c", "d"))
        env = model.vars()
        left = parse_value("a*b + a*d + c*d", model, env)
        right = parse_value("a*b + a*d + c*d + a*b*d", model, env)
        assert not sym_equal(left, right)

    def test_iota(self):
        assert iota(TROP_INT, 0).n == 0
        assert iota_inv(iota(TROP_INT, 7)) == 7
        with pytest.raises(SemifieldError) as error:
            iota(TROP_NAT, -1)
        assert error.value.kind == "tropnat-range"

    def test_tropnat_underflow(self):
        with pytest.raises(SemifieldError) as error:
            div(TROP_NAT.from_int(3), TROP_NAT.from_int(5))
        assert error.value.kind == "tropnat-underflow"

    def test_model_mismatch(self):
        with pytest.raises(SemifieldError) as error:
            add(TROP_INT.from_int(1), TROP_NAT.from_int(1))
        assert error.value.kind == "model-mismatch"
        with pytest.raises(SemifieldError):
            sym_equal(sym_vars()[0], SymbolicSemifield(("u",)).var("u"))

    def test_positive_only(self):
        with pytest.raises(SemifieldError):
            RATIONALS.value(0)
        with pytest.raises(SemifieldError):
            SYM.from_int(0)

    def test_rendering(self):
        x, y, _ = sym_vars()
        assert str(nfold_sum(2, x * y * y)) == "2*x*y^2"
        assert str((x + y) / x) == "(x + y) / x"


ints = st.integers(min_value=-50, max_value=50)
nats = st.integers(min_value=0, max_value=50)
positive_rationals = st.fractions(min_value=Fraction(1, 20), max_value=20)


class TestAxioms:
    @given(ints, ints, ints)
    def test_tropint_laws(self, a, b, c):
        x, y, z = (TROP_INT.from_int(v) for v in (a, b, c))
        assert (x + y) + z == x + (y + z)
        assert x + y == y + x
        assert (x * y) * z == x * (y * z)
        assert x * y == y * x
        assert x * (y + z) == x * y + x * z
        assert (x * y) / y == x

    @given(positive_rationals, positive_rationals, positive_rationals)
    def test_rational_laws(self, a, b, c):
        x, y, z = (RATIONALS.value(v) for v in (a, b, c))
        assert (x + y) + z == x + (y + z)
        assert x * (y + z) == x * y + x * z
        assert (x * y) / y == x

    @given(nats, nats)
    def test_tropnat_stability(self, a, b):
        """Closure under a+b, ab, a/(a+b): no underflow can occur."""
        x, y = TROP_NAT.from_int(a), TROP_NAT.from_int(b)
        assert (x + y).n == min(a, b)
        assert (x * y).n == a + b
        assert (x / (x + y)).n == a - min(a, b)

    @given(nats)
    def test_nfold_double(self, a):
        assert nfold_sum(2, TROP_INT.from_int(a)) == TROP_INT.from_int(a)
        assert nfold_sum(2, RATIONALS.value(a + 1)).q == 2 * (a + 1)

    def test_symbolic_laws(self):
        x, y, z = sym_vars()
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert (x * y) / y == x
        assert ((x + y) / z) * z == x + y


# random subtraction-free expression trees for the homomorphism checks

_LEAVES = ("x", "y", "z")


def _tree(draw, depth):
    if depth == 0 or draw(st.booleans()):
        kind = draw(st.sampled_from(("var", "const")))
        if kind == "const":
            return ("const", draw(st.integers(min_value=1, max_value=5)))
        return ("var", draw(st.sampled_from(_LEAVES)))
    op = draw(st.sampled_from(("+", "*", "/")))
    return (op, _tree(draw, depth - 1), _tree(draw, depth - 1))


@st.composite
def trees(draw):
    return _tree(draw, 3)


def _eval_tree(tree, env, model):
    if tree[0] == "const":
        # a bare constant k is a k-fold sum of ones (tropically: 0)
        return model.one().nfold(tree[1])
    if tree[0] == "var":
        return env[tree[1]]
    op, left, right = tree
    a = _eval_tree(left, env, model)
    b = _eval_tree(right, env, model)
    return a + b if op == "+" else a * b if op == "*" else a / b


@given(trees(), st.integers(-10, 10), st.integers(-10, 10), st.integers(-10, 10))
def test_tropicalization_homomorphism(tree, a, b, c):
    """Evaluating the symbolic value tropically equals building the
    expression directly with min/plus/minus."""
    sym_env = {name: SYM.var(name) for name in _LEAVES}
    symbolic = _eval_tree(tree, sym_env, SYM)
    trop_env = {n: TROP_INT.from_int(v) for n, v in zip(_LEAVES, (a, b, c))}
    assert symbolic.evaluate(trop_env) == _eval_tree(tree, trop_env, TROP_INT)


@given(
    trees(),
    positive_rationals,
    positive_rationals,
    positive_rationals,
)
def test_rational_evaluation_homomorphism(tree, a, b, c):
    sym_env = {name: SYM.var(name) for name in _LEAVES}
    symbolic = _eval_tree(tree, sym_env, SYM)
    rat_env = {n: RATIONALS.value(v) for n, v in zip(_LEAVES, (a, b, c))}
    assert symbolic.evaluate(rat_env) == _eval_tree(tree, rat_env, RATIONALS)


@given(trees(), trees())
def test_cross_multiplied_equality_is_consistent(left, right):
    """Equal symbolic values evaluate equally; distinct ones may differ."""
    sym_env = {name: SYM.var(name) for name in _LEAVES}
    a = _eval_tree(left, sym_env, SYM)
    b = _eval_tree(right, sym_env, SYM)
    rat_env = {n: RATIONALS.value(Fraction(p, 7)) for n, p in zip(_LEAVES, (3, 11, 13))}
    if a == b:
        assert a.evaluate(rat_env) == b.evaluate(rat_env)


class TestPoly:
    def test_exact_division_roundtrip(self):
        model = SymbolicSemifield(("u", "v"))
        u, v = model.var("u"), model.var("v")
        product = (u + v) * (u + u * v + v)
        quotient = product.num.exact_div((u + v).num)
        assert quotient == (u + u * v + v).num

    def test_exact_division_failure(self):
        model = SymbolicSemifield(("u", "v"))
        u, v = model.var("u"), model.var("v")
        assert (u + v).num.exact_div((u * v).num) is None

    @given(st.integers(1, 9), st.integers(1, 9))
    def test_content(self, a, b):
        poly = Poly(1, {(0,): 2 * a, (1,): 2 * b})
        content, primitive = poly.primitive()
        assert content * primitive.terms[(0,)] == 2 * a

    def test_subtraction_free_invariant(self):
        """Stored numerators and denominators keep natural coefficients."""
        model = SymbolicSemifield(("a", "b", "c", "d"))
        env = model.vars()
        eps = parse_value("a*b^2 + a*d^2 + c*d^2 + 2*a*b*d", model, env)
        alpha = parse_value("a*b + a*d + c*d", model, env)
        value = (eps / alpha + env["b"] * env["c"]) / (env["b"] + env["d"])
        assert value.num.has_nonnegative_coefficients()
        assert value.den.has_nonnegative_coefficients()
