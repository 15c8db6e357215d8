import random
from fractions import Fraction

import pytest

from motivic.errors import ExprSyntaxError, GuardError
from motivic.expr import (
    Affine,
    BStack,
    Diff,
    GLClass,
    Gm,
    Point,
    Power,
    Product,
    Projective,
    Quotient,
    Sum,
    eval_class,
    parse,
    render,
)
from motivic.groups import GeneralLinear, product, torus, upsilon_group
from motivic.ratfield import ELL, ONE, RatFunc

L = ELL


def test_parse_examples():
    assert parse("GL(2)") == GLClass(2)
    assert parse("[pt / GL(2)]") == Quotient(Point(), GeneralLinear(2))
    assert parse("P^2 * Gm - A^1") == Diff(
        Product((Projective(2), Gm())), Affine(1)
    )


def test_parse_whitespace_insensitive():
    assert parse("[pt/GL(2)]") == parse("[ pt / GL( 2 ) ]")
    assert parse("BGL(3)") == parse("B GL(3)") == BStack(GeneralLinear(3))


def test_parse_division_sugar():
    assert parse("GL(2) / (Gm^2)") == Quotient(GLClass(2), torus(2))
    assert parse("GL(2)/Gm/Gm") == Quotient(Quotient(GLClass(2), torus(1)), torus(1))
    # inside brackets the closing slash belongs to the bracket
    assert parse("[A^1 - pt / Gm]") == Quotient(Diff(Affine(1), Point()), torus(1))
    # parentheses restore the sugar
    assert parse("[(pt/Gm) * A^1 / Gm]") == Quotient(
        Product((Quotient(Point(), torus(1)), Affine(1))), torus(1)
    )


def test_parse_group_products():
    assert parse("[pt / GL(2) * Gm]") == Quotient(
        Point(), product(GeneralLinear(2), torus(1))
    )
    assert parse("[pt / (GL(1) * GL(2))]") == Quotient(
        Point(), product(GeneralLinear(1), GeneralLinear(2))
    )


def test_parse_powers():
    assert parse("Gm^3") == Power(Gm(), 3)
    assert parse("A^2^3") == Power(Affine(2), 3)
    assert parse("(P^1)^2") == Power(Projective(1), 2)


def syntax_error_position(text):
    with pytest.raises(ExprSyntaxError) as err:
        parse(text)
    return err.value.position


@pytest.mark.parametrize(
    "text,position",
    [
        ("", 0),
        ("GL(2", 4),
        ("A2", 1),
        ("pt pt", 3),
        ("[pt Gm]", 4),
        ("(Gm", 3),
        ("Gm @", 3),
        ("GL(x)", 3),
        ("[pt / ]", 6),
        ("Gm + ", 5),
        ("Gm * * Gm", 5),
        ("[pt / Gm", 8),
    ],
)
def test_syntax_error_offsets(text, position):
    assert syntax_error_position(text) == position


def test_syntax_error_expected_set():
    with pytest.raises(ExprSyntaxError) as err:
        parse("[pt Gm]")
    assert "/" in err.value.expected


def test_guard_errors():
    with pytest.raises(GuardError):
        parse("A^100")
    with pytest.raises(GuardError):
        parse("GL(0)")
    with pytest.raises(GuardError):
        parse("GL(99)")
    with pytest.raises(GuardError):
        parse("Gm^200")


def test_eval_examples():
    assert eval_class(parse("GL(2) / (Gm^2)")) == L * (L + 1)
    assert eval_class(parse("P^2")) == L * L + L + 1
    assert eval_class(parse("[pt / GL(1)]")) == ONE / (L - 1)
    assert eval_class(parse("BGL(1)")) == ONE / (L - 1)
    assert eval_class(parse("A^0")) == ONE
    assert eval_class(parse("P^0")) == ONE
    assert eval_class(parse("pt + pt + pt")) == RatFunc.from_fraction(3)
    assert eval_class(parse("Gm^2")) == (L - 1) ** 2


def test_eval_projective_cell_sum():
    # P^n is covered by affine cells of every dimension up to n
    for n in range(6):
        cells = " + ".join("A^%d" % k for k in range(n + 1))
        assert eval_class(parse("P^%d" % n)) == eval_class(parse(cells))


def random_expr(rng, depth=0):
    roll = rng.random()
    if depth > 3 or roll < 0.45:
        return rng.choice(
            [
                Affine(rng.randint(0, 4)),
                Projective(rng.randint(0, 3)),
                Gm(),
                Point(),
                GLClass(rng.randint(1, 3)),
                BStack(GeneralLinear(rng.randint(1, 2))),
            ]
        )
    if roll < 0.6:
        return Sum(tuple(random_expr(rng, depth + 1) for _ in range(2)))
    if roll < 0.72:
        return Diff(random_expr(rng, depth + 1), random_expr(rng, depth + 1))
    if roll < 0.84:
        return Product(tuple(random_expr(rng, depth + 1) for _ in range(2)))
    if roll < 0.92:
        return Power(random_expr(rng, depth + 1), rng.randint(0, 3))
    return Quotient(random_expr(rng, depth + 1), GeneralLinear(rng.randint(1, 3)))


def test_render_round_trip_random():
    rng = random.Random(5)
    for _ in range(150):
        e = random_expr(rng)
        text = render(e)
        again = parse(text)
        assert render(again) == text
        assert eval_class(again) == eval_class(e)


def test_eval_ring_morphism_on_nodes():
    rng = random.Random(9)
    for _ in range(60):
        a = random_expr(rng)
        b = random_expr(rng)
        assert eval_class(Sum((a, b))) == eval_class(a) + eval_class(b)
        assert eval_class(Diff(a, b)) == eval_class(a) - eval_class(b)
        assert eval_class(Product((a, b))) == eval_class(a) * eval_class(b)
        k = rng.randint(0, 3)
        assert eval_class(Power(a, k)) == eval_class(a) ** k
