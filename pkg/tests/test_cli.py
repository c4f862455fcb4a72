"""Command-line interface: DSL parsing, rendering round-trip, subcommands."""

import json
import random
from fractions import Fraction

import pytest

from glnwebs import cli
from glnwebs.cli import DslError, elaborate, parse, parse_object, render
from glnwebs.webcat import DN, UP


# -- parsing ------------------------------------------------------------------


def test_parse_simple_generators():
    assert parse("id(2^)") == ("gen", "id", 2, UP)
    assert parse("m(1,2^)") == ("gen", "m", 1, 2, UP)
    assert parse("s(2,1v)") == ("gen", "s", 2, 1, DN)
    assert parse("cupL") == ("gen", "cupL", 1)
    assert parse("capR(3)") == ("gen", "capR", 3)
    assert parse("xo(1,2)") == ("gen", "xo", 1, 2)
    assert parse("ek(2)") == ("gen", "ek", 2)
    assert parse("Fl(1,2)@[2,1]") == ("gen", "Fl", 1, 2, (2, 1))


def test_parse_compose_and_tensor_structure():
    node = parse("m(1,1^) . id(1^) * id(1^)")
    assert node[0] == "compose"
    assert node[1][1][0] == "tensor"


def test_parse_scalar_literals():
    node = parse("[q^2 - 3 + 2*q^-1] id(1^)")
    assert node[0] == "scale"
    assert node[1] == ((1, Fraction(2)), (-3, Fraction(0)), (2, Fraction(-1)))
    node = parse("[q^(1/3)] id(1^)")
    assert node[1] == ((1, Fraction(1, 3)),)


def test_parse_errors_carry_position():
    with pytest.raises(DslError) as e:
        parse("m(1,1^) . bogus")
    assert "bogus" in str(e.value)
    with pytest.raises(DslError):
        parse("m(1,1^) extra")
    with pytest.raises(DslError):
        parse("[q +] id(1^)")


def test_parse_object_words():
    assert parse_object("1^ * 1^ * 1^") == ((1, UP), (1, UP), (1, UP))
    assert parse_object("2^ * 1v") == ((2, UP), (1, DN))
    with pytest.raises(DslError):
        parse_object("2 * 1^")


def test_elaborate_boundaries():
    e = elaborate(parse("m(1,2^)"), 3)
    assert e.dom == ((1, UP), (2, UP))
    assert e.cod == ((3, UP),)
    closed = elaborate(parse("capL . cupL"), 2)
    assert closed.dom == () and closed.cod == ()


# -- render round-trip ----------------------------------------------------------


def _rand_gen(rng):
    pick = rng.randrange(8)
    if pick == 0:
        return ("gen", "id", rng.randint(1, 4), rng.choice((UP, DN)))
    if pick == 1:
        return ("gen", "m", rng.randint(1, 3), rng.randint(1, 3), rng.choice((UP, DN)))
    if pick == 2:
        return ("gen", "s", rng.randint(1, 3), rng.randint(1, 3), rng.choice((UP, DN)))
    if pick == 3:
        return ("gen", rng.choice(("cupL", "capL", "cupR", "capR")), rng.randint(1, 3))
    if pick == 4:
        return ("gen", rng.choice(("xo", "xu", "xl", "xr")), rng.randint(1, 3), rng.randint(1, 3))
    if pick == 5:
        return ("gen", "ek", rng.randint(1, 4))
    sym = rng.choice(("Fl", "El"))
    m = rng.randint(2, 4)
    return ("gen", sym, rng.randint(1, m - 1), rng.randint(1, 2),
            tuple(rng.randint(0, 3) for _ in range(m)))


def _rand_scalar(rng):
    terms = []
    for _ in range(rng.randint(1, 3)):
        coeff = rng.choice((-3, -1, 1, 2, 5))
        exp = rng.choice(
            (Fraction(0), Fraction(1), Fraction(-1), Fraction(3),
             Fraction(-2), Fraction(1, 2), Fraction(-2, 3))
        )
        terms.append((coeff, exp))
    return tuple(terms)


def _rand_node(rng, depth=0):
    pick = rng.randrange(10)
    if depth >= 3 or pick < 5:
        return _rand_gen(rng)
    if pick < 7:
        return ("compose", [_rand_node(rng, depth + 1) for _ in range(rng.randint(2, 3))])
    if pick < 9:
        return ("tensor", [_rand_node(rng, depth + 1) for _ in range(rng.randint(2, 3))])
    return ("scale", _rand_scalar(rng), _rand_node(rng, depth + 1))


def test_render_parse_round_trip():
    rng = random.Random(2024)
    for _ in range(200):
        node = _rand_node(rng)
        text = render(node)
        assert parse(text) == node, text


# -- subcommands ------------------------------------------------------------------


def test_eval_thin_circle(capsys):
    assert cli.main(["eval", "--n", "2", "capL . cupL"]) == 0
    assert capsys.readouterr().out.strip() == "q + q^-1"


def test_eval_thick_circle(capsys):
    assert cli.main(["eval", "--n", "2", "capL(2) . cupL(2)"]) == 0
    assert capsys.readouterr().out.strip() == "q^2 + 1 + q^-2"


def test_eval_rejects_open_expression(capsys):
    assert cli.main(["eval", "--n", "2", "m(1,1^)"]) == 1


def test_matrix_json_shape(capsys):
    assert cli.main(["matrix", "--n", "2", "m(1,1^)"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["shape"] == [3, 4]
    assert data["domain"] == [[1, "u"], [1, "u"]]
    assert data["codomain"] == [[2, "u"]]
    assert all(len(e) == 3 for e in data["entries"])


def test_check_pass_and_unknown(capsys):
    assert cli.main(["check", "--n", "2", "dumbbell-kl"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["status"] == "pass"
    assert cli.main(["check", "--n", "2", "not-a-relation"]) == 1
    err = capsys.readouterr().err
    assert "known:" in err


def test_homdim(capsys):
    assert cli.main(["homdim", "--n", "2", "1^ * 1^ * 1^"]) == 0
    assert capsys.readouterr().out.strip() == "5"


def test_rank(capsys):
    exprs = "id(1^) * id(1^)\nm(1,1^) . s(1,1^)"
    assert cli.main(["rank", "--n", "2", "--at", "7/2", exprs]) == 0
    assert capsys.readouterr().out.strip() == "2"


def test_suite_filtered_json(capsys):
    rc = cli.main(["suite", "--n", "5"])
    out = capsys.readouterr().out
    data = json.loads(out)
    assert rc == 0
    assert data["ok"] is True
    assert data["results"]
    for item in data["results"]:
        assert set(item) >= {"id", "status"}
        assert item["status"] == "pass"
