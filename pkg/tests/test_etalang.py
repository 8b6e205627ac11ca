import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdissect.etalang import (
    CatalogError,
    EtaExpr,
    Extraction,
    ParseError,
    default_catalog,
    dump_catalog,
    eta_series,
    evaluate,
    load_catalog,
    parse,
    parse_side,
    theta_series,
)
from qdissect.oracle import P33_SPEC, count_dp
from qdissect.series import EXACT, Ring, inflate, mul

from test_series import euler_product

P_TEXT = "f2^6*f3 / (f1^2*f6^2) + 3*q*f1^2*f6^6/(f2^2*f3^3)"


class TestEtaSeries:
    def test_first_terms(self):
        assert eta_series(1, 8, EXACT).tolist() == euler_product(8) == [1, -1, -1, 0, 0, 1, 0, 1, 0]

    def test_f3(self):
        assert eta_series(3, 8, EXACT).tolist() == [1, 0, 0, -1, 0, 0, -1, 0, 0]

    @pytest.mark.parametrize("k", range(1, 13))
    def test_inflation(self, k):
        assert eta_series(k, 300, EXACT) == inflate(eta_series(1, 300, EXACT), k)

    def test_against_product(self):
        assert eta_series(1, 250, EXACT).tolist() == euler_product(250)

    def test_modular(self):
        assert eta_series(1, 8, Ring.mod(7)).tolist() == [1, 6, 6, 0, 0, 1, 0, 1, 0]


class TestTheta:
    def test_euler_specialisation(self):
        assert theta_series(1, 2, 400, EXACT) == eta_series(1, 400, EXACT)

    @pytest.mark.parametrize("a,b", [(1, 2), (3, 7), (5, 10), (40, 35), (1, 1)])
    def test_symmetry(self, a, b):
        assert theta_series(a, b, 300, EXACT) == theta_series(b, a, 300, EXACT)

    def test_first_exponents(self):
        s = theta_series(5, 10, 12, EXACT)
        assert s[0] == 1 and s[5] == -1 and s[10] == -1
        assert s.nonzero().tolist() == [0, 5, 10]

    def test_double_root(self):
        # theta(1,1) = 1 - 2q + 2q^4 - 2q^9 ...
        assert theta_series(1, 1, 9, EXACT).tolist() == [1, -2, 0, 0, 2, 0, 0, 0, 0, -2]


class TestParse:
    def test_generating_function(self):
        e = parse("f1^-3 * f3^-3")
        assert e == EtaExpr.monomial(etas={1: -3, 3: -3})

    def test_p_of_q(self):
        e = parse(P_TEXT)
        assert len(e.terms) == 2
        assert e.terms[0].etas == ((1, -2), (2, 6), (3, 1), (6, -2))
        assert e.terms[1].coeff == 3 and e.terms[1].qshift == 1

    def test_theta(self):
        e = parse("theta(5,10)")
        assert len(e.terms) == 1 and e.terms[0].thetas == ((5, 10),)

    def test_expansion_of_sums(self):
        assert parse("(f1 + q)^2") == parse("f1^2 + 2*q*f1 + q^2")

    def test_merges_and_drops(self):
        assert parse("f1 - f1") == EtaExpr()
        assert parse("f1 - f1").render() == "0"
        assert parse("2*f2 + 3*f2") == parse("5*f2")

    def test_division_sign(self):
        assert parse("1/(-f1)") == parse("-f1^-1")

    def test_definitions_and_substitution(self):
        defs = {"P": parse(P_TEXT)}
        e = parse("P(q^3)", defs)
        assert e == parse(P_TEXT).substitute(3)
        assert e.terms[1].qshift == 3 and dict(e.terms[0].etas) == {3: -2, 6: 6, 9: 1, 18: -2}

    def test_extract_side(self):
        s = parse_side("extract(f1^-3*f3^-3, 3, 2)")
        assert isinstance(s, Extraction) and (s.m, s.r) == (3, 2)

    @pytest.mark.parametrize(
        "text,pos",
        [("f1^-3*(", 7), ("f1 $ f2", 3), ("g1", 0), ("f1/(f1+f2)", 2), ("q^-1", 2), ("f1^", 3), ("f0", 0)],
    )
    def test_errors_carry_position(self, text, pos):
        with pytest.raises(ParseError) as err:
            parse(text)
        assert err.value.pos == pos

    def test_unknown_name(self):
        with pytest.raises(ParseError, match="unknown factor"):
            parse("P(q)")

    @pytest.mark.parametrize(
        "text", [P_TEXT, "f1^-3*f3^-3", "theta(5,10)*q^2 - 7*f4", "f9^3/f3^12*(f1^6 + 9*q*f1^3*f9^3 + 27*q^2*f9^6)"]
    )
    def test_render_round_trip(self, text):
        e = parse(text)
        assert parse(e.render()) == e


class TestEvaluate:
    def test_generating_function(self):
        got = evaluate(parse("f1^-3*f3^-3"), 5, EXACT).tolist()
        assert got == count_dp(P33_SPEC, 5) == [1, 3, 9, 25, 60, 135]

    def test_p_constant_term(self):
        assert evaluate(parse(P_TEXT), 0, EXACT).tolist() == [1]

    def test_extraction_order(self):
        s = evaluate(parse_side("extract(f1^-3*f3^-3, 3, 2)"), 10, EXACT)
        assert s.order == 10 and s[0] == 9

    def test_zero_expression(self):
        assert evaluate(EtaExpr(), 5, EXACT).tolist() == [0] * 6

    def test_shift_past_order(self):
        assert evaluate(parse("q^9*f1"), 5, EXACT).is_zero()


monomials = st.builds(
    lambda c, s, e1, e2, th: EtaExpr.monomial(c, s, {1: e1, 2: e2}, th),
    st.integers(-5, 5),
    st.integers(0, 4),
    st.integers(-3, 3),
    st.integers(-3, 3),
    st.lists(st.tuples(st.integers(1, 6), st.integers(1, 6)), max_size=1),
)


@settings(max_examples=100, deadline=None)
@given(monomials, monomials)
def test_evaluation_homomorphism(x, y):
    ring = EXACT
    assert evaluate(x * y, 40, ring) == mul(evaluate(x, 40, ring), evaluate(y, 40, ring))


class TestCatalog:
    def test_default_loads(self):
        recs = default_catalog()
        names = [r.name for r in recs]
        assert len(names) == len(set(names))
        for n in ["f1f3.2diss", "f1_f3.2diss", "f3_f1.2diss", "f1^3.3diss", "f1^-3.3diss", "P.q3", "f1^-3.3diss.f1", "G.3n", "G.3n+1", "G.3n+2"]:
            assert n in names

    def test_dump_round_trip(self):
        recs = default_catalog()
        again = load_catalog(dump_catalog(recs))
        assert [(r.name, r.lhs, r.rhs, r.modulus) for r in again] == [(r.name, r.lhs, r.rhs, r.modulus) for r in recs]

    @pytest.mark.parametrize(
        "text",
        [
            "a | f1 | f1 |",  # 4 fields
            "a | f1 | f1 | | s\na | f2 | f2 | | s",
            "a | f1 | f1 | 1 | s",
            "a | f1 + | f1 | | s",
            "let q = f1",
        ],
    )
    def test_bad_catalogs(self, text):
        with pytest.raises(CatalogError):
            load_catalog(text)
