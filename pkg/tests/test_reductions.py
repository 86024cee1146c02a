import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from freekit.algebra import Matrix
from freekit.errors import DecodeError, NotClausShaped, SingletonWarning, TrivialYes, WrongCardinality
from freekit.reductions import (
    ClausInstance,
    MmpcpChoice,
    PcpInstance,
    SemiThueSystem,
    beta,
    claus_reduction,
    claus_reduction_to_pairs,
    claus_transport_witness,
    decode_mat3,
    dim_reduce_2x2,
    embed_pad_dimension,
    embed_pairs_to_mat3,
    gadget_code_d,
    gadget_prefix_recode,
    mmpcp_pairs_set,
    mmpcp_witness_check,
    pad_generator_closure,
    pad_pairs_generator,
    pcp_witness_check,
    product_with_commutative,
    project_commutative,
    scale_to_integers,
    semi_thue_bounded_accessibility,
    validate_claus,
)
from freekit.search import GeneratorSet, balanced_collision_search, dt_family, verify_double_factorization
from freekit.verdict import DoubleFactorization
from freekit.words import BINARY, Additive, Alphabet, Morphism, Pair, Word, sardinas_patterson, words

TOY = {
    "sigma_alphabet": ["b", "e", "c"],
    "sigma": {"b": "b", "c": "d0", "e": "de"},
    "tau": {"b": "bd", "c": "0d", "e": "e"},
}


def toy(**changes):
    obj = {k: (dict(v) if isinstance(v, dict) else v) for k, v in TOY.items()}
    for key, value in changes.items():
        obj[key].update(value) if isinstance(value, dict) else obj.__setitem__(key, value)
    return ClausInstance.from_json(obj)


def seven_letter_instance():
    inner = ["c1", "c2", "c3", "c4", "c5"]
    sigma = {"b": "bd0", "e": "d1de"}
    tau = {"b": "bd1d", "e": "0de"}
    for i, a in enumerate(inner):
        bits = format(i + 1, "03b")
        sigma[a] = "".join("d" + x for x in bits)
        tau[a] = "".join(x + "d" for x in reversed(bits))
    return ClausInstance.from_json({"sigma_alphabet": ["b", "e"] + inner, "sigma": sigma, "tau": tau})


def pair(u, v):
    return Pair(BINARY.word(u), BINARY.word(v))


class TestSemiThue:
    def test_reachable(self):
        ab = Alphabet(("a", "b"))
        T = SemiThueSystem(ab, ((ab.word("ab"), ab.word("ba")),))
        res = semi_thue_bounded_accessibility(T, ab.word("aab"), ab.word("baa"))
        assert res.found and [str(w) for w in res.path] == ["aab", "aba", "baa"]

    def test_unreachable_is_bounded(self):
        ab = Alphabet(("a", "b"))
        T = SemiThueSystem(ab, ((ab.word("a"), ab.word("aa")),))
        res = semi_thue_bounded_accessibility(T, ab.word("a"), ab.word("b"), max_expansions=50)
        assert not res.found and res.expansions == 50


class TestClaus:
    def test_toy_validates(self):
        assert validate_claus(toy())

    def test_wrong_shape(self):
        check = validate_claus(toy(sigma={"c": "0d"}))
        assert not check and "sigma(c)" in check.violation

    def test_missing_end_marker(self):
        c = ClausInstance.from_json({"sigma_alphabet": ["b", "c"], "sigma": {"b": "b", "c": "d0"}, "tau": {"b": "bd", "c": "0d"}})
        assert not validate_claus(c)

    def test_pcp_and_mmpcp(self):
        c = toy()
        sig = c.pcp.sigma_alphabet
        assert pcp_witness_check(c.pcp, sig.word("bce"))
        assert not pcp_witness_check(c.pcp, sig.word("b"))
        assert mmpcp_witness_check(c.pcp, MmpcpChoice(sig.word("bce"), "sss", "ttt"))
        assert not mmpcp_witness_check(c.pcp, MmpcpChoice(sig.word("bce"), "sss", "sss"))

    def test_mmpcp_pairs(self):
        c = toy()
        P = mmpcp_pairs_set(c.pcp)
        assert [str(p) for p in P] == ["(b, b)", "(de, e)", "(d0, c)", "(bd, b)", "(e, e)", "(0d, c)"]
        assert verify_double_factorization(P, DoubleFactorization((0, 2, 1), (3, 5, 4)))

    def test_trivial_yes(self):
        ab = Alphabet(("a",))
        m = Morphism.from_dict(ab, ab, {"a": "aa"})
        p = PcpInstance(m, m)
        with pytest.raises(TrivialYes):
            mmpcp_pairs_set(p)

    def test_reduction_shape(self):
        red = claus_reduction(toy())
        assert [str(y) for y in red.Y] == ["(d0, c)", "(0d, c)", "(eb, eb)", "(debd, eb)", "(ebd, eb)"]
        assert len(red.Z) == 5
        assert all(z.first.alphabet == BINARY and z.second.alphabet == BINARY for z in red.Z)

    def test_not_claus_shaped(self):
        with pytest.raises(NotClausShaped):
            claus_reduction(toy(sigma={"c": "0d"}))

    def test_transport(self):
        c = toy()
        w = claus_transport_witness(c, c.pcp.sigma_alphabet.word("bce"))
        red = claus_reduction(c)
        assert w == DoubleFactorization((2, 0, 3), (4, 1, 4))
        assert verify_double_factorization(red.Y, w)
        assert verify_double_factorization(red.Z, w)
        assert str(red.Y.product(w.left).first) == "ebd0debd"
        mats = GeneratorSet([embed_pairs_to_mat3(z) for z in red.Z])
        assert verify_double_factorization(mats, w)

    def test_seven_letters(self):
        c = seven_letter_instance()
        assert validate_claus(c)
        Z = claus_reduction_to_pairs(c)
        assert len(Z) == 13 and len(set(Z)) == 13


class TestGadgets:
    def test_code_one_is_identity(self):
        x, y = words(BINARY, "0", "1")
        assert gadget_code_d(x, [y], 1) == [x, y]

    def test_code_two(self):
        a, b = words(Alphabet(("a", "b")), "a", "b")
        assert [str(w) for w in gadget_code_d(a, [b], 2)] == ["aa", "b", "ab"]

    def test_code_three_size(self):
        a, b, c = words(Alphabet(("a", "b", "c")), "a", "b", "c")
        assert len(set(gadget_code_d(a, [b, c], 3))) == 7

    def test_x_in_y_rejected(self):
        x = BINARY.word("0")
        with pytest.raises(ValueError):
            gadget_code_d(x, [x], 2)

    def test_prefix_recode(self):
        X = words(Alphabet(tuple("abcde")), "a", "b", "c", "d", "e")
        out = gadget_prefix_recode(X, X[0], X[1], X[2], X[3])
        assert [str(w) for w in out] == ["e", "da", "cb", "db"]

    def test_pad_pairs(self):
        out = pad_pairs_generator([pair("0", "1"), pair("1", "0")])
        assert [str(p) for p in out] == ["(1, 10)", "(10, 1)", "(100, 100)"]

    def test_pad_pairs_preserves_search_outcome(self):
        rng = random.Random(3)
        for _ in range(60):
            X, k = [], rng.randint(2, 3)
            while len(X) < k:
                p = pair(*("".join(rng.choice("01") for _ in range(rng.randint(1, 3))) for _ in range(2)))
                if p not in X:
                    X.append(p)
            before = balanced_collision_search(GeneratorSet(X), 4)
            after = balanced_collision_search(GeneratorSet(pad_pairs_generator(X)), 4)
            assert before.is_witness == after.is_witness
            if before.is_witness:
                assert verify_double_factorization(pad_pairs_generator(X), before.witness)

    def test_closure(self):
        assert pad_generator_closure([Matrix.identity(2)]).closed
        assert pad_generator_closure([2]).added == 4
        assert str(pad_generator_closure(words(BINARY, "0", "1")).added) == "00"


class TestScalingAndProducts:
    def test_scale(self):
        n, Y = scale_to_integers([Matrix([["1/2", 0], [0, 1]]), Matrix([[1, "1/3"], [0, 1]])])
        assert n == 6 and all(m.is_integral() for m in Y)
        assert scale_to_integers(list(dt_family(Fraction(2, 3), Fraction(3, 5))))[0] == 15
        assert scale_to_integers([Matrix.identity(2), Matrix([[2, 0], [0, 1]])])[0] == 1

    def test_singleton_warns(self):
        with pytest.warns(SingletonWarning):
            scale_to_integers([Matrix([["1/2"]])])

    def test_product_with_constant(self):
        X = words(BINARY, "0", "1")
        Z = product_with_commutative(X, lambda x: 7)
        assert sardinas_patterson(X).is_code
        assert balanced_collision_search(GeneratorSet(Z), 6).is_exhausted

    def test_project_shared_first(self):
        w = BINARY.word("0")
        res = project_commutative([Pair(w, Additive(3)), Pair(w, Additive(5))])
        assert res.verdict.witness == DoubleFactorization((0, 1), (1, 0))

    def test_project_distinct(self):
        res = project_commutative([Pair(BINARY.word("0"), Additive(1)), Pair(BINARY.word("1"), Additive(2))])
        assert res.verdict is None and sardinas_patterson(res.elements).is_code

    def test_commutative_product_preserves_search_outcome(self):
        rng = random.Random(11)
        for _ in range(60):
            X = list({BINARY.word("".join(rng.choice("01") for _ in range(rng.randint(1, 3)))) for _ in range(3)})
            if len(X) < 2:
                continue
            Z = product_with_commutative(X, len)
            a = balanced_collision_search(GeneratorSet(X), 5)
            b = balanced_collision_search(GeneratorSet(Z), 5)
            assert a.is_witness == b.is_witness


class TestThreeByThree:
    def test_beta(self):
        assert [beta(BINARY.word(u)) for u in ("", "01", "011")] == [0, 2, 6]

    def test_phi_values(self):
        assert embed_pairs_to_mat3(pair("", "")) == Matrix.identity(3)
        assert embed_pairs_to_mat3(pair("0", "1")) == Matrix([[2, 0, 0], [0, 2, 1], [0, 0, 1]])

    @settings(max_examples=200)
    @given(*[st.text("01", max_size=6)] * 4)
    def test_phi_is_an_injective_morphism(self, u1, v1, u2, v2):
        p, q = pair(u1, v1), pair(u2, v2)
        assert embed_pairs_to_mat3(p * q) == embed_pairs_to_mat3(p) * embed_pairs_to_mat3(q)
        assert decode_mat3(embed_pairs_to_mat3(p)) == p

    def test_decode_off_image(self):
        with pytest.raises(DecodeError):
            decode_mat3(Matrix([[3, 0, 0], [0, 1, 0], [0, 0, 1]]))
        with pytest.raises(DecodeError):
            decode_mat3(Matrix([[2, 0, 2], [0, 1, 0], [0, 0, 1]]))


class TestDimension:
    def test_naturals(self):
        X = dim_reduce_2x2([2, 3, 6])
        M, N = X
        assert M == Matrix([[0, 2], [1, 0]]) and N == Matrix([[0, 6], [0, 3]])
        assert M * M == Matrix([[2, 0], [0, 2]])
        assert verify_double_factorization(X, DoubleFactorization((1, 0, 0, 1), (1, 0, 1)))

    def test_cardinality(self):
        with pytest.raises(WrongCardinality):
            dim_reduce_2x2([1, 2])

    def test_blocks(self):
        rng = random.Random(1)
        mats = [Matrix([[rng.randint(0, 2) for _ in range(3)] for _ in range(3)]) for _ in range(13)]
        X = dim_reduce_2x2(mats)
        assert len(X) == 7 and all(m.dim == 6 for m in X)
        M = X[0]
        sq = M * M
        assert Matrix([r[:3] for r in sq.rows[:3]]) == mats[0]

    def test_pad_dimension(self):
        assert embed_pad_dimension(Matrix([[2]])) == Matrix([[2, 0], [0, 1]])
        assert embed_pad_dimension(Matrix.identity(3)) == Matrix.identity(4)

    @settings(max_examples=100)
    @given(*[st.lists(st.lists(st.integers(-2, 2), min_size=2, max_size=2), min_size=2, max_size=2)] * 2)
    def test_pad_dimension_is_multiplicative(self, a, b):
        A, B = Matrix(a), Matrix(b)
        assert embed_pad_dimension(A * B) == embed_pad_dimension(A) * embed_pad_dimension(B)


def test_multi_char_words_print_with_spaces():
    w = Word((0, 1), Alphabet(("d0", "e")))
    assert str(w) == "d0 e"
