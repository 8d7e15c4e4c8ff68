import numpy as np
import pytest

from braidfield import braid
from braidfield.braid import (BraidError, BraidWord, closure_permutation,
                              components, parse_braid, word_invariants)


def test_parse_figure_eight_word():
    b = parse_braid("1 -2 1 -2")
    assert b.strands == 3
    assert b.length == 4
    assert b.letters == ((1, 1), (2, -1), (1, 1), (2, -1))


def test_parse_empty_word_explicit_strands():
    b = parse_braid("", strands=1)
    assert b.strands == 1 and b.length == 0


def test_parse_trefoil():
    b = parse_braid("1 1 1")
    assert b.strands == 2 and b.length == 3


@pytest.mark.parametrize("text,strands,err", [
    ("1 x 2", None, "non-integer"),
    ("0", None, "not a braid letter"),
    ("3", 2, "out of range"),
    ("", None, "explicit strand count"),
])
def test_parse_errors(text, strands, err):
    with pytest.raises(BraidError, match=err):
        parse_braid(text, strands)


def test_closure_permutation_figure_eight():
    # composing (12)(23)(12)(23) in word order: 1->3, 2->1, 3->2 (1-based)
    b = parse_braid("1 -2 1 -2")
    assert closure_permutation(b) == (2, 0, 1)


def test_closure_permutation_trivial_and_trefoil():
    assert closure_permutation(BraidWord(3)) == (0, 1, 2)
    assert closure_permutation(parse_braid("1 1 1")) == (1, 0)


def test_components_examples():
    assert components(parse_braid("1 -2 1 -2")).strand_counts == (3,)
    two = components(parse_braid("1 1"))
    assert two.count == 2 and two.strand_counts == (1, 1)
    assert components(BraidWord(3)).count == 3


def test_word_invariants_examples():
    assert word_invariants(parse_braid("1 -2 1 -2")).exponent_sum == 0
    hopf = word_invariants(parse_braid("1 1"))
    assert hopf.linking_matrix == ((0, 1), (1, 0))
    empty = word_invariants(BraidWord(4))
    assert empty.exponent_sum == 0
    assert not empty.linking_array().any()


def _random_word(rng, s_max=5, l_max=8):
    s = int(rng.integers(2, s_max + 1))
    ell = int(rng.integers(0, l_max + 1))
    letters = tuple((int(rng.integers(1, s)), int(rng.choice([-1, 1])))
                    for _ in range(ell))
    return BraidWord(s, letters)


def test_concatenation_composes_permutations():
    rng = np.random.default_rng(0)
    for _ in range(200):
        s = int(rng.integers(2, 6))
        w1 = BraidWord(s, _random_word(rng, s, 6).letters[:0] or ())
        w1 = BraidWord(s, tuple((int(rng.integers(1, s)), int(rng.choice([-1, 1])))
                                for _ in range(int(rng.integers(0, 7)))))
        w2 = BraidWord(s, tuple((int(rng.integers(1, s)), int(rng.choice([-1, 1])))
                                for _ in range(int(rng.integers(0, 7)))))
        p1 = closure_permutation(w1)
        p2 = closure_permutation(w2)
        combined = closure_permutation(w1 * w2)
        assert combined == tuple(p1[p2[x]] for x in range(s))


def test_component_partition_property():
    rng = np.random.default_rng(1)
    for _ in range(200):
        b = _random_word(rng)
        comp = components(b)
        assert sum(comp.strand_counts) == b.strands
        assert sorted(x for cyc in comp.cycles for x in cyc) == list(range(b.strands))


def test_linking_matrix_symmetric_zero_diagonal():
    rng = np.random.default_rng(2)
    for _ in range(200):
        b = _random_word(rng)
        lk = word_invariants(b).linking_array()
        assert (lk == lk.T).all()
        assert not lk.diagonal().any()


def test_json_round_trip(tmp_path):
    b = parse_braid("1 -2 1 -2")
    again = BraidWord.from_json(b.to_json())
    assert again == b
    path = tmp_path / "w.json"
    path.write_text('{"strands": 3, "letters": [[1, 1], [2, -1]]}')
    assert braid.load_braid(str(path)).letters == ((1, 1), (2, -1))
    path2 = tmp_path / "w.txt"
    path2.write_text("1 -2 1 -2\n")
    assert braid.load_braid(str(path2)) == b
