import numpy as np
import pytest

from braidfield import braid, trig
from braidfield.braid import BraidWord, closure_permutation, parse_braid
from braidfield.trig import (BraidParametrization, ConstructionError,
                             TrigPolynomial, build_parametrization,
                             figure_eight_paper, interpolate,
                             sample_strand_paths, validate)


class TestTrigPolynomial:
    def test_constant_samples(self):
        poly = TrigPolynomial.from_samples([2.5] * 7)
        assert set(poly.coeffs) == {0}
        assert poly.coeffs[0] == pytest.approx(2.5)

    def test_cosine_samples_give_half_coefficients(self):
        ts = 2 * np.pi * np.arange(9) / 9
        poly = TrigPolynomial.from_samples(np.cos(ts))
        assert poly.coeffs[1] == pytest.approx(0.5, abs=1e-12)
        assert poly.coeffs[-1] == pytest.approx(0.5, abs=1e-12)
        others = {k: c for k, c in poly.coeffs.items() if abs(k) != 1}
        assert all(abs(c) < 1e-12 for c in others.values())

    def test_even_sample_count_rejected(self):
        with pytest.raises(ValueError, match="odd"):
            TrigPolynomial.from_samples([0.0, 1.0, 0.0, -1.0])

    def test_interpolation_reproduces_nodes(self):
        rng = np.random.default_rng(3)
        vals = rng.normal(size=21)
        poly = TrigPolynomial.from_samples(vals)
        ts = 2 * np.pi * np.arange(21) / 21
        assert np.abs(poly(ts) - vals).max() < 1e-10 * max(1, np.abs(vals).max())

    def test_real_valuedness_on_dense_grid(self):
        rng = np.random.default_rng(4)
        poly = TrigPolynomial.from_samples(rng.normal(size=31))
        ts = np.linspace(0, 2 * np.pi, 1000)
        vals = poly.eval_complex(ts)
        assert np.abs(vals.imag).max() <= 1e-10 * (1 + np.abs(vals.real).max())
        assert poly.conjugate_symmetry_error() < 1e-14


class TestStrandSamples:
    def test_single_letter_two_strands(self):
        samples = sample_strand_paths(parse_braid("1"))
        # closure of sigma_1 is a single component through both strands
        assert len(samples.xs) == 1
        assert len(samples.xs[0]) % 2 == 1
        # cycle traverses both positions: x values cross between the levels
        assert samples.xs[0].min() < -0.4 and samples.xs[0].max() > 0.2

    def test_empty_word_constant_paths(self):
        samples = sample_strand_paths(BraidWord(1))
        assert len(samples.xs) == 1
        assert np.allclose(samples.xs[0], 0.0)
        assert np.allclose(samples.ys[0], 0.0)

    def test_figure_eight_word_structure(self):
        b = parse_braid("1 -2 1 -2")
        samples = sample_strand_paths(b)
        assert len(samples.xs) == 1  # one component
        param = interpolate(samples)
        assert param.strands == 3

    def test_samples_per_letter_floor(self):
        with pytest.raises(ValueError, match=">= 4"):
            sample_strand_paths(parse_braid("1"), samples_per_letter=3)


class TestInterpolation:
    def test_degree_capped_at_component_bound(self):
        b = parse_braid("1 -2 1 -2")
        param, _ = build_parametrization(b)
        cap = trig.per_component_degree_cap(b, 3)
        assert cap == 22
        comp = param.components[0]
        assert max(comp.fx.degree, comp.fy.degree) <= cap

    def test_period_consistency_cycle_shift(self):
        b = parse_braid("1 -2 1 -2")
        param, _ = build_parametrization(b)
        comp = param.components[0]
        for j in range(1, comp.strand_count + 1):
            end = comp.strand_point(j, 2 * np.pi)
            nxt = comp.strand_point(j + comp.winding, 0.0)
            assert abs(end - nxt) < 1e-9


class TestValidate:
    def test_golden_figure_eight_accepted_directly(self):
        word, param = figure_eight_paper()
        report = validate(param, 2048)
        assert report.valid
        assert report.readout.word.letters == word.letters
        assert report.readout.permutation == closure_permutation(word)
        assert report.readout.word.exponent_sum == 0

    def test_constant_single_strand_empty_readout(self):
        param, report = build_parametrization(BraidWord(1))
        assert report.readout.word.length == 0
        assert report.min_separation == np.inf

    def test_single_positive_crossing(self):
        param, report = build_parametrization(parse_braid("1"))
        assert report.readout.word.letters == ((1, 1),)

    def test_min_separation_positive(self):
        for text in ("1 1 1", "1 -2 1 -2", "1 1"):
            _, report = build_parametrization(parse_braid(text))
            assert report.min_separation > 1e-3


class TestOracleEquality:
    @pytest.mark.parametrize("text,strands", [
        ("1", None), ("1 1", None), ("1 1 1", None), ("1 -2 1 -2", None),
        ("1 2 -1 3 2 2", None), ("1 -1", 3), ("2 2 -1", None),
    ])
    def test_readout_matches_word(self, text, strands):
        b = parse_braid(text, strands)
        _, report = build_parametrization(b)
        assert report.readout.matches(b)

    def test_random_corpus(self):
        rng = np.random.default_rng(99)
        for _ in range(15):
            s = int(rng.integers(2, 5))
            letters = tuple((int(rng.integers(1, s)), int(rng.choice([-1, 1])))
                            for _ in range(int(rng.integers(1, 7))))
            b = BraidWord(s, letters)
            _, report = build_parametrization(b)
            assert report.readout.matches(b), b


def test_parametrization_json_round_trip():
    _, param = figure_eight_paper()
    again = BraidParametrization.from_json(param.to_json())
    ts = np.linspace(0, 2 * np.pi, 50)
    assert np.allclose(again.points(ts), param.points(ts))
