import pytest

from core.errors import InvalidInput
from core.parser import parse_phi
from analytics.search import counterexample_search, monomial_basis

T2 = parse_phi("t^2")


class TestSearch:
    def test_constants_always_pass(self):
        result = counterexample_search(T2, (0, 0), [-1, 0, 1], 6)
        assert result.candidates == 3
        assert result.hypothesis_passed == 3
        assert result.hits == ()

    def test_zero_pool(self):
        result = counterexample_search(T2, (2, 2), [0], 6)
        assert result.candidates == 1
        assert result.hypothesis_passed == 1
        assert result.hits == ()

    def test_small_box(self):
        result = counterexample_search(T2, (1, 1), [-1, 0, 1], 5)
        assert result.candidates == 81
        assert result.hits == ()
        assert result.seed is None

    def test_sampled_mode_is_seeded(self):
        first = counterexample_search(T2, (2, 2), [-1, 0, 1], 4, samples=40, seed=7)
        second = counterexample_search(T2, (2, 2), [-1, 0, 1], 4, samples=40, seed=7)
        assert first == second
        assert first.seed == 7
        assert first.candidates <= 40

    def test_search_space_limit(self):
        with pytest.raises(InvalidInput):
            counterexample_search(T2, (5, 5), range(-2, 3), 4)

    def test_invalid_arguments(self):
        with pytest.raises(InvalidInput):
            counterexample_search(T2, (-1, 2), [0, 1], 4)
        with pytest.raises(InvalidInput):
            counterexample_search(T2, (1, 1), [], 4)

    def test_basis(self):
        basis = monomial_basis(1, 2)
        assert len(basis) == 6
        assert all(len(q) == 1 for q in basis)

    @pytest.mark.slow
    def test_exhaustive_box_is_empty(self):
        result = counterexample_search(T2, (2, 2), [-1, 0, 1], 6)
        assert result.candidates == 3 ** 9
        assert result.hypothesis_passed > 0
        assert result.hits == ()
