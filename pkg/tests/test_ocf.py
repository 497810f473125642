import random

import pytest

from spohn import INF, NEG_INF, OCF, Proposition, StateSpace, Variable
from spohn.errors import (
    EmptyCondition,
    EmptyProposition,
    FullProposition,
    ImpossibleEvidence,
    SpaceMismatch,
)

from conftest import AFTER_BIRD, AFTER_PENGUIN, FLIGHT, PRIOR, SPECIES
from generators import random_ocf


def bird(space):
    return Proposition.constrain(space, {"species": ("PENGUIN", "TYPICAL-BIRD")})


def penguin(space):
    return Proposition.constrain(space, {"species": ("PENGUIN",)})


def flys(space):
    return Proposition.constrain(space, {"flight": ("FLYS",)})


class TestStateSpace:
    def test_states_enumerate_last_variable_fastest(self, penguin_space):
        states = list(penguin_space.states())
        assert states[0] == ("PENGUIN", "FLYS")
        assert states[1] == ("PENGUIN", "NOT-FLYS")
        assert states[2] == ("TYPICAL-BIRD", "FLYS")
        assert len(states) == 6

    def test_index_of_inverts_state_at(self, penguin_space):
        for i in range(penguin_space.size):
            assert penguin_space.index_of(penguin_space.state_at(i)) == i

    def test_index_of_accepts_mappings(self, penguin_space):
        i = penguin_space.index_of({"flight": "NOT-FLYS", "species": "NOT-BIRD"})
        assert penguin_space.state_at(i) == ("NOT-BIRD", "NOT-FLYS")

    def test_domain_needs_at_least_two_values(self):
        with pytest.raises(ValueError):
            Variable("X", ("only",))
        with pytest.raises(ValueError):
            Variable("X", ("a", "a"))

    def test_projection_maps_onto_the_subspace(self, penguin_space):
        proj = penguin_space.projection(("flight",))
        sub = penguin_space.subspace(("flight",))
        for i in range(penguin_space.size):
            assert sub.state_at(proj[i]) == (penguin_space.state_at(i)[1],)


class TestProposition:
    def test_set_algebra(self, penguin_space):
        b = bird(penguin_space)
        f = flys(penguin_space)
        assert (b & f).count() == 2
        assert (b | f).count() == 5
        assert (~b).count() == 2
        assert (b & ~b).is_empty
        assert (b | ~b).is_full

    def test_constrain_on_unknown_value_raises(self, penguin_space):
        with pytest.raises(Exception):
            Proposition.constrain(penguin_space, {"species": ("DOG",)})

    def test_mixed_space_operations_raise(self, penguin_space):
        other = StateSpace((SPECIES,))
        with pytest.raises(SpaceMismatch):
            bird(penguin_space) & Proposition.full(other)


class TestWorkedExample:
    """The bird/penguin revision sequence, column by column."""

    def test_prior_column_is_a_valid_ranking(self, prior):
        assert min(prior.ranks) == 0

    def test_learning_bird_then_penguin(self, prior, penguin_space):
        after_bird = prior.revise(bird(penguin_space), 1)
        assert after_bird.ranks == AFTER_BIRD
        after_penguin = after_bird.revise(penguin(penguin_space), 1)
        assert after_penguin.ranks == AFTER_PENGUIN

    def test_beliefs_along_the_way(self, prior, penguin_space):
        f = flys(penguin_space)
        after_bird = prior.revise(bird(penguin_space), 1)
        assert after_bird.is_believed(f)
        assert after_bird.belief_strength(f) == 1
        after_penguin = after_bird.revise(penguin(penguin_space), 1)
        assert after_penguin.is_believed(~f)
        assert after_penguin.belief_strength(~f) == 1
        assert after_penguin.belief_strength(f) == -1

    def test_prior_is_agnostic_about_flight(self, prior, penguin_space):
        f = flys(penguin_space)
        assert not prior.is_believed(f)
        assert not prior.is_believed(~f)
        assert prior.belief_strength(f) == 0


class TestBelief:
    def test_rank_zero_proposition_can_still_be_unbelieved(self, prior, penguin_space):
        # FLYS has rank 0 but so does NOT-FLYS; neither is believed
        f = flys(penguin_space)
        assert prior.rank_of(f) == 0
        assert not prior.is_believed(f)

    def test_impossible_proposition_has_strength_neg_inf(self):
        x = Variable("X", ("a", "b", "c"))
        space = StateSpace((x,))
        k = OCF(space, (0, 1, INF))
        c = Proposition.constrain(space, {"X": ("c",)})
        assert k.belief_strength(c) is NEG_INF
        assert k.rank_of(c) is INF

    def test_full_and_empty_have_no_strength(self, prior, penguin_space):
        with pytest.raises(FullProposition):
            prior.belief_strength(Proposition.full(penguin_space))
        with pytest.raises(EmptyProposition):
            prior.belief_strength(Proposition.empty(penguin_space))

    def test_the_full_space_is_always_believed(self, prior, penguin_space):
        assert prior.is_believed(Proposition.full(penguin_space))


class TestRevision:
    def test_learning_the_full_space_changes_nothing(self, prior, penguin_space):
        assert prior.revise(Proposition.full(penguin_space), 3) == prior

    def test_min_of_the_posterior_is_zero(self, prior, penguin_space):
        for strength in (0, 1, 5):
            post = prior.revise(penguin(penguin_space), strength)
            assert min(post.ranks) == 0

    def test_posterior_complement_rank_equals_the_strength(self, prior, penguin_space):
        p = penguin(penguin_space)
        for strength in (0, 1, 4):
            post = prior.revise(p, strength)
            assert post.rank_of(~p) == strength
            assert post.rank_of(p) == 0

    def test_certain_revision_excludes_the_complement(self, prior, penguin_space):
        p = penguin(penguin_space)
        post = prior.revise(p, INF)
        assert post.ranks == (1, 0, INF, INF, INF, INF)
        assert post == prior.revise_certain(p)

    def test_impossible_states_stay_impossible(self):
        x = Variable("X", ("a", "b", "c"))
        space = StateSpace((x,))
        k = OCF(space, (0, 2, INF))
        not_c = Proposition.constrain(space, {"X": ("a", "b")})
        post = k.revise(not_c, 7)
        # complement already at inf: no finite strength can bring it back
        assert post.ranks == (0, 2, INF)

    def test_learning_a_ruled_out_proposition_raises(self):
        x = Variable("X", ("a", "b"))
        space = StateSpace((x,))
        k = OCF(space, (0, INF))
        b = Proposition.constrain(space, {"X": ("b",)})
        with pytest.raises(ImpossibleEvidence):
            k.revise(b, 3)
        with pytest.raises(ImpossibleEvidence):
            k.revise_certain(b)

    def test_negative_strength_is_the_complement_lesson(self, prior, penguin_space):
        p = penguin(penguin_space)
        assert prior.revise(p, -2) == prior.revise(~p, 2)
        assert prior.revise(p, NEG_INF) == prior.revise_certain(~p)

    def test_reversibility(self, penguin_space):
        rng = random.Random(11)
        p = bird(penguin_space)
        for _ in range(50):
            k1 = random_ocf(rng, penguin_space)
            alpha = rng.randint(0, 6)
            k2 = k1.revise(p, alpha)
            back = k2.revise(~p, k1.belief_strength(~p))
            assert back == k1

    def test_commutes_for_independent_variables(self):
        rng = random.Random(12)
        x = Variable("X", ("a", "b", "c"))
        y = Variable("Y", ("u", "v"))
        space = StateSpace((x, y))
        for _ in range(50):
            fx = [rng.randint(0, 5) for _ in x.domain]
            gy = [rng.randint(0, 5) for _ in y.domain]
            fx[rng.randrange(3)] = 0
            gy[rng.randrange(2)] = 0
            k = OCF(space, tuple(fx[i] + gy[j] for i in range(3) for j in range(2)))
            a = Proposition.constrain(space, {"X": ("a",)})
            b = Proposition.constrain(space, {"Y": ("v",)})
            s, t = rng.randint(0, 4), rng.randint(0, 4)
            assert k.revise(a, s).revise(b, t) == k.revise(b, t).revise(a, s)

    def test_empty_proposition_cannot_be_learned(self, prior, penguin_space):
        with pytest.raises(EmptyProposition):
            prior.revise(Proposition.empty(penguin_space), 1)


class TestConditionalRank:
    def test_matches_the_subtraction_definition(self, prior, penguin_space):
        p = penguin(penguin_space)
        f = flys(penguin_space)
        assert prior.cond_rank(f, p) == prior.rank_of(f & p) - prior.rank_of(p)

    def test_incompatible_pair_is_inf(self):
        x = Variable("X", ("a", "b"))
        space = StateSpace((x,))
        k = OCF(space, (0, 1))
        a = Proposition.constrain(space, {"X": ("a",)})
        assert k.cond_rank(~a, a) is INF

    def test_conditioning_on_the_impossible_raises(self):
        x = Variable("X", ("a", "b"))
        space = StateSpace((x,))
        k = OCF(space, (0, INF))
        b = Proposition.constrain(space, {"X": ("b",)})
        with pytest.raises(EmptyCondition):
            k.cond_rank(b, b)
        with pytest.raises(EmptyCondition):
            k.cond_rank(b, Proposition.empty(space))


class TestMarginalize:
    def test_keeps_the_best_rank_per_reduced_state(self, prior):
        m = prior.marginalize(("species",))
        assert m.ranks == (1, 0, 0)
        m2 = prior.marginalize(("flight",))
        assert m2.ranks == (0, 0)

    def test_name_order_is_canonicalized(self, prior):
        assert prior.marginalize(("flight", "species")) is prior

    def test_projection_of_everything_is_identity(self, prior):
        assert prior.marginalize(("species", "flight")) is prior


class TestIndependence:
    def test_additive_tables_make_variables_independent(self):
        x = Variable("X", ("a", "b"))
        y = Variable("Y", ("u", "v", "w"))
        space = StateSpace((x, y))
        k = OCF(space, tuple(i + j for i in (0, 2) for j in (0, 1, 3)))
        assert k.is_independent("X", "Y")

    def test_coupled_tables_are_dependent(self, prior):
        # penguins mostly do not fly; species and flight are linked
        assert not prior.is_independent("species", "flight")

    def test_overlapping_arguments_raise(self, prior):
        with pytest.raises(ValueError):
            prior.is_independent("species", "species")
        with pytest.raises(ValueError):
            prior.is_independent("species", "flight", ("species",))


def test_ocf_constructor_rejects_bad_tables(penguin_space):
    with pytest.raises(ValueError):
        OCF(penguin_space, (1, 1, 1, 1, 1, 1))  # no zero
    with pytest.raises(ValueError):
        OCF(penguin_space, (0, 1, 2))  # wrong length
    with pytest.raises(ValueError):
        OCF(penguin_space, (0, 1, 2, 3, 4, -1))  # negative
    with pytest.raises(ValueError):
        OCF(penguin_space, (0, 1, 2, 3, 4, 1.5))  # float
