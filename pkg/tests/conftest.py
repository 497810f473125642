import pytest

from spohn import OCF, InfluenceDiagram, SpohnianNetwork, StateSpace, Variable

SPECIES = Variable("species", ("PENGUIN", "TYPICAL-BIRD", "NOT-BIRD"))
FLIGHT = Variable("flight", ("FLYS", "NOT-FLYS"))

# Ranking columns for the bird scenario, states in (species, flight) order
# with flight fastest. PRIOR is the starting table; the other two follow
# after learning "it's a bird" (strength 1) and then "it's a penguin"
# (strength 1).
PRIOR = (2, 1, 0, 1, 0, 0)
AFTER_BIRD = (2, 1, 0, 1, 1, 1)
AFTER_PENGUIN = (1, 0, 1, 2, 2, 2)


@pytest.fixture
def penguin_space():
    return StateSpace((SPECIES, FLIGHT))


@pytest.fixture
def prior(penguin_space):
    return OCF(penguin_space, PRIOR)


@pytest.fixture
def penguin_net():
    dia = InfluenceDiagram((SPECIES, FLIGHT), (("species", "flight"),))
    return SpohnianNetwork(
        dia,
        {
            "species": OCF(StateSpace((SPECIES,)), (1, 0, 0)),
            "flight": OCF(StateSpace((SPECIES, FLIGHT)), PRIOR),
        },
    )


def _bool_var(name):
    return Variable(name, (name.lower() + "0", name.lower() + "1"))


@pytest.fixture
def five_node_net():
    """A -> B, B -> D, C -> D, C -> E; tables built family-factorized so the
    joint decomposes exactly."""
    a, b, c, d, e = (_bool_var(n) for n in "ABCDE")
    dia = InfluenceDiagram(
        (a, b, c, d, e),
        (("A", "B"), ("B", "D"), ("C", "D"), ("C", "E")),
    )
    return SpohnianNetwork(
        dia,
        {
            "A": OCF(StateSpace((a,)), (0, 1)),
            "B": OCF(StateSpace((a, b)), (0, 2, 2, 1)),
            "C": OCF(StateSpace((c,)), (0, 3)),
            "D": OCF(StateSpace((b, c, d)), (0, 1, 5, 3, 1, 1, 5, 4)),
            "E": OCF(StateSpace((c, e)), (0, 2, 3, 4)),
        },
    )
