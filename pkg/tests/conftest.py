import random

import pytest

from twistgrowth.files import data_path, load_endo, load_gens, load_group
from twistgrowth.group import GroupElement
from twistgrowth.growth import GeneratingSet


def load(group, *endos):
    G = load_group(data_path(f"{group}.json"))
    return (G, *(load_endo(G, data_path(f"{e}.json")) for e in endos))


@pytest.fixture(scope="session")
def p2():
    """Z^2 x| C2 with t acting as -I, and its three worked endomorphisms."""
    G, phi1, ident, phi3 = load("p2_group", "p2_phi1", "p2_id", "p2_phi3")
    return {"G": G, "phi1": phi1, "id": ident, "phi3": phi3}


@pytest.fixture(scope="session")
def p2_gens(p2):
    G = p2["G"]
    return GeneratingSet.from_elements(G, load_gens(G, data_path("p2_gens.json")))


@pytest.fixture(scope="session")
def p2_gens_alt(p2):
    G = p2["G"]
    return GeneratingSet.from_elements(G, load_gens(G, data_path("p2_gens_alt.json")))


# every (group, endomorphism) pair shipped with the package
PAIRS = [
    ("p2_group", "p2_phi1"), ("p2_group", "p2_id"), ("p2_group", "p2_phi3"),
    ("z2_group", "z2_rotation"),
    ("z2xc2_group", "z2xc2_rotation"), ("z2xc2_group", "z2xc2_collapse"),
    ("klein_group", "klein_id"), ("klein_group", "klein_stretch"),
    ("p4_group", "p4_rotation"), ("p4_group", "p4_double"),
]


@pytest.fixture(scope="session", params=PAIRS, ids=[e for _, e in PAIRS])
def pair(request):
    return load(*request.param)


def random_element(G, rng: random.Random, size: int = 6) -> GroupElement:
    return GroupElement(tuple(rng.randint(-size, size) for _ in range(G.n)), rng.randrange(G.m))
