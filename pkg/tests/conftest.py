import random

import pytest

from flowering.cayley import blossoming_cayley, gen_set_full
from flowering.field import PrimeField
from flowering.graph_code import GraphCode
from flowering.reed_solomon import RSCode
from flowering.rim_graph import RIM


@pytest.fixture(scope="session")
def t1():
    """The tiny canonical instance: Cay(F_2^2, {01,10,11}), RS[3,2] over F_5."""
    field = PrimeField(5)
    gens = gen_set_full(2)
    seq = blossoming_cayley(2, gens)
    rs = RSCode.with_default_points(field, 3, 2)
    return {
        "field": field,
        "gens": gens,
        "seq": seq,
        "rs": rs,
        "code": GraphCode(seq.graphs[0], rs),
    }


def random_rim(rng: random.Random, num_vertices: int, n: int, petal_prob: float = 0.3) -> RIM:
    """Random valid RIM: each index is a random involution on the vertices
    (a matching with fixed points, i.e. petals)."""
    adj = [[0] * n for _ in range(num_vertices)]
    for l in range(n):
        order = list(range(num_vertices))
        rng.shuffle(order)
        while order:
            v = order.pop()
            if not order or rng.random() < petal_prob:
                adj[v][l] = v
            else:
                w = order.pop()
                adj[v][l] = w
                adj[w][l] = v
    return RIM(n, adj)


def random_word(rng: random.Random, graph: RIM, field: PrimeField):
    from flowering.graph_code import Word

    return Word(graph, field, [field.sample(rng) for _ in range(graph.classes.num_classes)])
