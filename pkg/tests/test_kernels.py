"""Backend equivalence: the compiled closure kernel and the pure-Python
fallback must return identical bitmasks on identical inputs."""

import random

from formations import kernels
from formations.dsl import parse_group
from formations.groups import packed_to_bits


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


def test_kernels_agree_on_random_seeds(groups):
    rng = random.Random(7)
    for name in ("S4", "SL23", "Frob21", "A5", "C12"):
        g = groups.get(name) or parse_group(name)
        for _ in range(25):
            k = rng.randint(0, 3)
            seed = [rng.randrange(g.order) for _ in range(k)]
            fast = kernels.closure_packed(g.table, seed)
            pure = kernels.pure_closure_packed(g.table, seed)
            assert fast == pure, (name, seed)


def test_empty_seed_gives_identity(groups):
    g = groups["S4"]
    assert packed_to_bits(kernels.closure_packed(g.table, [])) == 1
    assert packed_to_bits(kernels.pure_closure_packed(g.table, [])) == 1


def test_full_group_closure(groups):
    g = groups["S3"]
    bits = packed_to_bits(kernels.closure_packed(g.table, list(g.generators)))
    assert bits == g.full_bits()
