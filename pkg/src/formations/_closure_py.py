"""Pure-Python closure kernel, batched through numpy.

Same contract as the compiled twin in _closure.pyx: BFS over the Cayley
table from the identity, returning the generated subgroup as a packed
little-endian bitmask.
"""

import numpy as np


def closure_packed(table, gens) -> bytes:
    n = table.shape[0]
    flags = np.zeros(n, dtype=bool)
    flags[0] = True
    if len(gens) == 0:
        return np.packbits(flags, bitorder="little").tobytes()
    garr = np.asarray(gens, dtype=np.int32)
    frontier = np.array([0], dtype=np.int32)
    while frontier.size:
        prods = table[np.ix_(frontier, garr)].ravel()
        prods = np.unique(prods)
        new = prods[~flags[prods]]
        flags[new] = True
        frontier = new.astype(np.int32)
    return np.packbits(flags, bitorder="little").tobytes()
