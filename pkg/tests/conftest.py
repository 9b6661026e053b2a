import pytest

from formations.dsl import parse_group


@pytest.fixture(scope="session")
def groups():
    """Shared small groups; session scope so lattices are computed once."""
    names = ["S3", "S4", "A4", "A5", "D8", "Q8", "SL23", "Frob21", "C6", "C12",
             "V4", "S3 x C5"]
    return {n: parse_group(n) for n in names}


def table_of(g):
    return [[int(x) for x in row] for row in g.table]
