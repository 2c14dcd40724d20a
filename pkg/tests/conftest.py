import pytest

from permword.oracle import build_table, ensure_parents


@pytest.fixture(scope="session")
def tables():
    """Shared oracle tables so BFS for a given n runs at most once per session."""
    cache: dict[int, object] = {}

    def get(n: int, parents: bool = False):
        table = cache.get(n)
        if table is None:
            table = build_table(n, with_parents=parents)
            cache[n] = table
        elif parents and table.parents is None:
            table = ensure_parents(table)
            cache[n] = table
        return table

    return get
