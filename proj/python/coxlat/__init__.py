"""Chamber complexes, complexes of groups, and exact covolumes for
Coxeter systems.

The heavy lifting lives in the C++ extension ``coxlat._core``; this package
wraps it with ordinary Python types (dicts, lists, ints).
"""

import json as _json

from ._core import (  # noqa: F401
    CoxeterSystem,
    ParseError,
    ResourceError,
    word_reduce,
    words_equal,
    enumerate_order,
    halving_order,
)

__all__ = [
    "CoxeterSystem",
    "ParseError",
    "ResourceError",
    "parse_system",
    "catalog",
    "word_reduce",
    "words_equal",
    "is_spherical",
    "enumerate_order",
    "halving_order",
    "nerve",
    "find_witnesses",
    "check",
    "build",
    "verify",
    "covolume",
    "catalog_list",
]

from . import _core


def parse_system(text):
    """Parse a Coxeter system document (``generators:`` plus ``m s t = k``)."""
    return CoxeterSystem.parse(text)


def catalog(spec):
    """Build a catalog system such as ``petersen(4)``."""
    return CoxeterSystem.from_catalog(spec)


def is_spherical(system, members):
    """Classification of a generator subset, or None when infinite.

    Returns ``{"order": int, "components": [{"type", "rank", "members"}]}``.
    """
    data = _json.loads(_core.is_spherical_json(system, list(members)))
    if data is None:
        return None
    data["order"] = int(data["order"])
    return data


def nerve(system):
    """Nerve summary: generator count, edge count, and simplex list."""
    return _json.loads(_core.nerve_json(system))


def find_witnesses(system):
    """Witness quadruples (s1, s2, alpha1, alpha2), in search order."""
    return _json.loads(_core.witnesses_json(system))


def _run(command, system=None, catalog=None, path=None, n=1, n_max=1,
         witness=0):
    sources = sum(x is not None for x in (system, catalog, path))
    if command != "catalog-list" and sources != 1:
        raise ValueError("pass exactly one of system=, catalog=, path=")
    report = _core.run_json(
        command,
        system_path=path or "",
        catalog=catalog or "",
        n=n,
        n_max=n_max,
        witness=witness,
        system_text=system or "",
    )
    return _json.loads(report)


def check(system=None, catalog=None, path=None):
    """Nerve statistics, nondiscreteness, witnesses, halvability table."""
    return _run("check", system, catalog, path)


def build(n, system=None, catalog=None, path=None, witness=0):
    """Build Y_n and G(Y_n); returns counts and the dual graph."""
    return _run("build", system, catalog, path, n=n, witness=witness)


def verify(n, system=None, catalog=None, path=None, witness=0):
    """Run every axiom suite at truncation level n."""
    return _run("verify", system, catalog, path, n=n, witness=witness)


def covolume(n_max, system=None, catalog=None, path=None, witness=0):
    """Exact covolume table for n = 1..n_max."""
    return _run("covolume", system, catalog, path, n_max=n_max,
                witness=witness)


def catalog_list():
    """The built-in nerve catalog."""
    return _run("catalog-list")["tables"]["catalog"]
