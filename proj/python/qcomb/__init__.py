"""Quantum combinatorial structures built by biunitary composition.

Structures are validated on construction: ``Hadamard``, ``QLS`` and ``UEB``
wrap numpy arrays of shape (n, n), (n, n, n) and (n*n, n, n). Indices are
0-based here; files written by ``dumps`` use 1-based labels.
"""

from pathlib import Path

from ._qcomb import *  # noqa: F401,F403
from ._qcomb import dumps, loads


def save(structure, path):
    Path(path).write_text(dumps(structure))


def load(path, tol=None):
    text = Path(path).read_text()
    return loads(text) if tol is None else loads(text, tol)
