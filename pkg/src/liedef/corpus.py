"""Named example algebras with pinned answers.

Every entry records the properties the pipeline is expected to reproduce,
each tagged with where the answer comes from: "classical" for facts that are
standard for the named algebra, "computed" for values derived by the exact
pipeline itself (and frozen here as regression anchors).  Definability keys
are per presentation kind; "definable-finite-center-levi" is the abstract
kind with the finite-center assertion supplied.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputError
from .lie import LieAlgebra
from .linalg import Mat

CLASSICAL = "classical"
COMPUTED = "computed"


@dataclass(frozen=True)
class Known:
    value: object
    source: str


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    algebra: LieAlgebra
    matrices: tuple = ()
    known: dict = field(default_factory=dict)

    def known_value(self, key: str):
        return self.known[key].value


def _entry(name, dim, brackets, labels, known, matrices=()):
    alg = LieAlgebra.from_entries(dim, brackets, names=labels)
    mats = tuple(Mat(m) for m in matrices)
    return CorpusEntry(name, alg, mats,
                       {k: Known(v, s) for k, (v, s) in known.items()})


def _solvable_known(supersolvable, tbc, nilpotent, sc, others,
                    ss_src=CLASSICAL, tbc_src=COMPUTED):
    return {
        "solvable": (True, CLASSICAL),
        "nilpotent": (nilpotent, CLASSICAL),
        "supersolvable": (supersolvable, ss_src),
        "tbc": (tbc, tbc_src),
        "definable-simply-connected": (sc, COMPUTED),
        "definable-abstract": (others, COMPUTED),
        "definable-linear": (others, COMPUTED),
    }


def _semisimple_part_known(levi_definable="Definable"):
    return {
        "solvable": (False, CLASSICAL),
        "nilpotent": (False, CLASSICAL),
        "definable-simply-connected": ("Unknown", COMPUTED),
        "definable-abstract": ("Unknown", COMPUTED),
        "definable-linear": (levi_definable, COMPUTED),
        "definable-finite-center-levi": (levi_definable, COMPUTED),
    }


_E2_MATRICES = (
    ((0, 0, 1), (0, 0, 0), (0, 0, 0)),
    ((0, 0, 0), (0, 0, 1), (0, 0, 0)),
    ((0, -1, 0), (1, 0, 0), (0, 0, 0)),
)

_INTRO_MATRIX = (
    (1, 0, 0),
    (0, 0, -1),
    (0, 1, 0),
)


def _build():
    yes = _solvable_known(True, True, False, "Definable", "Definable")
    entries = [
        _entry("r1", 1, {}, ("x1",),
               _solvable_known(True, True, True, "Definable", "Definable")),
        _entry("r2", 2, {}, ("x1", "x2"),
               _solvable_known(True, True, True, "Definable", "Definable")),
        _entry("r3", 3, {}, ("x1", "x2", "x3"),
               _solvable_known(True, True, True, "Definable", "Definable")),
        _entry("axb", 2, {(0, 1): (0, 1)}, ("a", "x"), yes),
        _entry("h3", 3, {(0, 1): (0, 0, 1)}, ("x", "y", "z"),
               _solvable_known(True, True, True, "Definable", "Definable")),
        _entry("e2", 3, {(0, 2): (0, -1, 0), (1, 2): (1, 0, 0)},
               ("X", "Y", "R"),
               _solvable_known(False, True, False,
                               "NotDefinable", "Definable",
                               ss_src=COMPUTED),
               matrices=_E2_MATRICES),
        _entry("oscillator", 3,
               {(0, 2): (-1, -1, 0), (1, 2): (1, -1, 0)},
               ("x", "y", "a"),
               _solvable_known(False, False, False,
                               "NotDefinable", "NotDefinable",
                               ss_src=CLASSICAL, tbc_src=CLASSICAL)),
        _entry("sl2", 3,
               {(0, 1): (0, 2, 0), (0, 2): (0, 0, -2), (1, 2): (1, 0, 0)},
               ("h", "e", "f"), _semisimple_part_known()),
        _entry("so3", 3,
               {(0, 1): (0, 0, 1), (0, 2): (0, -1, 0), (1, 2): (1, 0, 0)},
               ("e1", "e2", "e3"), _semisimple_part_known()),
        _entry("gl2", 4,
               {(0, 1): (0, 2, 0, 0), (0, 2): (0, 0, -2, 0),
                (1, 2): (1, 0, 0, 0)},
               ("h", "e", "f", "I"), _semisimple_part_known()),
        _entry("sl2-semidirect-r2", 5,
               {(0, 1): (0, 2, 0, 0, 0), (0, 2): (0, 0, -2, 0, 0),
                (1, 2): (1, 0, 0, 0, 0), (0, 3): (0, 0, 0, 1, 0),
                (0, 4): (0, 0, 0, 0, -1), (1, 4): (0, 0, 0, 1, 0),
                (2, 3): (0, 0, 0, 0, 1)},
               ("h", "e", "f", "x", "y"), _semisimple_part_known()),
        _entry("so3-plus-e2", 6,
               {(0, 1): (0, 0, 1, 0, 0, 0), (0, 2): (0, -1, 0, 0, 0, 0),
                (1, 2): (1, 0, 0, 0, 0, 0), (3, 5): (0, 0, 0, 0, -1, 0),
                (4, 5): (0, 0, 0, 1, 0, 0)},
               ("e1", "e2", "e3", "X", "Y", "R"),
               _semisimple_part_known()),
        _entry("intro-example", 1, {}, ("t",),
               {"solvable": (True, CLASSICAL),
                "nilpotent": (True, CLASSICAL),
                "supersolvable": (True, CLASSICAL),
                "tbc": (True, CLASSICAL),
                "definable-simply-connected": ("Definable", COMPUTED),
                "definable-abstract": ("Definable", COMPUTED),
                "definable-linear": ("Definable", CLASSICAL)},
               matrices=(_INTRO_MATRIX,)),
        _entry("bianchi-I", 3, {}, ("e1", "e2", "e3"),
               _solvable_known(True, True, True, "Definable", "Definable")),
        _entry("bianchi-II", 3, {(1, 2): (1, 0, 0)}, ("e1", "e2", "e3"),
               _solvable_known(True, True, True, "Definable", "Definable")),
        _entry("bianchi-III", 3, {(0, 2): (1, 0, 0)}, ("e1", "e2", "e3"),
               yes),
        _entry("bianchi-IV", 3,
               {(0, 2): (1, 0, 0), (1, 2): (1, 1, 0)}, ("e1", "e2", "e3"),
               yes),
        _entry("bianchi-V", 3,
               {(0, 2): (1, 0, 0), (1, 2): (0, 1, 0)}, ("e1", "e2", "e3"),
               yes),
        _entry("bianchi-VI", 3,
               {(0, 2): (1, 0, 0), (1, 2): (0, -1, 0)}, ("e1", "e2", "e3"),
               yes),
        _entry("bianchi-VII0", 3,
               {(0, 2): (0, -1, 0), (1, 2): (1, 0, 0)}, ("e1", "e2", "e3"),
               _solvable_known(False, True, False,
                               "NotDefinable", "Definable",
                               ss_src=COMPUTED)),
        _entry("bianchi-VIIa", 3,
               {(0, 2): (2, -1, 0), (1, 2): (1, 2, 0)}, ("e1", "e2", "e3"),
               _solvable_known(False, False, False,
                               "NotDefinable", "NotDefinable",
                               ss_src=COMPUTED)),
    ]
    return tuple(entries)


_ENTRIES = _build()
_BY_NAME = {e.name: e for e in _ENTRIES}


def corpus() -> tuple:
    return _ENTRIES


def corpus_entry(name: str) -> CorpusEntry:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise InputError("no corpus entry named %r (try: %s)"
                         % (name, ", ".join(sorted(_BY_NAME))))


def write_corpus_files(dirpath: str):
    """Write every entry's algebra JSON into dirpath; returns the paths."""
    import os

    from .formats import save_algebra_file

    paths = []
    os.makedirs(dirpath, exist_ok=True)
    for e in _ENTRIES:
        path = os.path.join(dirpath, e.name + ".json")
        save_algebra_file(path, e.algebra, e.matrices or None)
        paths.append(path)
    return paths
