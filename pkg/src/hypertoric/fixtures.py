"""Built-in arrangements reconstructing the planar examples.

FIG2A/B/C are the three cooriented arrangements of four lines related by a
coorientation flip and a translation; the primed variants add a fifth line
parallel to the first. Coordinates are one choice of lattice basis.
"""

from .arrangement import Arrangement, flip_coorientation

_BASE_NORMALS = [(1, 1), (1, 0), (-1, 0), (0, -1)]


def fig2a():
    return Arrangement.from_data(_BASE_NORMALS, [1, 0, -2, -2], "FIG2A")


def fig2b():
    return flip_coorientation(fig2a(), 2).renamed("FIG2B")


def fig2c():
    return Arrangement.from_data(_BASE_NORMALS, [3, 0, -2, -2], "FIG2C")


def fig2a5():
    return Arrangement.from_data(_BASE_NORMALS + [(1, 1)], [1, 0, -2, -2, 0], "FIG2A5")


def fig2c5():
    return Arrangement.from_data(_BASE_NORMALS + [(1, 1)], [3, 0, -2, -2, 0], "FIG2C5")


FIXTURES = {
    "fig2a": fig2a,
    "fig2b": fig2b,
    "fig2c": fig2c,
    "fig2a5": fig2a5,
    "fig2c5": fig2c5,
}


def get(name):
    try:
        return FIXTURES[name.lower()]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}") from None


def all_fixtures():
    return [make() for make in FIXTURES.values()]
