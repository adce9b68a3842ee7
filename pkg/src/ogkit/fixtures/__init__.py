"""Named optiongraphs transcribed from the figures of the underlying theory.

``load("FIG_CON")`` returns a fresh :class:`~ogkit.graph.Optiongraph`;
``path("FIG_CON")`` gives the shipped ``.og`` file for CLI use.
"""

from importlib import resources

from ..graph import Optiongraph, parse_optiongraph

NAMES = (
    "T1",
    "L1",
    "ARROW",
    "FIG_CON",
    "FIG_VAL",
    "FIG_1ISO_C",
    "FIG_1ISO_D",
    "FIG_2ISO_D",
    "FIG_3ISO_R",
    "FIG_3ISO_C",
    "FIG_4ISO",
)


def path(name: str, suffix: str = ".og"):
    return resources.files(__name__).joinpath(name + suffix)


def text(name: str, suffix: str = ".og") -> str:
    return path(name, suffix).read_text(encoding="utf-8")


def load(name: str) -> Optiongraph:
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}")
    return parse_optiongraph(text(name), path=name + ".og")


def load_all() -> dict[str, Optiongraph]:
    return {name: load(name) for name in NAMES}
