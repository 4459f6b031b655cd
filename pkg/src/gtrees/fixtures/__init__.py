"""The bundled ``.gog`` fixture corpus."""

from importlib import resources

from ..dsl import parse_gog

NAMES = ("SSF1", "SSF2", "SSF3", "HNN1", "TRIV", "NRED", "FREE3", "SLIDE1")


def path(name: str):
    return resources.files(__name__) / f"{name}.gog"


def load(name: str, max_order: int = 48):
    text = path(name).read_text(encoding="utf-8")
    g = parse_gog(text, source=f"{name}.gog", max_order=max_order)
    g.name = name
    return g
