"""Access to data files shipped with the package."""

from __future__ import annotations

from importlib import resources

from .errors import KeylabError
from .geometry import Geometry, parse_geometry
from .layout import Layout, parse_layout

_GEOMETRY_OF_LAYOUT = {
    "qwerty": "ansi-47",
    "dvorak": "ansi-47",
    "colemak": "ansi-47",
    "lv-qwerty": "ansi-47",
    "lv-ergonomic": "ansi-47",
    "lv-modern": "ansi-47",
    "lv-modern-compact": "compact-46",
}


def _data():
    return resources.files("keylab") / "data"


def data_path(*parts: str):
    path = _data().joinpath(*parts)
    if not path.is_file():
        raise KeylabError(f"no bundled data file {'/'.join(parts)!r}")
    return path


def read_text(*parts: str) -> str:
    return data_path(*parts).read_text(encoding="utf-8")


def bundled_geometry(name: str) -> Geometry:
    return parse_geometry(read_text("geometries", f"{name}.geom"))


def bundled_layout(name: str, geometry: Geometry | None = None) -> Layout:
    if geometry is None:
        try:
            geometry = bundled_geometry(_GEOMETRY_OF_LAYOUT[name])
        except KeyError:
            raise KeylabError(f"no bundled layout {name!r}") from None
    return parse_layout(read_text("layouts", f"{name}.layout"), geometry)


def bundled_layout_names() -> tuple[str, ...]:
    return tuple(sorted(_GEOMETRY_OF_LAYOUT))


def bundled_corpus_path(name: str):
    return data_path("corpora", f"{name}.txt")
