"""Shipped example complexes and point clouds (see ``tools/make_fixtures.py``)."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .io import ComplexDocument, read_complex


def fixture_path(name: str) -> Path:
    path = Path(str(resources.files("stratspine") / "data" / name))
    if not path.exists():
        raise FileNotFoundError(f"no shipped fixture named {name!r}; available: {available()}")
    return path


def available() -> list[str]:
    return sorted(p.name for p in resources.files("stratspine").joinpath("data").iterdir() if p.is_file())


def load(name: str) -> ComplexDocument:
    """Load ``name`` or ``name.json`` from the shipped data directory."""
    if not name.endswith(".json"):
        name += ".json"
    return read_complex(fixture_path(name))
