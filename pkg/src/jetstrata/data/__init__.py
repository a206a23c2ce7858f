"""Bundled scheme, resolution and tower files."""

import os

DATA_DIR = os.path.dirname(os.path.abspath(__file__))


def path(name: str) -> str:
    return os.path.join(DATA_DIR, name)


def scheme(name: str):
    from ..parse import load_scheme

    return load_scheme(path(f"{name}.scheme.json"))


def resolution(name: str):
    from ..zeta.resolution import load_resolution

    return load_resolution(path(f"{name}.resolution.json"))


def tower(name: str):
    from ..zeta.resolution import load_tower

    return load_tower(path(f"{name}.tower.json"))
