"""Bundled example posets with their matchings and recorded expectations."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Any

from .errors import FixtureError
from .homology import poset_homology
from .io import parse_matching, parse_poset
from .matching import Matching, classify_poset, morse_check
from .poset import Poset


@dataclass(frozen=True)
class Fixture:
    name: str
    poset: Poset
    matching: Matching | None
    expected: dict[str, Any]


def _read(fname: str) -> str:
    return resources.files(__package__).joinpath("data").joinpath(fname).read_text(encoding="utf-8")


def _manifest() -> list[dict]:
    return json.loads(_read("manifest.json"))["fixtures"]


def fixture_names() -> list[str]:
    return [entry["name"] for entry in _manifest()]


def check_fixture(fx: Fixture) -> list[str]:
    """Mismatches between a fixture and its expectations (empty when it agrees)."""
    X, exp = fx.poset, fx.expected
    problems = []
    if len(X) != exp["elements"] or len(X.covers) != exp["covers"]:
        problems.append(f"size {len(X)}/{len(X.covers)} != {exp['elements']}/{exp['covers']}")
    cls = classify_poset(X).to_json()
    for flag, want in exp["classification"].items():
        if cls[flag] != want:
            problems.append(f"{flag} is {cls[flag]}, expected {want}")
    if fx.matching is not None:
        report = morse_check(X, fx.matching)
        if not report.is_morse:
            problems.append("matching fails the Morse check")
        elif list(report.critical or ()) != sorted(exp["critical"]):
            problems.append(f"critical {list(report.critical or ())} != {sorted(exp['critical'])}")
        if exp.get("matched_pairs_admissible") and report.inadmissible_edges:
            problems.append(f"inadmissible matched pairs {list(report.inadmissible_edges)}")
    groups = poset_homology(X).to_json()["groups"]
    nontrivial = {p: g for p, g in groups.items() if g["betti"] or g["torsion"]}
    if nontrivial != exp["reduced_homology"]:
        problems.append(f"reduced homology {nontrivial} != {exp['reduced_homology']}")
    return problems


def load_fixture(name: str, validate: bool = True) -> Fixture:
    for entry in _manifest():
        if entry["name"].lower() == name.lower():
            break
    else:
        raise KeyError(f"no fixture named {name!r}; known: {fixture_names()}")
    X = parse_poset(_read(entry["poset"]))
    M = parse_matching(_read(entry["matching"])) if entry.get("matching") else None
    fx = Fixture(entry["name"], X, M, entry)
    if validate:
        problems = check_fixture(fx)
        if problems:
            raise FixtureError(f"{fx.name}: " + "; ".join(problems))
    return fx


def load_fixtures(validate: bool = True) -> list[Fixture]:
    return [load_fixture(n, validate) for n in fixture_names()]


def fixture_text(fname: str) -> str:
    """Raw text of a bundled data file, e.g. ``fig1x.poset``."""
    return _read(fname)
