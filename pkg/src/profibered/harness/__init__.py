"""Pair ingestion, the correspondence battery, the CLI and the bundled corpus."""

import json
from importlib import resources
from typing import List

from .battery import (
    CHECKS,
    BatteryReport,
    CheckResult,
    battery_fried,
    battery_mc,
    battery_nielsen,
    battery_norm_cones,
    battery_norm_values,
    battery_torsion,
    ladder_from_env,
    run_battery,
)
from .pairs import CorrespondingQuotient, PairSpec, Side, load_orbit_table


def corpus_files() -> List[str]:
    return sorted(p.name for p in resources.files(__package__).joinpath("corpus").iterdir() if p.name.endswith(".json"))


def corpus_path(name: str):
    return resources.files(__package__).joinpath("corpus", name)


def load_corpus(name: str):
    return json.loads(corpus_path(name).read_text(encoding="utf-8"))


__all__ = [
    "BatteryReport",
    "CHECKS",
    "CheckResult",
    "CorrespondingQuotient",
    "PairSpec",
    "Side",
    "battery_fried",
    "battery_mc",
    "battery_nielsen",
    "battery_norm_cones",
    "battery_norm_values",
    "battery_torsion",
    "corpus_files",
    "corpus_path",
    "ladder_from_env",
    "load_corpus",
    "load_orbit_table",
    "run_battery",
]
