"""Named configurations with expected indices computed by an independent oracle."""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from ..mukai import BrauerConfig


@dataclass(frozen=True)
class Fixture:
    name: str
    description: str
    config: BrauerConfig
    expected: dict


def fixture_names() -> list[str]:
    root = resources.files(__package__)
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_fixture(name: str) -> Fixture:
    data = json.loads(resources.files(__package__).joinpath(f"{name}.json").read_text())
    return Fixture(data["name"], data.get("description", ""),
                   BrauerConfig.from_json(data["config"]), data.get("expected", {}))
