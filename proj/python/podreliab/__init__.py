"""POAP reliability evaluation for vessel trajectory predictors."""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any, Mapping, Union

from ._podreliab import *  # noqa: F401,F403
from ._podreliab import __version__, _run

ConfigLike = Union[str, os.PathLike, Mapping[str, Any]]


def run(command: str, config: ConfigLike, **overrides: Any) -> None:
    """Run a pipeline command (ingest, classify, evaluate, demo).

    `config` is a JSON config path or a dict with the same keys. Relative
    paths resolve against the config file's directory, or the working
    directory for a dict. Keyword overrides replace config keys.
    """
    if isinstance(config, Mapping):
        data = dict(config)
        base = Path.cwd()
    else:
        path = Path(config)
        data = json.loads(path.read_text())
        base = path.resolve().parent
    data.update(overrides)
    _run(command, json.dumps(data, default=str), base)


def demo(out_dir: Union[str, os.PathLike], seed: int = 0, **overrides: Any) -> None:
    """Synthetic end-to-end run written to `out_dir`."""
    run("demo", {"out_dir": str(out_dir), "seed": seed, **overrides})
