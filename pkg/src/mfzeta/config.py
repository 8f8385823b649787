"""Run configuration: an INI file with typed sections.

Example::

    [model]
    ratios = 0.5, 0.5
    probabilities = 0.2, 0.8        # rows separated by ';'

    [statistic]
    kind = ratio                    # or birkhoff (then: table, window)

    [target]
    spec = box:0.5,1.0

    [run]
    mode = shrink
    radii = 0.2, 0.1, 0.05, 0.02
    levels = 4000

Numbers are parsed through :class:`decimal.Decimal` so that malformed or
non-finite literals are rejected before any computation.  Unknown sections or
keys are errors.
"""
from __future__ import annotations

import configparser
import hashlib
import json
from dataclasses import asdict, dataclass, field
from decimal import Decimal, InvalidOperation

from .measures import IfsModel
from .statistics import BirkhoffStatistic, RatioStatistic
from .targets import parse_target
from .weights import SimilarityWeights


class ConfigError(ValueError):
    pass


SCHEMA = {
    "model": {"ratios", "probabilities"},
    "statistic": {"kind", "table", "window"},
    "target": {"spec"},
    "run": {
        "mode",
        "radii",
        "levels",
        "deltas",
        "delta_exponents",
        "q_min",
        "q_max",
        "q_step",
        "s",
        "max_len",
        "alphas",
        "radius",
        "family",
        "seed",
    },
}


def parse_number(text: str) -> float:
    try:
        d = Decimal(text.strip())
    except InvalidOperation:
        raise ConfigError(f"not a number: {text!r}") from None
    if not d.is_finite():
        raise ConfigError(f"non-finite number: {text!r}")
    return float(d)


def parse_list(text: str) -> list[float]:
    parts = [p for p in text.replace("\n", " ").split(",") if p.strip()]
    if not parts:
        raise ConfigError("empty list")
    return [parse_number(p) for p in parts]


def parse_int_list(text: str) -> list[int]:
    out = []
    for x in parse_list(text):
        if x != int(x):
            raise ConfigError(f"expected integers, got {x}")
        out.append(int(x))
    return out


def parse_rows(text: str) -> list[list[float]]:
    return [parse_list(row) for row in text.split(";") if row.strip()]


@dataclass
class RunConfig:
    ratios: list
    probabilities: list
    statistic: str = "ratio"
    table: list | None = None
    window: int = 1
    target: str | None = None
    mode: str = "shrink"
    radii: list = field(default_factory=lambda: [0.2, 0.1, 0.05, 0.02])
    levels: list = field(default_factory=lambda: [4000])
    deltas: list | None = None
    q_min: float = -10.0
    q_max: float = 10.0
    q_step: float = 0.1
    s: float = 1.6
    max_len: int = 16
    alphas: list | None = None
    radius: float = 1e-3
    family: str = "bernoulli"
    seed: int = 0

    def __post_init__(self):
        try:
            self.model = IfsModel(tuple(self.ratios), tuple(tuple(r) for r in self.probabilities))
        except ValueError as exc:
            raise ConfigError(f"invalid model: {exc}") from None
        if self.statistic not in ("ratio", "birkhoff"):
            raise ConfigError(f"unknown statistic kind {self.statistic!r}")
        if self.statistic == "birkhoff" and self.table is None:
            raise ConfigError("birkhoff statistic needs a table")
        if self.target is not None:
            try:
                parse_target(self.target)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        if self.mode not in ("shrink", "fixed"):
            raise ConfigError(f"mode must be shrink or fixed, got {self.mode!r}")
        if self.family not in ("bernoulli", "markov1"):
            raise ConfigError(f"family must be bernoulli or markov1, got {self.family!r}")
        if any(n < 1 for n in self.levels):
            raise ConfigError("levels must be >= 1")
        if self.q_step <= 0 or self.q_max < self.q_min:
            raise ConfigError("bad q grid")

    def weights(self) -> SimilarityWeights:
        return SimilarityWeights(self.ratios)

    def stat(self):
        if self.statistic == "ratio":
            return RatioStatistic(self.model)
        try:
            return BirkhoffStatistic(self.table, self.window, self.model.N, ratios=self.ratios)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def target_obj(self):
        if self.target is None:
            raise ConfigError("a target is required for this command")
        return parse_target(self.target)

    def delta_ladder(self) -> list:
        return self.deltas if self.deltas is not None else [2.0**-k for k in range(8, 17)]

    def as_dict(self) -> dict:
        return asdict(self)

    def digest(self) -> str:
        blob = json.dumps(self.as_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def load_config(path: str, overrides: dict | None = None) -> RunConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",), comment_prefixes=("#",))
    parser.optionxform = str
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    return config_from_sections({s: dict(parser[s]) for s in parser.sections()}, overrides)


def config_from_sections(sections: dict, overrides: dict | None = None) -> RunConfig:
    for name, keys in sections.items():
        if name not in SCHEMA:
            raise ConfigError(f"unknown section [{name}]")
        unknown = set(keys) - SCHEMA[name]
        if unknown:
            raise ConfigError(f"unknown keys in [{name}]: {sorted(unknown)}")
    model = sections.get("model", {})
    if "ratios" not in model or "probabilities" not in model:
        raise ConfigError("[model] needs ratios and probabilities")
    kw: dict = {
        "ratios": parse_list(model["ratios"]),
        "probabilities": parse_rows(model["probabilities"]),
    }
    stat = sections.get("statistic", {})
    if "kind" in stat:
        kw["statistic"] = stat["kind"].strip().lower()
    if "table" in stat:
        kw["table"] = parse_list(stat["table"])
    if "window" in stat:
        kw["window"] = int(parse_number(stat["window"]))
    if "spec" in sections.get("target", {}):
        kw["target"] = sections["target"]["spec"].strip()
    run = sections.get("run", {})
    for key in ("radii", "alphas", "deltas"):
        if key in run:
            kw[key] = parse_list(run[key])
    if "delta_exponents" in run:
        if "deltas" in run:
            raise ConfigError("give deltas or delta_exponents, not both")
        kw["deltas"] = [2.0**-k for k in parse_int_list(run["delta_exponents"])]
    if "levels" in run:
        kw["levels"] = parse_int_list(run["levels"])
    for key in ("q_min", "q_max", "q_step", "s", "radius"):
        if key in run:
            kw[key] = parse_number(run[key])
    for key in ("max_len", "seed"):
        if key in run:
            kw[key] = int(parse_number(run[key]))
    for key in ("mode", "family"):
        if key in run:
            kw[key] = run[key].strip().lower()
    kw.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return RunConfig(**kw)
