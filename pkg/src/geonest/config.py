"""Run configuration: TOML schema, validation and defaults.

Schema (every key optional except ``model.name``)::

    [model]
    name = "von_mises"        # see `geonest list-models`
    kappa = 5.0               # any parameter of the chosen model

    [sampler]
    n_live = 500
    chain_steps = 20
    termination_frac = 1e-3
    max_iterations = 100000
    seed = 0

    [proposal]
    fraction = 0.05           # or: sigma = [..], one entry per parameter kind

    [output]
    dir = "geonest-out"
    posterior_count = 10000

Precedence is command line > file > default.
"""

import difflib
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional, Tuple

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .exceptions import ConfigError, UsageError
from .models import MODELS, build_model
from .proposal import DEFAULT_FRACTION, ProposalScales, suggest_scales
from .sampler import SamplerConfig

SAMPLER_KEYS = ("n_live", "chain_steps", "termination_frac", "max_iterations", "seed")
PROPOSAL_KEYS = ("fraction", "sigma")
OUTPUT_KEYS = ("dir", "posterior_count")
SECTIONS = ("model", "sampler", "proposal", "output")

DEFAULT_OUTPUT_DIR = "geonest-out"
DEFAULT_POSTERIOR_COUNT = 10_000


@dataclass(frozen=True)
class RunConfig:
    model_name: str
    model_params: Tuple[Tuple[str, object], ...]
    sampler: SamplerConfig
    fraction: Optional[float]
    sigma: Optional[Tuple[float, ...]]
    output_dir: str
    posterior_count: int

    def build_model(self):
        return build_model(self.model_name, **dict(self.model_params))

    def scales(self, space):
        if self.sigma is not None:
            scales = ProposalScales(self.sigma)
            if len(scales.sigma) != len(space.kinds):
                raise ConfigError(
                    f"proposal.sigma needs {len(space.kinds)} entries (one per parameter kind), "
                    f"got {len(scales.sigma)}")
            return scales
        return suggest_scales(space, self.fraction)

    def with_overrides(self, seed=None, n_live=None, out_dir=None):
        sampler = self.sampler
        try:
            if seed is not None:
                sampler = replace(sampler, seed=seed)
            if n_live is not None:
                sampler = replace(sampler, n_live=n_live)
        except ConfigError as exc:
            raise ConfigError(f"command line: {exc}") from None
        return replace(self, sampler=sampler,
                       output_dir=self.output_dir if out_dir is None else str(out_dir))

    def effective_items(self):
        """Every effective setting as ``(dotted key, value)`` pairs, in schema order."""
        items = [("model.name", self.model_name)]
        items += [(f"model.{k}", v) for k, v in self.model_params]
        items += [(f"sampler.{k}", getattr(self.sampler, k)) for k in SAMPLER_KEYS]
        if self.sigma is not None:
            items.append(("proposal.sigma", list(self.sigma)))
        else:
            items.append(("proposal.fraction", self.fraction))
        items += [("output.dir", self.output_dir),
                  ("output.posterior_count", self.posterior_count)]
        return items


def _reject_unknown(section, table, allowed):
    unknown = sorted(set(table) - set(allowed))
    if not unknown:
        return
    parts = []
    for key in unknown:
        close = difflib.get_close_matches(key, allowed, n=1, cutoff=0.6)
        hint = f" (did you mean {close[0]!r}?)" if close else ""
        parts.append(f"{key!r}{hint}")
    where = f"[{section}]" if section else "top level"
    raise ConfigError(f"unknown key(s) in {where}: {', '.join(parts)}")


def _int(section, key, value):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{section}.{key} must be an integer, got {value!r}")
    return value


def _float(section, key, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{section}.{key} must be a number, got {value!r}")
    return float(value)


def parse_config(text):
    """Parse and validate TOML configuration text into a :class:`RunConfig`."""
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML: {exc}") from None
    _reject_unknown("", doc, SECTIONS)
    for s in SECTIONS:
        if s in doc and not isinstance(doc[s], dict):
            raise ConfigError(f"[{s}] must be a table")

    model = dict(doc.get("model", {}))
    if "name" not in model:
        raise ConfigError("model.name is required; available: " + ", ".join(MODELS))
    name = model.pop("name")
    if name not in MODELS:
        close = difflib.get_close_matches(str(name), list(MODELS), n=1)
        hint = f" (did you mean {close[0]!r}?)" if close else ""
        raise ConfigError(f"unknown model {name!r}{hint}; available: {', '.join(MODELS)}")
    info = MODELS[name]
    _reject_unknown("model", model, ["name", *info.defaults])
    try:
        built = build_model(name, **model)
    except (UsageError, TypeError, ValueError) as exc:
        raise ConfigError(f"model {name}: {exc}") from None
    params = tuple((k, built.params[k]) for k in info.defaults)

    sampler_tbl = doc.get("sampler", {})
    _reject_unknown("sampler", sampler_tbl, SAMPLER_KEYS)
    kw = {}
    for key in ("n_live", "chain_steps", "max_iterations", "seed"):
        if key in sampler_tbl:
            kw[key] = _int("sampler", key, sampler_tbl[key])
    if "termination_frac" in sampler_tbl:
        kw["termination_frac"] = _float("sampler", "termination_frac",
                                        sampler_tbl["termination_frac"])
    sampler = SamplerConfig(**kw)

    prop = doc.get("proposal", {})
    _reject_unknown("proposal", prop, PROPOSAL_KEYS)
    if "fraction" in prop and "sigma" in prop:
        raise ConfigError("give either proposal.fraction or proposal.sigma, not both")
    fraction, sigma = None, None
    if "sigma" in prop:
        raw = prop["sigma"]
        raw = raw if isinstance(raw, list) else [raw]
        try:
            sigma = ProposalScales(tuple(_float("proposal", "sigma", s) for s in raw)).sigma
        except UsageError as exc:
            raise ConfigError(f"proposal.sigma: {exc}") from None
        if len(sigma) != len(built.space.kinds):
            raise ConfigError(f"proposal.sigma needs {len(built.space.kinds)} entries "
                              f"(one per parameter kind), got {len(sigma)}")
    else:
        fraction = _float("proposal", "fraction", prop.get("fraction", DEFAULT_FRACTION))
        if not 0.0 < fraction <= 1.0:
            raise ConfigError(f"invalid proposal.fraction={fraction!r}: requires 0 < fraction ≤ 1")

    out = doc.get("output", {})
    _reject_unknown("output", out, OUTPUT_KEYS)
    out_dir = out.get("dir", DEFAULT_OUTPUT_DIR)
    if not isinstance(out_dir, str) or not out_dir:
        raise ConfigError("output.dir must be a non-empty string")
    count = _int("output", "posterior_count", out.get("posterior_count", DEFAULT_POSTERIOR_COUNT))
    if count < 0:
        raise ConfigError(f"invalid output.posterior_count={count}: requires posterior_count ≥ 0")

    return RunConfig(name, params, sampler, fraction, sigma, out_dir, count)


def load_config(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {str(path)!r}: {exc.strerror}") from None
    return parse_config(text)
