"""Scan parameters and the flat ``key = value`` config format.

One assignment per line, ``#`` starts a comment, keys are the field names of
:class:`ScanParams` (dashes allowed in place of underscores)::

    # loja.cfg
    poly  = X^2 - T1^3*Y^2
    field = f2
    prec  = 6
    mode  = exhaustive
"""

from __future__ import annotations

import dataclasses
import math
import os
from dataclasses import dataclass, fields
from typing import Dict, List, Optional, Tuple

from ..fields import BaseField

DEFAULT_PAIR_BUDGET = 2 ** 24


class ConfigError(ValueError):
    """Malformed configuration; ``location`` is ``file:line`` when known."""

    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


@dataclass
class ScanParams:
    field: str = "f2"
    nvars: int = 2
    prec: int = 4
    height: int = 1
    mode: str = "exhaustive"          # exhaustive | sampled
    samples: int = 2000
    seed: int = 0
    budget: int = DEFAULT_PAIR_BUDGET
    poly: str = ""
    root: str = ""                    # seeds for dioph/roots, ';'-separated
    tprec: int = 16
    i_min: int = 0
    i_max: int = 3
    prec_offset: Optional[int] = None  # artin: prec = i + offset per i
    cutoff: Optional[int] = None      # witness degree cutoff (defaults to prec)
    swap_vars: bool = False
    family: str = ""                  # module:callable
    family_params: str = ""
    workers: Optional[int] = None
    out: str = "serival-out"

    def __post_init__(self):
        self.validate()

    # -- derived values
    @property
    def base_field(self) -> BaseField:
        return BaseField.parse(self.field)

    @property
    def coefficient_values(self) -> List:
        F = self.base_field
        if F.p is not None:
            return list(range(F.p))
        return [0] + [s * k for k in range(1, self.height + 1) for s in (1, -1)]

    @property
    def degree_cutoff(self) -> int:
        return self.prec if self.cutoff is None else self.cutoff

    def monomial_count(self, prec: Optional[int] = None) -> int:
        p = self.degree_cutoff if prec is None else prec
        return math.comb(p + self.nvars - 1, self.nvars)

    def pair_count(self, prec: Optional[int] = None) -> int:
        """``q^(2 C(prec+N-1, N))``: size of the pair universe."""
        return len(self.coefficient_values) ** (2 * self.monomial_count(prec))

    def validate(self):
        try:
            BaseField.parse(self.field)
        except Exception as exc:
            raise ConfigError(str(exc)) from None
        if self.nvars < 1:
            raise ConfigError("nvars must be >= 1")
        if self.prec < 1:
            raise ConfigError("prec must be >= 1")
        if self.mode not in ("exhaustive", "sampled"):
            raise ConfigError(f"mode must be 'exhaustive' or 'sampled', not {self.mode!r}")
        if self.height < 1:
            raise ConfigError("height must be >= 1")
        if self.samples < 1:
            raise ConfigError("samples must be >= 1")
        if self.i_max < self.i_min:
            raise ConfigError("i_max must be >= i_min")

    def replace(self, **kw) -> "ScanParams":
        return dataclasses.replace(self, **kw)

    def to_json(self) -> Dict:
        d = dataclasses.asdict(self)
        d.pop("workers")   # scheduling never affects output
        d.pop("out")
        return d

    def worker_count(self) -> int:
        if self.workers is not None:
            return max(1, self.workers)
        env = os.environ.get("SERIVAL_WORKERS")
        if env:
            try:
                return max(1, int(env))
            except ValueError:
                raise ConfigError(f"SERIVAL_WORKERS must be an integer, got {env!r}") from None
        return max(1, len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity")
                   else os.cpu_count() or 1)


_BOOL = {"1": True, "true": True, "yes": True, "on": True,
         "0": False, "false": False, "no": False, "off": False}


def _convert(name: str, raw: str, ftype, location: str):
    t = str(ftype)
    try:
        if "bool" in t:
            v = raw.lower()
            if v not in _BOOL:
                raise ValueError(f"expected a boolean, got {raw!r}")
            return _BOOL[v]
        if "int" in t:
            if "Optional" in t and raw.lower() in ("", "none"):
                return None
            return int(raw)
        return raw
    except ValueError as exc:
        raise ConfigError(f"bad value for {name}: {exc}", location) from None


def parse_config(text: str, source: str = "<config>") -> Dict[str, object]:
    known = {f.name: f.type for f in fields(ScanParams)}
    out: Dict[str, object] = {}
    for n, line in enumerate(text.splitlines(), 1):
        loc = f"{source}:{n}"
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"expected 'key = value', got {body!r}", loc)
        key, _, value = body.partition("=")
        key = key.strip().replace("-", "_")
        if key not in known:
            raise ConfigError(f"unknown key {key!r}", loc)
        if key in out:
            raise ConfigError(f"duplicate key {key!r}", loc)
        out[key] = _convert(key, value.strip(), known[key], loc)
    return out


def load_config(path: str) -> Dict[str, object]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}", path) from None
    return parse_config(text, path)


def parse_family_params(text: str) -> Dict[str, object]:
    """``"p=3, k=5, name=x"`` -> ``{"p": 3, "k": 5, "name": "x"}``."""
    out: Dict[str, object] = {}
    for part in filter(None, (s.strip() for s in text.split(","))):
        if "=" not in part:
            raise ConfigError(f"family parameter {part!r} is not key=value")
        k, _, v = part.partition("=")
        v = v.strip()
        try:
            out[k.strip()] = int(v)
        except ValueError:
            out[k.strip()] = v
    return out


def split_seeds(text: str) -> Tuple[str, ...]:
    return tuple(s.strip() for s in text.split(";") if s.strip())
