from typing import Type, Collection, Mapping, Union, Iterable, Optional, Iterator, IO
import os
import json
import tempfile
import contextlib
from enum import Enum

import numpy as np
import stringcase
from fuzzywuzzy import process

Json = Union[dict, list, str, int, float, bool, None]


def to_enum_like(string: str) -> str:
    return string.strip().upper().replace(" ", "_").replace("-", "_")


# Monkey patch this method onto Enums
@classmethod
def from_string(cls: Type[Enum], string: str) -> Enum:
    string = to_enum_like(string)
    for e in cls:
        if e.name == string:
            return e
    raise ValueError(f"Unknown {cls.__name__} type: {string}")


Enum.from_string = from_string


class OrderedEnum(Enum):
    """Members compare by declaration order."""

    @property
    def rank(self) -> int:
        return list(type(self)).index(self)

    def __ge__(self, other):
        if self.__class__ is other.__class__:
            return self.rank >= other.rank
        return NotImplemented

    def __gt__(self, other):
        if self.__class__ is other.__class__:
            return self.rank > other.rank
        return NotImplemented

    def __le__(self, other):
        if self.__class__ is other.__class__:
            return self.rank <= other.rank
        return NotImplemented

    def __lt__(self, other):
        if self.__class__ is other.__class__:
            return self.rank < other.rank
        return NotImplemented


# From dataclasses_json -> utils.py
def _isinstance_safe(o, t):
    try:
        result = isinstance(o, t)
    except Exception:
        return False
    else:
        return result


# From dataclasses_json -> core.py, plus numpy types
class ExtendedEncoder(json.JSONEncoder):
    def default(self, o) -> Json:
        result: Json
        if _isinstance_safe(o, np.ndarray):
            result = o.tolist()
        elif _isinstance_safe(o, np.generic):
            result = o.item()
        elif _isinstance_safe(o, Collection):
            if _isinstance_safe(o, Mapping):
                result = dict(o)
            else:
                result = list(o)
        elif _isinstance_safe(o, Enum):
            result = o.value
        else:
            result = json.JSONEncoder.default(self, o)
        return result


@contextlib.contextmanager
def atomic_write(filename: str, encoding: str = "utf8") -> Iterator[IO[str]]:
    """Write through a temporary sibling file and move it into place on success.

    Readers either see the previous complete file or the new complete file, never a partial one.
    """
    directory = os.path.dirname(os.path.abspath(filename))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=".", suffix=".part", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding=encoding, newline="") as f:
            yield f
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp, filename)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def save_json(data, filename):
    def set_default(obj):
        if isinstance(obj, set):
            return list(obj)
        return ExtendedEncoder().default(obj)

    sdata = json.dumps(data, indent=2, default=set_default)
    with atomic_write(filename) as of:
        of.write(sdata)
        of.write("\n")


def save_key_values(data: Mapping[str, object], filename: str):
    """Write a flat `key = value` document, one entry per line."""
    with atomic_write(filename) as of:
        for key, value in data.items():
            if isinstance(value, (list, tuple, np.ndarray)):
                value = ",".join(repr(float(v)) if isinstance(v, float) else str(v) for v in value)
            elif isinstance(value, Enum):
                value = value.value
            of.write(f"{key} = {value}\n")


def camel_path(path: str) -> str:
    """`controller.dead_zone_bounds.delta_l_min` -> `controller.deadZoneBounds.deltaLMin`."""
    return ".".join(stringcase.camelcase(part) for part in path.split("."))


def suggest(key: str, candidates: Iterable[str], cutoff: int = 60) -> Optional[str]:
    candidates = list(candidates)
    if not candidates:
        return None
    best = process.extractOne(key, candidates, score_cutoff=cutoff)
    if best is None:
        return None
    return best[0]
