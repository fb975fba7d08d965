"""Scenario files: JSON documents whose nested objects are the config sections.

Loading walks the record tree before anything is constructed so that every problem is reported with the dotted
camelCase key path it was found at.
"""
from typing import Any, List, Union, get_type_hints
import dataclasses
import enum
import json
import logging
import os
import typing

import stringcase

from ..common import utils
from ..common.modelcommon import ConfigError, InvalidParameter
from .modelsimulation import Scenario

logger = logging.getLogger(__name__)

PRESET_DIR = os.path.join(os.path.dirname(os.path.realpath(__file__)), "presets")


def preset_names() -> List[str]:
    return sorted(fn[: -len(".json")] for fn in os.listdir(PRESET_DIR) if fn.endswith(".json"))


def resolve(path_or_preset: str) -> str:
    if os.path.isfile(path_or_preset):
        return path_or_preset
    if path_or_preset in preset_names():
        return os.path.join(PRESET_DIR, f"{path_or_preset}.json")
    hint = utils.suggest(path_or_preset, preset_names())
    message = f"no scenario file or preset named {path_or_preset!r}"
    if hint:
        message += f" (did you mean preset {hint!r}?)"
    raise ConfigError("", message)


def _join(prefix: str, key: str) -> str:
    return f"{prefix}.{key}" if prefix else key


def _camel(name: str) -> str:
    return stringcase.camelcase(name)


def _is_number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _check_value(tp, value, path: str):
    """Returns `value` normalized for dataclasses_json decoding, or raises ConfigError."""
    origin = typing.get_origin(tp)
    if origin is Union:
        args = [a for a in typing.get_args(tp) if a is not type(None)]
        if value is None:
            return None
        return _check_value(args[0], value, path)
    if origin in (list, List):
        (inner,) = typing.get_args(tp)
        if not isinstance(value, list):
            raise ConfigError(path, f"expected a list, got {value!r}")
        return [_check_value(inner, v, f"{path}[{i}]") for i, v in enumerate(value)]
    if dataclasses.is_dataclass(tp):
        if dataclasses.is_dataclass(value):
            value = value.to_dict(encode_json=False)
        if not isinstance(value, dict):
            raise ConfigError(path, f"expected a section, got {value!r}")
        return _check_section(tp, value, path)
    if isinstance(tp, type) and issubclass(tp, enum.Enum):
        if isinstance(value, tp):
            return value.value
        if not isinstance(value, str):
            raise ConfigError(path, f"expected one of {[e.value for e in tp]}, got {value!r}")
        try:
            return tp.from_string(value).value
        except ValueError:
            raise ConfigError(path, f"expected one of {[e.value for e in tp]}, got {value!r}")
    if tp is float:
        if not _is_number(value):
            raise ConfigError(path, f"expected a number, got {value!r}")
        return float(value)
    if tp is int:
        if not isinstance(value, int) or isinstance(value, bool):
            raise ConfigError(path, f"expected an integer, got {value!r}")
        return value
    if tp is bool:
        if not isinstance(value, bool):
            raise ConfigError(path, f"expected true or false, got {value!r}")
        return value
    if tp is str:
        if not isinstance(value, str):
            raise ConfigError(path, f"expected a string, got {value!r}")
        return value
    return value


def _check_section(cls, data: dict, prefix: str = ""):
    hints = get_type_hints(cls)
    known = {}
    for f in dataclasses.fields(cls):
        if f.init:
            known[_camel(f.name)] = f
    for key in data:
        if key not in known:
            hint = utils.suggest(key, known)
            message = "unknown key" + (f" (did you mean {hint!r}?)" if hint else "")
            raise ConfigError(_join(prefix, key), message)
    normalized = {}
    for key, f in known.items():
        path = _join(prefix, key)
        if key not in data:
            if f.default is dataclasses.MISSING and f.default_factory is dataclasses.MISSING:
                raise ConfigError(path, "missing required key")
            continue
        normalized[key] = _check_value(hints[f.name], data[key], path)
    try:
        cls.from_dict(normalized)
    except InvalidParameter as e:
        raise ConfigError(_join(prefix, _camel(e.field)), e.message) from e
    return normalized


def scenario_from_dict(data: Any) -> Scenario:
    if not isinstance(data, dict):
        raise ConfigError("", f"a scenario must be a JSON object, got {type(data).__name__}")
    return Scenario.from_dict(_check_section(Scenario, data))


def load_scenario(path_or_preset: str) -> Scenario:
    path = resolve(path_or_preset)
    try:
        with open(path, encoding="utf8") as f:
            text = f.read()
    except OSError as e:
        raise ConfigError("", f"cannot read {path}: {e.strerror}") from e
    if text.strip():
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigError("", f"{path}:{e.lineno}:{e.colno}: {e.msg}") from e
    else:
        data = {}
    scenario = scenario_from_dict(data)
    logger.debug(f"loaded scenario {scenario.name!r} from {path}")
    return scenario


def save_scenario(scenario: Scenario, filename: str):
    utils.save_json(scenario.to_dict(encode_json=False), filename)


def parse_value(text: str):
    """Command-line values are JSON where they parse as JSON (numbers, true, null, lists), plain strings otherwise."""
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def with_override(scenario: Scenario, key: str, value) -> Scenario:
    """Copy of `scenario` with the dotted `key` (snake_case or camelCase) set to `value`, fully revalidated."""
    data = scenario.to_dict(encode_json=False)
    parts = utils.camel_path(key).split(".")
    section = data
    for depth, part in enumerate(parts):
        path = ".".join(parts[: depth + 1])
        if not isinstance(section, dict) or part not in section:
            candidates = section.keys() if isinstance(section, dict) else []
            hint = utils.suggest(part, candidates)
            raise ConfigError(path, "unknown key" + (f" (did you mean {hint!r}?)" if hint else ""))
        if depth == len(parts) - 1:
            section[part] = value
        else:
            if section[part] is None:
                raise ConfigError(path, "section is not set")
            section = section[part]
    return scenario_from_dict(data)
