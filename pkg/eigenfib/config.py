"""eigenfib run configuration.

Values resolve as built-in defaults, then a JSON config file, then command
line flags.

:copyright: Copyright 2026 eigenfib developers, see AUTHORS for details.
:license: Apache License, Version 2.0, see LICENSE for details.
"""
import json

from eigenfib.catalog import make_spec
from eigenfib.export import decode_vector, encode_vector
from eigenfib.spaces import SpaceError, SpaceId

DEFAULTS = {
    'space': None,
    'n': None,
    'a': None,
    'b': None,
    'seed': 0,
    'points': 50,
    'steps': 100,
    'step_size': 0.05,
    'h': 1e-3,
    'level': 0.,
    'curvature_points': 5,
    'out': None,
}

DEFAULT_TOLERANCES = {
    'eigen': 1e-8,
    'dual': 1e-7,
    'zero': 1e-10,
    'regular': 1e-6,
    'curvature': 5e-3,
}


class ConfigError(ValueError):
    """Invalid configuration key or value."""


class RunConfig(object):
    """Resolved settings for one command run."""

    def __init__(self, **values):
        for key, value in DEFAULTS.items():
            setattr(self, key, value)
        self.tolerances = dict(DEFAULT_TOLERANCES)
        self.update(values)

    @classmethod
    def from_file(cls, path):
        try:
            with open(path, encoding='utf-8') as f:
                data = json.load(f)
        except (OSError, ValueError) as exc:
            raise ConfigError('Cannot read config {}: {}'.format(path, exc))
        if not isinstance(data, dict):
            raise ConfigError('Config {} must hold a JSON object'.format(path))
        return cls(**data)

    def update(self, values):
        """Apply ``values``, skipping None entries (unset flags)."""
        for key, value in values.items():
            if value is None:
                continue
            if key == 'tolerances':
                self.set_tolerances(value)
            elif key in DEFAULTS:
                setattr(self, key, value)
            else:
                raise ConfigError('Unknown configuration key {!r}'.format(key))

    def set_tolerances(self, values):
        if isinstance(values, (list, tuple)):
            pairs = {}
            for item in values:
                name, sep, val = str(item).partition('=')
                if not sep:
                    raise ConfigError(
                        'Tolerance override must be name=value, got {!r}'
                        .format(item))
                pairs[name.strip()] = val
            values = pairs
        for name, val in values.items():
            if name not in DEFAULT_TOLERANCES:
                raise ConfigError('Unknown tolerance {!r}'.format(name))
            try:
                self.tolerances[name] = float(val)
            except ValueError:
                raise ConfigError('Tolerance {} must be a number'.format(name))

    # Resolved values

    @property
    def space_id(self):
        if self.space is None:
            raise ConfigError('No --space given')
        try:
            if ':' in str(self.space):
                space = SpaceId.parse(self.space)
                if self.n is not None and int(self.n) != space.n:
                    raise ConfigError('--n {} conflicts with space {}'.format(
                        self.n, self.space))
                return space
            if self.n is None:
                raise ConfigError('Space {} needs n'.format(self.space))
            return SpaceId(self.space, self.n)
        except SpaceError as exc:
            raise ConfigError(str(exc))

    def vector(self, name):
        value = getattr(self, name)
        if value is None:
            return None
        try:
            return decode_vector(value)
        except ValueError as exc:
            raise ConfigError('--{}: {}'.format(name, exc))

    def spec(self):
        """Build the EigenSpec named by space, a and b."""
        if self.a is None:
            raise ConfigError('Missing --a parameter')
        return make_spec(self.space_id, self.vector('a'), self.vector('b'))

    def validate(self):
        """Range checks on counts and step sizes."""
        if int(self.points) < 1:
            raise ConfigError('points must be at least 1')
        if int(self.steps) < 0:
            raise ConfigError('steps must be non-negative')
        if int(self.curvature_points) < 1:
            raise ConfigError('curvature_points must be at least 1')
        if not float(self.h) > 0.:
            raise ConfigError('h must be positive, got {}'.format(self.h))
        if not float(self.step_size) >= 0.:
            raise ConfigError('step_size must be non-negative')
        for name, tol in self.tolerances.items():
            if not tol > 0.:
                raise ConfigError('Tolerance {} must be positive'.format(name))
        return self

    def to_dict(self):
        out = {key: getattr(self, key) for key in DEFAULTS}
        for name in ('a', 'b'):
            vec = self.vector(name)
            out[name] = encode_vector(vec) if vec is not None else None
        out['tolerances'] = dict(self.tolerances)
        return out
