"""
Run configuration files.

A configuration is flat ``key = value`` text with ``#`` comments::

    experiment = transmission
    n_sites = 12
    rung_coupling = 50.0   # V
    boundary = both

Every experiment is a :class:`RunConfig` subclass that lists the keys it
accepts; the common ladder keys are shared by all of them. Keys marked
``auto`` take a default that depends on other keys.
"""
import configparser
import json

from collections import namedtuple

import numpy as np

from .lattice.base import Boundary, LadderInvalidData
from .lattice.spec import LadderSpec


class ConfigInvalidData(Exception):
    """Raised when a configuration has a bad key or value"""
    def __init__(self, message, key=None, lineno=None):
        self.key = key
        self.lineno = lineno
        prefix = ''
        if lineno is not None:
            prefix += 'line {}: '.format(lineno)
        if key is not None:
            prefix += "'{}': ".format(key)
        super().__init__(prefix + message)


class ConfigInvalidType(Exception):
    """Raised when a configuration names an unknown experiment"""
    pass


ConfigKey = namedtuple('ConfigKey', ['name', 'parse', 'default', 'auto'])
ConfigKey.__new__.__defaults__ = (None, False)

_SECTION = 'run'


# Value parsers. Each takes the raw string and returns the value or
# raises ValueError with a message for the user.
def _integer(minimum=None):
    def parse(text):
        try:
            value = int(text)
        except ValueError:
            raise ValueError("expected an integer, got '{}'".format(text))
        if minimum is not None and value < minimum:
            raise ValueError("must be >= {}, got {}".format(minimum, value))
        return value
    return parse


def _real(positive=False, nonnegative=False):
    def parse(text):
        try:
            value = float(text)
        except ValueError:
            raise ValueError("expected a number, got '{}'".format(text))
        if not np.isfinite(value):
            raise ValueError("must be finite, got {}".format(text))
        if positive and value <= 0:
            raise ValueError("must be > 0, got {}".format(value))
        if nonnegative and value < 0:
            raise ValueError("must be >= 0, got {}".format(value))
        return value
    return parse


def _choice(*options):
    def parse(text):
        if text not in options:
            raise ValueError("must be one of {}, got '{}'".format(', '.join(options), text))
        return text
    return parse


def _boolean(text):
    try:
        return configparser.ConfigParser.BOOLEAN_STATES[text.lower()]
    except KeyError:
        raise ValueError("expected true or false, got '{}'".format(text))


def _text(text):
    if not text:
        raise ValueError("must not be empty")
    return text


def _optional(parse):
    def parse_optional(text):
        if text == 'none':
            return None
        return parse(text)
    return parse_optional


def _format_value(value, auto=False):
    if value is None:
        return 'auto' if auto else 'none'
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return repr(value)
    return str(value)


COMMON_KEYS = [
    ConfigKey('n_sites', _integer(minimum=3), 12),
    ConfigKey('radius', _real(positive=True), 2.0),
    ConfigKey('half_width', _real(positive=True), 0.5),
    ConfigKey('hopping', _real(nonnegative=True), 1.0),
    ConfigKey('rung_coupling', _real(), 50.0),
    ConfigKey('onsite_bias', _real(), 0.0),
    ConfigKey('field_strength', _optional(_real()), None),
    ConfigKey('boundary', _choice('moebius', 'periodic', 'both'), 'moebius'),
    ConfigKey('output_dir', _text, '.'),
    ConfigKey('format', _choice('csv', 'json'), 'csv'),
]


# Closures for the properties built by the metaclass
def _make_get_value(key):
    def get_value(self):
        return self._values.get(key)
    return get_value


def _make_set_value(key):
    def set_value(self, value):
        self._values[key] = value
    return set_value


class MetaConfig(type):
    """Metaclass for run configurations.

    Looks at the _config_keys attribute when a subclass is declared and
    adds a property per key, backed by the _values dictionary.
    """
    def __new__(cls, name, base, attrs):
        for k in attrs.get('_config_keys', []):
            attrs[k.name] = property(_make_get_value(k.name), _make_set_value(k.name))
        return type.__new__(cls, name, base, attrs)


class RunConfig(object, metaclass=MetaConfig):
    """
    Generic run configuration base class

    Class parameters:
        _experiment: name of the experiment (string)
        _config_keys: the keys this experiment accepts (list[ConfigKey])

    Args:
        lines (dict): key -> line number in the source text, for messages.
        **kwargs: Parsed values, by key. Keys left out take their default.

    Examples:
        >>> config = RunConfig.from_text(open('run.cfg').read())
        >>> config.validate_data(raise_on_invalid=True)
    """
    _experiment = None
    _config_keys = COMMON_KEYS

    def __init__(self, lines=None, **kwargs):
        self._lines = lines if lines is not None else {}
        self._values = {k.name: k.default for k in self._config_keys}
        known = self._key_map()
        for key, value in kwargs.items():
            if key not in known:
                raise ConfigInvalidData("unknown key for experiment '{}'".format(self._experiment),
                                        key=key, lineno=self._lines.get(key))
            self._values[key] = value

    @classmethod
    def _key_map(cls):
        return {k.name: k for k in cls._config_keys}

    @classmethod
    def _find_config_type(cls, experiment):
        """
        Finds the RunConfig subclass for an experiment name
        """
        for subclass in RunConfig.__subclasses__():
            if subclass._experiment == experiment:
                return subclass
        raise ConfigInvalidType("No experiment matches provided '{}'".format(experiment))

    @classmethod
    def from_dict(cls, data, lines=None, experiment=None):
        """
        Builds the configuration for data['experiment'] from raw string
        values.

        Args:
            data (dict): key -> text value.
            lines (dict): key -> line number, for messages.
            experiment (str): Experiment to run when data names none. If
                data names one too, the two must agree.
        """
        lines = lines if lines is not None else {}
        data = dict(data)
        named = data.pop('experiment', None)
        if named is not None and experiment is not None and named != experiment:
            raise ConfigInvalidData("configuration is for '{}', not '{}'".format(named, experiment),
                                    key='experiment', lineno=lines.get('experiment'))
        experiment = named if named is not None else experiment
        if experiment is None:
            raise ConfigInvalidData("missing required key", key='experiment')
        config_class = cls._find_config_type(experiment)
        known = config_class._key_map()
        values = {}
        for key, text in data.items():
            if key not in known:
                raise ConfigInvalidData("unknown key for experiment '{}'".format(experiment),
                                        key=key, lineno=lines.get(key))
            config_key = known[key]
            if config_key.auto and text == 'auto':
                values[key] = None
                continue
            try:
                values[key] = config_key.parse(text)
            except ValueError as e:
                raise ConfigInvalidData(str(e), key=key, lineno=lines.get(key))
        return config_class(lines=lines, **values)

    @classmethod
    def from_text(cls, text, source='<config>', experiment=None):
        """
        Parses configuration text.

        Raises:
            ConfigInvalidData: for syntax errors, duplicate or unknown keys
                and bad values, with the line number.
            ConfigInvalidType: for an unknown experiment.
        """
        parser = configparser.ConfigParser(delimiters=('=',), comment_prefixes=('#',),
                                           inline_comment_prefixes=('#',), strict=True,
                                           interpolation=None, empty_lines_in_values=False,
                                           default_section='__defaults__')
        parser.optionxform = str
        try:
            parser.read_string('[{}]\n'.format(_SECTION) + text, source=source)
        except configparser.DuplicateOptionError as e:
            raise ConfigInvalidData("duplicate key", key=e.option, lineno=e.lineno - 1)
        except configparser.DuplicateSectionError as e:
            raise ConfigInvalidData("section headers are not allowed", lineno=e.lineno - 1)
        except configparser.ParsingError as e:
            lineno, line = e.errors[0]
            raise ConfigInvalidData("cannot parse {}".format(line), lineno=lineno - 1)
        extra = [s for s in parser.sections() if s != _SECTION]
        if extra:
            raise ConfigInvalidData("section headers are not allowed, found [{}]".format(extra[0]))

        lines = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            stripped = line.strip()
            if '=' in stripped and not stripped.startswith('#'):
                lines.setdefault(stripped.split('=', 1)[0].strip(), lineno)
        return cls.from_dict(dict(parser[_SECTION]), lines, experiment)

    @classmethod
    def from_file(cls, path, experiment=None):
        with open(path, encoding='utf-8') as fh:
            return cls.from_text(fh.read(), source=path, experiment=experiment)

    @classmethod
    def from_header(cls, path):
        """
        Rebuilds the configuration echoed at the top of an output CSV.
        """
        echoed = []
        with open(path, encoding='utf-8') as fh:
            for line in fh:
                if not line.startswith('# '):
                    break
                echoed.append(line[2:])
        return cls.from_text(''.join(echoed), source=path)

    @property
    def experiment(self):
        """
        The name of the experiment this configuration runs.
        """
        return self._experiment

    def header_lines(self):
        """
        (key, text) pairs for every key, in declaration order, that parse
        back to this configuration.
        """
        out = [('experiment', self._experiment)]
        for k in self._config_keys:
            out.append((k.name, _format_value(self._values[k.name], k.auto)))
        return out

    def as_dict(self):
        """
        This configuration, as a dictionary.
        """
        data = {'experiment': self._experiment}
        data.update(self._values)
        return data

    def json(self, **json_kwargs):
        """
        The JSON representation of this configuration
        """
        return json.dumps(self.as_dict(), **json_kwargs)

    def pretty_print(self):
        """
        prints() a pretty version of the JSON of this configuration
        """
        print(self.json(indent=4, sort_keys=True))

    def __eq__(self, other):
        return type(self) is type(other) and self.as_dict() == other.as_dict()

    @property
    def boundaries(self):
        if self.boundary == 'both':
            return [Boundary.MOEBIUS, Boundary.PERIODIC]
        return [Boundary(self.boundary)]

    def ladder_specs(self):
        """
        One LadderSpec per requested boundary.

        Raises:
            LadderInvalidData: for parameters that do not make a ladder.
        """
        kwargs = dict(n_sites=self.n_sites, radius=self.radius, half_width=self.half_width,
                      hopping=self.hopping, rung_couplings=self.rung_coupling,
                      onsite_bias=self.onsite_bias, field_strength=self.field_strength)
        return [LadderSpec(boundary=b, **kwargs) for b in self.boundaries]

    def _key_from_error(self, error, fallback=None):
        # LadderInvalidData messages start with the parameter name
        name = str(error).split(' ', 1)[0]
        name = {'rung_couplings': 'rung_coupling'}.get(name, name)
        return name if name in self._values else fallback

    def _invalid(self, message, key, raise_on_invalid):
        if raise_on_invalid:
            raise ConfigInvalidData(message, key=key, lineno=self._lines.get(key))
        return False

    def validate_data(self, raise_on_invalid=False):
        """
        Checks the keys against each other and that the ladder can be
        built. Single-key ranges were checked when the text was parsed.

        Subclasses add their own checks.
        """
        try:
            self.ladder_specs()
        except LadderInvalidData as e:
            return self._invalid(str(e), self._key_from_error(e), raise_on_invalid)
        return True

    def __repr__(self):
        return "<{}: {}>".format(type(self).__name__, self._experiment)


class SpectrumConfig(RunConfig):
    """Eigenvalues of the site Hamiltonian."""
    _experiment = 'spectrum'
    _config_keys = COMMON_KEYS


class StarkConfig(RunConfig):
    """Stark shifts of the continuum levels against exact diagonalization."""
    _experiment = 'stark'
    _config_keys = COMMON_KEYS + [
        ConfigKey('field', _real(nonnegative=True), 0.1),
        ConfigKey('cutoff', _integer(minimum=2), 8),
        ConfigKey('n_low', _integer(), -2),
        ConfigKey('n_high', _integer(), 2),
    ]

    def validate_data(self, raise_on_invalid=False):
        if not super().validate_data(raise_on_invalid):
            return False
        if self.boundary != 'moebius':
            return self._invalid("the stark experiment only runs on the moebius ring",
                                 'boundary', raise_on_invalid)
        if self.n_low > self.n_high:
            return self._invalid("n_low must not exceed n_high", 'n_low', raise_on_invalid)
        if max(abs(self.n_low), abs(self.n_high)) + 1 > self.cutoff:
            return self._invalid("levels up to |n|={} need cutoff >= {}".format(
                max(abs(self.n_low), abs(self.n_high)), max(abs(self.n_low), abs(self.n_high)) + 1),
                'cutoff', raise_on_invalid)
        return True


class OpticalConfig(RunConfig):
    """Absorption spectrum."""
    _experiment = 'optical'
    _config_keys = COMMON_KEYS + [
        ConfigKey('mode', _choice('continuum', 'discrete'), 'continuum'),
        ConfigKey('occupation', _choice('all', 'ground'), 'all'),
        ConfigKey('field', _real(positive=True), 0.1),
        ConfigKey('broadening', _real(positive=True), 0.1),
        ConfigKey('omega_min', _real(), None, auto=True),
        ConfigKey('omega_max', _real(), None, auto=True),
        ConfigKey('omega_points', _integer(minimum=2), 2001),
        ConfigKey('n_low', _integer(), -2),
        ConfigKey('n_high', _integer(), 2),
    ]

    def omega_grid(self):
        """Uniform grid; auto bounds are 2V -+ 5 (continuum) or 2V -+ (4 xi + 1)."""
        centre = 2 * abs(self.rung_coupling)
        margin = 5.0 if self.mode == 'continuum' else 4 * self.hopping + 1.0
        lo = self.omega_min if self.omega_min is not None else centre - margin
        hi = self.omega_max if self.omega_max is not None else centre + margin
        return np.linspace(lo, hi, self.omega_points)

    def validate_data(self, raise_on_invalid=False):
        if not super().validate_data(raise_on_invalid):
            return False
        if self.n_low > self.n_high:
            return self._invalid("n_low must not exceed n_high", 'n_low', raise_on_invalid)
        grid = self.omega_grid()
        if not grid[0] < grid[-1]:
            return self._invalid("omega_min must be below omega_max", 'omega_min',
                                 raise_on_invalid)
        return True


class TransmissionConfig(RunConfig):
    """Landauer transmission with the lead band centred on one device band."""
    _experiment = 'transmission'
    _config_keys = COMMON_KEYS + [
        ConfigKey('lead_hopping', _real(nonnegative=True), 1.0),
        ConfigKey('tunneling', _real(), None, auto=True),
        ConfigKey('lead_onsite', _real(), None, auto=True),
        ConfigKey('band', _choice('conduction', 'valence'), 'conduction'),
        ConfigKey('energy_min', _real(), None, auto=True),
        ConfigKey('energy_max', _real(), None, auto=True),
        ConfigKey('energy_points', _integer(minimum=2), 2000),
        ConfigKey('attach_left', _integer(minimum=0), 0),
        ConfigKey('attach_right', _integer(minimum=0), None, auto=True),
        ConfigKey('wide_band', _boolean, False),
    ]

    @property
    def band_centre(self):
        sign = 1 if self.band == 'conduction' else -1
        return sign * self.rung_coupling

    def resolved_lead_onsite(self):
        return self.lead_onsite if self.lead_onsite is not None else self.band_centre

    def energy_grid(self):
        """Uniform grid; auto bounds cover the chosen band, +-V -+ 2 xi."""
        lo = (self.energy_min if self.energy_min is not None
              else self.band_centre - 2 * self.hopping)
        hi = (self.energy_max if self.energy_max is not None
              else self.band_centre + 2 * self.hopping)
        return np.linspace(lo, hi, self.energy_points)

    def lead_spec(self):
        # Imported here: transport pulls in the whole lattice package
        from .transport import LeadSpec
        return LeadSpec(hopping=self.lead_hopping, attach_left=self.attach_left,
                        attach_right=self.attach_right, onsite=self.resolved_lead_onsite(),
                        tunneling=self.tunneling, wide_band=self.wide_band)

    def validate_data(self, raise_on_invalid=False):
        if not super().validate_data(raise_on_invalid):
            return False
        grid = self.energy_grid()
        if not grid[0] < grid[-1]:
            return self._invalid("energy_min must be below energy_max", 'energy_min',
                                 raise_on_invalid)
        try:
            self.lead_spec().attachment(self.n_sites)
        except LadderInvalidData as e:
            return self._invalid(str(e), self._key_from_error(e, 'attach_right'), raise_on_invalid)
        return True


class DecoherenceConfig(RunConfig):
    """Decoherence factor and entanglement entropy of an electron started on a_0."""
    _experiment = 'decoherence'
    _config_keys = COMMON_KEYS + [
        ConfigKey('t_max', _real(positive=True), None, auto=True),
        ConfigKey('time_points', _integer(minimum=2), 2000),
    ]

    def time_grid(self):
        """Uniform grid on [0, t_max]; auto t_max is 3N/(2 xi)."""
        t_max = (self.t_max if self.t_max is not None
                 else 3 * self.n_sites / (2 * self.hopping))
        return np.linspace(0.0, t_max, self.time_points)

    def validate_data(self, raise_on_invalid=False):
        if not super().validate_data(raise_on_invalid):
            return False
        if self.onsite_bias != 0 or self.field_strength is not None:
            return self._invalid("decoherence needs an unbiased ladder", 'onsite_bias',
                                 raise_on_invalid)
        if self.hopping == 0 and self.t_max is None:
            return self._invalid("auto t_max needs hopping > 0", 't_max', raise_on_invalid)
        return True
