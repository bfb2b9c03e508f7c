"""
Scenario documents: a JSON file mirroring the orbital, optical, RF, grid and
Monte Carlo parameters. Any section or key left out takes the value from
the shipped default scenario.
"""

import copy
import hashlib
import json
import logging
import os
from collections import namedtuple

from beamlink.exceptions import ConfigError, ValidationError
from beamlink.fso import FsoLink
from beamlink.orbits import BodyConstants, GroundSite, KeplerianElements
from beamlink.pointing import McConfig, PointingModel
from beamlink.rf import DishAntenna, RfLink

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'config', 'default_scenario.json')

# keys whose value may be null; null theta means lambda_o / D_o
NULLABLE_KEYS = {'fso.theta'}

SITE_DEFAULTS = {'name': None, 'latitude': None, 'longitude': None, 'altitude': 0.0}


class Scenario(namedtuple('_Scenario', ['body', 'sps', 'llo', 'sites', 'fso', 'pointing', 'rf',
                                        't0', 't1', 'dt', 'elevation_mask', 'monte_carlo'])):
    """
    Complete simulation input. `sites[0]` is the site the relay transmitter
    keeps on boresight, `sites[1]` the half-tracking site.
    """
    __slots__ = ()

    def __new__(cls, body, sps, llo, sites, fso, pointing, rf, t0=0.0, t1=7200.0, dt=10.0, elevation_mask=0.0,
                monte_carlo=None):
        sites = tuple(sites)
        if len(sites) != 2:
            raise ValidationError("exactly two ground sites are required, got {}".format(len(sites)),
                                  field='sites')
        if not dt > 0:
            raise ValidationError("dt must be positive, got {}".format(dt), field='dt')
        if not t1 > t0:
            raise ValidationError("t1 ({}) must be after t0 ({})".format(t1, t0), field='t1')
        if t0 < 0:
            raise ValidationError("t0 must be non-negative, got {}".format(t0), field='t0')
        if monte_carlo is None:
            monte_carlo = McConfig()
        return super().__new__(cls, body, sps, llo, sites, fso, pointing, rf, float(t0), float(t1), float(dt),
                               float(elevation_mask), monte_carlo)

    @property
    def primary_site(self):
        return self.sites[0]

    @property
    def secondary_site(self):
        return self.sites[1]


def _load_default_document():
    with open(DEFAULT_CONFIG_PATH) as f:
        return json.load(f)


def _is_number(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _check_type(path, default, value):
    if value is None:
        if path in NULLABLE_KEYS:
            return
        raise ConfigError("{}: value must not be null".format(path), field=path)
    if isinstance(default, bool):
        ok = isinstance(value, bool)
    elif _is_number(default):
        ok = _is_number(value)
    else:
        ok = isinstance(value, type(default))
    if not ok:
        raise ConfigError("{}: expected {}, got {!r}".format(path, type(default).__name__, value), field=path)


def _merge(defaults, overrides, path=''):
    """
    Overlay `overrides` on `defaults`, rejecting keys the defaults do not know.
    """
    if not isinstance(overrides, dict):
        raise ConfigError("{}: expected an object, got {!r}".format(path or 'document', overrides),
                          field=path or None)
    merged = copy.deepcopy(defaults)
    for key, value in overrides.items():
        key_path = '{}.{}'.format(path, key) if path else key
        if key not in defaults:
            raise ConfigError("{}: unknown key".format(key_path), field=key_path)
        default = defaults[key]
        if key_path == 'sites':
            merged[key] = _merge_sites(value)
        elif isinstance(default, dict):
            merged[key] = _merge(default, value, key_path)
        else:
            _check_type(key_path, default, value)
            merged[key] = value
    return merged


def _merge_sites(sites):
    if not isinstance(sites, list):
        raise ConfigError("sites: expected a list, got {!r}".format(sites), field='sites')
    merged = []
    for index, site in enumerate(sites):
        path = 'sites[{}]'.format(index)
        if not isinstance(site, dict):
            raise ConfigError("{}: expected an object, got {!r}".format(path, site), field=path)
        entry = dict(SITE_DEFAULTS)
        for key, value in site.items():
            key_path = '{}.{}'.format(path, key)
            if key not in SITE_DEFAULTS:
                raise ConfigError("{}: unknown key".format(key_path), field=key_path)
            _check_type(key_path, 'LSP' if key == 'name' else 0.0, value)
            entry[key] = value
        for key, value in entry.items():
            if value is None:
                raise ConfigError("{}.{}: missing value".format(path, key), field='{}.{}'.format(path, key))
        merged.append(entry)
    return merged


def _build(section, factory, **kwargs):
    try:
        return factory(**kwargs)
    except ValidationError as e:
        field = '{}.{}'.format(section, e.field) if e.field else section
        raise ConfigError("{}: {}".format(field, e), field=field, inner_exception=e)
    except (TypeError, ValueError) as e:
        raise ConfigError("{}: {}".format(section, e), field=section, inner_exception=e)


def scenario_from_dict(document):
    """
    Build a validated Scenario from a (possibly partial) config document.
    """
    doc = _merge(_load_default_document(), document)
    if len(doc['sites']) != 2:
        raise ConfigError("sites: exactly two ground sites are required, got {}".format(len(doc['sites'])),
                          field='sites')
    body = _build('body', BodyConstants, **doc['body'])
    orbits = {name: _build('orbits.{}'.format(name), KeplerianElements, body=body, **doc['orbits'][name])
              for name in ('sps', 'llo')}
    sites = [_build('sites[{}]'.format(i), GroundSite, **site) for i, site in enumerate(doc['sites'])]
    fso = _build('fso', FsoLink, **doc['fso'])
    pointing = _build('pointing', PointingModel, **doc['pointing'])
    rf_doc = dict(doc['rf'])
    transmitter = _build('rf.transmitter', DishAntenna, **rf_doc.pop('transmitter'))
    receiver = _build('rf.receiver', DishAntenna, **rf_doc.pop('receiver'))
    rf = _build('rf', RfLink, transmitter=transmitter, receiver=receiver, **rf_doc)
    monte_carlo = _build('monte_carlo', McConfig, **doc['monte_carlo'])
    grid = doc['grid']
    return _build('grid', Scenario, body=body, sps=orbits['sps'], llo=orbits['llo'], sites=sites, fso=fso,
                  pointing=pointing, rf=rf, t0=grid['t0'], t1=grid['t1'], dt=grid['dt'],
                  elevation_mask=grid['elevation_mask'], monte_carlo=monte_carlo)


def load_config(path=None):
    """
    Load a scenario document. An empty file, or no path at all, gives the
    default scenario.

    :param path: path to a JSON scenario document
    :return: Scenario
    """
    if path is None:
        path = DEFAULT_CONFIG_PATH
    try:
        with open(path) as f:
            text = f.read()
    except OSError as e:
        raise ConfigError("cannot read config {}: {}".format(path, e), inner_exception=e)
    if not text.strip():
        document = {}
    else:
        try:
            document = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigError("{} line {} column {}: {}".format(path, e.lineno, e.colno, e.msg), inner_exception=e)
    scenario = scenario_from_dict(document)
    logger.info("loaded scenario from {} (sha256 {})".format(path, config_hash(scenario)[:12]))
    return scenario


def dump_config(scenario):
    """
    Full config document for a scenario; scenario_from_dict() of the result
    gives back an equal Scenario.
    """
    rf = scenario.rf
    return {
        'body': dict(scenario.body._asdict()),
        'orbits': {'sps': dict(scenario.sps._asdict()), 'llo': dict(scenario.llo._asdict())},
        'sites': [dict(site._asdict()) for site in scenario.sites],
        'fso': dict(scenario.fso._asdict()),
        'pointing': dict(scenario.pointing._asdict()),
        'rf': {
            'frequency': rf.frequency,
            'eta_er': rf.eta_er,
            'eta_re': rf.eta_re,
            'power_split': rf.power_split,
            'transmitter': _dish_dict(rf.transmitter),
            'receiver': _dish_dict(rf.receiver),
        },
        'grid': {'t0': scenario.t0, 't1': scenario.t1, 'dt': scenario.dt, 'elevation_mask': scenario.elevation_mask},
        'monte_carlo': dict(scenario.monte_carlo._asdict()),
    }


def _dish_dict(dish):
    return {'diameter': dish.diameter, 'efficiency': dish.efficiency, 'tracking': dish.tracking.value}


def canonical_json(document):
    return json.dumps(document, sort_keys=True, separators=(',', ':'))


def config_hash(scenario):
    return hashlib.sha256(canonical_json(dump_config(scenario)).encode('utf-8')).hexdigest()
