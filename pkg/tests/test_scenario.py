import json
import os
import shutil
import sys
import tempfile

modules_path = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, os.path.join(modules_path, 'src'))

from unittest import TestCase

from beamlink.constants import Tracking
from beamlink.exceptions import ConfigError
from lunar_wpt_impl.scenario import DEFAULT_CONFIG_PATH, canonical_json, config_hash, dump_config, load_config, \
    scenario_from_dict


class TestLoadConfig(TestCase):
    def setUp(self):
        self.tmp = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def write(self, text):
        path = os.path.join(self.tmp, 'scenario.json')
        with open(path, 'w') as f:
            f.write(text)
        return path

    def test_default_scenario(self):
        scenario = load_config()
        self.assertEqual(scenario.llo.semi_major_axis, 1837.4)
        self.assertEqual(scenario.llo.raan, 355.0)
        self.assertEqual(scenario.sps.semi_major_axis, 2037.4)
        self.assertEqual(scenario.sps.raan, 90.0)
        self.assertEqual(scenario.fso.P_S, 1e6)
        self.assertEqual(scenario.rf.frequency, 2.5e9)
        self.assertEqual(scenario.rf.receiver.tracking, Tracking.FULL)
        self.assertEqual([site.name for site in scenario.sites], ['LSP', 'Malapert'])
        self.assertEqual(scenario.primary_site.latitude, -90.0)
        self.assertEqual(scenario.secondary_site.altitude, 4.7)
        self.assertEqual((scenario.t0, scenario.t1, scenario.dt), (0.0, 7200.0, 10.0))
        self.assertEqual(scenario.monte_carlo.n_samples, 1000000)

    def test_default_path_matches_empty_document(self):
        self.assertEqual(load_config(DEFAULT_CONFIG_PATH), scenario_from_dict({}))

    def test_empty_file(self):
        self.assertEqual(load_config(self.write('')), load_config())
        self.assertEqual(load_config(self.write('  \n')), load_config())

    def test_partial_override(self):
        scenario = load_config(self.write(json.dumps({'rf': {'frequency': 5e9}})))
        self.assertAlmostEqual(scenario.rf.lambda_r, load_config().rf.lambda_r / 2.0)
        self.assertEqual(scenario.rf.receiver.diameter, 50.0)

    def test_invalid_eccentricity(self):
        with self.assertRaises(ConfigError) as cm:
            load_config(self.write(json.dumps({'orbits': {'llo': {'eccentricity': 1.5}}})))
        self.assertEqual(cm.exception.field, 'orbits.llo.eccentricity')
        self.assertIn('orbits.llo.eccentricity', str(cm.exception))

    def test_unknown_keys(self):
        for document, field in (({'rf': {'frequncy': 5e9}}, 'rf.frequncy'),
                                ({'radio': {}}, 'radio'),
                                ({'rf': {'transmitter': {'size': 4}}}, 'rf.transmitter.size'),
                                ({'sites': [{'name': 'A', 'latitude': 0, 'longitude': 0, 'height': 1},
                                            {'name': 'B', 'latitude': 1, 'longitude': 0}]}, 'sites[0].height')):
            with self.assertRaises(ConfigError) as cm:
                scenario_from_dict(document)
            self.assertEqual(cm.exception.field, field)

    def test_wrong_types(self):
        with self.assertRaises(ConfigError) as cm:
            scenario_from_dict({'fso': {'P_S': 'abc'}})
        self.assertEqual(cm.exception.field, 'fso.P_S')
        with self.assertRaises(ConfigError) as cm:
            scenario_from_dict({'fso': {'P_S': True}})
        self.assertEqual(cm.exception.field, 'fso.P_S')
        with self.assertRaises(ConfigError):
            scenario_from_dict({'rf': {'power_split': 1}})
        with self.assertRaises(ConfigError):
            scenario_from_dict({'grid': {'dt': None}})

    def test_invalid_values(self):
        for document, field in (({'fso': {'P_S': -1.0}}, 'fso.P_S'),
                                ({'grid': {'dt': 0.0}}, 'grid.dt'),
                                ({'rf': {'receiver': {'tracking': 'sideways'}}}, 'rf.receiver.tracking'),
                                ({'monte_carlo': {'n_samples': 0}}, 'monte_carlo.n_samples'),
                                ({'pointing': {'sigma': 0.0}}, 'pointing.sigma')):
            with self.assertRaises(ConfigError) as cm:
                scenario_from_dict(document)
            self.assertEqual(cm.exception.field, field)

    def test_site_count(self):
        with self.assertRaises(ConfigError) as cm:
            scenario_from_dict({'sites': [{'name': 'LSP', 'latitude': -90.0, 'longitude': 0.0}]})
        self.assertEqual(cm.exception.field, 'sites')

    def test_site_missing_latitude(self):
        with self.assertRaises(ConfigError):
            scenario_from_dict({'sites': [{'name': 'A', 'longitude': 0.0},
                                          {'name': 'B', 'latitude': -86.0, 'longitude': 0.0}]})

    def test_null_theta(self):
        scenario = scenario_from_dict({'fso': {'theta': None}})
        self.assertAlmostEqual(scenario.fso.theta, 1064e-9 / 0.3)

    def test_malformed_json(self):
        with self.assertRaises(ConfigError) as cm:
            load_config(self.write('{\n  "rf": {frequency: 1}\n}\n'))
        self.assertIn('line 2', str(cm.exception))

    def test_missing_file(self):
        with self.assertRaises(ConfigError):
            load_config(os.path.join(self.tmp, 'missing.json'))


class TestDumpConfig(TestCase):
    def test_round_trip(self):
        scenario = scenario_from_dict({'rf': {'frequency': 5e9, 'power_split': True},
                                       'monte_carlo': {'seed': 9, 'workers': 2}})
        document = json.loads(json.dumps(dump_config(scenario)))
        self.assertEqual(scenario_from_dict(document), scenario)

    def test_hash(self):
        scenario = load_config()
        self.assertEqual(config_hash(scenario), config_hash(load_config()))
        self.assertEqual(len(config_hash(scenario)), 64)
        self.assertNotEqual(config_hash(scenario), config_hash(scenario_from_dict({'monte_carlo': {'seed': 2}})))

    def test_canonical_json(self):
        self.assertEqual(canonical_json({'b': 1, 'a': [1.5, None]}), '{"a":[1.5,null],"b":1}')
