import json
import os
import shutil
import sys
import tempfile
import unittest

sys.path.insert(1, os.path.join(os.path.dirname(__file__), '..'))
from eigenfib.catalog import ConditionError
from eigenfib.config import DEFAULT_TOLERANCES, ConfigError, RunConfig
from eigenfib.spaces import SpaceId


class Test(unittest.TestCase):

    def setUp(self):
        self.tmpdir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmpdir)

    def write_config(self, data):
        path = os.path.join(self.tmpdir, 'run.json')
        with open(path, 'w') as f:
            json.dump(data, f)
        return path

    def test_defaults(self):
        config = RunConfig()
        self.assertEqual(config.points, 50)
        self.assertEqual(config.tolerances, DEFAULT_TOLERANCES)
        self.assertIsNot(config.tolerances, DEFAULT_TOLERANCES)

    def test_precedence(self):
        path = self.write_config({'space': 'slr-so:3', 'points': 10,
                                  'seed': 4})
        config = RunConfig.from_file(path)
        config.update({'points': 20, 'seed': None})
        self.assertEqual(config.points, 20)
        self.assertEqual(config.seed, 4)
        self.assertEqual(config.space_id, SpaceId('SLR_SO', 3))

    def test_unknown_key(self):
        with self.assertRaises(ConfigError):
            RunConfig(colour='red')
        path = self.write_config(['not', 'an', 'object'])
        with self.assertRaises(ConfigError):
            RunConfig.from_file(path)
        with self.assertRaises(ConfigError):
            RunConfig.from_file(os.path.join(self.tmpdir, 'missing.json'))

    def test_tolerances(self):
        config = RunConfig(tolerances=['eigen=1e-6', 'zero = 1e-12'])
        self.assertEqual(config.tolerances['eigen'], 1e-6)
        self.assertEqual(config.tolerances['zero'], 1e-12)
        self.assertEqual(config.tolerances['dual'], 1e-7)
        config.set_tolerances({'dual': '2e-7'})
        self.assertEqual(config.tolerances['dual'], 2e-7)
        for bad in (['eigen'], ['speed=1'], ['eigen=fast']):
            with self.assertRaises(ConfigError):
                RunConfig(tolerances=bad)

    def test_space_forms(self):
        self.assertEqual(RunConfig(space='spr-u', n=2).space_id,
                         SpaceId('SPR_U', 2))
        with self.assertRaises(ConfigError):
            RunConfig(space='spr-u').space_id
        with self.assertRaises(ConfigError):
            RunConfig(space='spr-u:2', n=3).space_id
        with self.assertRaises(ConfigError):
            RunConfig(space='gl:3').space_id
        with self.assertRaises(ConfigError):
            RunConfig().space_id

    def test_spec(self):
        spec = RunConfig(space='slr-so:3', a='1,1i,0').spec()
        self.assertEqual(spec.expected_mu, 8. / 3.)
        with self.assertRaises(ConfigError):
            RunConfig(space='slr-so:3').spec()
        with self.assertRaises(ConfigError):
            RunConfig(space='slr-so:3', a='1,q,0').spec()
        with self.assertRaises(ConditionError):
            RunConfig(space='slr-so:3', a='1,1i').spec()

    def test_validate(self):
        RunConfig(steps=0).validate()
        for values in ({'h': 0.}, {'points': 0}, {'steps': -1},
                       {'step_size': -0.1}, {'curvature_points': 0},
                       {'tolerances': ['eigen=0']}):
            with self.assertRaises(ConfigError, msg=str(values)):
                RunConfig(**values).validate()

    def test_to_dict(self):
        data = RunConfig(space='slr-so:3', a='1,1i,0').to_dict()
        self.assertEqual(data['a'], ['1.0+0.0i', '0.0+1.0i', '0.0+0.0i'])
        self.assertIsNone(data['b'])
        self.assertEqual(data['tolerances']['curvature'], 5e-3)
        json.dumps(data)


if __name__ == '__main__':
    unittest.main()
