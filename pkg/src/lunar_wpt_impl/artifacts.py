"""
Run artifacts: the time series CSV, Monte Carlo histogram CSVs, the extremes
report and the run manifest.
"""

import csv
import hashlib
import json
import logging
import math

from beamlink.exceptions import ConfigError
from beamlink.util import to_db

from . import __version__
from .scenario import config_hash, dump_config, scenario_from_dict

logger = logging.getLogger(__name__)

TIMESERIES_COLUMNS = ['t_s', 'z_km', 'd_p_km', 'd_m_km', 'phi_Tm_rad', 'G_Tp_dB', 'G_Rp_dB', 'G_Tm_dB', 'G_Rm_dB',
                      'P_Hl_W', 'P_Hp_W', 'P_Hm_W', 'vis_fso', 'vis_lsp', 'vis_mal']

HISTOGRAM_COLUMNS = ['bin_center', 'density']

MANIFEST_KEYS = ('version', 'seed', 'config_sha256', 'config', 'options', 'artifacts')


def format_value(value):
    """
    >>> format_value(351390.00000000006)
    '351390'
    >>> format_value(None)
    ''
    >>> format_value(True)
    '1'
    """
    if value is None:
        return ''
    if isinstance(value, bool):
        return '1' if value else '0'
    return '{:.9g}'.format(value)


def timeseries_row(sample):
    return [format_value(v) for v in (
        sample.t, sample.z, sample.d_p, sample.d_m, sample.phi_Tm,
        to_db(sample.G_Tp), to_db(sample.G_Rp), to_db(sample.G_Tm), to_db(sample.G_Rm),
        sample.P_H_l, sample.P_H_p, sample.P_H_m,
        sample.vis_fso, sample.vis_lsp, sample.vis_mal)]


def write_timeseries(samples, path):
    """
    Write chain samples as CSV, one row per grid instant. Power fields are
    empty outside the common visibility window.
    """
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(TIMESERIES_COLUMNS)
        for sample in samples:
            writer.writerow(timeseries_row(sample))
    logger.info("wrote {} time series rows to {}".format(len(samples), path))
    return path


def write_histogram(stats, path):
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(HISTOGRAM_COLUMNS)
        for center, density in stats.histogram:
            writer.writerow([format_value(center), format_value(density)])
    logger.info("wrote {} histogram bins to {}".format(len(stats.histogram), path))
    return path


def _point_dict(name, point):
    entry = dict(point._asdict())
    if name.startswith('G_'):
        # JSON has no infinity; a zero gain is written as null
        value_db = to_db(point.value)
        entry['value_dB'] = value_db if math.isfinite(value_db) else None
    return entry


def extremes_document(report, windows, end_to_end=None, monte_carlo=None):
    """
    JSON-ready extremes report. `report` is None when the links never meet.
    """
    document = {
        'contact': report is not None,
        'windows': {name: [[w.start, w.end] for w in found] for name, found in windows.items()},
    }
    if report is None:
        return document
    values = report._asdict()
    document['extremes'] = {name: _point_dict(name, values[name]) for name in report._fields
                            if name.endswith('_min') or name.endswith('_max')}
    document['means'] = {name: values[name] for name in ('mean_P_H_l', 'mean_P_H_p', 'mean_P_H_m')}
    document['n_samples'] = report.n_samples
    if end_to_end is not None:
        document['max_end_to_end'] = dict(end_to_end._asdict())
    if monte_carlo:
        document['monte_carlo'] = {name: {'mean': stats.mean, 'std_dev': stats.std_dev, 'min': stats.min,
                                          'max': stats.max} for name, stats in monte_carlo.items()}
    return document


def write_extremes(report, windows, path, end_to_end=None, monte_carlo=None):
    document = extremes_document(report, windows, end_to_end, monte_carlo)
    with open(path, 'w') as f:
        json.dump(document, f, indent=2, sort_keys=True, allow_nan=False)
        f.write('\n')
    logger.info("wrote extremes report to {}".format(path))
    return path


def file_sha256(path):
    digest = hashlib.sha256()
    with open(path, 'rb') as f:
        for chunk in iter(lambda: f.read(65536), b''):
            digest.update(chunk)
    return digest.hexdigest()


def write_manifest(path, scenario, artifacts, options):
    """
    Record what is needed to rerun a chain: config, seed, options and the
    SHA-256 of every artifact.

    :param artifacts: dict name -> file path
    :param options: dict of run options (e.g. {'monte_carlo': True})
    """
    manifest = {
        'version': __version__,
        'seed': scenario.monte_carlo.seed,
        'config_sha256': config_hash(scenario),
        'config': dump_config(scenario),
        'options': options,
        'artifacts': {name: file_sha256(p) for name, p in sorted(artifacts.items())},
    }
    with open(path, 'w') as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
        f.write('\n')
    logger.info("wrote manifest for {} artifacts to {}".format(len(artifacts), path))
    return manifest


def read_manifest(path):
    """
    Load a manifest and the scenario embedded in it.

    :return: (manifest dict, Scenario)
    """
    try:
        with open(path) as f:
            manifest = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError("cannot read manifest {}: {}".format(path, e), inner_exception=e)
    missing = [key for key in MANIFEST_KEYS if key not in manifest]
    if missing:
        raise ConfigError("manifest {} lacks {}".format(path, ', '.join(missing)))
    scenario = scenario_from_dict(manifest['config'])
    if config_hash(scenario) != manifest['config_sha256']:
        raise ConfigError("manifest {} config does not match its recorded hash".format(path),
                          field='config_sha256')
    if manifest['version'] != __version__:
        logger.warning("manifest was written by version {}, running {}".format(manifest['version'], __version__))
    return manifest, scenario
