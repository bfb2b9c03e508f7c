"""
Command line entrypoint for the hybrid power beaming simulator.
"""

import argparse
import math
import os
import sys

from beamlink.constants import Target
from beamlink.exceptions import ContractViolation, ManifestMismatchError, NumericalError, ValidationError
from beamlink.fso import beam_radius, captured_power_aligned, captured_power_offset, harvested_optical
from beamlink.orbits import orbital_energy, propagate
from beamlink.pointing import McConfig
from beamlink.rf import rf_sample
from beamlink.util import to_db

from . import __version__, logger
from .artifacts import format_value, read_manifest, write_extremes, write_histogram, write_manifest, \
    write_timeseries
from .chain import (INSTANT_SELECTORS, STANDARD_CASES, extremes, frequency_sweep, in_window_samples,
                    instant_for, link_windows, max_end_to_end, mc_end_to_end, run_timeseries)
from .scenario import load_config

OUTPUT_DIR_ENV = 'HYBRIDWPT_OUTPUT_DIR'
DEFAULT_OUTPUT_DIR = 'hybrid_wpt_out'

TIMESERIES_FILE = 'timeseries.csv'
EXTREMES_FILE = 'extremes.json'
MANIFEST_FILE = 'manifest.json'

# exit statuses
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_NUMERICAL = 4


def _print_values(pairs):
    for name, value in pairs:
        print("{}: {}".format(name, value if isinstance(value, str) else format_value(value)))


def output_dir(requested=None):
    return requested or os.environ.get(OUTPUT_DIR_ENV) or DEFAULT_OUTPUT_DIR


def histogram_file(selector, target):
    return 'mc_{}_{}.csv'.format(selector, Target(target).value)


def cmd_propagate(args):
    scenario = load_config(args.config)
    names = [args.sat] if args.sat else ['sps', 'llo']
    for name in names:
        state = propagate(getattr(scenario, name), scenario.body, args.t)
        _print_values([
            ('satellite', name),
            ('t_s', state.t),
            ('position_km', ' '.join(format_value(c) for c in state.position)),
            ('velocity_km_s', ' '.join(format_value(c) for c in state.velocity)),
            ('radius_km', state.radius),
            ('energy_km2_s2', orbital_energy(state, scenario.body)),
        ])
    return EXIT_OK


def cmd_visibility(args):
    scenario = load_config(args.config)
    for name, windows in link_windows(scenario).items():
        if not windows:
            print("{}: none".format(name))
        for w in windows:
            print("{}: {} {} {}".format(name, format_value(w.start), format_value(w.end), format_value(w.duration)))
    return EXIT_OK


def cmd_fso(args):
    scenario = load_config(args.config)
    fso = scenario.fso
    z = args.z_km * 1e3
    if args.v_m != 0:
        P_R = captured_power_offset(fso, z, args.v_m)
    else:
        P_R = float(captured_power_aligned(fso, z))
    _print_values([
        ('w_z_m', float(beam_radius(fso, z))),
        ('P_R_W', P_R),
        ('P_H_W', float(harvested_optical(fso, P_R))),
    ])
    return EXIT_OK


def cmd_rf(args):
    scenario = load_config(args.config)
    phi_T = math.radians(args.phi_deg)
    phi_R = math.radians(args.phi_r_deg)
    sample = rf_sample(scenario.rf, 0.0, args.pt_w, args.d_km * 1e3, phi_T, phi_R)
    _print_values([
        ('G_T_dB', to_db(sample.G_T)),
        ('G_R_dB', to_db(sample.G_R)),
        ('P_R_W', sample.P_R),
        ('P_H_W', sample.P_H),
    ])
    return EXIT_OK


def _monte_carlo_config(scenario, args):
    mc = scenario.monte_carlo
    return McConfig(args.n if args.n is not None else mc.n_samples,
                    args.seed if args.seed is not None else mc.seed,
                    args.bins if args.bins is not None else mc.n_bins,
                    args.workers if args.workers is not None else mc.workers)


def cmd_montecarlo(args):
    scenario = load_config(args.config)
    if args.at.startswith('t='):
        t = instant_for(None, args.at)
    else:
        t = instant_for(extremes(run_timeseries(scenario)), args.at)
    stats = mc_end_to_end(scenario, t, _monte_carlo_config(scenario, args), args.target)
    _print_values([
        ('t_s', t),
        ('target', Target(args.target).value),
        ('mean_W', stats.mean),
        ('std_dev_W', stats.std_dev),
        ('min_W', stats.min),
        ('max_W', stats.max),
    ])
    if args.out:
        write_histogram(stats, args.out)
    return EXIT_OK


def run_chain(scenario, out, monte_carlo=True, workers=1):
    """
    Full pipeline: time series, windows, extremes and, optionally, the
    standard Monte Carlo cases. Writes every artifact plus a manifest into
    `out`.

    :return: the manifest dict
    """
    os.makedirs(out, exist_ok=True)
    samples = run_timeseries(scenario, workers)
    artifacts = {TIMESERIES_FILE: write_timeseries(samples, os.path.join(out, TIMESERIES_FILE))}
    windows = link_windows(scenario)

    report = end_to_end = None
    mc_stats = {}
    if in_window_samples(samples):
        report = extremes(samples)
        end_to_end = max_end_to_end(samples, tuple(site.name for site in scenario.sites))
        if monte_carlo:
            cfg = scenario.monte_carlo
            for selector, target in STANDARD_CASES:
                name = histogram_file(selector, target)
                stats = mc_end_to_end(scenario, instant_for(report, selector), cfg, target)
                mc_stats[name[:-len('.csv')]] = stats
                artifacts[name] = write_histogram(stats, os.path.join(out, name))

    artifacts[EXTREMES_FILE] = write_extremes(report, windows, os.path.join(out, EXTREMES_FILE), end_to_end,
                                              mc_stats)
    return write_manifest(os.path.join(out, MANIFEST_FILE), scenario, artifacts, {'monte_carlo': monte_carlo})


def cmd_chain(args):
    out = output_dir(args.out)
    if args.manifest:
        recorded, scenario = read_manifest(args.manifest)
        manifest = run_chain(scenario, out, recorded['options'].get('monte_carlo', True), args.workers or 1)
        mismatched = sorted(name for name, digest in recorded['artifacts'].items()
                            if manifest['artifacts'].get(name) != digest)
        if mismatched:
            raise ManifestMismatchError("rerun of {} differs in: {}".format(args.manifest, ', '.join(mismatched)))
        logger.info("rerun reproduced all {} artifacts of {}".format(len(recorded['artifacts']), args.manifest))
    else:
        scenario = load_config(args.config)
        run_chain(scenario, out, not args.no_mc, args.workers or 1)
    print("artifacts: {}".format(out))
    return EXIT_OK


def cmd_report(args):
    scenario = load_config(args.config)
    samples = run_timeseries(scenario)
    if not in_window_samples(samples):
        print("no contact")
        return EXIT_OK
    report = extremes(samples)
    print("{:<10} {:>10} {:>16} {:>14} {:>14} {:>14}".format('quantity', 't_s', 'value', 'P_Hl_W', 'P_Hp_W',
                                                              'P_Hm_W'))
    values = report._asdict()
    for name in report._fields:
        if not (name.endswith('_min') or name.endswith('_max')):
            continue
        point = values[name]
        value = format_value(to_db(point.value)) + ' dB' if name.startswith('G_') else format_value(point.value)
        print("{:<10} {:>10} {:>16} {:>14} {:>14} {:>14}".format(
            name, format_value(point.t), value, format_value(point.P_H_l), format_value(point.P_H_p),
            format_value(point.P_H_m)))
    end_to_end = max_end_to_end(samples, tuple(site.name for site in scenario.sites))
    print("max end-to-end: {} km via {} at t={} s, delay {} s".format(
        format_value(end_to_end.length), end_to_end.site, format_value(end_to_end.t),
        format_value(end_to_end.delay)))
    return EXIT_OK


def cmd_sweep(args):
    scenario = load_config(args.config)
    print("{:>14} {:>14} {:>14} {:>14} {:>14}".format('frequency_Hz', 'max_P_Hp_W', 'mean_P_Hp_W', 'max_P_Hm_W',
                                                      'mean_P_Hm_W'))
    for point in frequency_sweep(scenario, [f * 1e9 for f in args.freq_ghz]):
        print("{:>14} {:>14} {:>14} {:>14} {:>14}".format(*(format_value(v) for v in point)))
    return EXIT_OK


def build_parser():
    config = argparse.ArgumentParser(add_help=False)
    config.add_argument('--config', help="scenario JSON document (default: the shipped reference scenario)")

    parser = argparse.ArgumentParser(prog='hybrid-wpt',
                                     description="Hybrid laser/RF wireless power transfer simulator for "
                                                 "low lunar orbit relays.")
    parser.add_argument('--version', action='version', version='%(prog)s {}'.format(__version__))
    subparsers = parser.add_subparsers(dest='command', metavar='command')
    subparsers.required = True

    p = subparsers.add_parser('propagate', parents=[config], help="satellite state at one instant")
    p.add_argument('--sat', choices=['sps', 'llo'])
    p.add_argument('--t', type=float, default=0.0, help="scenario time (s)")
    p.set_defaults(func=cmd_propagate)

    p = subparsers.add_parser('visibility', parents=[config], help="link and common visibility windows")
    p.set_defaults(func=cmd_visibility)

    p = subparsers.add_parser('fso', parents=[config], help="single laser hop query")
    p.add_argument('--z-km', type=float, required=True)
    p.add_argument('--v-m', type=float, default=0.0, help="radial pointing offset (m)")
    p.set_defaults(func=cmd_fso)

    p = subparsers.add_parser('rf', parents=[config], help="single RF hop query")
    p.add_argument('--d-km', type=float, required=True)
    p.add_argument('--phi-deg', type=float, default=0.0, help="transmitter off-boresight angle (deg)")
    p.add_argument('--phi-r-deg', type=float, default=0.0, help="receiver off-boresight angle (deg)")
    p.add_argument('--pt-w', type=float, required=True, help="relay electrical power (W)")
    p.set_defaults(func=cmd_rf)

    p = subparsers.add_parser('chain', parents=[config], help="full pipeline, writes run artifacts")
    p.add_argument('--out', help="artifact directory (default: ${} or ./{})".format(OUTPUT_DIR_ENV,
                                                                                    DEFAULT_OUTPUT_DIR))
    p.add_argument('--no-mc', action='store_true', help="skip the Monte Carlo histograms")
    p.add_argument('--manifest', help="rerun from a manifest and verify its artifact hashes")
    p.add_argument('--workers', type=int)
    p.set_defaults(func=cmd_chain)

    p = subparsers.add_parser('montecarlo', parents=[config], help="pointing error distribution at one instant")
    p.add_argument('--at', required=True, help="{} or t=<s>".format('|'.join(INSTANT_SELECTORS)))
    p.add_argument('--target', required=True, choices=[t.value for t in Target])
    p.add_argument('--seed', type=int)
    p.add_argument('--n', type=int)
    p.add_argument('--bins', type=int)
    p.add_argument('--workers', type=int)
    p.add_argument('--out', help="histogram CSV path")
    p.set_defaults(func=cmd_montecarlo)

    p = subparsers.add_parser('report', parents=[config], help="print the extremes table")
    p.set_defaults(func=cmd_report)

    p = subparsers.add_parser('sweep', parents=[config], help="harvested RF power against frequency")
    p.add_argument('--freq-ghz', type=float, nargs='+', required=True)
    p.set_defaults(func=cmd_sweep)
    return parser


def cli(argv=None):
    """
    Run one subcommand.

    :param argv: argument list (default: sys.argv[1:])
    :return: exit status: 0 success, 2 usage, 3 validation, 4 numerical
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        return args.func(args)
    except (ValidationError, ContractViolation) as e:
        logger.error("{}: {}".format(args.command, e))
        print("error: {}".format(e), file=sys.stderr)
        return EXIT_VALIDATION
    except (NumericalError, ManifestMismatchError) as e:
        logger.error("{}: {}".format(args.command, e))
        print("error: {}".format(e), file=sys.stderr)
        return EXIT_NUMERICAL
    except Exception:
        logger.exception("Uncaught exception in {}".format(__name__))
        return EXIT_ERROR
