"""
End-to-end hybrid chain: laser hop from the solar power satellite to the
relay, RF hops from the relay to the two surface sites.

Geometry is reported in km; powers in W; gains linear.
"""

import logging
import math
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from beamlink import constants
from beamlink.constants import Target, Tracking
from beamlink.exceptions import ContractViolation
from beamlink.fso import captured_power_aligned, captured_power_offset_many, harvested_optical
from beamlink.orbits import (common_window, propagate, sat_sat_geometry, sat_site_geometry, site_position,
                             visibility_windows)
from beamlink.pointing import sample_offsets, summarize
from beamlink.rf import (RfLink, dish_gain, friis_received, harvested_rf, link_far_field_distance,
                         off_boresight)
from beamlink.util import time_grid

logger = logging.getLogger(__name__)


class ChainSample(namedtuple('_ChainSample', ['t', 'z', 'd_p', 'd_m', 'phi_Tm', 'G_Tp', 'G_Rp', 'G_Tm', 'G_Rm',
                                              'P_H_l', 'P_H_p', 'P_H_m', 'vis_fso', 'vis_lsp', 'vis_mal',
                                              'near_field'])):
    """
    One grid instant of the chain. The harvested powers are None outside the
    common visibility window.
    """
    __slots__ = ()

    @property
    def in_window(self):
        return self.vis_fso and self.vis_lsp and self.vis_mal


ExtremePoint = namedtuple('ExtremePoint', ['t', 'value', 'P_H_l', 'P_H_p', 'P_H_m'])

PathLength = namedtuple('PathLength', ['t', 'z', 'd_p', 'd_m', 'z_plus_d_p', 'z_plus_d_m'])

EndToEndPath = namedtuple('EndToEndPath', ['t', 'site', 'length', 'delay'])

SweepPoint = namedtuple('SweepPoint', ['frequency', 'max_P_H_p', 'mean_P_H_p', 'max_P_H_m', 'mean_P_H_m'])

# Quantities tracked for extreme-case analysis.
EXTREME_QUANTITIES = ('z', 'd_p', 'd_m', 'G_Tm', 'P_H_l', 'P_H_p', 'P_H_m')

ExtremeReport = namedtuple('ExtremeReport', ['{}_{}'.format(name, kind) for name in EXTREME_QUANTITIES
                                             for kind in ('min', 'max')]
                           + ['mean_P_H_l', 'mean_P_H_p', 'mean_P_H_m', 'n_samples'])

# Monte Carlo instant selectors, as accepted by instant_for()
INSTANT_SELECTORS = {
    'zmin': 'z_min',
    'zmax': 'z_max',
    'dpmin': 'd_p_min',
    'dpmax': 'd_p_max',
    'gtmmax': 'G_Tm_max',
    'gtmmin': 'G_Tm_min',
}

# Extreme cases exported by a full chain run: (selector, target)
STANDARD_CASES = (
    ('zmin', Target.LLO),
    ('zmax', Target.LLO),
    ('dpmin', Target.LSP),
    ('dpmax', Target.LSP),
    ('gtmmax', Target.MALAPERT),
    ('gtmmin', Target.MALAPERT),
)


def _gain(antenna, lambda_r, phi):
    # nothing is radiated behind the dish
    if phi > math.pi / 2:
        return 0.0
    return dish_gain(antenna, lambda_r, phi)


def _transmitter_angles(scenario, relay_pos, primary_pos, secondary_pos):
    if scenario.rf.transmitter.tracking == Tracking.FIXED:
        # nadir pointing
        boresight = np.zeros(3)
        phi_Tp = off_boresight(relay_pos, boresight, primary_pos)
    else:
        boresight = primary_pos
        phi_Tp = 0.0
    return phi_Tp, off_boresight(relay_pos, boresight, secondary_pos)


def _receiver_angle(scenario, geometry):
    if scenario.rf.receiver.tracking == Tracking.FIXED:
        return math.radians(90.0 - geometry.elevation)
    return 0.0


def sample_at(scenario, t):
    """
    Evaluate geometry, gains and, inside the common window, the harvested
    powers at time t.
    """
    body = scenario.body
    rf = scenario.rf
    sps = propagate(scenario.sps, body, t)
    llo = propagate(scenario.llo, body, t)
    fso_geo = sat_sat_geometry(sps, llo, body)
    lsp_geo = sat_site_geometry(llo, scenario.primary_site, body, scenario.elevation_mask)
    mal_geo = sat_site_geometry(llo, scenario.secondary_site, body, scenario.elevation_mask)

    primary_pos = site_position(scenario.primary_site, body, t)
    secondary_pos = site_position(scenario.secondary_site, body, t)
    phi_Tp, phi_Tm = _transmitter_angles(scenario, llo.position, primary_pos, secondary_pos)
    lambda_r = rf.lambda_r
    G_Tp = _gain(rf.transmitter, lambda_r, phi_Tp)
    G_Tm = _gain(rf.transmitter, lambda_r, phi_Tm)
    G_Rp = _gain(rf.receiver, lambda_r, _receiver_angle(scenario, lsp_geo))
    G_Rm = _gain(rf.receiver, lambda_r, _receiver_angle(scenario, mal_geo))

    z, d_p, d_m = fso_geo.range, lsp_geo.range, mal_geo.range
    near_field = min(d_p, d_m) * 1e3 < link_far_field_distance(rf)

    P_H_l = P_H_p = P_H_m = None
    if fso_geo.visible and lsp_geo.visible and mal_geo.visible:
        P_H_l = float(harvested_optical(scenario.fso, captured_power_aligned(scenario.fso, z * 1e3)))
        P_T = P_H_l / 2.0 if rf.power_split else P_H_l
        P_H_p = float(harvested_rf(rf, friis_received(rf, P_T, d_p * 1e3, G_Tp, G_Rp)))
        P_H_m = float(harvested_rf(rf, friis_received(rf, P_T, d_m * 1e3, G_Tm, G_Rm)))

    return ChainSample(float(t), z, d_p, d_m, phi_Tm, G_Tp, G_Rp, G_Tm, G_Rm, P_H_l, P_H_p, P_H_m,
                       fso_geo.visible, lsp_geo.visible, mal_geo.visible, near_field)


def run_timeseries(scenario, workers=1):
    """
    Evaluate the chain on the scenario grid t0, t0 + dt, ..., t1.

    A scenario without any common visibility returns samples that all carry
    visibility flags and no powers; in_window_samples() is then empty.

    :return: list of ChainSample ordered by time
    """
    times = time_grid(scenario.t0, scenario.t1, scenario.dt)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            samples = list(executor.map(lambda t: sample_at(scenario, t), times))
    else:
        samples = [sample_at(scenario, t) for t in times]

    in_window = in_window_samples(samples)
    if in_window:
        logger.info("{} of {} samples inside the common window [{} s, {} s]".format(
            len(in_window), len(samples), in_window[0].t, in_window[-1].t))
    else:
        logger.warning("no contact: the three links are never visible together in [{} s, {} s]".format(
            scenario.t0, scenario.t1))
    near_field = [s for s in in_window if s.near_field]
    if near_field:
        logger.warning("{} in-window samples have an RF hop inside the far-field distance".format(len(near_field)))
    return samples


def in_window_samples(samples):
    return [s for s in samples if s.in_window]


def link_windows(scenario):
    """
    Visibility windows of the three links and their common intersection.

    :return: dict name -> list of VisibilityWindow, keys 'sps-llo',
             'llo-<primary>', 'llo-<secondary>', 'common'
    """
    body = scenario.body

    def fso_visible(t):
        return sat_sat_geometry(propagate(scenario.sps, body, t), propagate(scenario.llo, body, t), body).visible

    def site_visible(site):
        def visible(t):
            return sat_site_geometry(propagate(scenario.llo, body, t), site, body, scenario.elevation_mask).visible
        return visible

    windows = {'sps-llo': visibility_windows(fso_visible, scenario.t0, scenario.t1, scenario.dt)}
    for site in scenario.sites:
        windows['llo-{}'.format(site.name.lower())] = visibility_windows(
            site_visible(site), scenario.t0, scenario.t1, scenario.dt)
    windows['common'] = common_window(list(windows.values()))
    for name, found in windows.items():
        logger.info("{}: {} window(s), {:.3f} s in total".format(name, len(found), sum(w.duration for w in found)))
    return windows


def _extreme(samples, attr, maximize):
    best = None
    for s in samples:
        value = getattr(s, attr)
        if best is None or (value > getattr(best, attr) if maximize else value < getattr(best, attr)):
            best = s
    return ExtremePoint(best.t, getattr(best, attr), best.P_H_l, best.P_H_p, best.P_H_m)


def extremes(samples):
    """
    Minima and maxima over the in-window samples, with the powers at the same
    instant. Ties go to the earliest time.
    """
    samples = sorted(in_window_samples(samples), key=lambda s: s.t)
    if not samples:
        raise ContractViolation("no samples inside the common visibility window")
    fields = {}
    for name in EXTREME_QUANTITIES:
        fields['{}_min'.format(name)] = _extreme(samples, name, maximize=False)
        fields['{}_max'.format(name)] = _extreme(samples, name, maximize=True)
    for name in ('P_H_l', 'P_H_p', 'P_H_m'):
        fields['mean_{}'.format(name)] = float(np.mean([getattr(s, name) for s in samples]))
    return ExtremeReport(n_samples=len(samples), **fields)


def instant_for(report, selector):
    """
    Resolve a Monte Carlo instant selector: one of INSTANT_SELECTORS or
    't=<seconds>'.
    """
    if selector.startswith('t='):
        try:
            return float(selector[2:])
        except ValueError as e:
            raise ContractViolation("cannot parse time in selector {!r}".format(selector), inner_exception=e)
    if selector not in INSTANT_SELECTORS:
        raise ContractViolation("unknown instant selector {!r}; expected one of {} or t=<s>".format(
            selector, ', '.join(INSTANT_SELECTORS)))
    return getattr(report, INSTANT_SELECTORS[selector]).t


def end_to_end_draws(scenario, sample, offsets, target):
    """
    Harvested power at `target` for each pointing offset, with the laser hop
    jittered and the RF hops deterministic at the sample's geometry.
    """
    target = Target(target)
    rf = scenario.rf
    P_E_l = harvested_optical(scenario.fso, captured_power_offset_many(scenario.fso, sample.z * 1e3, offsets))
    if target == Target.LLO:
        return P_E_l
    P_T = P_E_l / 2.0 if rf.power_split else P_E_l
    if target == Target.LSP:
        return harvested_rf(rf, friis_received(rf, P_T, sample.d_p * 1e3, sample.G_Tp, sample.G_Rp))
    return harvested_rf(rf, friis_received(rf, P_T, sample.d_m * 1e3, sample.G_Tm, sample.G_Rm))


def mc_end_to_end(scenario, t, cfg, target):
    """
    Distribution of the harvested power at `target` at time t under random
    pointing error on the laser hop.

    :param t: instant (s), must lie inside the common window
    :param cfg: McConfig
    :param target: Target or its value
    :return: McStats
    """
    sample = sample_at(scenario, t)
    if not sample.in_window:
        raise ContractViolation("t={} s is outside the common visibility window".format(t))
    offsets = sample_offsets(scenario.pointing, cfg)
    stats = summarize(end_to_end_draws(scenario, sample, offsets, target), cfg.n_bins)
    logger.info("monte carlo at t={} s, target {}: mean {:.6g} W over {} draws".format(
        t, Target(target).value, stats.mean, cfg.n_samples))
    return stats


def light_delay(length_km):
    return length_km * 1e3 / constants.C


def path_lengths(samples):
    return [PathLength(s.t, s.z, s.d_p, s.d_m, s.z + s.d_p, s.z + s.d_m) for s in in_window_samples(samples)]


def max_end_to_end(samples, site_names=('LSP', 'Malapert')):
    """
    Longest simultaneous two-hop path over the in-window samples and its
    one-way light delay (s). Reported for reference only; the chain ignores
    propagation delay.
    """
    best = None
    for p in path_lengths(samples):
        for site, length in zip(site_names, (p.z_plus_d_p, p.z_plus_d_m)):
            if best is None or length > best.length:
                best = EndToEndPath(p.t, site, length, light_delay(length))
    return best


def frequency_sweep(scenario, frequencies, workers=1):
    """
    Rerun the chain for each RF frequency (Hz).

    :return: list of SweepPoint, empty maxima/means as None when there is no
             contact
    """
    points = []
    for frequency in frequencies:
        rf = scenario.rf
        swept = scenario._replace(rf=RfLink(frequency, rf.eta_er, rf.eta_re, rf.transmitter, rf.receiver,
                                            rf.power_split))
        samples = in_window_samples(run_timeseries(swept, workers))
        if not samples:
            points.append(SweepPoint(float(frequency), None, None, None, None))
            continue
        P_H_p = [s.P_H_p for s in samples]
        P_H_m = [s.P_H_m for s in samples]
        points.append(SweepPoint(float(frequency), max(P_H_p), float(np.mean(P_H_p)),
                                 max(P_H_m), float(np.mean(P_H_m))))
        logger.debug("sweep {} Hz: max P_H_p {} W, max P_H_m {} W".format(frequency, max(P_H_p), max(P_H_m)))
    return points
