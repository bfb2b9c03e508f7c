"""
Parabolic dish gains, Friis transmission and RF to DC conversion for the
relay-to-surface hops. Gains are linear; dB only at the edges.
"""

import logging
import math
from collections import namedtuple

import numpy as np
from scipy import special

from beamlink import constants
from beamlink.constants import Tracking
from beamlink.exceptions import ContractViolation, ValidationError
from beamlink.util import angle_between

logger = logging.getLogger(__name__)


class DishAntenna(namedtuple('_DishAntenna', ['diameter', 'efficiency', 'tracking'])):
    __slots__ = ()

    def __new__(cls, diameter=4.0, efficiency=0.9, tracking=Tracking.FULL):
        if not diameter > 0:
            raise ValidationError("diameter must be positive, got {}".format(diameter), field='diameter')
        if not 0 < efficiency <= 1:
            raise ValidationError("efficiency must be in (0, 1], got {}".format(efficiency), field='efficiency')
        try:
            tracking = Tracking(tracking)
        except ValueError as e:
            raise ValidationError("unknown tracking mode {!r}".format(tracking), field='tracking',
                                  inner_exception=e)
        return super().__new__(cls, float(diameter), float(efficiency), tracking)


class RfLink(namedtuple('_RfLink', ['frequency', 'eta_er', 'eta_re', 'transmitter', 'receiver', 'power_split'])):
    """
    Relay-to-surface microwave link. With `power_split` the relay divides its
    radiated power equally between the two surface links; otherwise each link
    sees the full power.
    """
    __slots__ = ()

    def __new__(cls, frequency=2.5e9, eta_er=0.8, eta_re=0.8, transmitter=None, receiver=None, power_split=False):
        if not frequency > 0:
            raise ValidationError("frequency must be positive, got {}".format(frequency), field='frequency')
        for field, value in (('eta_er', eta_er), ('eta_re', eta_re)):
            if not 0 < value <= 1:
                raise ValidationError("{} must be in (0, 1], got {}".format(field, value), field=field)
        if transmitter is None:
            transmitter = DishAntenna(4.0, 0.9)
        if receiver is None:
            receiver = DishAntenna(50.0, 0.9)
        return super().__new__(cls, float(frequency), float(eta_er), float(eta_re), transmitter, receiver,
                               bool(power_split))

    @property
    def lambda_r(self):
        return constants.C / self.frequency


RfSample = namedtuple('RfSample', ['t', 'd', 'phi_T', 'phi_R', 'G_T', 'G_R', 'P_R', 'P_H'])


def pattern_factor(zeta):
    """
    Uniform circular aperture power pattern (2 J1(zeta) / zeta)^2, with the
    series 1 - zeta^2/8 + zeta^4/192 near the axis.
    """
    zeta = abs(zeta)
    if zeta < constants.PATTERN_SERIES_THRESHOLD:
        z2 = zeta * zeta
        amplitude = 1.0 - z2 / 8.0 + z2 * z2 / 192.0
    else:
        amplitude = 2.0 * special.j1(zeta) / zeta
    return float(amplitude * amplitude)


def boresight_gain(antenna, lambda_r):
    return antenna.efficiency * (math.pi * antenna.diameter / lambda_r) ** 2


def dish_gain(antenna, lambda_r, phi):
    """
    Linear gain of a parabolic dish at off-boresight angle phi (rad).
    """
    if not 0 <= phi <= math.pi / 2:
        raise ContractViolation("off-boresight angle must be in [0, pi/2], got {}".format(phi))
    zeta = math.pi * antenna.diameter / lambda_r * math.sin(phi)
    return boresight_gain(antenna, lambda_r) * pattern_factor(zeta)


def far_field_distance(antenna, lambda_r):
    """
    Fraunhofer distance 2 D^2 / lambda (m).
    """
    return 2.0 * antenna.diameter ** 2 / lambda_r


def link_far_field_distance(link):
    """
    Far-field distance of the larger dish on the link (m).
    """
    return far_field_distance(max(link.transmitter, link.receiver, key=lambda dish: dish.diameter), link.lambda_r)


def friis_received(link, P_T, d, G_T, G_R):
    """
    Received RF power (W) for electrical input P_T (W, scalar or array) over
    d metres.
    """
    if d <= 0:
        raise ContractViolation("link distance must be positive, got {}".format(d))
    if np.any(np.asarray(P_T) < 0):
        raise ContractViolation("transmit power must be non-negative")
    path_gain = (link.lambda_r / (4.0 * math.pi * d)) ** 2
    return link.eta_er * P_T * path_gain * G_T * G_R


def harvested_rf(link, P_R):
    if np.any(np.asarray(P_R) < 0):
        raise ContractViolation("received power must be non-negative")
    return link.eta_re * P_R


def off_boresight(sat_pos, boresight_target, actual_target):
    """
    Angle (rad) between the transmitter boresight, locked on
    `boresight_target`, and the direction to `actual_target`.
    """
    sat_pos = np.asarray(sat_pos, dtype=float)
    return angle_between(np.asarray(boresight_target, dtype=float) - sat_pos,
                         np.asarray(actual_target, dtype=float) - sat_pos)


def rf_sample(link, t, P_T, d, phi_T=0.0, phi_R=0.0):
    """
    One hop evaluated end to end: gains at the given pointing angles, Friis
    received power and harvested DC power. `d` is in metres.
    """
    G_T = dish_gain(link.transmitter, link.lambda_r, phi_T)
    G_R = dish_gain(link.receiver, link.lambda_r, phi_R)
    P_R = friis_received(link, P_T, d, G_T, G_R)
    far_field = link_far_field_distance(link)
    if d < far_field:
        logger.warning("RF hop at t={} s is {:.1f} km, inside the {:.1f} km far-field distance".format(
            t, d / 1e3, far_field / 1e3))
    return RfSample(t, d, phi_T, phi_R, G_T, G_R, P_R, harvested_rf(link, P_R))
