"""
Gaussian laser beam from the solar power satellite to the relay's circular
solar array. SI units throughout (m, W, rad).
"""

import logging
import math
from collections import namedtuple

import numpy as np
from scipy import integrate, special, stats

from beamlink import constants
from beamlink.exceptions import ContractViolation, NumericalError, ValidationError

logger = logging.getLogger(__name__)


class FsoLink(namedtuple('_FsoLink', ['P_S', 'lambda_o', 'eta_eo', 'D_o', 'theta', 'eta_oe', 'b'])):
    """
    Laser power beaming link. `theta` is the divergence half-angle; when not
    given it defaults to lambda_o / D_o.
    """
    __slots__ = ()

    def __new__(cls, P_S=1e6, lambda_o=1064e-9, eta_eo=0.51, D_o=0.3, theta=3.547e-6, eta_oe=0.689, b=2.0):
        if theta is None:
            theta = lambda_o / D_o
        for field, value in (('P_S', P_S), ('lambda_o', lambda_o), ('D_o', D_o), ('theta', theta), ('b', b)):
            if not value > 0:
                raise ValidationError("{} must be positive, got {}".format(field, value), field=field)
        for field, value in (('eta_eo', eta_eo), ('eta_oe', eta_oe)):
            if not 0 < value <= 1:
                raise ValidationError("{} must be in (0, 1], got {}".format(field, value), field=field)
        return super().__new__(cls, float(P_S), float(lambda_o), float(eta_eo), float(D_o), float(theta),
                               float(eta_oe), float(b))

    @property
    def w0(self):
        return self.lambda_o / (math.pi * self.theta)

    @property
    def transmitted_power(self):
        return self.eta_eo * self.P_S


BeamSample = namedtuple('BeamSample', ['z', 'w_z', 'P_R'])


def _check_range(z):
    if np.any(np.asarray(z) < 0):
        raise ContractViolation("range must be non-negative, got {}".format(z))


def beam_radius(link, z):
    """
    1/e^2 intensity radius of the beam after propagating z metres.
    """
    _check_range(z)
    w0 = link.w0
    return w0 * np.sqrt(1.0 + (link.lambda_o * np.asarray(z, dtype=float) / (math.pi * w0 * w0)) ** 2)


def irradiance(link, r, z):
    """
    Beam intensity (W/m^2) at radial distance r from the beam axis.
    """
    w = beam_radius(link, z)
    return 2.0 * link.transmitted_power / (math.pi * w * w) * np.exp(-2.0 * np.square(r) / (w * w))


def captured_power_aligned(link, z):
    """
    Optical power over the solar array when the beam is centred on it.
    """
    w = beam_radius(link, z)
    return link.transmitted_power * -np.expm1(-2.0 * link.b * link.b / (w * w))


def beam_sample(link, z):
    return BeamSample(float(z), float(beam_radius(link, z)), float(captured_power_aligned(link, z)))


def captured_power_offset(link, z, v):
    """
    Optical power over the solar array when the beam centre is v metres off
    the array centre.

    The disc integral reduces to a radial one with a modified Bessel kernel,
    written with the exponentially scaled i0e so large 4rv/w^2 does not
    overflow.

    :param link: FsoLink
    :param z: range (m)
    :param v: radial pointing offset (m)
    :return: received optical power (W), never above the aligned value
    """
    if v < 0:
        raise ContractViolation("pointing offset must be non-negative, got {}".format(v))
    w = float(beam_radius(link, z))
    aligned = float(captured_power_aligned(link, z))
    b = link.b
    w2 = w * w
    scale = 4.0 * link.transmitted_power / w2

    def integrand(r):
        return scale * r * math.exp(-2.0 * (r - v) ** 2 / w2) * special.i0e(4.0 * r * v / w2)

    points = [v] if 0 < v < b else None
    result = integrate.quad(integrand, 0.0, b, epsabs=constants.QUAD_EPSABS, epsrel=constants.QUAD_EPSREL,
                            limit=constants.QUAD_LIMIT, points=points, full_output=1)
    value, abserr, info = result[:3]
    if len(result) > 3:
        raise NumericalError("capture integral did not converge at z={} m, v={} m: {} "
                             "(abserr={}, neval={})".format(z, v, result[3], abserr, info.get('neval')))
    return min(max(value, 0.0), aligned)


def captured_power_offset_many(link, z, v):
    """
    Vectorized captured_power_offset for Monte Carlo draws.

    The radial integral equals the transmitted power times the CDF of a
    noncentral chi-square with 2 degrees of freedom, noncentrality (2v/w)^2,
    at (2b/w)^2.

    :param v: array of radial offsets (m)
    :return: array of received optical powers (W)
    """
    v = np.asarray(v, dtype=float)
    if np.any(v < 0):
        raise ContractViolation("pointing offsets must be non-negative")
    w = float(beam_radius(link, z))
    aligned_fraction = -math.expm1(-2.0 * link.b * link.b / (w * w))
    nc = np.square(2.0 * v / w)
    centred = nc == 0
    fraction = stats.ncx2.cdf((2.0 * link.b / w) ** 2, 2, np.where(centred, 1.0, nc))
    fraction = np.where(centred, aligned_fraction, fraction)
    return link.transmitted_power * np.clip(fraction, 0.0, aligned_fraction)


def mean_captured_power(link, z, sigma):
    """
    Expected captured power over Rayleigh(sigma) pointing offsets. A Gaussian
    beam jittered by an isotropic Gaussian offset is a Gaussian beam with
    w^2 + 4 sigma^2 in place of w^2.
    """
    w = float(beam_radius(link, z))
    return link.transmitted_power * -math.expm1(-2.0 * link.b * link.b / (w * w + 4.0 * sigma * sigma))


def harvested_optical(link, P_R):
    """
    Electrical power delivered by the solar array for received optical power
    P_R (scalar or array).
    """
    if np.any(np.asarray(P_R) < 0):
        raise ContractViolation("received power must be non-negative")
    return link.eta_oe * P_R
