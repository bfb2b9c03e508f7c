"""
Two-body orbit propagation around the Moon, Moon-fixed ground sites, and
line-of-sight geometry between satellites and sites.

Distances are in km and times in s. Angles are degrees at the interface and
radians internally.
"""

import logging
import math
from collections import namedtuple

import numpy as np

from beamlink import constants
from beamlink.exceptions import ContractViolation, KeplerConvergenceError, ValidationError
from beamlink.util import time_grid

logger = logging.getLogger(__name__)


def _require(condition, field, message):
    if not condition:
        raise ValidationError(message, field=field)


class BodyConstants(namedtuple('_BodyConstants', ['mu', 'radius', 'rotation_period'])):
    __slots__ = ()

    def __new__(cls, mu=constants.MOON_MU, radius=constants.MOON_RADIUS,
                rotation_period=constants.MOON_ROTATION_PERIOD):
        _require(mu > 0, 'mu', "mu must be positive, got {}".format(mu))
        _require(radius > 0, 'radius', "radius must be positive, got {}".format(radius))
        _require(rotation_period > 0, 'rotation_period',
                 "rotation_period must be positive, got {}".format(rotation_period))
        return super().__new__(cls, float(mu), float(radius), float(rotation_period))


MOON = BodyConstants()


class KeplerianElements(namedtuple('_KeplerianElements', ['semi_major_axis', 'eccentricity', 'inclination',
                                                          'arg_perigee', 'raan', 'true_anomaly', 'epoch'])):
    """
    Classical orbital elements. Angles are stored in degrees, normalized to
    [0, 360). The elements hold at scenario time `epoch`.
    """
    __slots__ = ()

    def __new__(cls, semi_major_axis, eccentricity=0.0, inclination=0.0, arg_perigee=0.0, raan=0.0,
                true_anomaly=0.0, epoch=0.0, body=MOON):
        _require(semi_major_axis > body.radius, 'semi_major_axis',
                 "semi_major_axis {} km must exceed the body radius {} km".format(semi_major_axis, body.radius))
        _require(0 <= eccentricity < 1, 'eccentricity',
                 "eccentricity must be in [0, 1), got {}".format(eccentricity))
        return super().__new__(cls, float(semi_major_axis), float(eccentricity),
                               float(inclination) % 360.0, float(arg_perigee) % 360.0,
                               float(raan) % 360.0, float(true_anomaly) % 360.0, float(epoch))


class StateVector(namedtuple('_StateVector', ['t', 'position', 'velocity'])):
    __slots__ = ()

    @property
    def radius(self):
        return float(np.linalg.norm(self.position))


class GroundSite(namedtuple('_GroundSite', ['name', 'latitude', 'longitude', 'altitude'])):
    __slots__ = ()

    def __new__(cls, name, latitude, longitude, altitude=0.0):
        _require(-90 <= latitude <= 90, 'latitude', "latitude must be in [-90, 90], got {}".format(latitude))
        _require(-180 < longitude <= 180, 'longitude', "longitude must be in (-180, 180], got {}".format(longitude))
        _require(altitude >= 0, 'altitude', "altitude must be non-negative, got {}".format(altitude))
        return super().__new__(cls, str(name), float(latitude), float(longitude), float(altitude))


LUNAR_SOUTH_POLE = GroundSite('LSP', -90.0, 0.0, 0.0)
MALAPERT = GroundSite('Malapert', -86.0, 0.0, 4.7)


class LinkGeometry(namedtuple('_LinkGeometry', ['t', 'range', 'elevation', 'visible', 'azimuth'])):
    """
    Line of sight between two points at time t. `elevation` and `azimuth`
    (degrees) are only set for satellite-to-site links.
    """
    __slots__ = ()

    def __new__(cls, t, range, elevation=None, visible=False, azimuth=None):
        return super().__new__(cls, t, range, elevation, visible, azimuth)


class VisibilityWindow(namedtuple('_VisibilityWindow', ['start', 'end'])):
    __slots__ = ()

    def __new__(cls, start, end):
        if not end > start:
            raise ValidationError("window end {} must be after start {}".format(end, start), field='end')
        return super().__new__(cls, float(start), float(end))

    @property
    def duration(self):
        return self.end - self.start


def orbital_period(elements, body=MOON):
    return 2.0 * math.pi * math.sqrt(elements.semi_major_axis ** 3 / body.mu)


def orbital_energy(state, body=MOON):
    """
    Specific orbital energy v^2/2 - mu/r (km^2/s^2).
    """
    v = float(np.linalg.norm(state.velocity))
    return v * v / 2.0 - body.mu / state.radius


def solve_kepler(mean_anomaly, eccentricity):
    """
    Solve M = E - e sin E for the eccentric anomaly E by Newton iteration
    started at E = M.

    :param mean_anomaly: M in radians
    :param eccentricity: e in [0, 1)
    :return: E in radians
    """
    ecc_anomaly = mean_anomaly
    for _ in range(constants.KEPLER_MAX_ITERATIONS):
        step = (ecc_anomaly - eccentricity * math.sin(ecc_anomaly) - mean_anomaly) \
            / (1.0 - eccentricity * math.cos(ecc_anomaly))
        ecc_anomaly -= step
        if abs(step) < constants.KEPLER_TOLERANCE:
            return ecc_anomaly
    raise KeplerConvergenceError(
        "Kepler's equation did not converge after {} iterations (M={}, e={})".format(
            constants.KEPLER_MAX_ITERATIONS, mean_anomaly, eccentricity))


def _rotation(raan, inclination, arg_perigee):
    """
    Perifocal to inertial rotation R3(raan) R1(i) R3(w), angles in radians.
    """
    cO, sO = math.cos(raan), math.sin(raan)
    ci, si = math.cos(inclination), math.sin(inclination)
    cw, sw = math.cos(arg_perigee), math.sin(arg_perigee)
    return np.array([
        [cO * cw - sO * sw * ci, -cO * sw - sO * cw * ci, sO * si],
        [sO * cw + cO * sw * ci, -sO * sw + cO * cw * ci, -cO * si],
        [sw * si, cw * si, ci],
    ])


def propagate(elements, body, t):
    """
    Two-body state of an orbit at scenario time t.

    :param elements: KeplerianElements valid at elements.epoch
    :param body: central body
    :param t: scenario time (s), t >= 0
    :return: StateVector in the body-centred inertial frame
    """
    if t < 0:
        raise ContractViolation("propagation time must be non-negative, got {}".format(t))
    a = elements.semi_major_axis
    e = elements.eccentricity
    if a * (1.0 - e) < body.radius:
        raise ValidationError("periapsis {} km lies below the surface".format(a * (1.0 - e)),
                              field='semi_major_axis')

    nu0 = math.radians(elements.true_anomaly)
    ecc0 = 2.0 * math.atan2(math.sqrt(1.0 - e) * math.sin(nu0 / 2.0), math.sqrt(1.0 + e) * math.cos(nu0 / 2.0))
    mean0 = ecc0 - e * math.sin(ecc0)
    mean_motion = math.sqrt(body.mu / a ** 3)
    mean_anomaly = math.fmod(mean0 + mean_motion * (t - elements.epoch), 2.0 * math.pi)

    ecc_anomaly = solve_kepler(mean_anomaly, e)
    nu = 2.0 * math.atan2(math.sqrt(1.0 + e) * math.sin(ecc_anomaly / 2.0),
                          math.sqrt(1.0 - e) * math.cos(ecc_anomaly / 2.0))
    r = a * (1.0 - e * math.cos(ecc_anomaly))
    p = a * (1.0 - e * e)
    speed_scale = math.sqrt(body.mu / p)

    position_pf = np.array([r * math.cos(nu), r * math.sin(nu), 0.0])
    velocity_pf = np.array([-speed_scale * math.sin(nu), speed_scale * (e + math.cos(nu)), 0.0])
    rot = _rotation(math.radians(elements.raan), math.radians(elements.inclination),
                    math.radians(elements.arg_perigee))
    return StateVector(float(t), rot @ position_pf, rot @ velocity_pf)


def _rotation_angle(body, t):
    return 2.0 * math.pi * t / body.rotation_period


def site_position(site, body, t):
    """
    Inertial position (km) of a ground site at time t. The Moon-fixed frame
    coincides with the inertial frame at t = 0 and turns about +z.
    """
    lat = math.radians(site.latitude)
    lon = math.radians(site.longitude) + _rotation_angle(body, t)
    r = body.radius + site.altitude
    return np.array([r * math.cos(lat) * math.cos(lon),
                     r * math.cos(lat) * math.sin(lon),
                     r * math.sin(lat)])


def _enu_axes(site, body, t):
    lat = math.radians(site.latitude)
    lon = math.radians(site.longitude) + _rotation_angle(body, t)
    up = np.array([math.cos(lat) * math.cos(lon), math.cos(lat) * math.sin(lon), math.sin(lat)])
    east = np.array([-math.sin(lon), math.cos(lon), 0.0])
    north = np.cross(up, east)
    return east, north, up


def sat_sat_geometry(p1, p2, body):
    """
    Line of sight between two satellites. The link is blocked when the
    segment between them passes inside the body sphere.
    """
    if p1.t != p2.t:
        raise ContractViolation("states are at different times: {} and {}".format(p1.t, p2.t))
    a = np.asarray(p1.position, dtype=float)
    b = np.asarray(p2.position, dtype=float)
    chord = b - a
    length_sq = float(np.dot(chord, chord))
    if length_sq == 0.0:
        s = 0.0
    else:
        s = min(max(-float(np.dot(a, chord)) / length_sq, 0.0), 1.0)
    closest = a + s * chord
    visible = float(np.linalg.norm(closest)) > body.radius
    return LinkGeometry(p1.t, math.sqrt(length_sq), visible=visible)


def sat_site_geometry(sat, site, body, elevation_mask=0.0):
    """
    Line of sight from a ground site to a satellite.

    :param sat: satellite StateVector
    :param site: GroundSite
    :param body: central body
    :param elevation_mask: minimum elevation (deg) for the link to count as visible
    :return: LinkGeometry with elevation and azimuth in degrees
    """
    site_pos = site_position(site, body, sat.t)
    los = np.asarray(sat.position, dtype=float) - site_pos
    rng = float(np.linalg.norm(los))
    east, north, up = _enu_axes(site, body, sat.t)
    if rng == 0.0:
        return LinkGeometry(sat.t, 0.0, elevation=90.0, visible=False, azimuth=0.0)
    direction = los / rng
    elevation = math.degrees(math.asin(min(max(float(np.dot(direction, up)), -1.0), 1.0)))
    azimuth = math.degrees(math.atan2(float(np.dot(direction, east)), float(np.dot(direction, north)))) % 360.0
    return LinkGeometry(sat.t, rng, elevation=elevation, visible=elevation > elevation_mask, azimuth=azimuth)


def _refine(is_visible, lo, hi, lo_state, tolerance):
    while hi - lo > tolerance:
        mid = 0.5 * (lo + hi)
        if is_visible(mid) == lo_state:
            lo = mid
        else:
            hi = mid
    return lo, hi


def visibility_windows(is_visible, t0, t1, dt, tolerance=constants.WINDOW_REFINEMENT):
    """
    Find the intervals where a visibility signal is true.

    The signal is scanned on the grid t0, t0 + dt, ..., t1 and every change of
    state is refined by bisection to `tolerance`. Returned boundaries are the
    visible-side end of each bracket. Visibility spells shorter than the grid
    step can be missed.

    :param is_visible: callable t -> bool
    :return: sorted list of disjoint VisibilityWindow
    """
    times = time_grid(t0, t1, dt)
    windows = []
    start = None
    prev_t, prev_state = None, None
    for t in times:
        state = bool(is_visible(t))
        if prev_t is None:
            if state:
                start = t
        elif state != prev_state:
            lo, hi = _refine(is_visible, prev_t, t, prev_state, tolerance)
            if state:
                start = hi
            else:
                if lo > start:
                    windows.append(VisibilityWindow(start, lo))
                start = None
        prev_t, prev_state = t, state
    if start is not None and times[-1] > start:
        windows.append(VisibilityWindow(start, times[-1]))
    logger.debug("found {} visibility windows in [{}, {}]".format(len(windows), t0, t1))
    return windows


def common_window(window_lists):
    """
    Exact intersection of several sorted, disjoint window lists. Touching
    windows do not produce a zero-length intersection.
    """
    window_lists = list(window_lists)
    if not window_lists:
        return []
    result = list(window_lists[0])
    for other in window_lists[1:]:
        merged = []
        i = j = 0
        while i < len(result) and j < len(other):
            start = max(result[i].start, other[j].start)
            end = min(result[i].end, other[j].end)
            if end > start:
                merged.append(VisibilityWindow(start, end))
            if result[i].end < other[j].end:
                i += 1
            else:
                j += 1
        result = merged
    return result
