import math

import numpy as np

from beamlink.exceptions import ContractViolation


def to_db(value):
    """
    >>> to_db(100.0)
    20.0
    >>> to_db(0.0)
    -inf

    :param value: linear power ratio (>= 0)
    :return: the ratio in decibels
    """
    if value < 0:
        raise ContractViolation("Cannot express negative ratio {} in dB.".format(value))
    if value == 0:
        return float('-inf')
    return 10.0 * math.log10(value)


def from_db(value_db):
    """
    >>> from_db(30.0)
    1000.0
    """
    return 10.0 ** (value_db / 10.0)


def unit(vec):
    """
    >>> unit((0.0, 3.0, 4.0)).tolist()
    [0.0, 0.6, 0.8]

    :param vec: 3-vector
    :return: the vector scaled to unit length
    """
    vec = np.asarray(vec, dtype=float)
    length = np.linalg.norm(vec)
    if length == 0:
        raise ContractViolation("Zero-length direction vector.")
    return vec / length


def angle_between(a, b):
    """
    >>> angle_between((1.0, 0.0, 0.0), (0.0, 1.0, 0.0))
    1.5707963267948966
    >>> angle_between((1.0, 0.0, 0.0), (2.0, 0.0, 0.0))
    0.0

    atan2 of the cross and dot products stays accurate near 0 and pi.
    :return: angle in radians, in [0, pi]
    """
    a = unit(a)
    b = unit(b)
    return math.atan2(np.linalg.norm(np.cross(a, b)), float(np.dot(a, b)))


def time_grid(t0, t1, dt):
    """
    >>> time_grid(0, 25, 10)
    [0.0, 10.0, 20.0, 25.0]
    >>> len(time_grid(0, 7200, 10))
    721

    :param t0: grid start (s)
    :param t1: grid end (s), always included
    :param dt: grid step (s)
    :return: list of sample times
    """
    if dt <= 0 or t1 <= t0:
        raise ContractViolation("Invalid time grid [{}, {}] step {}.".format(t0, t1, dt))
    n_steps = int(math.floor((t1 - t0) / dt + 1e-9))
    times = [float(t0) + k * dt for k in range(n_steps + 1)]
    if t1 - times[-1] > 1e-9 * dt:
        times.append(float(t1))
    return times
