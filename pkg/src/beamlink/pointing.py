"""
Rayleigh-distributed radial pointing error and the descriptive statistics
of Monte Carlo power samples.
"""

import logging
import math
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from beamlink import constants
from beamlink.exceptions import ContractViolation, ValidationError

logger = logging.getLogger(__name__)


class PointingModel(namedtuple('_PointingModel', ['sigma', 'beta_o'])):
    """
    `sigma` is the Rayleigh scale of the radial offset at the array (m).
    `beta_o` is the transmitter's angular pointing error (rad) and is carried
    as metadata only.
    """
    __slots__ = ()

    def __new__(cls, sigma=0.5, beta_o=2.68e-6):
        if not sigma > 0:
            raise ValidationError("sigma must be positive, got {}".format(sigma), field='sigma')
        if beta_o < 0:
            raise ValidationError("beta_o must be non-negative, got {}".format(beta_o), field='beta_o')
        return super().__new__(cls, float(sigma), float(beta_o))


class McConfig(namedtuple('_McConfig', ['n_samples', 'seed', 'n_bins', 'workers'])):
    __slots__ = ()

    def __new__(cls, n_samples=constants.DEFAULT_N_SAMPLES, seed=0, n_bins=constants.DEFAULT_N_BINS, workers=1):
        for field, value, low in (('n_samples', n_samples, 1), ('seed', seed, 0),
                                  ('n_bins', n_bins, 1), ('workers', workers, 1)):
            if isinstance(value, bool) or int(value) != value or value < low:
                raise ValidationError("{} must be an integer >= {}, got {}".format(field, low, value), field=field)
        if seed >= 2 ** 64:
            raise ValidationError("seed must fit in 64 bits, got {}".format(seed), field='seed')
        return super().__new__(cls, int(n_samples), int(seed), int(n_bins), int(workers))


McStats = namedtuple('McStats', ['mean', 'std_dev', 'min', 'max', 'histogram'])


def block_generator(seed, block):
    """
    Independent generator stream for one block of draws.
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(block,))))


def _inverse_cdf(sigma, u):
    # u in [0, 1): u = 0 maps to v = 0
    return sigma * np.sqrt(-2.0 * np.log1p(-u))


def sample_offsets(model, cfg):
    """
    Draw cfg.n_samples radial offsets by inverse-CDF sampling.

    Draws are generated in blocks of BLOCK_SIZE, each from its own stream, so
    the same (seed, n_samples) gives the same vector for any worker count.

    :return: numpy array of offsets (m)
    """
    n_blocks = -(-cfg.n_samples // constants.BLOCK_SIZE)

    def draw(block):
        size = min(constants.BLOCK_SIZE, cfg.n_samples - block * constants.BLOCK_SIZE)
        logger.debug("drawing block {}/{} ({} samples)".format(block + 1, n_blocks, size))
        return _inverse_cdf(model.sigma, block_generator(cfg.seed, block).random(size))

    if cfg.workers > 1 and n_blocks > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as executor:
            blocks = list(executor.map(draw, range(n_blocks)))
    else:
        blocks = [draw(block) for block in range(n_blocks)]
    return np.concatenate(blocks)


def pdf(model, v):
    """
    Rayleigh density (1/m) of the radial offset.
    """
    v = np.asarray(v, dtype=float)
    if np.any(v < 0):
        raise ContractViolation("offset must be non-negative")
    s2 = model.sigma * model.sigma
    return v / s2 * np.exp(-v * v / (2.0 * s2))


def cdf(model, v):
    v = np.asarray(v, dtype=float)
    return -np.expm1(-np.square(np.maximum(v, 0.0)) / (2.0 * model.sigma * model.sigma))


def summarize(samples, n_bins=constants.DEFAULT_N_BINS):
    """
    Mean, population (1/N) standard deviation, extremes and a density
    normalized equal-width histogram over [min, max].

    :param samples: non-empty sequence of values
    :param n_bins: histogram bin count
    :return: McStats; histogram is a tuple of (bin_center, density)
    """
    samples = np.asarray(samples, dtype=float)
    if samples.size == 0:
        raise ContractViolation("cannot summarize an empty sample set")
    lo = float(np.min(samples))
    hi = float(np.max(samples))
    # rounding in the sum can push the mean just outside [min, max]
    mean = min(max(float(np.mean(samples)), lo), hi)
    std_dev = float(np.std(samples))
    density, edges = np.histogram(samples, bins=n_bins, range=(lo, hi), density=True)
    centers = 0.5 * (edges[:-1] + edges[1:])
    histogram = tuple(zip(centers.tolist(), density.tolist()))
    return McStats(mean, std_dev, lo, hi, histogram)


def rayleigh_mean(model):
    return model.sigma * math.sqrt(math.pi / 2.0)


def rayleigh_variance(model):
    return (2.0 - math.pi / 2.0) * model.sigma * model.sigma
