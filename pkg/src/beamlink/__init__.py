#!/usr/bin/env python
# -*- coding: utf-8 -*-

import logging

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)
logger.addHandler(logging.NullHandler())

from . import exceptions
from .constants import Target, Tracking
from .fso import FsoLink
from .orbits import BodyConstants, GroundSite, KeplerianElements, MOON
from .pointing import McConfig, PointingModel
from .rf import DishAntenna, RfLink
