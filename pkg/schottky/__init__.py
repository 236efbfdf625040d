# -*- coding: utf-8 -*-

__version__ = "0.1.0"

from .moebius import *  # noqa F403
from .description import *  # noqa F403
from .validation import *  # noqa F403
from .group import *  # noqa F403
from .topology import *  # noqa F403
