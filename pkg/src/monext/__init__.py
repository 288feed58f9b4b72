"""Schreier extensions of finite monoids: representatives, induced actions, the
direction functor and Baer sums."""
from .action import Semimodule, SchreierPoint, make_semimodule, semidirect, to_semimodule
from .cofib import baer_sum, cohomology_monoid, crossed_product, fiber_classify, pushforward
from .direction import direction_bundle, is_cc
from .errors import *  # noqa: F401,F403
from .extension import Extension, make_extension
from .finmon import FiniteMonoid, Hom, make_monoid

__version__ = "0.1.0"
