"""Exact prolongation of curve germs through the Monster (Semple) tower."""

from .classify import (
    SingularityClass,
    classify_code,
    classify_germ,
    normal_form,
    spatial_test,
    stable_orbit_census,
)
from .config import TowerConfig
from .enriques import check_enriques, proximity_table
from .germ import CurveGerm, is_well_parameterized, mult, prepare
from .orbits import enumerate_classes, planar_word_count
from .series import TruncatedSeries
from .tower import (
    multiplicity_sequence,
    point_of,
    prolong,
    regularization_level,
    rvt_code,
)
from .words import RvtCode, codim, validate_code

__all__ = [
    "CurveGerm",
    "RvtCode",
    "SingularityClass",
    "TowerConfig",
    "TruncatedSeries",
    "check_enriques",
    "classify_code",
    "classify_germ",
    "codim",
    "enumerate_classes",
    "is_well_parameterized",
    "mult",
    "multiplicity_sequence",
    "normal_form",
    "planar_word_count",
    "point_of",
    "prepare",
    "prolong",
    "proximity_table",
    "regularization_level",
    "rvt_code",
    "spatial_test",
    "stable_orbit_census",
    "validate_code",
]
