"""Exact calculator for coincidence invariants of maps from spheres into
real, complex and quaternionic projective spaces.

Computes Reidemeister numbers, the minimum numbers MC and MCC, and the four
Nielsen numbers N#, N~, N, NZ over curated homotopy-group tables, entirely in
exact integer and rational arithmetic.
"""

from __future__ import annotations

from importlib import resources

from .fgab import (
    Cmp,
    FgAbError,
    FgAbGroup,
    GroupElement,
    Homomorphism,
    Subgroup,
    direct_sum,
    element_order,
    image,
    kernel,
    smith_normal_form,
    subgroup_cmp,
)
from .invariants import (
    INF,
    InvariantValue,
    Report,
    ScanResult,
    ScanVerdict,
    WeckenAnswer,
    WeckenStatus,
    chain_check,
    dichotomy_check,
    equivalence_scan,
    fin,
    kervaire_exception,
    projective_report,
    reidemeister,
    sphere_report,
    unk,
    wecken_status,
)
from .projective import (
    COMPLEX,
    Field,
    MapClass,
    ProjSpace,
    QUATERNION,
    REAL,
    correction_group,
    decompose_valid,
    hopf_stable,
    parse_field,
    space,
)
from .selfco import (
    KVector,
    Looseness,
    Verdict,
    fiber_projection_self_loose,
    kvector,
    quaternion_counterexample,
    residual_not_parallel,
    sample_unit_vectors,
    self_loose,
    selfmap_s,
)
from .spheres import (
    GammaValue,
    Membership,
    MissingDataError,
    SphereClass,
    SphereTables,
    Unknown,
    ValidationReport,
)
from .stable import StableElement, StableRing, UnknownProduct
from .tables import (
    OutOfTabulatedRange,
    ParseError,
    SchemaError,
    TableError,
    TableSet,
    load_tables,
    parse_tables,
    serialize_tables,
)

__version__ = "0.1.0"

DATA_PACKAGE = "coincalc.data"
DEFAULT_TABLE_FILE = "homotopy_tables.txt"


def default_table_text() -> str:
    """The text of the bundled homotopy table file."""
    return (
        resources.files(DATA_PACKAGE).joinpath(DEFAULT_TABLE_FILE).read_text("utf-8")
    )


def load_default_tables() -> SphereTables:
    """Load the bundled dataset into a ready-to-query table interface."""
    return SphereTables(parse_tables(default_table_text()))
