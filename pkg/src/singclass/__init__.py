"""Weighted homogeneous isolated hypersurface singularities in three and four
variables: invariants, family identification and rationality tables."""

from .catalog import (
    Instance,
    LinkExponents,
    TypeDescriptor,
    alpha_at_ones,
    catalog_types,
    milnor_closed_form,
    polynomial_support,
    render_polynomial,
    resolve_type,
    validate_params,
    weights_of,
)
from .classify import Identification, identify_all, identify_type
from .enumerate import (
    Bounds,
    DiffReport,
    FamilyVerdict,
    TableDocument,
    ade_label,
    diff_table,
    enumerate_rational,
    frontier_analysis,
    is_rational,
    regenerate_table,
    surface_classification,
)
from .fixtures import Fixture, FixtureEntry, load_fixture, parse_fixture
from .newton import GenusReport, geometric_genus, genus_of, newton_region

__all__ = [
    "Bounds", "DiffReport", "FamilyVerdict", "Fixture", "FixtureEntry", "GenusReport",
    "Identification", "Instance", "LinkExponents", "TableDocument", "TypeDescriptor",
    "ade_label", "alpha_at_ones", "catalog_types", "diff_table", "enumerate_rational",
    "frontier_analysis", "genus_of", "geometric_genus", "identify_all", "identify_type",
    "is_rational", "load_fixture", "milnor_closed_form", "newton_region", "parse_fixture",
    "polynomial_support", "regenerate_table", "render_polynomial", "resolve_type",
    "surface_classification", "validate_params", "weights_of",
]
