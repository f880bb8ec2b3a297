"""Characteristic models of quasitoric orbifolds and the complex cobordism
relations coming from orbifolds with quasitoric boundary."""

from .charmodel import (CharacteristicModel, IsotropyModel, OmniorientedModel, OrientationDatum,
                        delta_equivalent, extend_to_eta, is_smooth, restrict_to_exceptional,
                        validate_characteristic, validate_isotropy, vertex_sign)
from .chern import chern_number, chern_numbers, tangent_weights, verify_relation
from .cobordism import (CobordismRelation, FakeWeightedProjective, boundary_components,
                        check_hirzebruch_schema, comcob_relation, qbd_decompose,
                        vertex_cut_relation)
from .polytope import (ExceptionalMarking, Polytope, prism, simplex, truncate_vertex,
                       validate_marking)

__version__ = "0.1.0"

__all__ = [
    "CharacteristicModel", "CobordismRelation", "ExceptionalMarking", "FakeWeightedProjective",
    "IsotropyModel", "OmniorientedModel", "OrientationDatum", "Polytope", "boundary_components",
    "check_hirzebruch_schema", "chern_number", "chern_numbers", "comcob_relation",
    "delta_equivalent", "extend_to_eta", "is_smooth", "prism", "qbd_decompose",
    "restrict_to_exceptional", "simplex", "tangent_weights", "truncate_vertex",
    "validate_characteristic", "validate_isotropy", "validate_marking", "verify_relation",
    "vertex_cut_relation", "vertex_sign",
]
