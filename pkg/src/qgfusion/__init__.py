"""Fusion rings, dimension functions and Grothendieck equivalences for the
quantum-group categories C(g, q, l) at roots of unity."""
from .based import (EquivalenceWitness, GenerationCertificate, check_based_isomorphism, deligne_product,
                    even_subring_sl2, find_equivalence, generation_certificate, ring_from_generator,
                    sl2_ring)
from .classical import classical_tensor, dominant_weights, weight_multiplicity, weyl_dimension
from .dimensions import (DimensionReport, RootOfUnityChoice, dimension_report, fpdim_label, fpdim_perron,
                         pseudo_unitarity_scan, qdim)
from .fusion import (FusionRing, LevelContext, alcove_labels, build_fusion_ring, fold_affine,
                     fusion_coefficients, fusion_matrix)
from .kernels import BACKEND
from .rootsystem import CartanType, RootSystem, build_root_system

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "CartanType", "DimensionReport", "EquivalenceWitness", "FusionRing",
    "GenerationCertificate", "LevelContext", "RootOfUnityChoice", "RootSystem", "alcove_labels",
    "build_fusion_ring", "build_root_system", "check_based_isomorphism", "classical_tensor",
    "deligne_product", "dimension_report", "dominant_weights", "even_subring_sl2", "find_equivalence",
    "fold_affine", "fpdim_label", "fpdim_perron", "fusion_coefficients", "fusion_matrix",
    "generation_certificate", "pseudo_unitarity_scan", "qdim", "ring_from_generator", "sl2_ring",
    "weight_multiplicity", "weyl_dimension",
]
